//! The critical group `K_t`, the component group `Φ_t`, the character kernel
//! `ker ∂_{ℓt}`, and the weighted complexity `c_t`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cochain::{laplacian, level_moduli, partial_t_matrix};
use crate::error::{Error, Result};
use crate::graph::DecoratedGraph;
use crate::linalg::{
    integer_kernel, lattice_quotient, FiniteAbelianGroup, IntMatrix, Lattice, RatMatrix,
};

/// The three groups of `0 → ker ∂_t → Φ_t → K_t → 0` and the checks made on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub kernel: FiniteAbelianGroup,
    pub total: FiniteAbelianGroup,
    pub quotient: FiniteAbelianGroup,
    /// `|total| = |kernel|·|quotient|`.
    pub orders_multiply: bool,
    /// The kernel maps into `Φ_t` with image of order `|kernel|`.
    pub injection_verified: bool,
}

/// Lattice spanned by `∂ᵗχ_e` in `Q^V`.
pub fn divisor_lattice(g: &DecoratedGraph) -> Lattice {
    Lattice::new(partial_t_matrix(g))
}

/// Lattice spanned by `Lχ_v = ∂ᵗδχ_v` in `Q^V`.
pub fn firing_lattice(g: &DecoratedGraph) -> Lattice {
    Lattice::new(laplacian(g))
}

/// `K_t = ∂ᵗC¹(Z) / ∂ᵗδC⁰(Z)`.
pub fn critical_group(g: &DecoratedGraph) -> Result<FiniteAbelianGroup> {
    lattice_quotient(&divisor_lattice(g), &firing_lattice(g))
}

/// Generators of `∂̃ᵗC¹(Z)` inside `Q^V ⊕ Q^E`, where a character `a ∈ ⊕ Z/t_e`
/// is stored as `a_e / t_e` modulo `Z^E`.
fn extended_divisor_generators(g: &DecoratedGraph) -> RatMatrix {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let d = partial_t_matrix(g);
    let boundary = RatMatrix::from_fn(n + m, m, |i, e| {
        if i < n {
            d[(i, e)].clone()
        } else if i - n == e {
            BigRational::new(BigInt::one(), BigInt::from(g.edges()[e].thickness))
        } else {
            BigRational::zero()
        }
    });
    boundary.hstack(&integer_edge_block(n, m))
}

/// Generators of `∂̃ᵗδC⁰(Z)` in the same ambient space.
fn extended_firing_generators(g: &DecoratedGraph) -> RatMatrix {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let l = laplacian(g);
    let firing = RatMatrix::from_fn(n + m, n, |i, v| {
        if i < n {
            return l[(i, v)].clone();
        }
        let edge = &g.edges()[i - n];
        let coefficient = i64::from(edge.head == v) - i64::from(edge.tail == v);
        BigRational::new(coefficient.into(), BigInt::from(edge.thickness))
    });
    firing.hstack(&integer_edge_block(n, m))
}

/// `(0, χ_e)` for every edge: the characters are taken modulo these.
fn integer_edge_block(n: usize, m: usize) -> RatMatrix {
    RatMatrix::from_fn(n + m, m, |i, e| {
        if i == n + e {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// `Φ_t = ∂̃ᵗC¹(Z) / ∂̃ᵗδC⁰(Z)` with `∂̃ᵗ = (∂ᵗ, c mod t)`.
pub fn component_group(g: &DecoratedGraph) -> Result<FiniteAbelianGroup> {
    lattice_quotient(
        &Lattice::new(extended_divisor_generators(g)),
        &Lattice::new(extended_firing_generators(g)),
    )
}

/// `N = lcm(ℓt_e)` (1 without edges) and the integer matrix `A[v][e] = ±N/(ℓt_e)`
/// whose kernel modulo `N` is `ker ∂_{ℓt}`.
fn congruence_rows(g: &DecoratedGraph, level: u64) -> (BigInt, Vec<BigInt>, IntMatrix) {
    let moduli = level_moduli(g, level);
    let n = moduli.iter().fold(BigInt::one(), |acc, m| acc.lcm(m));
    let mut a = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let w = &n / &moduli[e];
        a[(edge.head, e)] += &w;
        a[(edge.tail, e)] -= &w;
    }
    (n, moduli, a)
}

/// The subgroup of `⊕_e Z/(ℓt_e)` cut out by `A·a ≡ 0 (mod N)`, where the rows of
/// `A` are the vertex balance conditions followed by `extra` (already scaled to modulus `N`).
pub(crate) fn congruence_subgroup(
    g: &DecoratedGraph,
    level: u64,
    extra: impl FnOnce(&BigInt) -> IntMatrix,
) -> Result<FiniteAbelianGroup> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let (n, moduli, a) = congruence_rows(g, level);
    let rows = a.vstack(&extra(&n));
    let m = g.edge_count();
    let k = rows.nrows();
    // Integer solutions of [rows | N·I] (a, y) = 0, projected to the a-coordinates.
    let system = rows.hstack(&IntMatrix::diagonal(&vec![n.clone(); k]));
    let kernel = integer_kernel(&system);
    let projected = kernel.select_rows(&(0..m).collect::<Vec<_>>());
    let big = Lattice::from_integer(&projected);
    let small = Lattice::from_integer(&IntMatrix::diagonal(&moduli));
    lattice_quotient(&big, &small)
}

/// `ker ∂_{ℓt} ⊆ ⊕_e Z/(ℓt_e)`: characters whose fractional degree balances at every vertex.
pub fn character_kernel(g: &DecoratedGraph, level: u64) -> Result<FiniteAbelianGroup> {
    congruence_subgroup(g, level, |_| IntMatrix::zeros(0, g.edge_count()))
}

/// `ker ∂_t` assembled from the Betti filtrations: `(Z/p^l)^{b_{p,l} − b_{p,l+1}}` over primes and `l ≥ 1`.
pub fn character_kernel_closed_form(g: &DecoratedGraph) -> Result<FiniteAbelianGroup> {
    let mut orders = Vec::new();
    for p in g.thickness_primes() {
        let mut b = g.betti_filtration(p)?;
        b.push(0);
        for l in 1..b.len() {
            let multiplicity = b[l - 1] - b[l];
            let q = BigInt::from(p).pow(l as u32);
            orders.extend(std::iter::repeat_n(q, multiplicity));
        }
    }
    Ok(FiniteAbelianGroup::from_cyclic_factors(&orders))
}

/// `c_t = det(L_{a,a})·Π t_e`, computed for two deleted indices which must agree.
pub fn complexity(g: &DecoratedGraph) -> Result<BigInt> {
    let l = laplacian(g);
    let last = g.vertex_count() - 1;
    let first_minor = l.minor(0, 0).determinant();
    let last_minor = l.minor(last, last).determinant();
    if first_minor != last_minor {
        return Err(Error::FormulaMismatch(format!(
            "principal minors disagree: {first_minor} at index 0, {last_minor} at index {last}"
        )));
    }
    let value = first_minor * BigRational::from_integer(g.thickness_product());
    if !value.is_integer() {
        return Err(Error::FormulaMismatch(format!(
            "complexity {value} is not an integer"
        )));
    }
    Ok(value.to_integer())
}

/// `Π_p Π_{l=1..max_p} p^{b_{p,l}}`.
pub fn filtration_weight(g: &DecoratedGraph) -> Result<BigInt> {
    let mut w = BigInt::one();
    for p in g.thickness_primes() {
        let exponent: usize = g.betti_filtration(p)?.iter().sum();
        w *= BigInt::from(p).pow(exponent as u32);
    }
    Ok(w)
}

/// `|K_t|` predicted as `c_t / Π_p Π_{l≥1} p^{b_{p,l}}`. Fails if the division is not exact.
pub fn critical_order(g: &DecoratedGraph) -> Result<BigInt> {
    let c = complexity(g)?;
    let w = filtration_weight(g)?;
    let (q, r) = c.div_rem(&w);
    if !r.is_zero() {
        return Err(Error::FormulaMismatch(format!(
            "complexity {c} is not divisible by the filtration weight {w}"
        )));
    }
    Ok(q)
}

pub fn verify_extension(g: &DecoratedGraph) -> Result<ExtensionReport> {
    let kernel = character_kernel(g, 1)?;
    let total = component_group(g)?;
    let quotient = critical_group(g)?;
    let orders_multiply = match (kernel.order(), total.order(), quotient.order()) {
        (Some(k), Some(t), Some(q)) => t == k * q,
        _ => false,
    };
    let injection_verified = kernel_injects(g, &kernel)?;
    Ok(ExtensionReport {
        kernel,
        total,
        quotient,
        orders_multiply,
        injection_verified,
    })
}

/// Pushes lattice generators of `ker ∂_t` to `(0, a/t)` in the ambient space of
/// `Φ_t`, checks they lie in `∂̃ᵗC¹(Z)`, and that they span a subgroup of order `|kernel|`.
fn kernel_injects(g: &DecoratedGraph, kernel: &FiniteAbelianGroup) -> Result<bool> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let (big_n, _, a) = congruence_rows(g, 1);
    let system = a.hstack(&IntMatrix::diagonal(&vec![big_n; n]));
    let solutions = integer_kernel(&system);
    let images = RatMatrix::from_fn(n + m, solutions.ncols(), |i, j| {
        if i < n {
            BigRational::zero()
        } else {
            BigRational::new(
                solutions[(i - n, j)].clone(),
                BigInt::from(g.edges()[i - n].thickness),
            )
        }
    });
    let big = Lattice::new(extended_divisor_generators(g));
    let small = Lattice::new(extended_firing_generators(g));
    let image = small.sum(&Lattice::new(images.clone()));
    if !big.contains_lattice(&Lattice::new(images)) {
        return Ok(false);
    }
    let image_group = lattice_quotient(&image, &small)?;
    Ok(image_group.order() == kernel.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{banana, loop_graph, segment, triangle};

    fn z(n: i64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    #[test]
    fn critical_group_examples() {
        assert_eq!(critical_group(&banana(1, 1)).unwrap(), z(2));
        assert_eq!(critical_group(&banana(2, 2)).unwrap(), z(2));
        assert_eq!(critical_group(&banana(2, 3)).unwrap(), z(5));
        assert_eq!(critical_group(&banana(4, 6)).unwrap(), z(5));
        assert!(critical_group(&loop_graph(6)).unwrap().is_trivial());
    }

    #[test]
    fn component_group_examples() {
        assert_eq!(component_group(&banana(1, 1)).unwrap(), z(2));
        assert_eq!(
            component_group(&banana(2, 3)).unwrap().order(),
            Some(5.into())
        );
        assert_eq!(component_group(&banana(2, 2)).unwrap(), z(4));
        assert_eq!(component_group(&loop_graph(6)).unwrap(), z(6));
        assert!(component_group(&segment(5)).unwrap().is_trivial());
    }

    #[test]
    fn character_kernel_examples() {
        assert!(character_kernel(&banana(1, 1), 1).unwrap().is_trivial());
        assert_eq!(character_kernel(&banana(2, 2), 1).unwrap(), z(2));
        assert_eq!(character_kernel(&loop_graph(4), 1).unwrap(), z(4));
        assert_eq!(character_kernel(&banana(1, 1), 2).unwrap(), z(2));
        assert_eq!(character_kernel(&loop_graph(1), 3).unwrap(), z(3));
        assert!(character_kernel(&segment(5), 1).unwrap().is_trivial());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(character_kernel_closed_form(&banana(2, 2)).unwrap(), z(2));
        assert_eq!(character_kernel_closed_form(&banana(2, 4)).unwrap(), z(2));
        assert_eq!(character_kernel(&banana(2, 4), 1).unwrap(), z(2));
        assert!(character_kernel_closed_form(&triangle(1, 1, 1))
            .unwrap()
            .is_trivial());
        assert_eq!(
            character_kernel_closed_form(&loop_graph(12)).unwrap(),
            z(12)
        );
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(&banana(2, 3)).unwrap(), BigInt::from(5));
        assert_eq!(complexity(&triangle(1, 2, 3)).unwrap(), BigInt::from(6));
        assert_eq!(complexity(&loop_graph(7)).unwrap(), BigInt::from(7));
        assert_eq!(complexity(&segment(4)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn critical_order_examples() {
        assert_eq!(critical_order(&banana(2, 2)).unwrap(), BigInt::from(2));
        assert_eq!(critical_order(&banana(1, 1)).unwrap(), BigInt::from(2));
        assert_eq!(critical_order(&loop_graph(12)).unwrap(), BigInt::one());
    }

    #[test]
    fn extension_examples() {
        let r = verify_extension(&banana(2, 2)).unwrap();
        assert_eq!(
            (r.kernel.clone(), r.total.order(), r.quotient.clone()),
            (z(2), Some(4.into()), z(2))
        );
        assert!(r.orders_multiply && r.injection_verified);
        let r = verify_extension(&banana(1, 1)).unwrap();
        assert!(r.kernel.is_trivial());
        assert_eq!((r.total.clone(), r.quotient.clone()), (z(2), z(2)));
        let r = verify_extension(&loop_graph(6)).unwrap();
        assert_eq!((r.kernel.clone(), r.total.clone()), (z(6), z(6)));
        assert!(r.quotient.is_trivial() && r.orders_multiply && r.injection_verified);
    }
}
