//! The flow lattice `Λ_t` (thickness-scaled integer cycles), its discriminant
//! group `J_t`, and the map `ι` from `Φ_t` into Galois-fixed component labels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cochain::{laplacian, level_moduli, partial_t_matrix, CharacterVector};
use crate::critical::{component_group, critical_group};
use crate::error::{Error, Result};
use crate::fibre::{fixed_component_group, in_character_kernel, is_galois_fixed};
use crate::graph::DecoratedGraph;
use crate::linalg::{lattice_quotient, snf, solve_integer, FiniteAbelianGroup, IntMatrix, Lattice};

/// `G_ij = Σ_e t_e·h_i(e)·h_j(e)` for a basis `h` of integer cycles.
pub fn gram_matrix(g: &DecoratedGraph, cycles: &[Vec<BigInt>]) -> IntMatrix {
    let t: Vec<BigInt> = g
        .edges()
        .iter()
        .map(|e| BigInt::from(e.thickness))
        .collect();
    IntMatrix::from_fn(cycles.len(), cycles.len(), |i, j| {
        cycles[i]
            .iter()
            .zip(&cycles[j])
            .zip(&t)
            .map(|((a, b), w)| a * b * w)
            .sum()
    })
}

/// Gram matrix of the fundamental-cycle basis.
pub fn flow_gram(g: &DecoratedGraph) -> Result<IntMatrix> {
    let tree = g.one_spanning_tree()?;
    Ok(gram_matrix(g, &g.fundamental_cycles(&tree)))
}

/// Discriminant group of a nondegenerate integer Gram matrix.
pub fn discriminant_group(gram: &IntMatrix) -> FiniteAbelianGroup {
    FiniteAbelianGroup::from_smith_diagonal(&snf(gram).diagonal())
}

/// `J_t = Λ_t^# / Λ_t`.
pub fn jacobian_group(g: &DecoratedGraph) -> Result<FiniteAbelianGroup> {
    Ok(discriminant_group(&flow_gram(g)?))
}

/// The map `c ↦ ℓc − δb` with `L b = ℓ ∂ᵗc`, prepared for a fixed graph and level.
pub struct Iota<'g> {
    graph: &'g DecoratedGraph,
    level: u64,
    /// `T·L` with the first column removed, `T = lcm(t_e)`.
    system: IntMatrix,
    /// `T·ℓ·∂ᵗ` as an integer matrix.
    rhs: IntMatrix,
}

impl<'g> Iota<'g> {
    /// Fails unless `ℓ` is a positive multiple of the exponent of `K_t`.
    pub fn new(g: &'g DecoratedGraph, level: u64) -> Result<Self> {
        let exponent = critical_group(g)?
            .exponent()
            .expect("critical group is finite");
        if level == 0 || !BigInt::from(level).is_multiple_of(&exponent) {
            return Err(Error::Precondition(format!(
                "level {level} is not a multiple of the critical group exponent {exponent}"
            )));
        }
        let t_lcm = g
            .edges()
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(&BigInt::from(e.thickness)));
        let scaled_l = laplacian(g).scaled_to_integers(&t_lcm);
        let keep: Vec<usize> = (1..g.vertex_count()).collect();
        let system = scaled_l.select_columns(&keep);
        let rhs = partial_t_matrix(g).scaled_to_integers(&(t_lcm * BigInt::from(level)));
        Ok(Iota {
            graph: g,
            level,
            system,
            rhs,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `ι(c)` for an integer 1-cochain `c`.
    pub fn apply(&self, c: &[BigInt]) -> Result<CharacterVector> {
        let g = self.graph;
        if c.len() != g.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: g.edge_count(),
                found: c.len(),
            });
        }
        let target = self.rhs.mul_vector(c);
        let solution = solve_integer(&self.system, &target)
            .ok_or_else(|| Error::FormulaMismatch("no integral solution of L b = ℓ ∂ᵗc".into()))?;
        let mut b = vec![BigInt::zero()];
        b.extend(solution);
        let level = BigInt::from(self.level);
        let values: Vec<BigInt> = g
            .edges()
            .iter()
            .zip(c)
            .map(|(e, x)| &level * x - (&b[e.head] - &b[e.tail]))
            .collect();
        CharacterVector::new(g, self.level, &values)
    }
}

/// `ι(c)` at level `ℓ`.
pub fn iota(g: &DecoratedGraph, c: &[BigInt], level: u64) -> Result<CharacterVector> {
    Iota::new(g, level)?.apply(c)
}

/// Checks on `ι` at one level, made on generators and relations of `Φ_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaReport {
    pub level: u64,
    /// Subgroup of `⊕ Z/(ℓt_e)` generated by `ι(χ_e)`.
    pub image: FiniteAbelianGroup,
    pub fixed: FiniteAbelianGroup,
    /// Every `ι(χ_e)` lies in `ker ∂_{ℓt}` and is Galois-fixed.
    pub image_in_fixed: bool,
    /// `ι(δχ_v) = 0` and `ι(t·h) = 0` for the cycle basis `h`.
    pub kills_relations: bool,
    /// `|image| = |Φ_t|`.
    pub injective: bool,
    /// The image is the whole fixed subgroup.
    pub onto_fixed: bool,
}

impl IotaReport {
    pub fn all_hold(&self) -> bool {
        self.image_in_fixed && self.kills_relations && self.injective && self.onto_fixed
    }
}

/// `ι(χ_e)` for every edge.
pub fn iota_generator_images(map: &Iota<'_>) -> Result<Vec<CharacterVector>> {
    let m = map.graph.edge_count();
    (0..m)
        .map(|e| {
            let mut c = vec![BigInt::zero(); m];
            c[e] = BigInt::one();
            map.apply(&c)
        })
        .collect()
}

pub fn check_iota(g: &DecoratedGraph, level: u64) -> Result<IotaReport> {
    let map = Iota::new(g, level)?;
    let images = iota_generator_images(&map)?;

    let mut image_in_fixed = true;
    for a in &images {
        image_in_fixed &= in_character_kernel(g, a)? && is_galois_fixed(g, a, level)?;
    }

    let mut kills_relations = true;
    for v in 0..g.vertex_count() {
        let dv: Vec<BigInt> = g
            .edges()
            .iter()
            .map(|e| BigInt::from(i64::from(e.head == v) - i64::from(e.tail == v)))
            .collect();
        kills_relations &= map.apply(&dv)?.is_zero();
    }
    let tree = g.one_spanning_tree()?;
    for h in g.fundamental_cycles(&tree) {
        let th: Vec<BigInt> = h
            .iter()
            .zip(g.edges())
            .map(|(x, e)| x * BigInt::from(e.thickness))
            .collect();
        kills_relations &= map.apply(&th)?.is_zero();
    }

    let moduli = level_moduli(g, level);
    let columns: Vec<Vec<BigInt>> = images.iter().map(|a| a.residues().to_vec()).collect();
    let relations = IntMatrix::diagonal(&moduli);
    let generated = IntMatrix::from_columns(g.edge_count(), &columns).hstack(&relations);
    let image = lattice_quotient(
        &Lattice::from_integer(&generated),
        &Lattice::from_integer(&relations),
    )?;
    let fixed = fixed_component_group(g, level)?;
    let injective = image.order() == component_group(g)?.order();
    let onto_fixed = image_in_fixed && image.order() == fixed.order();
    Ok(IotaReport {
        level,
        image,
        fixed,
        image_in_fixed,
        kills_relations,
        injective,
        onto_fixed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelReport {
    pub component: FiniteAbelianGroup,
    pub jacobian: FiniteAbelianGroup,
    pub groups_match: bool,
    /// `ι` checked at the minimal level.
    pub iota: IotaReport,
}

impl AbelReport {
    pub fn holds(&self) -> bool {
        self.groups_match && self.iota.all_hold()
    }
}

pub fn abel_report(g: &DecoratedGraph) -> Result<AbelReport> {
    let component = component_group(g)?;
    let jacobian = jacobian_group(g)?;
    let exponent = critical_group(g)?
        .exponent()
        .expect("critical group is finite");
    let level = exponent.to_u64().ok_or_else(|| {
        Error::Precondition(format!("exponent {exponent} does not fit a machine level"))
    })?;
    let iota = check_iota(g, level)?;
    let groups_match = component == jacobian;
    Ok(AbelReport {
        component,
        jacobian,
        groups_match,
        iota,
    })
}

/// `Φ_t ≅ J_t`, together with the `ι` checks at the minimal level.
pub fn verify_abel(g: &DecoratedGraph) -> Result<bool> {
    Ok(abel_report(g)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{banana, loop_graph, segment, triangle};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gram_examples() {
        assert_eq!(
            flow_gram(&banana(2, 5)).unwrap(),
            IntMatrix::from_i64_rows(&[vec![7]])
        );
        assert_eq!(
            flow_gram(&loop_graph(4)).unwrap(),
            IntMatrix::from_i64_rows(&[vec![4]])
        );
        assert_eq!(flow_gram(&segment(3)).unwrap().shape(), (0, 0));
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(
            jacobian_group(&banana(2, 3)).unwrap(),
            FiniteAbelianGroup::cyclic(5)
        );
        assert_eq!(
            jacobian_group(&loop_graph(6)).unwrap(),
            FiniteAbelianGroup::cyclic(6)
        );
        assert_eq!(
            jacobian_group(&triangle(1, 1, 1)).unwrap(),
            FiniteAbelianGroup::cyclic(3)
        );
        assert!(jacobian_group(&segment(3)).unwrap().is_trivial());
    }

    #[test]
    fn iota_examples() {
        let b = banana(1, 1);
        assert!(iota(&b, &ints(&[0, 0]), 2).unwrap().is_zero());
        let a = iota(&b, &ints(&[1, 0]), 2).unwrap();
        assert_eq!(a.residues(), &ints(&[1, 1])[..]);
        let b22 = banana(2, 2);
        let a = iota(&b22, &ints(&[1, 0]), 2).unwrap();
        let moduli: Vec<u64> = a.moduli().iter().map(|m| m.to_u64().unwrap()).collect();
        let residues: Vec<u64> = a.residues().iter().map(|m| m.to_u64().unwrap()).collect();
        assert_eq!(crate::oracle::label_order(&residues, &moduli), 4);
        assert!(is_galois_fixed(&b22, &a, 2).unwrap());
    }

    #[test]
    fn iota_rejects_bad_levels() {
        assert!(matches!(
            iota(&banana(1, 1), &ints(&[1, 0]), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn abel_examples() {
        for (g, n) in [
            (banana(3, 5), 8),
            (loop_graph(6), 6),
            (triangle(1, 2, 3), 6),
        ] {
            let r = abel_report(&g).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.jacobian, FiniteAbelianGroup::cyclic(n));
        }
    }

    #[test]
    fn discriminant_ignores_basis_change() {
        let g = crate::corpus::random_corpus(3, 1, crate::corpus::RandomGraphParams::default())
            .remove(0);
        let tree = g.one_spanning_tree().unwrap();
        let cycles = g.fundamental_cycles(&tree);
        if cycles.len() < 2 {
            return;
        }
        let mut mixed = cycles.clone();
        let extra: Vec<BigInt> = mixed[0]
            .iter()
            .zip(&mixed[1])
            .map(|(a, b)| a + b * BigInt::from(3))
            .collect();
        mixed[0] = extra;
        mixed.swap(0, 1);
        assert_eq!(
            discriminant_group(&gram_matrix(&g, &cycles)),
            discriminant_group(&gram_matrix(&g, &mixed))
        );
    }
}
