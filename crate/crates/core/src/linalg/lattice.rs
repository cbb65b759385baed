//! Lattices in `Qⁿ` given by rational generators, and quotients of nested lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::FiniteAbelianGroup;
use super::hnf::hermite_form;
use super::matrix::{IntMatrix, RatMatrix};
use super::snf::snf;
use crate::error::{Error, Result};

/// The subgroup of `Qⁿ` generated over `Z` by the columns of a rational matrix.
/// Generators may be redundant.
#[derive(Clone, Debug)]
pub struct Lattice {
    generators: RatMatrix,
}

impl Lattice {
    pub fn new(generators: RatMatrix) -> Self {
        Lattice { generators }
    }

    pub fn from_integer(generators: &IntMatrix) -> Self {
        Lattice {
            generators: generators.to_rational(),
        }
    }

    /// The zero lattice in `Qⁿ`.
    pub fn zero(dim: usize) -> Self {
        Lattice {
            generators: RatMatrix::zeros(dim, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.generators.nrows()
    }

    pub fn generators(&self) -> &RatMatrix {
        &self.generators
    }

    /// Lattice generated by both generator sets.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            generators: self.generators.hstack(&other.generators),
        }
    }

    /// Smallest positive integer `s` with `s·L ⊆ Zⁿ`.
    pub fn scale(&self) -> BigInt {
        self.generators.denominator_lcm()
    }

    /// `(s, B)` with `B` the column-HNF basis of `s·L`. Unique for the lattice.
    pub fn canonical_basis(&self) -> (BigInt, IntMatrix) {
        let s = self.scale();
        let form = hermite_form(&self.generators.scaled_to_integers(&s));
        (s, form.basis())
    }

    pub fn rank(&self) -> usize {
        self.canonical_basis().1.ncols()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let s = self.scale();
        let (_, basis) = self.canonical_basis();
        let Some(target) = scale_vector(v, &s) else {
            return false;
        };
        echelon_coordinates(&basis, &target).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.generators.columns().iter().all(|c| self.contains(c))
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.dim() == other.dim() && self.canonical_basis() == other.canonical_basis()
    }
}

fn scale_vector(v: &[BigRational], s: &BigInt) -> Option<Vec<BigInt>> {
    let s = BigRational::from_integer(s.clone());
    v.iter()
        .map(|x| {
            let y = x * &s;
            y.is_integer().then(|| y.to_integer())
        })
        .collect()
}

/// Integer coordinates of `target` in a full-column-rank lower-echelon basis
/// (as produced by the column HNF), if they exist.
fn echelon_coordinates(basis: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let (rows, r) = basis.shape();
    let mut residual = target.to_vec();
    let mut coords = Vec::with_capacity(r);
    let mut row = 0;
    for j in 0..r {
        while basis[(row, j)].is_zero() {
            if !residual[row].is_zero() {
                return None;
            }
            row += 1;
        }
        let (q, rem) = residual[row].div_rem(&basis[(row, j)]);
        if !rem.is_zero() {
            return None;
        }
        for i in row..rows {
            let delta = &q * &basis[(i, j)];
            residual[i] -= delta;
        }
        coords.push(q);
        row += 1;
    }
    residual.iter().all(Zero::is_zero).then_some(coords)
}

/// The quotient `big / small` together with what is needed to give any element
/// of `big` canonical coordinates in `⊕ Z/dᵢ ⊕ Z^f`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    scale: BigInt,
    basis: IntMatrix,
    left: IntMatrix,
    diagonal: Vec<BigInt>,
    group: FiniteAbelianGroup,
}

impl QuotientPresentation {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Coordinates of the class of `v ∈ big`, one per invariant factor (reduced
    /// into `[0, dᵢ)`) followed by one per free summand. `None` if `v ∉ big`.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let target = scale_vector(v, &self.scale)?;
        let y = echelon_coordinates(&self.basis, &target)?;
        let z = self.left.mul_vector(&y);
        let mut finite = Vec::new();
        let mut free = Vec::new();
        for (d, x) in self.diagonal.iter().zip(z) {
            if d.is_zero() {
                free.push(x);
            } else if !d.is_one() {
                finite.push(x.mod_floor(d));
            }
        }
        finite.extend(free);
        Some(finite)
    }
}

/// Isomorphism type of `big / small`. Fails with the first small generator not in `big`.
pub fn lattice_quotient(big: &Lattice, small: &Lattice) -> Result<FiniteAbelianGroup> {
    Ok(quotient_presentation(big, small)?.group)
}

pub fn quotient_presentation(big: &Lattice, small: &Lattice) -> Result<QuotientPresentation> {
    if big.dim() != small.dim() {
        return Err(Error::DimensionMismatch {
            expected: big.dim(),
            found: small.dim(),
        });
    }
    let scale = big.scale().lcm(&small.scale());
    let basis = hermite_form(&big.generators.scaled_to_integers(&scale)).basis();
    let small_int = small.generators.scaled_to_integers(&scale);
    let r = basis.ncols();
    let mut coords = Vec::with_capacity(small_int.ncols());
    for j in 0..small_int.ncols() {
        match echelon_coordinates(&basis, &small_int.column(j)) {
            Some(c) => coords.push(c),
            None => return Err(Error::NotContained { column: j }),
        }
    }
    let relation = IntMatrix::from_columns(r, &coords);
    let form = snf(&relation);
    let mut diagonal = form.diagonal();
    diagonal.resize(r, BigInt::zero());
    let group = FiniteAbelianGroup::from_smith_diagonal(&diagonal);
    Ok(QuotientPresentation {
        scale,
        basis,
        left: form.u,
        diagonal,
        group,
    })
}
