//! Component labels of the level-`ℓ` special fibre and their Galois-fixed part.
//!
//! A label is an element `a` of `ker ∂_{ℓt} ⊆ ⊕_e Z/(ℓt_e)`. It is fixed by `μ_ℓ`
//! exactly when the 1-cochain `a mod ℓ` is a coboundary over `Z/ℓ`, i.e. when
//! every fundamental-cycle sum `Σ_e c(e)·a_e` vanishes modulo `ℓ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cochain::{partial_t, CharacterVector, Cochain1};
use crate::critical::{character_kernel, component_group, congruence_subgroup, critical_group};
use crate::error::{Error, Result};
use crate::graph::DecoratedGraph;
use crate::linalg::{FiniteAbelianGroup, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub level: u64,
    /// `|ker ∂_{ℓt}|`.
    pub total_label_count: BigInt,
    pub fixed_label_count: BigInt,
    pub fixed_group: FiniteAbelianGroup,
    /// The fixed group is isomorphic to `Φ_t`.
    pub neron_match: bool,
    pub minimal_level: u64,
}

/// Exponent of `K_t`: the levels at which the fixed labels recover `Φ_t` are its multiples.
pub fn minimal_level(g: &DecoratedGraph) -> Result<u64> {
    let exponent = critical_group(g)?
        .exponent()
        .expect("critical group is finite");
    exponent.to_u64().ok_or_else(|| {
        Error::Precondition(format!("exponent {exponent} does not fit a machine level"))
    })
}

/// `|ker ∂_{ℓt}|`.
pub fn component_label_count(g: &DecoratedGraph, level: u64) -> Result<BigInt> {
    Ok(character_kernel(g, level)?
        .order()
        .expect("character kernel is finite"))
}

/// Whether `a` balances at every vertex, i.e. lies in `ker ∂_{ℓt}`.
pub fn in_character_kernel(g: &DecoratedGraph, a: &CharacterVector) -> Result<bool> {
    a.expect_level(a.level(), g.edge_count())?;
    let scaled = Cochain1(
        a.residues()
            .iter()
            .map(|x| BigRational::new(x.clone(), BigInt::from(a.level())))
            .collect(),
    );
    Ok(partial_t(g, &scaled)?.0.iter().all(BigRational::is_integer))
}

/// `Σ_e c(e)·a_e ≡ 0 (mod ℓ)` for every fundamental cycle `c`.
pub fn is_galois_fixed(g: &DecoratedGraph, a: &CharacterVector, level: u64) -> Result<bool> {
    a.expect_level(level, g.edge_count())?;
    let modulus = BigInt::from(level);
    let tree = g.one_spanning_tree()?;
    Ok(g.fundamental_cycles(&tree).iter().all(|c| {
        let s: BigInt = c.iter().zip(a.residues()).map(|(x, y)| x * y).sum();
        s.mod_floor(&modulus).is_zero()
    }))
}

/// Labels in `ker ∂_{ℓt}` that are fixed by `μ_ℓ`.
pub fn fixed_component_group(g: &DecoratedGraph, level: u64) -> Result<FiniteAbelianGroup> {
    let tree = g.one_spanning_tree()?;
    let cycles = g.fundamental_cycles(&tree);
    congruence_subgroup(g, level, |n| {
        let scale = n / BigInt::from(level);
        let rows: Vec<Vec<BigInt>> = cycles
            .iter()
            .map(|c| c.iter().map(|x| x * &scale).collect())
            .collect();
        IntMatrix::from_columns(g.edge_count(), &rows).transpose()
    })
}

pub fn decompose(g: &DecoratedGraph, level: u64) -> Result<DecompositionReport> {
    let total_label_count = component_label_count(g, level)?;
    let fixed_group = fixed_component_group(g, level)?;
    let fixed_label_count = fixed_group.order().expect("fixed group is finite");
    let neron_match = fixed_group == component_group(g)?;
    Ok(DecompositionReport {
        level,
        total_label_count,
        fixed_label_count,
        fixed_group,
        neron_match,
        minimal_level: minimal_level(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{banana, loop_graph, segment};

    fn label(g: &DecoratedGraph, level: u64, xs: &[i64]) -> CharacterVector {
        let v: Vec<BigInt> = xs.iter().map(|&x| x.into()).collect();
        CharacterVector::new(g, level, &v).unwrap()
    }

    #[test]
    fn minimal_levels() {
        assert_eq!(minimal_level(&banana(1, 1)).unwrap(), 2);
        assert_eq!(minimal_level(&loop_graph(5)).unwrap(), 1);
        assert_eq!(minimal_level(&banana(2, 2)).unwrap(), 2);
    }

    #[test]
    fn label_counts() {
        assert_eq!(
            component_label_count(&banana(1, 1), 2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            component_label_count(&segment(7), 1).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            component_label_count(&loop_graph(1), 3).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn galois_fixed_labels() {
        let b = banana(1, 1);
        assert!(is_galois_fixed(&b, &label(&b, 2, &[0, 0]), 2).unwrap());
        assert!(is_galois_fixed(&b, &label(&b, 2, &[1, 1]), 2).unwrap());
        let bad = label(&b, 2, &[1, 0]);
        assert!(!is_galois_fixed(&b, &bad, 2).unwrap());
        assert!(!in_character_kernel(&b, &bad).unwrap());
        assert!(in_character_kernel(&b, &label(&b, 2, &[1, 1])).unwrap());
        assert_eq!(
            is_galois_fixed(&b, &bad, 4),
            Err(Error::LevelMismatch {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn fixed_groups() {
        assert_eq!(
            fixed_component_group(&banana(1, 1), 2).unwrap(),
            FiniteAbelianGroup::cyclic(2)
        );
        assert_eq!(
            fixed_component_group(&banana(2, 3), 5).unwrap(),
            FiniteAbelianGroup::cyclic(5)
        );
        assert!(fixed_component_group(&banana(1, 1), 1)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn decomposition_reports() {
        let r = decompose(&banana(1, 1), 2).unwrap();
        assert!(r.neron_match);
        assert_eq!(
            (r.total_label_count.clone(), r.fixed_label_count.clone()),
            (2.into(), 2.into())
        );
        assert!(!decompose(&banana(1, 1), 3).unwrap().neron_match);
        let r = decompose(&loop_graph(1), 1).unwrap();
        assert!(r.neron_match);
        assert_eq!(r.total_label_count, BigInt::from(1));
    }
}
