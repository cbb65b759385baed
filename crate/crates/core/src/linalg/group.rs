use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::snf;

/// Isomorphism type of a finitely generated abelian group:
/// `Z/d₁ ⊕ … ⊕ Z/d_r ⊕ Z^f` with `2 ≤ d₁ | d₂ | … | d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors(&[n.into()])
    }

    /// Reads a Smith diagonal: ones vanish, zeros become free rank.
    /// The nonzero entries must already form a divisibility chain.
    pub fn from_smith_diagonal(diagonal: &[BigInt]) -> Self {
        let mut invariant_factors = Vec::new();
        let mut free_rank = 0;
        for d in diagonal {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                invariant_factors.push(d.clone());
            }
        }
        debug_assert!(invariant_factors
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0])));
        FiniteAbelianGroup {
            invariant_factors,
            free_rank,
        }
    }

    /// `⊕ Z/nᵢ` for arbitrary orders `nᵢ` (zero meaning a copy of Z), normalized.
    pub fn from_cyclic_factors(orders: &[BigInt]) -> Self {
        let d = IntMatrix::diagonal(orders);
        Self::from_smith_diagonal(&snf(&d).diagonal())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let mut g = Self::from_cyclic_factors(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Largest invariant factor, 1 for the trivial group, `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(
            self.invariant_factors
                .last()
                .cloned()
                .unwrap_or_else(BigInt::one),
        )
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_factors_normalize() {
        let g = FiniteAbelianGroup::from_cyclic_factors(&ints(&[2, 3, 4]));
        assert_eq!(g.invariant_factors(), &ints(&[2, 12])[..]);
        assert_eq!(g.order(), Some(BigInt::from(24)));
        assert_eq!(g.exponent(), Some(BigInt::from(12)));
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn trivial_group() {
        let g = FiniteAbelianGroup::from_cyclic_factors(&ints(&[1, 1]));
        assert!(g.is_trivial());
        assert_eq!(g.order(), Some(BigInt::one()));
        assert_eq!(g.exponent(), Some(BigInt::one()));
        assert_eq!(g.to_string(), "0");
    }

    #[test]
    fn free_part() {
        let g = FiniteAbelianGroup::from_smith_diagonal(&ints(&[1, 3, 0]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "Z/3 + Z");
    }
}
