//! Fractional chip-firing. A divisor is a rational vertex function in the lattice
//! spanned by the edge boundaries `∂ᵗχ_e`; firing `v` moves `1/t_e` of a chip from
//! `v` across every non-loop edge at `v`. Classes modulo firing form `K_t`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cochain::{laplacian, Cochain0};
use crate::critical::{divisor_lattice, firing_lattice};
use crate::error::{Error, Result};
use crate::graph::DecoratedGraph;
use crate::linalg::{quotient_presentation, QuotientPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor(Cochain0);

impl Divisor {
    pub fn new(g: &DecoratedGraph, f: Cochain0) -> Result<Self> {
        if f.0.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: g.vertex_count(),
                found: f.0.len(),
            });
        }
        if !is_divisor(g, &f) {
            return Err(Error::NotADivisor);
        }
        Ok(Divisor(f))
    }

    pub fn zero(g: &DecoratedGraph) -> Self {
        Divisor(Cochain0::zero(g))
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0 .0
    }

    pub fn cochain(&self) -> &Cochain0 {
        &self.0
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.sub(&other.0))
    }
}

pub fn is_divisor(g: &DecoratedGraph, f: &Cochain0) -> bool {
    f.0.len() == g.vertex_count() && divisor_lattice(g).contains(&f.0)
}

/// Fires vertex `v`: `b − Lχ_v`, so `v` loses `Σ 1/t_e` and each neighbour gains `1/t_e` per edge.
pub fn fire(g: &DecoratedGraph, b: &Divisor, v: &str) -> Result<Divisor> {
    let index = g
        .vertex_index(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    let column = laplacian(g).column(index);
    Ok(Divisor(Cochain0(
        b.values().iter().zip(column).map(|(x, l)| x - l).collect(),
    )))
}

/// `b₁ − b₂ ∈ ∂ᵗδC⁰(Z)`.
pub fn equivalent(g: &DecoratedGraph, b1: &Divisor, b2: &Divisor) -> bool {
    firing_lattice(g).contains(b1.sub(b2).values())
}

/// Presentation of `K_t` used to give divisor classes canonical coordinates.
pub fn class_presentation(g: &DecoratedGraph) -> Result<QuotientPresentation> {
    quotient_presentation(&divisor_lattice(g), &firing_lattice(g))
}

/// Coordinates of `[b]` in `⊕ Z/dᵢ`, one per invariant factor of `K_t`.
pub fn class_coordinates(g: &DecoratedGraph, b: &Divisor) -> Result<Vec<BigInt>> {
    let presentation = class_presentation(g)?;
    Ok(presentation
        .coordinates(b.values())
        .expect("divisors lie in the divisor lattice"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{partial_t, Cochain1};
    use crate::corpus::{banana, loop_graph};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn divisor(g: &DecoratedGraph, xs: &[(i64, i64)]) -> Result<Divisor> {
        Divisor::new(g, Cochain0(xs.iter().map(|&(n, d)| r(n, d)).collect()))
    }

    #[test]
    fn firing_examples() {
        let b = banana(2, 2);
        let f = fire(&b, &Divisor::zero(&b), "v1").unwrap();
        assert_eq!(f.values(), &[r(-1, 1), r(1, 1)]);
        let b11 = banana(1, 1);
        let once = fire(&b11, &Divisor::zero(&b11), "v1").unwrap();
        let back = fire(&b11, &once, "v2").unwrap();
        assert_eq!(back, Divisor::zero(&b11));
        let l = loop_graph(3);
        assert_eq!(
            fire(&l, &Divisor::zero(&l), "v").unwrap(),
            Divisor::zero(&l)
        );
        assert_eq!(
            fire(&b, &Divisor::zero(&b), "nope"),
            Err(Error::UnknownVertex("nope".into()))
        );
    }

    #[test]
    fn membership_examples() {
        let b = banana(2, 2);
        assert!(divisor(&b, &[(-1, 2), (1, 2)]).is_ok());
        assert_eq!(divisor(&b, &[(1, 1), (0, 1)]), Err(Error::NotADivisor));
        assert_eq!(divisor(&b, &[(-1, 3), (1, 3)]), Err(Error::NotADivisor));
    }

    #[test]
    fn equivalence_examples() {
        let b = banana(1, 1);
        let d = divisor(&b, &[(-1, 1), (1, 1)]).unwrap();
        assert!(equivalent(&b, &d, &fire(&b, &d, "v2").unwrap()));
        assert!(!equivalent(&b, &d, &Divisor::zero(&b)));
        assert!(equivalent(&b, &d, &d));
    }

    #[test]
    fn coordinates_examples() {
        let b = banana(1, 1);
        assert_eq!(
            class_coordinates(&b, &Divisor::zero(&b)).unwrap(),
            vec![BigInt::from(0)]
        );
        let e1 = partial_t(&b, &Cochain1::indicator(&b, 0)).unwrap();
        let d = Divisor::new(&b, e1).unwrap();
        assert_eq!(class_coordinates(&b, &d).unwrap(), vec![BigInt::from(1)]);
        assert_eq!(
            class_coordinates(&b, &d.add(&d)).unwrap(),
            vec![BigInt::from(0)]
        );
    }
}
