//! Cochains on a decorated graph, the differentials `δ` and `∂ᵗ`, the weighted
//! pairings, the Laplacian, and reduction of integer 1-cochains to node characters.
//!
//! Conventions, for an edge `e` with tail `e₋` and head `e₊`:
//!
//! * `(δf)(e) = f(e₊) − f(e₋)`;
//! * `∂ᵗχ_e = (χ_{e₊} − χ_{e₋}) / t_e`;
//! * `L = ∂ᵗ∘δ` is positive semidefinite, with `L[v][v] = Σ_{e ∋ v, non-loop} 1/t_e`.
//!
//! Loops vanish under both differentials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::DecoratedGraph;
use crate::linalg::{IntMatrix, RatMatrix};

/// Rational values on vertices, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain0(pub Vec<BigRational>);

/// Rational values on edges in their reference orientation, in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain1(pub Vec<BigRational>);

impl Cochain0 {
    pub fn zero(g: &DecoratedGraph) -> Self {
        Cochain0(vec![BigRational::zero(); g.vertex_count()])
    }

    /// `χ_v`.
    pub fn indicator(g: &DecoratedGraph, v: usize) -> Self {
        let mut c = Self::zero(g);
        c.0[v] = BigRational::one();
        c
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Cochain0(
            values
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn total(&self) -> BigRational {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Cochain0(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Cochain0(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Cochain0(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Cochain1 {
    pub fn zero(g: &DecoratedGraph) -> Self {
        Cochain1(vec![BigRational::zero(); g.edge_count()])
    }

    /// `χ_e`.
    pub fn indicator(g: &DecoratedGraph, e: usize) -> Self {
        let mut c = Self::zero(g);
        c.0[e] = BigRational::one();
        c
    }

    pub fn from_integers(values: &[BigInt]) -> Self {
        Cochain1(
            values
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    /// The integer values, or the first non-integral position.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.0
            .iter()
            .enumerate()
            .map(|(index, x)| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(Error::NonInteger { index })
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// An element of `⊕_e Z/(ℓ·t_e)` at an explicit level `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterVector {
    level: u64,
    moduli: Vec<BigInt>,
    residues: Vec<BigInt>,
}

impl CharacterVector {
    /// Reduces `values` modulo `ℓ·t_e` edge by edge.
    pub fn new(g: &DecoratedGraph, level: u64, values: &[BigInt]) -> Result<Self> {
        if level == 0 {
            return Err(Error::Precondition(
                "character level must be positive".into(),
            ));
        }
        check_len(g.edge_count(), values.len())?;
        let moduli = level_moduli(g, level);
        let residues = values
            .iter()
            .zip(&moduli)
            .map(|(x, m)| x.mod_floor(m))
            .collect();
        Ok(CharacterVector {
            level,
            moduli,
            residues,
        })
    }

    pub fn zero(g: &DecoratedGraph, level: u64) -> Result<Self> {
        Self::new(g, level, &vec![BigInt::zero(); g.edge_count()])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `ℓ·t_e` per edge.
    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b).mod_floor(m))
            .collect();
        Ok(CharacterVector {
            level: self.level,
            moduli: self.moduli.clone(),
            residues,
        })
    }

    pub fn neg(&self) -> Self {
        let residues = self
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(a, m)| (-a).mod_floor(m))
            .collect();
        CharacterVector {
            level: self.level,
            moduli: self.moduli.clone(),
            residues,
        }
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        check_len(self.moduli.len(), other.moduli.len())
    }

    /// Fails unless this vector lives at `level` on a graph with `edges` edges.
    pub fn expect_level(&self, level: u64, edges: usize) -> Result<()> {
        if self.level != level {
            return Err(Error::LevelMismatch {
                expected: level,
                found: self.level,
            });
        }
        check_len(edges, self.residues.len())
    }
}

pub(crate) fn level_moduli(g: &DecoratedGraph, level: u64) -> Vec<BigInt> {
    g.edges()
        .iter()
        .map(|e| BigInt::from(level) * BigInt::from(e.thickness))
        .collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub fn delta(g: &DecoratedGraph, f: &Cochain0) -> Result<Cochain1> {
    check_len(g.vertex_count(), f.0.len())?;
    Ok(Cochain1(
        g.edges()
            .iter()
            .map(|e| &f.0[e.head] - &f.0[e.tail])
            .collect(),
    ))
}

pub fn partial_t(g: &DecoratedGraph, h: &Cochain1) -> Result<Cochain0> {
    check_len(g.edge_count(), h.0.len())?;
    let mut out = Cochain0::zero(g);
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let flow = &h.0[e] / BigRational::from_integer(edge.thickness.into());
        out.0[edge.head] += &flow;
        out.0[edge.tail] -= &flow;
    }
    Ok(out)
}

/// Signed incidence matrix `I` (`|V| × |E|`): `+1` at the head, `−1` at the tail, zero columns for loops.
pub fn incidence_matrix(g: &DecoratedGraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        m[(edge.head, e)] = BigInt::one();
        m[(edge.tail, e)] = -BigInt::one();
    }
    m
}

/// Matrix of `∂ᵗ`: the incidence matrix with column `e` divided by `t_e`.
pub fn partial_t_matrix(g: &DecoratedGraph) -> RatMatrix {
    let inc = incidence_matrix(g);
    RatMatrix::from_fn(g.vertex_count(), g.edge_count(), |v, e| {
        BigRational::new(inc[(v, e)].clone(), BigInt::from(g.edges()[e].thickness))
    })
}

/// `L = I_t · Iᵀ`, the matrix of `∂ᵗ∘δ` in the vertex basis.
pub fn laplacian(g: &DecoratedGraph) -> RatMatrix {
    let n = g.vertex_count();
    let mut l = RatMatrix::zeros(n, n);
    for edge in g.edges() {
        if edge.is_loop() {
            continue;
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(edge.thickness));
        let (a, b) = (edge.tail, edge.head);
        l[(a, a)] += &w;
        l[(b, b)] += &w;
        l[(a, b)] -= &w;
        l[(b, a)] -= &w;
    }
    l
}

/// `Σ_v f₁(v) f₂(v)`.
pub fn pairing0(f1: &Cochain0, f2: &Cochain0) -> BigRational {
    f1.0.iter().zip(&f2.0).map(|(a, b)| a * b).sum()
}

/// `Σ_e h₁(e) h₂(e) / t_e`.
pub fn pairing1(g: &DecoratedGraph, h1: &Cochain1, h2: &Cochain1) -> Result<BigRational> {
    check_len(g.edge_count(), h1.0.len())?;
    check_len(g.edge_count(), h2.0.len())?;
    Ok(g.edges()
        .iter()
        .zip(h1.0.iter().zip(&h2.0))
        .map(|(e, (a, b))| a * b / BigRational::from_integer(e.thickness.into()))
        .sum())
}

/// Residues of an integer 1-cochain modulo `ℓ·t_e`.
pub fn reduce_characters(g: &DecoratedGraph, c: &Cochain1, level: u64) -> Result<CharacterVector> {
    check_len(g.edge_count(), c.0.len())?;
    CharacterVector::new(g, level, &c.to_integers()?)
}

/// `∂̃ᵗc = (∂ᵗc, c mod t)`.
pub fn tilde_partial(g: &DecoratedGraph, c: &Cochain1) -> Result<(Cochain0, CharacterVector)> {
    let chars = reduce_characters(g, c, 1)?;
    Ok((partial_t(g, c)?, chars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{banana, loop_graph};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn delta_examples() {
        let b = banana(1, 1);
        let d = delta(&b, &Cochain0::indicator(&b, 0)).unwrap();
        assert_eq!(d.0, vec![r(-1, 1), r(-1, 1)]);
        assert!(delta(&b, &Cochain0::from_integers(&[7, 7]))
            .unwrap()
            .is_zero());
        let l = loop_graph(3);
        assert!(delta(&l, &Cochain0::from_integers(&[5])).unwrap().is_zero());
    }

    #[test]
    fn partial_examples() {
        let b = banana(2, 3);
        let p = partial_t(&b, &Cochain1::indicator(&b, 0)).unwrap();
        assert_eq!(p.0, vec![r(-1, 2), r(1, 2)]);
        let b11 = banana(1, 1);
        assert!(partial_t(&b11, &Cochain1::from_integers(&ints(&[1, -1])))
            .unwrap()
            .is_zero());
        let l = loop_graph(4);
        assert!(partial_t(&l, &Cochain1::indicator(&l, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            laplacian(&banana(1, 1)),
            RatMatrix::from_i64_rows(&[vec![2, -2], vec![-2, 2]])
        );
        assert_eq!(
            laplacian(&banana(2, 2)),
            RatMatrix::from_i64_rows(&[vec![1, -1], vec![-1, 1]])
        );
        assert_eq!(
            laplacian(&loop_graph(5)),
            RatMatrix::from_i64_rows(&[vec![0]])
        );
    }

    #[test]
    fn laplacian_is_partial_of_delta() {
        let g = crate::corpus::triangle(2, 3, 5);
        let l = laplacian(&g);
        for v in 0..g.vertex_count() {
            let col = partial_t(&g, &delta(&g, &Cochain0::indicator(&g, v)).unwrap()).unwrap();
            assert_eq!(col.0, l.column(v));
        }
        let m = partial_t_matrix(&g).mul_matrix(&incidence_matrix(&g).transpose().to_rational());
        assert_eq!(m, l);
    }

    #[test]
    fn pairing_examples() {
        let b = banana(2, 3);
        let e1 = Cochain1::indicator(&b, 0);
        let e2 = Cochain1::indicator(&b, 1);
        assert_eq!(pairing1(&b, &e1, &e1).unwrap(), r(1, 2));
        assert_eq!(pairing1(&b, &e1, &e2).unwrap(), r(0, 1));
        let v1 = Cochain0::indicator(&b, 0);
        let lhs = pairing1(&b, &delta(&b, &v1).unwrap(), &e1).unwrap();
        let rhs = pairing0(&v1, &partial_t(&b, &e1).unwrap());
        assert_eq!(lhs, r(-1, 2));
        assert_eq!(rhs, r(-1, 2));
    }

    #[test]
    fn reduction_examples() {
        let b = banana(2, 3);
        let a = reduce_characters(&b, &Cochain1::from_integers(&ints(&[5, 7])), 1).unwrap();
        assert_eq!(a.residues(), &ints(&[1, 1])[..]);
        assert_eq!(a.moduli(), &ints(&[2, 3])[..]);
        let z = reduce_characters(&b, &Cochain1::from_integers(&ints(&[4, -6])), 2).unwrap();
        assert!(z.is_zero());
        let b11 = banana(1, 1);
        let a = reduce_characters(&b11, &Cochain1::from_integers(&ints(&[1, 0])), 2).unwrap();
        assert_eq!(a.residues(), &ints(&[1, 0])[..]);
        let half = Cochain1(vec![r(1, 2), r(0, 1)]);
        assert_eq!(
            reduce_characters(&b11, &half, 1),
            Err(Error::NonInteger { index: 0 })
        );
    }

    #[test]
    fn tilde_partial_examples() {
        let b = banana(2, 3);
        let (d, a) = tilde_partial(&b, &Cochain1::indicator(&b, 0)).unwrap();
        assert_eq!(d.0, vec![r(-1, 2), r(1, 2)]);
        assert_eq!(a.residues(), &ints(&[1, 0])[..]);
        let (d, a) = tilde_partial(&b, &Cochain1::zero(&b)).unwrap();
        assert!(d.is_zero() && a.is_zero());
        let b11 = banana(1, 1);
        let (d, a) = tilde_partial(&b11, &Cochain1::from_integers(&ints(&[-1, -1]))).unwrap();
        assert_eq!(d.0, vec![r(2, 1), r(-2, 1)]);
        assert!(a.is_zero());
    }

    #[test]
    fn character_levels_do_not_mix() {
        let b = banana(1, 1);
        let a = CharacterVector::zero(&b, 2).unwrap();
        let c = CharacterVector::zero(&b, 3).unwrap();
        assert_eq!(
            a.add(&c),
            Err(Error::LevelMismatch {
                expected: 2,
                found: 3
            })
        );
    }
}
