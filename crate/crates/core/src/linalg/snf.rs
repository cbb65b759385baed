//! Smith normal form with unimodular transforms, and the integer solvers built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d`, `d` diagonal with `d[0] | d[1] | …` and nonnegative entries.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            // Smallest nonzero |entry| in the trailing block; ties go to the lowest (row, col).
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[(i, j)].abs() < a[(bi, bj)].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, k)] / &a[(k, k)]);
                a.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(k, j)] / &a[(k, k)]);
                a.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row k and column k are clear; enforce divisibility of the trailing block.
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(k, k)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    finish(a, u, v)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { d, u, v }
}

/// Some integer solution of `a · x = b`, or `None` when the system has none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    let f = snf(a);
    let ub = f.u.mul_vector(b);
    let diag = f.diagonal();
    let mut y = vec![BigInt::zero(); a.ncols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, r) = rhs.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(f.v.mul_vector(&y))
}

/// A basis (as columns) of the integer kernel `{x ∈ Zⁿ : a·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let f = snf(a);
    let r = f.rank();
    let keep: Vec<usize> = (r..a.ncols()).collect();
    f.v.select_columns(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = snf(m);
        assert_eq!(
            f.u.mul_matrix(m).mul_matrix(&f.v),
            f.d,
            "u m v != d for {m}"
        );
        assert_eq!(f.u.determinant().abs(), BigInt::one());
        assert_eq!(f.v.determinant().abs(), BigInt::one());
        let diag = f.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        for i in 0..f.d.nrows() {
            for j in 0..f.d.ncols() {
                if i != j {
                    assert!(f.d[(i, j)].is_zero());
                }
            }
        }
        f
    }

    #[test]
    fn coprime_diagonal_merges() {
        let f = check(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.d, IntMatrix::identity(3));
        let f = check(&IntMatrix::from_i64_rows(&[vec![0]]));
        assert_eq!(f.diagonal(), vec![BigInt::zero()]);
    }

    #[test]
    fn rectangular_and_negative() {
        let f = check(&IntMatrix::from_i64_rows(&[
            vec![4, -6, 2],
            vec![-2, 8, 10],
        ]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        check(&IntMatrix::from_i64_rows(&[
            vec![0, 0],
            vec![0, -5],
            vec![3, 0],
        ]));
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let x = solve_integer(&a, &[4.into(), 9.into()]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        assert!(solve_integer(&a, &[3.into()]).is_none());
    }

    #[test]
    fn kernel_of_incidence_matrix() {
        // Triangle incidence matrix: kernel is the cycle.
        let a = IntMatrix::from_i64_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.ncols(), 1);
        assert!(a.mul_matrix(&k).is_zero());
        let c = k.column(0);
        assert!(c.iter().all(|x| x.abs() == BigInt::one()));
    }
}
