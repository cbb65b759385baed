//! Column-style Hermite normal form.
//!
//! The result `H = A·U` (with `U` unimodular) is lower echelon: every nonzero
//! column has a positive pivot strictly below the pivot of the previous
//! column, and the entries left of a pivot in its row lie in `[0, pivot)`.
//! Zero columns are moved to the right, so the shape of `A` is preserved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    /// Unimodular column transform with `a · transform = h`.
    pub transform: IntMatrix,
    /// Row index of the pivot of each nonzero column, in column order.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns of `h`: a basis of the column lattice.
    pub fn basis(&self) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rank()).collect();
        self.h.select_columns(&keep)
    }
}

pub fn hnf(a: &IntMatrix) -> IntMatrix {
    hermite_form(a).h
}

pub fn hermite_form(a: &IntMatrix) -> HermiteForm {
    let (rows, cols) = a.shape();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut pc = 0;

    for row in 0..rows {
        if pc == cols {
            break;
        }
        // Euclid across the columns pc.. in this row until one nonzero entry remains.
        loop {
            let pick = (pc..cols)
                .filter(|&j| !h[(row, j)].is_zero())
                .min_by(|&x, &y| h[(row, x)].abs().cmp(&h[(row, y)].abs()).then(x.cmp(&y)));
            let Some(j0) = pick else { break };
            h.swap_cols(pc, j0);
            u.swap_cols(pc, j0);
            let mut done = true;
            for j in pc + 1..cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = h[(row, j)].div_floor(&h[(row, pc)]);
                let neg = -q;
                h.add_col_multiple(j, pc, &neg);
                u.add_col_multiple(j, pc, &neg);
                if !h[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, pc)].is_zero() {
            continue;
        }
        if h[(row, pc)].is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let pivot = h[(row, pc)].clone();
        for j in 0..pc {
            let q: BigInt = h[(row, j)].div_floor(&pivot);
            if !q.is_zero() {
                let neg = -q;
                h.add_col_multiple(j, pc, &neg);
                u.add_col_multiple(j, pc, &neg);
            }
        }
        pivot_rows.push(row);
        pc += 1;
    }

    HermiteForm {
        h,
        transform: u,
        pivot_rows,
    }
}
