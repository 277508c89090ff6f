//! Smith normal form over the integers.
//!
//! Elimination uses the smallest nonzero absolute value in the active
//! submatrix as pivot (ties broken by lowest row, then lowest column), so the
//! decomposition returned for a given matrix never varies between runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
///
/// The inverses of both transforms are carried along so that callers can move
/// between original and diagonal coordinates without re-inverting.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Nonzero invariant factors, in order.
    pub factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
            self.v_inv.swap_rows(i, j);
        }
    }

    /// row[dst] += f * row[src]
    fn row_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        // (E U)^{-1} = U^{-1} E^{-1}; E^{-1} subtracts, acting on columns.
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    /// col[dst] += f * col[src]
    fn col_add(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn smallest_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((_, _, b)) => ax < *b,
            };
            if better {
                let one = ax == BigInt::from(1);
                best = Some((i, j, ax));
                if one {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Computes the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let x = w.a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&pivot);
                w.row_add(i, t, &-q);
                if !w.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = w.a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&pivot);
                w.col_add(j, t, &-q);
                if !w.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest leftover in row/column t onto the diagonal
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..m {
                    let x = w.a.get(i, t);
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((true, i, x.abs()));
                    }
                }
                for j in t + 1..n {
                    let x = w.a.get(t, j);
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((false, j, x.abs()));
                    }
                }
                match best {
                    Some((true, i, _)) => w.swap_rows(t, i),
                    Some((false, j, _)) => w.swap_cols(t, j),
                    None => {}
                }
                continue;
            }
            // divisibility: pivot must divide the rest of the active block
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    let x = w.a.get(i, j);
                    if !x.is_zero() && !x.is_multiple_of(&pivot) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    w.row_add(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        factors.push(w.a.get(t, t).clone());
        t += 1;
    }
    SmithDecomposition { u: w.u, u_inv: w.u_inv, s: w.a, v: w.v, v_inv: w.v_inv, factors }
}
