use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// A particular integer solution together with a basis of the integer kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Flips a vector so its first nonzero entry is positive.
pub(crate) fn normalize_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
}

/// Solves `A·x = y` over the integers.
///
/// Returns `Ok(None)` when no integer solution exists.
pub fn solve_integer_system(a: &IntegerMatrix, y: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if y.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("right-hand side has length {} but the matrix has {} rows", y.len(), a.rows())));
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let w = snf.u.mul_vec(y)?;
    if w[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut z = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = w[i].div_rem(&snf.factors[i]);
        if !rem.is_zero() {
            return Ok(None);
        }
        z[i] = q;
    }
    let particular = snf.v.mul_vec(&z)?;
    let kernel = (r..a.cols())
        .map(|j| {
            let mut col = snf.v.column(j);
            normalize_sign(&mut col);
            col
        })
        .collect();
    Ok(Some(IntegerSolution { particular, kernel }))
}

/// Basis of the integer kernel of `a` (columns of the right Smith transform).
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols())
        .map(|j| {
            let mut col = snf.v.column(j);
            normalize_sign(&mut col);
            col
        })
        .collect()
}

/// Reduced row echelon form `R = T·M` together with the transform `T`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: RationalMatrix,
    pub transform: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rational_rref(m: &RationalMatrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = m.clone();
    let mut t = RationalMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r.get(i, col).is_zero()) else { continue };
        r.swap_rows(row, p);
        t.swap_rows(row, p);
        let inv = r.get(row, col).recip();
        if !inv.is_one() {
            for j in 0..cols {
                let v = r.get(row, j) * &inv;
                r.set(row, j, v);
            }
            for j in 0..rows {
                let v = t.get(row, j) * &inv;
                t.set(row, j, v);
            }
        }
        for i in 0..rows {
            if i == row {
                continue;
            }
            let f = r.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            let neg = -f;
            r.add_row_multiple(i, row, &neg);
            t.add_row_multiple(i, row, &neg);
        }
        pivots.push(col);
        row += 1;
    }
    Rref { reduced: r, transform: t, pivots }
}

/// Solves `M·x = y` over the rationals; free variables are set to zero.
pub fn solve_rational_system(m: &RationalMatrix, y: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if y.len() != m.rows() {
        return Err(Error::DimensionMismatch("rational system right-hand side".into()));
    }
    let rref = rational_rref(m);
    Ok(solve_with_rref(&rref, m.cols(), y))
}

pub(crate) fn solve_with_rref(rref: &Rref, cols: usize, y: &[BigRational]) -> Option<Vec<BigRational>> {
    let ty = rref.transform.mul_vec(y).expect("transform shape");
    if ty[rref.rank()..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in rref.pivots.iter().enumerate() {
        x[c] = ty[i].clone();
    }
    Some(x)
}

/// Multiplies each row of `[C | g]` by the lcm of its denominators.
pub(crate) fn clear_denominators(c: &RationalMatrix, g: &[BigRational]) -> (IntegerMatrix, Vec<BigInt>) {
    let mut out = IntegerMatrix::zeros(c.rows(), c.cols());
    let mut rhs = Vec::with_capacity(g.len());
    for (i, gi) in g.iter().enumerate().take(c.rows()) {
        let mut l = gi.denom().clone();
        for x in c.row(i) {
            l = l.lcm(x.denom());
        }
        let scale = BigRational::from_integer(l.abs());
        for j in 0..c.cols() {
            out.set(i, j, (c.get(i, j) * &scale).to_integer());
        }
        rhs.push((&g[i] * &scale).to_integer());
    }
    (out, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{int_vec, rat};

    #[test]
    fn one_by_one_systems() {
        let a = IntegerMatrix::from_rows_i64(&[vec![2]]).unwrap();
        let s = solve_integer_system(&a, &int_vec(&[4])).unwrap().unwrap();
        assert_eq!(s.particular, int_vec(&[2]));
        assert!(s.kernel.is_empty());
        assert!(solve_integer_system(&a, &int_vec(&[3])).unwrap().is_none());
    }

    #[test]
    fn rank_one_two_by_two() {
        let a = IntegerMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        let s = solve_integer_system(&a, &int_vec(&[1, 2])).unwrap().unwrap();
        assert_eq!(s.particular, int_vec(&[1, 0]));
        assert_eq!(s.kernel, vec![int_vec(&[2, -1])]);
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntegerMatrix::zeros(2, 2);
        assert!(matches!(solve_integer_system(&a, &int_vec(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rational_solve() {
        let m = RationalMatrix::from_integer_rows(&[vec![2, 0], vec![1, 1], vec![3, 1]]).unwrap();
        let x = solve_rational_system(&m, &[rat(1, 1), rat(1, 1), rat(2, 1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
        assert!(solve_rational_system(&m, &[rat(1, 1), rat(1, 1), rat(3, 1)]).unwrap().is_none());
    }
}
