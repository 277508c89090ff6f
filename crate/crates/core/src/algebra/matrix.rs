use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense row-major matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

macro_rules! dense_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, data: vec![<$elem>::zero(); rows * cols] }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.data[i * n + i] = <$elem>::one();
                }
                m
            }

            pub fn from_vec(rows: usize, cols: usize, data: Vec<$elem>) -> Result<Self> {
                if data.len() != rows * cols {
                    return Err(Error::DimensionMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
                }
                Ok(Self { rows, cols, data })
            }

            #[inline]
            pub fn rows(&self) -> usize {
                self.rows
            }

            #[inline]
            pub fn cols(&self) -> usize {
                self.cols
            }

            #[inline]
            pub fn get(&self, i: usize, j: usize) -> &$elem {
                &self.data[i * self.cols + j]
            }

            #[inline]
            pub fn get_mut(&mut self, i: usize, j: usize) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }

            #[inline]
            pub fn set(&mut self, i: usize, j: usize, v: $elem) {
                self.data[i * self.cols + j] = v;
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn column(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self.get(i, j).clone()).collect()
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(|x| x.is_zero())
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let v = self.get(i, j);
                        if !v.is_zero() {
                            t.set(j, i, v.clone());
                        }
                    }
                }
                t
            }

            pub fn mul(&self, other: &Self) -> Result<Self> {
                if self.cols != other.rows {
                    return Err(Error::DimensionMismatch(format!(
                        "cannot multiply {}x{} by {}x{}",
                        self.rows, self.cols, other.rows, other.cols
                    )));
                }
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let b = other.get(k, j);
                            if !b.is_zero() {
                                *out.get_mut(i, j) += a * b;
                            }
                        }
                    }
                }
                Ok(out)
            }

            pub fn mul_vec(&self, v: &[$elem]) -> Result<Vec<$elem>> {
                if v.len() != self.cols {
                    return Err(Error::DimensionMismatch(format!("vector of length {} against {} columns", v.len(), self.cols)));
                }
                let mut out = vec![<$elem>::zero(); self.rows];
                for (i, o) in out.iter_mut().enumerate() {
                    for (a, b) in self.row(i).iter().zip(v) {
                        if !a.is_zero() && !b.is_zero() {
                            *o += a * b;
                        }
                    }
                }
                Ok(out)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.rows != other.rows || self.cols != other.cols {
                    return Err(Error::DimensionMismatch("matrix sum shapes differ".into()));
                }
                let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
                Ok(Self { rows: self.rows, cols: self.cols, data })
            }

            pub fn scaled(&self, s: &$elem) -> Self {
                let data = self.data.iter().map(|a| a * s).collect();
                Self { rows: self.rows, cols: self.cols, data }
            }

            pub fn neg(&self) -> Self {
                let data = self.data.iter().map(|a| -a).collect();
                Self { rows: self.rows, cols: self.cols, data }
            }

            /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
            pub fn place(&mut self, r0: usize, c0: usize, block: &Self) {
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        let v = block.get(i, j);
                        if !v.is_zero() {
                            self.set(r0 + i, c0 + j, v.clone());
                        }
                    }
                }
            }

            pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
                let mut out = Self::zeros(rows.len(), cols.len());
                for (oi, i) in rows.clone().enumerate() {
                    for (oj, j) in cols.clone().enumerate() {
                        out.set(oi, oj, self.get(i, j).clone());
                    }
                }
                out
            }

            pub fn swap_rows(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }

            pub fn swap_cols(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }

            /// `row[dst] += factor * row[src]`
            pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for j in 0..self.cols {
                    let s = &self.data[src * self.cols + j];
                    if !s.is_zero() {
                        let v = s * factor;
                        self.data[dst * self.cols + j] += v;
                    }
                }
            }

            /// `col[dst] += factor * col[src]`
            pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for i in 0..self.rows {
                    let s = &self.data[i * self.cols + src];
                    if !s.is_zero() {
                        let v = s * factor;
                        self.data[i * self.cols + dst] += v;
                    }
                }
            }

            pub fn negate_row(&mut self, i: usize) {
                for j in 0..self.cols {
                    let v = &mut self.data[i * self.cols + j];
                    *v = -std::mem::take(v);
                }
            }

            pub fn negate_col(&mut self, j: usize) {
                for i in 0..self.rows {
                    let v = &mut self.data[i * self.cols + j];
                    *v = -std::mem::take(v);
                }
            }

            /// Stacks matrices with equal column counts on top of each other.
            pub fn vstack(parts: &[&Self], cols: usize) -> Result<Self> {
                let rows = parts.iter().map(|p| p.rows).sum();
                let mut out = Self::zeros(rows, cols);
                let mut r = 0;
                for p in parts {
                    if p.cols != cols {
                        return Err(Error::DimensionMismatch("vstack column counts differ".into()));
                    }
                    out.place(r, 0, p);
                    r += p.rows;
                }
                Ok(out)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{}x{} [", self.rows, self.cols)?;
                for i in 0..self.rows {
                    let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                    writeln!(f, "  [{}]", row.join(", "))?;
                }
                write!(f, "]")
            }
        }
    };
}

dense_common!(IntegerMatrix, BigInt);
dense_common!(RationalMatrix, BigRational);

impl IntegerMatrix {
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Self::from_vec(r, c, data)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect() }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }
}

impl RationalMatrix {
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Ok(IntegerMatrix::from_rows_i64(rows)?.to_rational())
    }

    /// Returns the matrix as integers when every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.is_integer() {
                return None;
            }
            data.push(x.to_integer());
        }
        Some(IntegerMatrix { rows: self.rows, cols: self.cols, data })
    }
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = IntegerMatrix::from_rows_i64(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntegerMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, IntegerMatrix::from_rows_i64(&[vec![2, 1], vec![4, 3]]).unwrap());
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = IntegerMatrix::from_rows_i64(&[vec![2, -1, 0], vec![4, 3, 5], vec![0, 7, -2]]).unwrap();
        // 2(3*-2 - 5*7) - (-1)(4*-2 - 0) = 2(-41) + (-8) = -90
        assert_eq!(a.determinant().unwrap(), BigInt::from(-90));
        let z = IntegerMatrix::from_rows_i64(&[vec![0, 1], vec![0, 2]]).unwrap();
        assert!(z.determinant().unwrap().is_zero());
    }

    #[test]
    fn wrong_shape_is_rejected() {
        assert!(IntegerMatrix::from_vec(2, 2, int_vec(&[1, 2, 3])).is_err());
        let a = IntegerMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
    }
}
