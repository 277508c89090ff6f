use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integer,
    Rational,
    /// ℚ/ℤ, stored as rationals in `[0, 1)`.
    RationalModOne,
}

/// A simplicial cochain: one value per `degree`-simplex, in the complex's
/// lexicographic simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    kind: Coefficients,
    degree: usize,
    values: Vec<BigRational>,
}

pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

impl Cochain {
    pub fn zero(complex: &SimplicialComplex, kind: Coefficients, degree: usize) -> Self {
        Self { kind, degree, values: vec![BigRational::zero(); complex.count(degree)] }
    }

    pub fn new(complex: &SimplicialComplex, kind: Coefficients, degree: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != complex.count(degree) {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} simplices of dimension {}",
                values.len(),
                complex.count(degree),
                degree
            )));
        }
        let values = match kind {
            Coefficients::Integer => {
                if let Some(bad) = values.iter().position(|v| !v.is_integer()) {
                    return Err(Error::MalformedComplex(format!(
                        "integer cochain has non-integral value {} at position {bad}",
                        values[bad]
                    )));
                }
                values
            }
            Coefficients::Rational => values,
            Coefficients::RationalModOne => values.iter().map(frac).collect(),
        };
        Ok(Self { kind, degree, values })
    }

    pub fn integer(complex: &SimplicialComplex, degree: usize, values: &[BigInt]) -> Result<Self> {
        let v = values.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        Self::new(complex, Coefficients::Integer, degree, v)
    }

    pub fn rational(complex: &SimplicialComplex, degree: usize, values: Vec<BigRational>) -> Result<Self> {
        Self::new(complex, Coefficients::Rational, degree, values)
    }

    /// Indicator of a single simplex.
    pub fn indicator(complex: &SimplicialComplex, kind: Coefficients, simplex: &[usize]) -> Result<Self> {
        let idx = complex.index_of(simplex).ok_or_else(|| Error::MalformedComplex(format!("{simplex:?} is not a simplex")))?;
        let mut c = Self::zero(complex, kind, simplex.len() - 1);
        c.values[idx] = BigRational::from_integer(1.into());
        Ok(c)
    }

    pub fn kind(&self) -> Coefficients {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value_at(&self, complex: &SimplicialComplex, simplex: &[usize]) -> Option<&BigRational> {
        complex.index_of(simplex).filter(|_| simplex.len() == self.degree + 1).map(|i| &self.values[i])
    }

    /// Integer values; `None` if any value is not integral.
    pub fn integer_values(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Changes the coefficient kind (ℤ → ℚ → ℚ/ℤ direction always succeeds).
    pub fn with_kind(&self, kind: Coefficients) -> Result<Self> {
        let values = match kind {
            Coefficients::Integer => {
                if self.values.iter().any(|v| !v.is_integer()) {
                    return Err(Error::MalformedComplex("cochain has non-integral values".into()));
                }
                self.values.clone()
            }
            Coefficients::Rational => self.values.clone(),
            Coefficients::RationalModOne => self.values.iter().map(frac).collect(),
        };
        Ok(Self { kind, degree: self.degree, values })
    }

    fn combine(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if self.kind != other.kind || self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("cochains of different shape".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(self.reduced(values))
    }

    fn reduced(&self, values: Vec<BigRational>) -> Self {
        let values = if self.kind == Coefficients::RationalModOne { values.iter().map(frac).collect() } else { values };
        Self { kind: self.kind, degree: self.degree, values }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.reduced(self.values.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        self.reduced(self.values.iter().map(|a| a * &k).collect())
    }

    pub fn max_abs(&self) -> BigRational {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn from_raw(kind: Coefficients, degree: usize, values: Vec<BigRational>) -> Self {
        let c = Self { kind, degree, values };
        let v = c.values.clone();
        c.reduced(v)
    }
}

/// The simplicial coboundary, `(dx)(σ) = Σ_i (−1)^i x(∂_i σ)`.
pub fn coboundary(complex: &SimplicialComplex, x: &Cochain) -> Result<Cochain> {
    if x.values.len() != complex.count(x.degree) {
        return Err(Error::DimensionMismatch("cochain does not live on this complex".into()));
    }
    let k = x.degree;
    let mut out = vec![BigRational::zero(); complex.count(k + 1)];
    for (r, s) in complex.simplices(k + 1).iter().enumerate() {
        let mut acc = BigRational::zero();
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let v = &x.values[complex.index_of(&face).expect("face closure")];
            if i % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        out[r] = acc;
    }
    Ok(Cochain::from_raw(x.kind, k + 1, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::fixtures;

    #[test]
    fn circle_vertex_indicator() {
        let x = fixtures::circle();
        let c = Cochain::indicator(&x, Coefficients::Integer, &[0]).unwrap();
        let dc = coboundary(&x, &c).unwrap();
        assert_eq!(dc.value_at(&x, &[0, 1]), Some(&rat(-1, 1)));
        assert_eq!(dc.value_at(&x, &[0, 2]), Some(&rat(-1, 1)));
        assert_eq!(dc.value_at(&x, &[1, 2]), Some(&rat(0, 1)));
    }

    #[test]
    fn constant_zero_cochain_is_closed() {
        let x = fixtures::torus();
        let c = Cochain::rational(&x, 0, vec![rat(3, 7); x.count(0)]).unwrap();
        assert!(coboundary(&x, &c).unwrap().is_zero());
    }

    #[test]
    fn mod_one_values_are_reduced() {
        let x = fixtures::circle();
        let c = Cochain::new(&x, Coefficients::RationalModOne, 0, vec![rat(5, 4), rat(-1, 3), rat(1, 2)]).unwrap();
        assert_eq!(c.values(), &[rat(1, 4), rat(2, 3), rat(1, 2)]);
        let d = coboundary(&x, &c).unwrap();
        assert!(d.values().iter().all(|v| *v >= rat(0, 1) && *v < rat(1, 1)));
    }

    #[test]
    fn integer_kind_rejects_fractions() {
        let x = fixtures::circle();
        assert!(Cochain::new(&x, Coefficients::Integer, 0, vec![rat(1, 2), rat(0, 1), rat(0, 1)]).is_err());
    }
}
