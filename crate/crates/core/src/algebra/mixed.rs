//! Homomorphisms between groups of the form ℤ^a ⊕ ℚ^b.
//!
//! A map ℤ^a ⊕ ℚ^b → ℤ^c ⊕ ℚ^e has three blocks: ℤ→ℤ (integer), ℤ→ℚ and
//! ℚ→ℚ (rational). There is no ℚ→ℤ block since every homomorphism ℚ → ℤ is
//! zero, so the integer output of a mixed map only ever sees integer input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::{to_rational_vec, IntegerMatrix, RationalMatrix};
use super::solve::{clear_denominators, rational_rref, solve_integer_system, solve_with_rref};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MixedModule {
    pub int_rank: usize,
    pub rat_dim: usize,
}

impl MixedModule {
    pub const ZERO: MixedModule = MixedModule { int_rank: 0, rat_dim: 0 };

    pub fn new(int_rank: usize, rat_dim: usize) -> Self {
        Self { int_rank, rat_dim }
    }

    pub fn zero_vector(&self) -> MixedVector {
        MixedVector::zeros(*self)
    }

    pub fn is_zero(&self) -> bool {
        self.int_rank == 0 && self.rat_dim == 0
    }

    pub fn sum(parts: &[MixedModule]) -> MixedModule {
        parts.iter().fold(MixedModule::ZERO, |acc, m| MixedModule { int_rank: acc.int_rank + m.int_rank, rat_dim: acc.rat_dim + m.rat_dim })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MixedVector {
    pub ints: Vec<BigInt>,
    pub rats: Vec<BigRational>,
}

impl MixedVector {
    pub fn new(ints: Vec<BigInt>, rats: Vec<BigRational>) -> Self {
        Self { ints, rats }
    }

    pub fn zeros(m: MixedModule) -> Self {
        Self { ints: vec![BigInt::zero(); m.int_rank], rats: vec![BigRational::zero(); m.rat_dim] }
    }

    pub fn module(&self) -> MixedModule {
        MixedModule::new(self.ints.len(), self.rats.len())
    }

    pub fn is_zero(&self) -> bool {
        self.ints.iter().all(Zero::is_zero) && self.rats.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.module(), other.module(), "mixed vector shapes differ");
        Self {
            ints: self.ints.iter().zip(&other.ints).map(|(a, b)| a + b).collect(),
            rats: self.rats.iter().zip(&other.rats).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.module(), other.module(), "mixed vector shapes differ");
        Self {
            ints: self.ints.iter().zip(&other.ints).map(|(a, b)| a - b).collect(),
            rats: self.rats.iter().zip(&other.rats).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { ints: self.ints.iter().map(|a| -a).collect(), rats: self.rats.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let ki = BigInt::from(k);
        let kq = BigRational::from_integer(ki.clone());
        Self { ints: self.ints.iter().map(|a| a * &ki).collect(), rats: self.rats.iter().map(|a| a * &kq).collect() }
    }

    /// Concatenates vectors: integer parts in order, then rational parts in order.
    pub fn concat(parts: &[MixedVector]) -> Self {
        let mut out = Self::default();
        for p in parts {
            out.ints.extend(p.ints.iter().cloned());
            out.rats.extend(p.rats.iter().cloned());
        }
        out
    }

    /// Inverse of [`MixedVector::concat`].
    pub fn split(&self, shapes: &[MixedModule]) -> Vec<MixedVector> {
        let (mut i, mut r) = (0, 0);
        shapes
            .iter()
            .map(|m| {
                let v = MixedVector { ints: self.ints[i..i + m.int_rank].to_vec(), rats: self.rats[r..r + m.rat_dim].to_vec() };
                i += m.int_rank;
                r += m.rat_dim;
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMap {
    domain: MixedModule,
    codomain: MixedModule,
    zz: IntegerMatrix,
    zq: RationalMatrix,
    qq: RationalMatrix,
}

impl MixedMap {
    pub fn new(zz: IntegerMatrix, zq: RationalMatrix, qq: RationalMatrix) -> Result<Self> {
        let domain = MixedModule::new(zz.cols(), qq.cols());
        let codomain = MixedModule::new(zz.rows(), qq.rows());
        if zq.rows() != codomain.rat_dim || zq.cols() != domain.int_rank {
            return Err(Error::DimensionMismatch(format!(
                "ℤ→ℚ block is {}x{}, expected {}x{}",
                zq.rows(),
                zq.cols(),
                codomain.rat_dim,
                domain.int_rank
            )));
        }
        Ok(Self { domain, codomain, zz, zq, qq })
    }

    pub fn zero(domain: MixedModule, codomain: MixedModule) -> Self {
        Self {
            domain,
            codomain,
            zz: IntegerMatrix::zeros(codomain.int_rank, domain.int_rank),
            zq: RationalMatrix::zeros(codomain.rat_dim, domain.int_rank),
            qq: RationalMatrix::zeros(codomain.rat_dim, domain.rat_dim),
        }
    }

    pub fn identity(m: MixedModule) -> Self {
        Self {
            domain: m,
            codomain: m,
            zz: IntegerMatrix::identity(m.int_rank),
            zq: RationalMatrix::zeros(m.rat_dim, m.int_rank),
            qq: RationalMatrix::identity(m.rat_dim),
        }
    }

    /// A purely integer map ℤ^a → ℤ^c.
    pub fn from_integer(zz: IntegerMatrix) -> Self {
        let (r, c) = (zz.rows(), zz.cols());
        Self {
            domain: MixedModule::new(c, 0),
            codomain: MixedModule::new(r, 0),
            zz,
            zq: RationalMatrix::zeros(0, c),
            qq: RationalMatrix::zeros(0, 0),
        }
    }

    /// A purely rational map ℚ^b → ℚ^e.
    pub fn from_rational(qq: RationalMatrix) -> Self {
        let (r, c) = (qq.rows(), qq.cols());
        Self {
            domain: MixedModule::new(0, c),
            codomain: MixedModule::new(0, r),
            zz: IntegerMatrix::zeros(0, 0),
            zq: RationalMatrix::zeros(r, 0),
            qq,
        }
    }

    pub fn domain(&self) -> MixedModule {
        self.domain
    }

    pub fn codomain(&self) -> MixedModule {
        self.codomain
    }

    pub fn int_block(&self) -> &IntegerMatrix {
        &self.zz
    }

    pub fn int_to_rat_block(&self) -> &RationalMatrix {
        &self.zq
    }

    pub fn rat_block(&self) -> &RationalMatrix {
        &self.qq
    }

    pub fn is_zero(&self) -> bool {
        self.zz.is_zero() && self.zq.is_zero() && self.qq.is_zero()
    }

    pub fn apply(&self, x: &MixedVector) -> Result<MixedVector> {
        if x.module() != self.domain {
            return Err(Error::DimensionMismatch(format!("vector shape {:?} against domain {:?}", x.module(), self.domain)));
        }
        let ints = self.zz.mul_vec(&x.ints)?;
        let mut rats = self.qq.mul_vec(&x.rats)?;
        let from_ints = self.zq.mul_vec(&to_rational_vec(&x.ints))?;
        for (r, f) in rats.iter_mut().zip(from_ints) {
            *r += f;
        }
        Ok(MixedVector { ints, rats })
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &MixedMap) -> Result<MixedMap> {
        if first.codomain != self.domain {
            return Err(Error::DimensionMismatch("composition of incompatible mixed maps".into()));
        }
        let zz = self.zz.mul(&first.zz)?;
        let zq = self.zq.mul(&first.zz.to_rational())?.add(&self.qq.mul(&first.zq)?)?;
        let qq = self.qq.mul(&first.qq)?;
        MixedMap::new(zz, zq, qq)
    }

    pub fn add(&self, other: &MixedMap) -> Result<MixedMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DimensionMismatch("sum of mixed maps with different shapes".into()));
        }
        MixedMap::new(self.zz.add(&other.zz)?, self.zq.add(&other.zq)?, self.qq.add(&other.qq)?)
    }

    pub fn neg(&self) -> MixedMap {
        MixedMap { domain: self.domain, codomain: self.codomain, zz: self.zz.neg(), zq: self.zq.neg(), qq: self.qq.neg() }
    }

    pub fn scaled(&self, k: i64) -> MixedMap {
        let ki = BigInt::from(k);
        let kq = BigRational::from_integer(ki.clone());
        MixedMap { domain: self.domain, codomain: self.codomain, zz: self.zz.scaled(&ki), zq: self.zq.scaled(&kq), qq: self.qq.scaled(&kq) }
    }

    /// Writes `block` into `self` with codomain offset `at_row` and domain
    /// offset `at_col`, both given as (integer offset, rational offset).
    pub fn place(&mut self, at_row: (usize, usize), at_col: (usize, usize), block: &MixedMap) {
        self.zz.place(at_row.0, at_col.0, &block.zz);
        self.zq.place(at_row.1, at_col.0, &block.zq);
        self.qq.place(at_row.1, at_col.1, &block.qq);
    }

    /// The map tensored with ℚ, as a single rational matrix on
    /// coordinates (ints, rats).
    pub fn rationalized(&self) -> RationalMatrix {
        let (a, b) = (self.domain.int_rank, self.domain.rat_dim);
        let (c, e) = (self.codomain.int_rank, self.codomain.rat_dim);
        let mut m = RationalMatrix::zeros(c + e, a + b);
        m.place(0, 0, &self.zz.to_rational());
        m.place(c, 0, &self.zq);
        m.place(c, a, &self.qq);
        m
    }

    /// Injectivity on ℤ^a ⊕ ℚ^b (both groups are torsion-free, so this is
    /// the same as injectivity after tensoring with ℚ).
    pub fn is_injective(&self) -> bool {
        rational_rref(&self.rationalized()).rank() == self.domain.int_rank + self.domain.rat_dim
    }
}

/// Solves `f(x) = y` with integer coordinates of `x` in ℤ and rational
/// coordinates in ℚ.
///
/// The integer block is solved first over ℤ (particular solution plus kernel
/// lattice), the rational unknowns are then eliminated over ℚ, and the
/// remaining rational-affine conditions on the lattice parameters are cleared
/// of denominators and solved by a second Smith reduction.
pub fn solve_mixed_system(f: &MixedMap, y: &MixedVector) -> Result<Option<MixedVector>> {
    if y.module() != f.codomain {
        return Err(Error::DimensionMismatch(format!("right-hand side shape {:?} against codomain {:?}", y.module(), f.codomain)));
    }
    let Some(int_sol) = solve_integer_system(&f.zz, &y.ints)? else { return Ok(None) };
    let a = f.domain.int_rank;
    let r = int_sol.kernel.len();
    let mut kernel = IntegerMatrix::zeros(a, r);
    for (j, col) in int_sol.kernel.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            kernel.set(i, j, v.clone());
        }
    }
    let n0 = int_sol.particular;

    // rational residual: qq·q = yq − zq·n0 − zq·K·t
    let zq_n0 = f.zq.mul_vec(&to_rational_vec(&n0))?;
    let residual0: Vec<BigRational> = y.rats.iter().zip(&zq_n0).map(|(a, b)| a - b).collect();
    let zq_k = f.zq.mul(&kernel.to_rational())?;

    let rref = rational_rref(&f.qq);
    let rank = rref.rank();
    let t_res = rref.transform.mul_vec(&residual0)?;
    let t_zqk = rref.transform.mul(&zq_k)?;
    let e = f.codomain.rat_dim;
    let conditions = t_zqk.submatrix(rank..e, 0..r);
    let targets = &t_res[rank..];

    let lattice_params = if r == 0 {
        if targets.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Vec::new()
    } else {
        let (c_int, g_int) = clear_denominators(&conditions, targets);
        match solve_integer_system(&c_int, &g_int)? {
            Some(sol) => sol.particular,
            None => return Ok(None),
        }
    };
    let mut n = n0;
    if r > 0 {
        let shift = kernel.mul_vec(&lattice_params)?;
        for (x, s) in n.iter_mut().zip(shift) {
            *x += s;
        }
    }
    let zq_n = f.zq.mul_vec(&to_rational_vec(&n))?;
    let residual: Vec<BigRational> = y.rats.iter().zip(&zq_n).map(|(a, b)| a - b).collect();
    let Some(q) = solve_with_rref(&rref, f.domain.rat_dim, &residual) else {
        // the lattice conditions guarantee consistency
        return Ok(None);
    };
    Ok(Some(MixedVector { ints: n, rats: q }))
}
