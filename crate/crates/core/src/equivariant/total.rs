use std::sync::OnceLock;

use crate::algebra::{solve_mixed_system, Cohomology, MixedMap, MixedModule, MixedVector};
use crate::error::{Error, Result};
use crate::simplicial::{Presheaf, SimplicialObject};

/// `Tot^n = ⊕_{p+q=n} A^p(Γ_q)` with `δ = (−1)^q d ⊕ ∂`.
///
/// Modules exist for `n ≤ n_max`, differentials `δ_n` for `n < n_max`.
#[derive(Debug)]
pub struct TotalComplex {
    object: SimplicialObject,
    presheaf: Presheaf,
    n_max: usize,
    /// `d[q][p]: A^p(Γ_q) → A^{p+1}(Γ_q)`
    d: Vec<Vec<MixedMap>>,
    /// `coface[q][p]: A^p(Γ_q) → A^p(Γ_{q+1})`
    coface: Vec<Vec<MixedMap>>,
    flat: Vec<OnceLock<MixedMap>>,
}

/// A cochain of the total complex, one component per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCochain {
    pub degree: usize,
    /// `parts[q] ∈ A^{degree−q}(Γ_q)`
    pub parts: Vec<MixedVector>,
}

impl TotalCochain {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(MixedVector::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self { degree: self.degree, parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self { degree: self.degree, parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { degree: self.degree, parts: self.parts.iter().map(MixedVector::neg).collect() }
    }
}

impl TotalComplex {
    pub fn new(object: SimplicialObject, presheaf: Presheaf, n_max: usize) -> Self {
        let top = object.top();
        let d = (0..=top).map(|q| (0..=n_max).map(|p| presheaf.differential(object.level(q).unwrap(), p)).collect()).collect();
        let coface = (0..top).map(|q| (0..=n_max).map(|p| object.coface(presheaf, q, p)).collect()).collect();
        let flat = (0..n_max).map(|_| OnceLock::new()).collect();
        Self { object, presheaf, n_max, d, coface, flat }
    }

    pub fn object(&self) -> &SimplicialObject {
        &self.object
    }

    pub fn presheaf(&self) -> Presheaf {
        self.presheaf
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Levels contributing to degree n.
    fn span(&self, n: usize) -> usize {
        n.min(self.object.top()) + 1
    }

    pub fn part_module(&self, n: usize, q: usize) -> MixedModule {
        self.presheaf.module(self.object.level(q).unwrap(), n - q)
    }

    pub fn shapes(&self, n: usize) -> Vec<MixedModule> {
        (0..self.span(n)).map(|q| self.part_module(n, q)).collect()
    }

    pub fn module(&self, n: usize) -> MixedModule {
        MixedModule::sum(&self.shapes(n))
    }

    pub fn zero(&self, n: usize) -> TotalCochain {
        TotalCochain { degree: n, parts: self.shapes(n).iter().map(MixedModule::zero_vector).collect() }
    }

    pub fn flatten(&self, x: &TotalCochain) -> MixedVector {
        MixedVector::concat(&x.parts)
    }

    pub fn unflatten(&self, n: usize, v: &MixedVector) -> TotalCochain {
        TotalCochain { degree: n, parts: v.split(&self.shapes(n)) }
    }

    fn check(&self, x: &TotalCochain) -> Result<()> {
        if x.degree >= self.n_max {
            return Err(Error::InsufficientLevels { needed: x.degree + 1, available: self.n_max });
        }
        if x.parts.iter().map(MixedVector::module).collect::<Vec<_>>() != self.shapes(x.degree) {
            return Err(Error::DimensionMismatch(format!("total cochain does not have the shape of degree {}", x.degree)));
        }
        Ok(())
    }

    /// `δx`, computed level by level.
    pub fn delta(&self, x: &TotalCochain) -> Result<TotalCochain> {
        self.check(x)?;
        let n = x.degree;
        let mut out = self.zero(n + 1);
        for (q, part) in out.parts.iter_mut().enumerate() {
            if q < x.parts.len() {
                let mut v = self.d[q][n - q].apply(&x.parts[q])?;
                if q % 2 == 1 {
                    v = v.neg();
                }
                *part = part.add(&v);
            }
            if q >= 1 && q - 1 < x.parts.len() {
                *part = part.add(&self.coface[q - 1][n + 1 - q].apply(&x.parts[q - 1])?);
            }
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, x: &TotalCochain) -> Result<bool> {
        Ok(self.delta(x)?.is_zero())
    }

    /// Lowest level on which `δx` is nonzero.
    pub fn first_violation(&self, x: &TotalCochain) -> Result<Option<usize>> {
        Ok(self.delta(x)?.parts.iter().position(|p| !p.is_zero()))
    }

    /// `δ_n` as one mixed map on the flattened coordinates.
    pub fn differential(&self, n: usize) -> Result<&MixedMap> {
        if n >= self.n_max {
            return Err(Error::InsufficientLevels { needed: n + 1, available: self.n_max });
        }
        Ok(self.flat[n].get_or_init(|| self.assemble(n)))
    }

    fn assemble(&self, n: usize) -> MixedMap {
        let dom = self.shapes(n);
        let cod = self.shapes(n + 1);
        let offsets = |shapes: &[MixedModule]| {
            let mut acc = (0, 0);
            shapes
                .iter()
                .map(|m| {
                    let o = acc;
                    acc = (acc.0 + m.int_rank, acc.1 + m.rat_dim);
                    o
                })
                .collect::<Vec<_>>()
        };
        let (co, ro) = (offsets(&dom), offsets(&cod));
        let mut m = MixedMap::zero(MixedModule::sum(&dom), MixedModule::sum(&cod));
        for q in 0..dom.len() {
            let d = &self.d[q][n - q];
            m.place(ro[q], co[q], &if q % 2 == 1 { d.neg() } else { d.clone() });
            if q + 1 < cod.len() {
                m.place(ro[q + 1], co[q], &self.coface[q][n - q]);
            }
        }
        m
    }

    /// Solves `δb = x − y`.
    pub fn same_total_class(&self, x: &TotalCochain, y: &TotalCochain) -> Result<Option<TotalCochain>> {
        if x.degree != y.degree || x.degree == 0 {
            return Err(Error::DimensionMismatch("same_total_class needs two cochains of one positive degree".into()));
        }
        let n = x.degree;
        let rhs = self.flatten(&x.sub(y));
        Ok(solve_mixed_system(self.differential(n - 1)?, &rhs)?.map(|b| self.unflatten(n - 1, &b)))
    }

    /// `H^k` of an integer total complex, with class coordinates.
    pub fn integer_cohomology(&self, k: usize) -> Result<Cohomology> {
        if self.presheaf != Presheaf::Integer {
            return Err(Error::InvalidComplex("integer cohomology needs integer coefficients".into()));
        }
        self.require_levels(k + 1)?;
        let d_out = self.differential(k)?.int_block().clone();
        let d_in = if k == 0 {
            crate::algebra::IntegerMatrix::zeros(self.module(0).int_rank, 0)
        } else {
            self.differential(k - 1)?.int_block().clone()
        };
        Cohomology::new(&d_in, &d_out)
    }

    pub(crate) fn require_levels(&self, q: usize) -> Result<()> {
        if !self.object.has_level(q) {
            return Err(Error::InsufficientLevels { needed: q, available: self.object.top() });
        }
        if q > self.n_max {
            return Err(Error::InsufficientLevels { needed: q, available: self.n_max });
        }
        Ok(())
    }

    /// Completes a truncated cochain `(x_0, …, x_{n−1})` of degree `n` by the
    /// unique `x_n ∈ A^0(Γ_n)` with `(−1)^n d x_n + ∂x_{n−1} = 0`, then
    /// checks the result is a cocycle.
    ///
    /// On failure the error names the lowest level whose condition fails;
    /// level `n` means `∂x_{n−1} ∉ im d`.
    pub fn complete_truncated(&self, n: usize, parts: &[MixedVector]) -> Result<std::result::Result<TotalCochain, usize>> {
        let shapes = self.shapes(n);
        if parts.len() != n.min(shapes.len()) {
            return Err(Error::DimensionMismatch(format!("{} truncated components for degree {n}", parts.len())));
        }
        let mut x = self.zero(n);
        for (q, p) in parts.iter().enumerate() {
            if p.module() != shapes[q] {
                return Err(Error::DimensionMismatch(format!("component {q} has the wrong shape")));
            }
            x.parts[q] = p.clone();
        }
        if let Some(q) = self.first_violation(&x)? {
            if q < n {
                return Ok(Err(q));
            }
        }
        if n < shapes.len() {
            let rhs = self.coface[n - 1][1].apply(&x.parts[n - 1])?;
            let rhs = if n % 2 == 1 { rhs } else { rhs.neg() };
            match solve_mixed_system(&self.d[n][0], &rhs)? {
                Some(top) => x.parts[n] = top,
                None => return Ok(Err(n)),
            }
        }
        match self.first_violation(&x)? {
            None => Ok(Ok(x)),
            Some(q) => Ok(Err(q)),
        }
    }
}
