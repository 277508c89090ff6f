use std::sync::Arc;

use super::DiffComplex;
use crate::algebra::{solve_mixed_system, MixedMap, MixedModule, MixedVector};
use crate::error::Result;
use crate::simplicial::SimplicialComplex;

/// Queries of a cocycle 2-category at a fixed degree k: objects are closed
/// degree-k vectors, 1-arrows solve `db = x_1 − x_2`, 2-arrows solve
/// `da = b_2 − b_1`, and two 2-arrows agree when they differ by something
/// trivial in degree k−2.
pub trait CocycleCategory {
    fn degree(&self) -> usize;
    fn is_object(&self, x: &MixedVector) -> Result<bool>;
    fn one_arrow(&self, x1: &MixedVector, x2: &MixedVector) -> Result<Option<MixedVector>>;
    fn two_arrow(&self, b1: &MixedVector, b2: &MixedVector) -> Result<Option<MixedVector>>;
    fn same_two_arrow(&self, a1: &MixedVector, a2: &MixedVector) -> Result<bool>;
}

/// `ambient / im(relations)`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub ambient: MixedModule,
    pub relations: MixedMap,
}

impl QuotientModule {
    pub fn is_trivial_class(&self, v: &MixedVector) -> Result<bool> {
        Ok(solve_mixed_system(&self.relations, v)?.is_some())
    }
}

/// `τ_{≥k−2} DC_s`: zero below k−2, `DC^{k−2} / im d` in degree k−2 and
/// unchanged above.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    base: Arc<SimplicialComplex>,
    s: usize,
    k: usize,
    quotient: Option<QuotientModule>,
    /// `d_p` for `p ≥ k−2`, indexed from `k−2` (or 0 when k < 2)
    differentials: Vec<MixedMap>,
}

pub fn truncate(cx: &DiffComplex, k: usize) -> TruncatedComplex {
    let low = k.saturating_sub(2);
    let top = cx.base().dim().map_or(0, |d| d + 2).max(k + 1);
    let differentials = (low..=top).map(|p| cx.differential(p)).collect();
    let quotient = (k >= 2).then(|| QuotientModule {
        ambient: cx.module(k - 2),
        relations: if k >= 3 { cx.differential(k - 3) } else { MixedMap::zero(MixedModule::ZERO, cx.module(0)) },
    });
    TruncatedComplex { base: cx.base().clone(), s: cx.height(), k, quotient, differentials }
}

impl TruncatedComplex {
    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn height(&self) -> usize {
        self.s
    }

    fn low(&self) -> usize {
        self.k.saturating_sub(2)
    }

    pub fn quotient(&self) -> Option<&QuotientModule> {
        self.quotient.as_ref()
    }

    /// Underlying module in degree p; zero below the truncation.
    pub fn module(&self, p: usize) -> MixedModule {
        if p < self.low() {
            return MixedModule::ZERO;
        }
        match self.differentials.get(p - self.low()) {
            Some(d) => d.domain(),
            None => MixedModule::ZERO,
        }
    }

    pub fn differential(&self, p: usize) -> MixedMap {
        if p < self.low() {
            return MixedMap::zero(MixedModule::ZERO, self.module(p + 1));
        }
        match self.differentials.get(p - self.low()) {
            Some(d) => d.clone(),
            None => MixedMap::zero(self.module(p), self.module(p + 1)),
        }
    }
}

impl CocycleCategory for TruncatedComplex {
    fn degree(&self) -> usize {
        self.k
    }

    fn is_object(&self, x: &MixedVector) -> Result<bool> {
        Ok(self.differential(self.k).apply(x)?.is_zero())
    }

    fn one_arrow(&self, x1: &MixedVector, x2: &MixedVector) -> Result<Option<MixedVector>> {
        if self.k == 0 {
            return Ok(x1.sub(x2).is_zero().then(MixedVector::default));
        }
        solve_mixed_system(&self.differential(self.k - 1), &x1.sub(x2))
    }

    fn two_arrow(&self, b1: &MixedVector, b2: &MixedVector) -> Result<Option<MixedVector>> {
        if self.k < 2 {
            return Ok(b2.sub(b1).is_zero().then(MixedVector::default));
        }
        solve_mixed_system(&self.differential(self.k - 2), &b2.sub(b1))
    }

    fn same_two_arrow(&self, a1: &MixedVector, a2: &MixedVector) -> Result<bool> {
        match &self.quotient {
            Some(q) => q.is_trivial_class(&a1.sub(a2)),
            None => Ok(a1.sub(a2).is_zero()),
        }
    }
}
