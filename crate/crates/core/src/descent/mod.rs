//! Descent data for `DC_s^3` over a cover, restriction, gluing by the Čech
//! contraction zig-zag, descent of arrows and the DD-class of `ℚ/ℤ`
//! transition data.

mod transition;

use std::sync::Arc;

pub use transition::{dd_class_from_transition, transition_from_cocycle, LiftRule, TransitionData};

use crate::algebra::{solve_mixed_system, MixedVector};
use crate::diffcocycle::{dc_differential, DiffCochain, DiffComplex, OneArrow};
use crate::equivariant::{TotalCochain, TotalComplex};
use crate::error::{Error, Result};
use crate::simplicial::{build_cech_levels, CechLevels, Cover, Presheaf, SimplicialMap};

/// Names of the descent conditions, by Čech level.
pub const DESCENT_CONDITIONS: [&str; 4] = ["d a = 0", "∂a = d b", "∂b + d z = 0", "∂z ∈ im d"];

const ARROW_CONDITIONS: [&str; 3] = ["d β = x₁ − x₂", "∂β = d γ", "∂γ ∈ im d"];

/// The Čech–`DC_s` double complex of a cover, with the levels needed for
/// degree-3 descent.
#[derive(Debug)]
pub struct DescentComplex {
    levels: CechLevels,
    global: DiffComplex,
    total: TotalComplex,
}

/// Local cocycles `a`, overlap arrows `b` and triple-overlap data `z`; fewer
/// components when the cover has fewer levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentDatum {
    pub components: Vec<MixedVector>,
}

impl DescentDatum {
    pub fn a(&self) -> &MixedVector {
        &self.components[0]
    }

    pub fn b(&self) -> Option<&MixedVector> {
        self.components.get(1)
    }

    pub fn z(&self) -> Option<&MixedVector> {
        self.components.get(2)
    }

    /// Drops the top component of a total cocycle.
    pub fn from_total(x: &TotalCochain) -> Self {
        let keep = x.parts.len().min(3);
        Self { components: x.parts[..keep].to_vec() }
    }
}

/// A glued global cocycle `g` with the descent 1-arrow `W` satisfying
/// `x − δW = π^*g`, where `x` is the datum's total cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub global: DiffCochain,
    pub witness: TotalCochain,
}

/// A global arrow `b` together with the total 2-arrow `a` satisfying
/// `δa = (β, γ, ζ) − π^*b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendedArrow {
    pub arrow: OneArrow,
    pub two_arrow: TotalCochain,
}

impl DescentComplex {
    pub fn new(cover: &Cover, s: usize) -> Result<Self> {
        let levels = build_cech_levels(cover, 4)?;
        let total = TotalComplex::new(levels.object().clone(), Presheaf::Diff { s }, 4);
        let global = DiffComplex::new(cover.base().clone(), s);
        Ok(Self { levels, global, total })
    }

    pub fn levels(&self) -> &CechLevels {
        &self.levels
    }

    pub fn total(&self) -> &TotalComplex {
        &self.total
    }

    pub fn global(&self) -> &DiffComplex {
        &self.global
    }

    pub fn height(&self) -> usize {
        self.global.height()
    }

    /// `π^*x` as a total cochain concentrated in level 0.
    pub fn pullback_global(&self, x: &DiffCochain) -> Result<TotalCochain> {
        let n = x.degree();
        let mut t = self.total.zero(n);
        t.parts[0] = self.levels.augmented_coface(self.total.presheaf(), 0, n).apply(&x.to_vector())?;
        Ok(t)
    }

    /// The unique total cocycle extending the datum, or the first violated
    /// condition.
    pub fn validate(&self, d: &DescentDatum) -> Result<TotalCochain> {
        match self.total.complete_truncated(3, &d.components)? {
            Ok(x) => Ok(x),
            Err(q) => Err(Error::InvalidDatum(format!("descent condition {} fails", DESCENT_CONDITIONS[q]))),
        }
    }

    /// `a_α = x|_{U_α}`, `b = 0`, `z = 0`.
    pub fn restrict_to_cover(&self, x: &DiffCochain) -> Result<DescentDatum> {
        if x.degree() != 3 || x.height() != self.height() {
            return Err(Error::DimensionMismatch("restriction expects a DC_s^3 cochain of this height".into()));
        }
        if !crate::diffcocycle::is_cocycle(&self.global, x)? {
            return Err(Error::NotACocycle("only cocycles restrict to descent data".into()));
        }
        Ok(DescentDatum::from_total(&self.pullback_global(x)?))
    }

    /// Glues a valid datum: kills Čech components from the top level down
    /// with the contraction, then reads off the global cocycle.
    pub fn glue(&self, d: &DescentDatum) -> Result<Glued> {
        let x = self.validate(d)?;
        let (g, witness) = collapse(&self.levels, &self.total, &x)?;
        Ok(Glued { global: DiffCochain::from_vector(&self.global, 3, g)?, witness })
    }

    /// Checks `x − δW = π^*g` for the datum's total cocycle `x`.
    pub fn check_witness(&self, d: &DescentDatum, glued: &Glued) -> Result<bool> {
        let x = self.validate(d)?;
        let lhs = x.sub(&self.total.delta(&glued.witness)?);
        Ok(lhs == self.pullback_global(&glued.global)?)
    }

    /// Descends local arrows `β_α: x₁|_{U_α} → x₂|_{U_α}` with overlap data
    /// `γ` (`local = [β, γ]`, or `[β]` for a single-level cover) to a global
    /// arrow.
    pub fn descend_arrow(&self, x1: &DiffCochain, x2: &DiffCochain, local: &[MixedVector]) -> Result<DescendedArrow> {
        let target = self.pullback_global(&x1.sub(x2)?)?;
        let mut y = self.total.zero(2);
        if local.len() != y.parts.len().min(2) {
            return Err(Error::DimensionMismatch(format!("{} local arrow components", local.len())));
        }
        for (q, p) in local.iter().enumerate() {
            if p.module() != y.parts[q].module() {
                return Err(Error::DimensionMismatch(format!("arrow component {q} has the wrong shape")));
            }
            y.parts[q] = p.clone();
        }
        if let Some(q) = first_difference(&self.total.delta(&y)?, &target).filter(|&q| q < 2) {
            return Err(Error::InvalidDatum(format!("arrow condition {} fails", ARROW_CONDITIONS[q])));
        }
        if y.parts.len() > 2 {
            // (δy)_2 = d ζ + ∂γ must vanish
            let rhs = self.total.delta(&y)?.parts[2].neg();
            let d0 = self.total.presheaf().differential(self.levels.level(2).unwrap(), 0);
            match solve_mixed_system(&d0, &rhs)? {
                Some(zeta) => y.parts[2] = zeta,
                None => return Err(Error::InvalidDatum(format!("arrow condition {} fails", ARROW_CONDITIONS[2]))),
            }
        }
        if first_difference(&self.total.delta(&y)?, &target).is_some() {
            return Err(Error::InvalidDatum("overlap data is incoherent".into()));
        }
        let (b, two_arrow) = collapse(&self.levels, &self.total, &y)?;
        let b = DiffCochain::from_vector(&self.global, 2, b)?;
        debug_assert_eq!(dc_differential(&self.global, &b)?, x1.sub(x2)?);
        Ok(DescendedArrow { arrow: OneArrow { source: x1.clone(), target: x2.clone(), b }, two_arrow })
    }

    /// Pulls a datum on `other` (covering the target of `f`) back to this
    /// complex, whose cover must be `other`'s cover pulled back along `f`.
    pub fn pullback_datum(&self, f: &SimplicialMap, other: &DescentComplex, d: &DescentDatum) -> Result<DescentDatum> {
        let (src, dst) = (&self.levels, &other.levels);
        if **f.source() != **src.base() || **f.target() != **dst.base() || src.cover().len() != dst.cover().len() {
            return Err(Error::InvalidCover("covers are not related by the map".into()));
        }
        let mut out = Vec::new();
        for (q, part) in d.components.iter().enumerate() {
            let Some(level) = src.level(q) else { break };
            let stride_src = src.base().label_bound().max(1);
            let stride_dst = dst.base().label_bound().max(1);
            let tuples = src.tuples(q);
            let map = SimplicialMap::from_fn(level.clone(), dst.level(q).unwrap().clone(), |v| {
                let (j, y) = (v / stride_src, v % stride_src);
                dst.piece_index(q, &tuples[j]).expect("nonempty preimage has nonempty image") * stride_dst + f.vertex(y)
            })?;
            out.push(self.total.presheaf().pullback(&map, 3 - q).apply(part)?);
        }
        Ok(DescentDatum { components: out })
    }
}

fn first_difference(x: &TotalCochain, y: &TotalCochain) -> Option<usize> {
    x.parts.iter().zip(&y.parts).position(|(a, b)| a != b)
}

/// The contraction zig-zag.
///
/// For a total cochain `y` of degree n with `(δy)_q = 0` for `q ≥ 1`, kills
/// the Čech components from the top level down and returns `(g, W)` with
/// `y − δW = π^*g`.
pub fn collapse(levels: &CechLevels, total: &TotalComplex, y: &TotalCochain) -> Result<(MixedVector, TotalCochain)> {
    let n = y.degree;
    let presheaf = total.presheaf();
    let mut y = y.clone();
    let mut witness = if n == 0 { None } else { Some(total.zero(n - 1)) };
    for q in (1..y.parts.len()).rev() {
        let u = levels.contraction(presheaf, q, n - q)?.apply(&y.parts[q])?;
        let w = witness.as_mut().expect("positive degree");
        let mut step = total.zero(n - 1);
        step.parts[q - 1] = u;
        y = y.sub(&total.delta(&step)?);
        *w = w.add(&step);
        if !y.parts[q].is_zero() {
            return Err(Error::InvalidDatum(format!("Čech level {q} does not collapse")));
        }
    }
    let g = levels.contraction(presheaf, 0, n)?.apply(&y.parts[0])?;
    if levels.augmented_coface(presheaf, 0, n).apply(&g)? != y.parts[0] {
        return Err(Error::InvalidDatum("level-0 remainder is not a restriction".into()));
    }
    Ok((g, witness.unwrap_or_else(|| TotalCochain { degree: 0, parts: Vec::new() })))
}

/// Convenience: a descent complex over the closed-star cover.
pub fn star_descent(base: Arc<crate::simplicial::SimplicialComplex>, s: usize) -> Result<DescentComplex> {
    DescentComplex::new(&Cover::star_cover(base)?, s)
}
