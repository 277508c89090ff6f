//! The differential cochain complexes `DC_s^*` and the arrows of their
//! cocycle 2-categories.
//!
//! A degree-k differential cochain is `(c, h, ω)` with `c` an integer
//! k-cochain, `h` a rational (k−1)-cochain and `ω` a rational k-cochain that
//! exists only for `k ≥ s`. The differential is `d(c, h, ω) = (dc, ω − c − dh, dω)`.
//! A 1-arrow `x_1 → x_2` is `b` with `db = x_1 − x_2`; a 2-arrow `b_1 ⇒ b_2`
//! is the class of `a` with `da = b_2 − b_1`, modulo exact cochains.

mod truncate;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub use truncate::{truncate, CocycleCategory, QuotientModule, TruncatedComplex};

use crate::algebra::{solve_mixed_system, Cohomology, IntegerMatrix, MixedMap, MixedModule, MixedVector};
use crate::error::{Error, Result};
use crate::simplicial::{Presheaf, SimplicialComplex, SimplicialMap};

/// `DC_s^*(X)`.
#[derive(Debug)]
pub struct DiffComplex {
    base: Arc<SimplicialComplex>,
    s: usize,
    differentials: Vec<MixedMap>,
    cohomology: Vec<OnceLock<Result<Cohomology>>>,
}

impl DiffComplex {
    pub fn new(base: Arc<SimplicialComplex>, s: usize) -> Self {
        let top = base.dim().map_or(0, |d| d + 2);
        let presheaf = Presheaf::Diff { s };
        let differentials = (0..=top).map(|p| presheaf.differential(&base, p)).collect();
        let cohomology = (0..=top).map(|_| OnceLock::new()).collect();
        Self { base, s, differentials, cohomology }
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn height(&self) -> usize {
        self.s
    }

    pub fn presheaf(&self) -> Presheaf {
        Presheaf::Diff { s: self.s }
    }

    pub fn module(&self, k: usize) -> MixedModule {
        self.presheaf().module(&self.base, k)
    }

    /// `d: DC^k → DC^{k+1}`.
    pub fn differential(&self, k: usize) -> MixedMap {
        match self.differentials.get(k) {
            Some(d) => d.clone(),
            None => MixedMap::zero(self.module(k), self.module(k + 1)),
        }
    }

    fn differential_ref(&self, k: usize) -> std::borrow::Cow<'_, MixedMap> {
        match self.differentials.get(k) {
            Some(d) => std::borrow::Cow::Borrowed(d),
            None => std::borrow::Cow::Owned(self.differential(k)),
        }
    }

    /// `H^k(X; ℤ)` with class coordinates.
    pub fn integer_cohomology(&self, k: usize) -> Result<&Cohomology> {
        let slot = self.cohomology.get(k).ok_or_else(|| Error::DimensionMismatch(format!("degree {k} above the complex")))?;
        slot.get_or_init(|| {
            let d_in = if k == 0 { IntegerMatrix::zeros(self.base.count(0), 0) } else { self.base.coboundary_matrix(k - 1) };
            Cohomology::new(&d_in, &self.base.coboundary_matrix(k))
        })
        .as_ref()
        .map_err(Clone::clone)
    }

    pub fn zero(&self, k: usize) -> DiffCochain {
        DiffCochain::from_vector(self, k, self.module(k).zero_vector()).expect("zero has the right shape")
    }

    /// The cocycle 2-category at degree k, backed by the full complex.
    pub fn category(&self, k: usize) -> FullCategory<'_> {
        FullCategory { cx: self, k }
    }
}

/// A differential cochain `(c, h, ω)`; `ω` is `None` below the height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffCochain {
    s: usize,
    k: usize,
    c: Vec<BigInt>,
    h: Vec<BigRational>,
    omega: Option<Vec<BigRational>>,
}

impl DiffCochain {
    /// Builds a cochain; `omega` must be given exactly when `k ≥ s`.
    pub fn new(cx: &DiffComplex, k: usize, c: Vec<BigInt>, h: Vec<BigRational>, omega: Option<Vec<BigRational>>) -> Result<Self> {
        let x = &cx.base;
        let h_len = if k == 0 { 0 } else { x.count(k - 1) };
        if c.len() != x.count(k) || h.len() != h_len {
            return Err(Error::DimensionMismatch(format!("(c, h) shapes do not match degree {k}")));
        }
        match (&omega, k >= cx.s) {
            (Some(w), true) if w.len() == x.count(k) => {}
            (None, false) => {}
            (Some(_), false) => return Err(Error::DimensionMismatch(format!("ω must be absent in degree {k} below height {}", cx.s))),
            _ => return Err(Error::DimensionMismatch(format!("ω has the wrong shape in degree {k}"))),
        }
        Ok(Self { s: cx.s, k, c, h, omega })
    }

    pub fn from_vector(cx: &DiffComplex, k: usize, v: MixedVector) -> Result<Self> {
        if v.module() != cx.module(k) {
            return Err(Error::DimensionMismatch(format!("vector shape {:?} against DC^{k}", v.module())));
        }
        let h_len = if k == 0 { 0 } else { cx.base.count(k - 1) };
        let mut rats = v.rats;
        let omega = if k >= cx.s { Some(rats.split_off(h_len)) } else { None };
        Ok(Self { s: cx.s, k, c: v.ints, h: rats, omega })
    }

    pub fn to_vector(&self) -> MixedVector {
        let mut rats = self.h.clone();
        if let Some(w) = &self.omega {
            rats.extend(w.iter().cloned());
        }
        MixedVector::new(self.c.clone(), rats)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn height(&self) -> usize {
        self.s
    }

    pub fn c(&self) -> &[BigInt] {
        &self.c
    }

    pub fn h(&self) -> &[BigRational] {
        &self.h
    }

    pub fn omega(&self) -> Option<&[BigRational]> {
        self.omega.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.to_vector().is_zero()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.s != other.s || self.k != other.k || self.c.len() != other.c.len() || self.h.len() != other.h.len() {
            return Err(Error::DimensionMismatch("differential cochains of different shape".into()));
        }
        Ok(())
    }

    fn with_vector(&self, v: MixedVector) -> Self {
        let h_len = self.h.len();
        let mut rats = v.rats;
        let omega = self.omega.as_ref().map(|_| rats.split_off(h_len));
        Self { s: self.s, k: self.k, c: v.ints, h: rats, omega }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.with_vector(self.to_vector().add(&other.to_vector())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.with_vector(self.to_vector().sub(&other.to_vector())))
    }

    pub fn neg(&self) -> Self {
        self.with_vector(self.to_vector().neg())
    }
}

fn check_on(cx: &DiffComplex, x: &DiffCochain) -> Result<()> {
    if x.s != cx.s || x.to_vector().module() != cx.module(x.k) {
        return Err(Error::DimensionMismatch("differential cochain does not live on this complex".into()));
    }
    Ok(())
}

/// `d(c, h, ω) = (dc, ω − c − dh, dω)`.
pub fn dc_differential(cx: &DiffComplex, x: &DiffCochain) -> Result<DiffCochain> {
    check_on(cx, x)?;
    let v = cx.differential_ref(x.k).apply(&x.to_vector())?;
    DiffCochain::from_vector(cx, x.k + 1, v)
}

pub fn is_cocycle(cx: &DiffComplex, x: &DiffCochain) -> Result<bool> {
    Ok(dc_differential(cx, x)?.is_zero())
}

/// `b: source → target` with `db = source − target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneArrow {
    pub source: DiffCochain,
    pub target: DiffCochain,
    pub b: DiffCochain,
}

/// A 2-arrow between parallel 1-arrows, represented by `a` with
/// `da = b_2 − b_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoArrowClass {
    pub source: OneArrow,
    pub target: OneArrow,
    pub a: DiffCochain,
}

impl OneArrow {
    /// Checks `db = source − target`.
    pub fn validate(&self, cx: &DiffComplex) -> Result<bool> {
        Ok(dc_differential(cx, &self.b)? == self.source.sub(&self.target)?)
    }

    /// `self` followed by `next`: arrows compose by adding cochains.
    pub fn then(&self, next: &OneArrow) -> Result<OneArrow> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch("arrows are not composable".into()));
        }
        Ok(OneArrow { source: self.source.clone(), target: next.target.clone(), b: self.b.add(&next.b)? })
    }
}

/// Solves `d(b) = x_1 − x_2`; the returned `b` is the solver's canonical
/// particular solution.
pub fn find_one_arrow(cx: &DiffComplex, x1: &DiffCochain, x2: &DiffCochain) -> Result<Option<OneArrow>> {
    check_on(cx, x1)?;
    check_on(cx, x2)?;
    let diff = x1.sub(x2)?;
    let k = x1.k;
    if k == 0 {
        // no degree −1 cochains: the only arrow is the identity, carried by an empty cochain
        let empty = DiffCochain { s: cx.s, k: 0, c: Vec::new(), h: Vec::new(), omega: None };
        return Ok(diff.is_zero().then(|| OneArrow { source: x1.clone(), target: x2.clone(), b: empty }));
    }
    let sol = solve_mixed_system(&cx.differential_ref(k - 1), &diff.to_vector())?;
    Ok(sol.map(|v| OneArrow { source: x1.clone(), target: x2.clone(), b: DiffCochain::from_vector(cx, k - 1, v).expect("solution shape") }))
}

/// Solves `d(a) = b_2 − b_1` for parallel arrows.
pub fn find_two_arrow(cx: &DiffComplex, b1: &OneArrow, b2: &OneArrow) -> Result<Option<TwoArrowClass>> {
    if b1.source != b2.source || b1.target != b2.target {
        return Err(Error::EndpointMismatch("2-arrows need parallel 1-arrows".into()));
    }
    let k = b1.source.k;
    let diff = b2.b.sub(&b1.b)?;
    if k < 2 {
        return Ok(diff.is_zero().then(|| TwoArrowClass {
            source: b1.clone(),
            target: b2.clone(),
            a: DiffCochain { s: cx.s, k: 0, c: Vec::new(), h: Vec::new(), omega: None },
        }));
    }
    let sol = solve_mixed_system(&cx.differential_ref(k - 2), &diff.to_vector())?;
    Ok(sol.map(|v| TwoArrowClass {
        source: b1.clone(),
        target: b2.clone(),
        a: DiffCochain::from_vector(cx, k - 2, v).expect("solution shape"),
    }))
}

/// Whether two representatives define the same 2-arrow class.
pub fn same_two_arrow(cx: &DiffComplex, a1: &DiffCochain, a2: &DiffCochain) -> Result<bool> {
    let diff = a1.sub(a2)?;
    if a1.k == 0 {
        return Ok(diff.is_zero());
    }
    Ok(solve_mixed_system(&cx.differential_ref(a1.k - 1), &diff.to_vector())?.is_some())
}

/// Class of the integer part `c` in `H^k(X; ℤ)`.
pub fn char_class(cx: &DiffComplex, x: &DiffCochain) -> Result<Vec<BigInt>> {
    if !is_cocycle(cx, x)? {
        return Err(Error::NotACocycle(format!("degree-{} differential cochain is not closed", x.k)));
    }
    cx.integer_cohomology(x.k)?.class_of(&x.c)
}

/// `(c, 0, c)` for an integer cocycle `c` of degree `k ≥ s`.
pub fn lift_integral(cx: &DiffComplex, k: usize, c: &[BigInt]) -> Result<DiffCochain> {
    if k < cx.s {
        return Err(Error::NoCanonicalLift { degree: k, height: cx.s });
    }
    if c.len() != cx.base.count(k) {
        return Err(Error::DimensionMismatch("integer cochain of the wrong degree".into()));
    }
    if !cx.base.coboundary_matrix(k).mul_vec(c)?.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::NotACocycle("integer cochain is not closed".into()));
    }
    let h = if k == 0 { Vec::new() } else { vec![BigRational::from_integer(0.into()); cx.base.count(k - 1)] };
    let omega = c.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    DiffCochain::new(cx, k, c.to_vec(), h, Some(omega))
}

/// Componentwise pullback along `f: Y → X`; `target` is `DC_s(X)`,
/// `source` is `DC_s(Y)`.
pub fn pullback_dc(f: &SimplicialMap, source: &DiffComplex, x: &DiffCochain) -> Result<DiffCochain> {
    if x.s != source.s {
        return Err(Error::DimensionMismatch("heights differ".into()));
    }
    let m = Presheaf::Diff { s: x.s }.pullback(f, x.k);
    DiffCochain::from_vector(source, x.k, m.apply(&x.to_vector())?)
}

/// The cocycle 2-category of the untruncated complex at degree k.
#[derive(Clone, Copy, Debug)]
pub struct FullCategory<'a> {
    cx: &'a DiffComplex,
    k: usize,
}

impl CocycleCategory for FullCategory<'_> {
    fn degree(&self) -> usize {
        self.k
    }

    fn is_object(&self, x: &MixedVector) -> Result<bool> {
        Ok(self.cx.differential_ref(self.k).apply(x)?.is_zero())
    }

    fn one_arrow(&self, x1: &MixedVector, x2: &MixedVector) -> Result<Option<MixedVector>> {
        if self.k == 0 {
            return Ok(x1.sub(x2).is_zero().then(MixedVector::default));
        }
        solve_mixed_system(&self.cx.differential_ref(self.k - 1), &x1.sub(x2))
    }

    fn two_arrow(&self, b1: &MixedVector, b2: &MixedVector) -> Result<Option<MixedVector>> {
        if self.k < 2 {
            return Ok(b2.sub(b1).is_zero().then(MixedVector::default));
        }
        solve_mixed_system(&self.cx.differential_ref(self.k - 2), &b2.sub(b1))
    }

    fn same_two_arrow(&self, a1: &MixedVector, a2: &MixedVector) -> Result<bool> {
        if self.k < 3 {
            return Ok(a1.sub(a2).is_zero());
        }
        Ok(solve_mixed_system(&self.cx.differential_ref(self.k - 3), &a1.sub(a2))?.is_some())
    }
}

/// A random vector: integers in `[−r, r]`, rationals `p/q` with `|p| ≤ r`
/// and `q ∈ {1, 2, 3}`.
pub fn random_vector(m: MixedModule, rng: &mut impl Rng, r: i64) -> MixedVector {
    let ints = (0..m.int_rank).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect();
    let rats = (0..m.rat_dim).map(|_| BigRational::new(BigInt::from(rng.gen_range(-r..=r)), BigInt::from(rng.gen_range(1..=3)))).collect();
    MixedVector::new(ints, rats)
}

/// A random degree-k cocycle (`k ≥ s`) together with the class coordinates
/// it was built from: the lift of a representative, a flat term `(0, h, dh)`
/// and an exact term.
pub fn random_cocycle(cx: &DiffComplex, k: usize, rng: &mut impl Rng) -> Result<(DiffCochain, Vec<BigInt>)> {
    let h = cx.integer_cohomology(k)?;
    let group = h.group().clone();
    let mut coords = Vec::new();
    for t in &group.torsion {
        let t = i64::try_from(t).unwrap_or(i64::MAX).min(3);
        coords.push(BigInt::from(rng.gen_range(0..t)));
    }
    for _ in 0..group.free_rank {
        coords.push(BigInt::from(rng.gen_range(-1..=1)));
    }
    let c = h.representative(&coords);
    let mut x = lift_integral(cx, k, &c)?;
    if k >= 1 {
        let h0 = random_vector(MixedModule::new(0, cx.base.count(k - 1)), rng, 2).rats;
        let dh0 = cx.base.coboundary_matrix(k - 1).to_rational().mul_vec(&h0)?;
        let flat = DiffCochain::new(cx, k, vec![BigInt::from(0); cx.base.count(k)], h0, Some(dh0))?;
        x = x.add(&flat)?;
        let y = DiffCochain::from_vector(cx, k - 1, random_vector(cx.module(k - 1), rng, 2))?;
        x = x.add(&dc_differential(cx, &y)?)?;
    }
    Ok((x, coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int_vec, rat};
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn circle(s: usize) -> DiffComplex {
        DiffComplex::new(Arc::new(fixtures::circle()), s)
    }

    #[test]
    fn edge_indicator_is_not_closed() {
        let cx = circle(1);
        // c = indicator of [0,1]; ω = 0
        let x = DiffCochain::new(&cx, 1, int_vec(&[1, 0, 0]), vec![rat(0, 1); 3], Some(vec![rat(0, 1); 3])).unwrap();
        let dx = dc_differential(&cx, &x).unwrap();
        assert_eq!(dx.h(), &[rat(-1, 1), rat(0, 1), rat(0, 1)]);
        assert!(!is_cocycle(&cx, &x).unwrap());
    }

    #[test]
    fn omega_is_structurally_absent_below_height() {
        let cx = circle(2);
        assert!(DiffCochain::new(&cx, 1, int_vec(&[0, 0, 0]), vec![rat(0, 1); 3], Some(vec![rat(0, 1); 3])).is_err());
        assert_eq!(cx.zero(1).omega(), None);
        assert!(matches!(lift_integral(&cx, 1, &int_vec(&[0, 0, 0])), Err(Error::NoCanonicalLift { .. })));
    }

    #[test]
    fn generator_on_the_two_sphere_has_no_arrow_to_zero() {
        let cx = DiffComplex::new(Arc::new(fixtures::boundary_tetrahedron()), 1);
        let g = cx.integer_cohomology(2).unwrap().generator(0);
        let x = lift_integral(&cx, 2, &g).unwrap();
        assert!(is_cocycle(&cx, &x).unwrap());
        assert_eq!(char_class(&cx, &x).unwrap(), int_vec(&[1]));
        assert!(find_one_arrow(&cx, &x, &cx.zero(2)).unwrap().is_none());
        let same = find_one_arrow(&cx, &x, &x).unwrap().unwrap();
        assert!(same.b.is_zero());
    }

    #[test]
    fn exact_perturbations_are_connected() {
        let cx = DiffComplex::new(Arc::new(fixtures::torus()), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let (x2, _) = random_cocycle(&cx, 2, &mut rng).unwrap();
            let y = DiffCochain::from_vector(&cx, 1, random_vector(cx.module(1), &mut rng, 3)).unwrap();
            let x1 = x2.add(&dc_differential(&cx, &y).unwrap()).unwrap();
            let arrow = find_one_arrow(&cx, &x1, &x2).unwrap().unwrap();
            assert!(arrow.validate(&cx).unwrap());
            let a0 = DiffCochain::from_vector(&cx, 0, random_vector(cx.module(0), &mut rng, 3)).unwrap();
            let b2 = OneArrow { b: arrow.b.add(&dc_differential(&cx, &a0).unwrap()).unwrap(), ..arrow.clone() };
            let t = find_two_arrow(&cx, &arrow, &b2).unwrap().unwrap();
            assert_eq!(dc_differential(&cx, &t.a).unwrap(), b2.b.sub(&arrow.b).unwrap());
        }
    }

    #[test]
    fn torus_two_arrows_differing_by_a_class_are_inequivalent() {
        let cx = DiffComplex::new(Arc::new(fixtures::torus()), 1);
        let zero = cx.zero(3);
        let b1 = OneArrow { source: zero.clone(), target: zero.clone(), b: cx.zero(2) };
        let g = cx.integer_cohomology(2).unwrap().generator(0);
        let b2 = OneArrow { b: lift_integral(&cx, 2, &g).unwrap(), ..b1.clone() };
        assert!(b2.validate(&cx).unwrap());
        assert!(find_two_arrow(&cx, &b1, &b2).unwrap().is_none());
    }

    #[test]
    fn endpoint_mismatch() {
        let cx = circle(1);
        let (x, _) = random_cocycle(&cx, 1, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let a = OneArrow { source: x.clone(), target: x.clone(), b: cx.zero(0) };
        let b = OneArrow { source: cx.zero(1), target: x, b: cx.zero(0) };
        assert!(matches!(find_two_arrow(&cx, &a, &b), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn degree_zero_cocycles_vanish() {
        for x in fixtures::all_complexes() {
            for s in 1..=3 {
                let cx = DiffComplex::new(Arc::new(x.clone()), s);
                assert!(cx.differential(0).is_injective());
            }
        }
    }

    #[test]
    fn rp2_self_arrows_of_zero() {
        let cx = DiffComplex::new(Arc::new(fixtures::rp2()), 1);
        let zero = cx.zero(3);
        let h2 = cx.integer_cohomology(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // integer 2-cocycles: a kernel basis of the coboundary, plus random exact shifts
        let kernel = crate::algebra::integer_kernel(&cx.base().coboundary_matrix(2));
        let mut candidates = vec![cx.zero(2)];
        for z in kernel.iter().chain([h2.generator(0)].iter()) {
            let b = lift_integral(&cx, 2, z).unwrap();
            let y = DiffCochain::from_vector(&cx, 1, random_vector(cx.module(1), &mut rng, 2)).unwrap();
            candidates.push(b.add(&dc_differential(&cx, &y).unwrap()).unwrap());
        }
        let arrows: Vec<OneArrow> = candidates.into_iter().map(|b| OneArrow { source: zero.clone(), target: zero.clone(), b }).collect();
        let mut classes: Vec<&OneArrow> = Vec::new();
        for a in &arrows {
            assert!(a.validate(&cx).unwrap());
            if !classes.iter().any(|c| find_two_arrow(&cx, c, a).unwrap().is_some()) {
                classes.push(a);
            }
        }
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn pullback_commutes_with_d() {
        let x = Arc::new(fixtures::circle());
        let f = SimplicialMap::new(x.clone(), x.clone(), [(0, 1), (1, 2), (2, 0)]).unwrap();
        let cx = circle(1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..2 {
            let y = DiffCochain::from_vector(&cx, k, random_vector(cx.module(k), &mut rng, 4)).unwrap();
            let lhs = pullback_dc(&f, &cx, &dc_differential(&cx, &y).unwrap()).unwrap();
            let rhs = dc_differential(&cx, &pullback_dc(&f, &cx, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let id = SimplicialMap::identity(x);
        let y = DiffCochain::from_vector(&cx, 1, random_vector(cx.module(1), &mut rng, 4)).unwrap();
        assert_eq!(pullback_dc(&id, &cx, &y).unwrap(), y);
    }
}
