//! Čech–Deligne cocycles `(n, f, A, B)` for the coefficient complex
//! `ℤ ↪ ℚ⁰ → ℚ¹ → ℚ²`, their curvature, and the translations to and from
//! global `DC_s^3` cocycles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{integer_kernel, solve_mixed_system, to_rational_vec, MixedMap, MixedModule, MixedVector, RationalMatrix};
use crate::descent::{DescentComplex, DescentDatum};
use crate::diffcocycle::{is_cocycle, DiffCochain};
use crate::error::{Error, Result};
use crate::simplicial::{CechLevels, Presheaf, SimplicialComplex};

/// Which layers carry data; ignored layers are treated as absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GerbeFlavor {
    Bare,
    WithConnection,
    WithConnectionAndCurving,
}

impl GerbeFlavor {
    pub const ALL: [GerbeFlavor; 3] = [Self::Bare, Self::WithConnection, Self::WithConnectionAndCurving];

    /// Height of the differential cochain complex this flavor translates to.
    pub fn height(self) -> usize {
        match self {
            Self::Bare => 1,
            Self::WithConnection => 2,
            Self::WithConnectionAndCurving => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bare => "bare",
            Self::WithConnection => "with_connection",
            Self::WithConnectionAndCurving => "with_connection_and_curving",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// `B` on level 0 (2-cochains), `A` on level 1 (1-cochains), `f` on level 2
/// and the integer `n` on level 3 (0-cochains). Layers on missing levels are
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeCocycle {
    pub b: Vec<BigRational>,
    pub a: Vec<BigRational>,
    pub f: Vec<BigRational>,
    pub n: Vec<BigInt>,
}

fn count(levels: &CechLevels, q: usize, k: usize) -> usize {
    levels.level(q).map_or(0, |l| l.count(k))
}

fn d_rat(levels: &CechLevels, q: usize, k: usize) -> RationalMatrix {
    levels.level(q).map_or_else(|| RationalMatrix::zeros(0, 0), |l| l.coboundary_matrix(k).to_rational())
}

fn coface(levels: &CechLevels, q: usize, k: usize) -> RationalMatrix {
    if levels.level(q + 1).is_none() {
        return RationalMatrix::zeros(0, count(levels, q, k));
    }
    levels.object().coface_matrix(q, k).to_rational()
}

fn sub(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

impl GerbeCocycle {
    pub fn zero(levels: &CechLevels) -> Self {
        Self {
            b: vec![BigRational::zero(); count(levels, 0, 2)],
            a: vec![BigRational::zero(); count(levels, 1, 1)],
            f: vec![BigRational::zero(); count(levels, 2, 0)],
            n: vec![BigInt::zero(); count(levels, 3, 0)],
        }
    }

    /// `B = π^*β`, all other layers zero.
    pub fn global_curving(levels: &CechLevels, beta: &[BigRational]) -> Result<Self> {
        if beta.len() != levels.base().count(2) {
            return Err(Error::DimensionMismatch("β must be a 2-cochain on the base".into()));
        }
        let pi = levels.augmentation().pullback_matrix(2).to_rational();
        Ok(Self { b: pi.mul_vec(beta)?, ..Self::zero(levels) })
    }

    fn check_shape(&self, levels: &CechLevels) -> Option<String> {
        let z = Self::zero(levels);
        for (name, have, want) in
            [("B", self.b.len(), z.b.len()), ("A", self.a.len(), z.a.len()), ("f", self.f.len(), z.f.len()), ("n", self.n.len(), z.n.len())]
        {
            if have != want {
                return Some(format!("layer {name} has {have} values, expected {want}"));
            }
        }
        None
    }

    /// Zeroes the layers a flavor ignores.
    pub fn forget(&self, flavor: GerbeFlavor) -> Self {
        let mut out = self.clone();
        if flavor != GerbeFlavor::WithConnectionAndCurving {
            out.b.iter_mut().for_each(|v| *v = BigRational::zero());
        }
        if flavor == GerbeFlavor::Bare {
            out.a.iter_mut().for_each(|v| *v = BigRational::zero());
        }
        out
    }

    /// Layerwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        Self {
            b: sub(&self.b, &other.b),
            a: sub(&self.a, &other.a),
            f: sub(&self.f, &other.f),
            n: self.n.iter().zip(&other.n).map(|(x, y)| x - y).collect(),
        }
    }

    /// Gauge perturbation by `ρ` (level-0 1-cochain), `μ` (level-1
    /// 0-cochain) and a locally constant integer `k` on level 2:
    /// `B += dρ`, `A += ∂ρ + dμ`, `f += ∂μ + k`, `n += ∂k`.
    pub fn perturbed(&self, levels: &CechLevels, rho: &[BigRational], mu: &[BigRational], k: &[BigInt]) -> Result<Self> {
        let add = |x: &[BigRational], y: Vec<BigRational>| -> Vec<BigRational> { x.iter().zip(y).map(|(a, b)| a + b).collect() };
        let kq = to_rational_vec(k);
        let b = add(&self.b, d_rat(levels, 0, 1).mul_vec(rho)?);
        let a = if levels.level(1).is_some() {
            let t = coface(levels, 0, 1).mul_vec(rho)?;
            add(&add(&self.a, t), d_rat(levels, 1, 0).mul_vec(mu)?)
        } else {
            self.a.clone()
        };
        let f = if levels.level(2).is_some() { add(&add(&self.f, coface(levels, 1, 0).mul_vec(mu)?), kq.clone()) } else { self.f.clone() };
        let n = if levels.level(3).is_some() {
            let dk = levels.object().coface_matrix(2, 0).mul_vec(k)?;
            self.n.iter().zip(dk).map(|(x, y)| x + y).collect()
        } else {
            self.n.clone()
        };
        Ok(Self { b, a, f, n })
    }
}

/// Violated conditions in the fixed order `∂B = dA`, `∂A = df`, `∂f = n`,
/// `dn = 0`, `∂n = 0`, skipping those the flavor ignores. Empty means valid.
pub fn validate_gerbe(levels: &CechLevels, g: &GerbeCocycle, flavor: GerbeFlavor) -> Vec<String> {
    if let Some(m) = g.check_shape(levels) {
        return vec![m];
    }
    let mut out = Vec::new();
    let n = to_rational_vec(&g.n);
    let mut check = |name: &str, lhs: Result<Vec<BigRational>>, rhs: Result<Vec<BigRational>>| {
        if lhs.and_then(|l| rhs.map(|r| l != r)).unwrap_or(true) {
            out.push(name.to_string());
        }
    };
    if flavor == GerbeFlavor::WithConnectionAndCurving && levels.level(1).is_some() {
        check("∂B = dA", coface(levels, 0, 2).mul_vec(&g.b), d_rat(levels, 1, 1).mul_vec(&g.a));
    }
    if flavor != GerbeFlavor::Bare && levels.level(2).is_some() {
        check("∂A = df", coface(levels, 1, 1).mul_vec(&g.a), d_rat(levels, 2, 0).mul_vec(&g.f));
    }
    if levels.level(3).is_some() {
        check("∂f = n", coface(levels, 2, 0).mul_vec(&g.f), Ok(n.clone()));
        check("dn = 0", d_rat(levels, 3, 0).mul_vec(&n), Ok(vec![BigRational::zero(); count(levels, 3, 1)]));
    }
    if levels.level(4).is_some() {
        check("∂n = 0", coface(levels, 3, 0).mul_vec(&n), Ok(vec![BigRational::zero(); count(levels, 4, 0)]));
    }
    out
}

fn require_valid(levels: &CechLevels, g: &GerbeCocycle, flavor: GerbeFlavor) -> Result<()> {
    match validate_gerbe(levels, g, flavor).into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidDatum(format!("gerbe condition {v} fails"))),
    }
}

/// The global 3-cochain `ω` with `ω|_{U_α} = dB_α`.
pub fn gerbe_curvature(levels: &CechLevels, g: &GerbeCocycle) -> Result<Vec<BigRational>> {
    require_valid(levels, g, GerbeFlavor::WithConnectionAndCurving)?;
    let local = d_rat(levels, 0, 2).mul_vec(&g.b)?;
    let omega = levels.contraction_matrix(0, 3)?.to_rational().mul_vec(&local)?;
    if levels.augmentation().pullback_matrix(3).to_rational().mul_vec(&omega)? != local {
        return Err(Error::InvalidDatum("local curvatures disagree on overlaps".into()));
    }
    Ok(omega)
}

/// Pairings of a 3-cochain with a basis of the integral 3-cycles.
pub fn curvature_periods(base: &SimplicialComplex, omega: &[BigRational]) -> Result<Vec<BigRational>> {
    let boundary = base.coboundary_matrix(2).transpose();
    integer_kernel(&boundary)
        .into_iter()
        .map(|z| {
            if z.len() != omega.len() {
                return Err(Error::DimensionMismatch("curvature is not a 3-cochain on this complex".into()));
            }
            Ok(z.iter().zip(omega).map(|(a, w)| BigRational::from_integer(a.clone()) * w).sum())
        })
        .collect()
}

/// Fills the ignored layers: `A = h(df)`, `B = h(dA)`.
fn complete_layers(levels: &CechLevels, g: &GerbeCocycle, flavor: GerbeFlavor) -> Result<GerbeCocycle> {
    let mut g = g.forget(flavor);
    if flavor == GerbeFlavor::Bare && levels.level(2).is_some() {
        let df = d_rat(levels, 2, 0).mul_vec(&g.f)?;
        g.a = levels.contraction_matrix(2, 1)?.to_rational().mul_vec(&df)?;
    }
    if flavor != GerbeFlavor::WithConnectionAndCurving && levels.level(1).is_some() {
        let da = d_rat(levels, 1, 1).mul_vec(&g.a)?;
        g.b = levels.contraction_matrix(1, 2)?.to_rational().mul_vec(&da)?;
    }
    Ok(g)
}

/// The global `DC_s^3` cocycle of a gerbe, `s` the flavor's height: the total
/// cocycle `((0, B, dB), (0, −A), (0, −f), n)` collapsed by the contraction.
pub fn gerbe_to_dc(dc: &DescentComplex, g: &GerbeCocycle, flavor: GerbeFlavor) -> Result<DiffCochain> {
    if dc.height() != flavor.height() {
        return Err(Error::DimensionMismatch(format!("flavor {} needs height {}", flavor.name(), flavor.height())));
    }
    let levels = dc.levels();
    require_valid(levels, g, flavor)?;
    let g = complete_layers(levels, g, flavor)?;
    let total = dc.total();
    let presheaf = total.presheaf();
    let x = total.zero(3);
    let mut parts = x.parts;
    for (q, part) in parts.iter_mut().enumerate() {
        let p = 3 - q;
        let zeros = |k: usize| vec![BigRational::zero(); count(levels, q, k)];
        let neg = |v: &[BigRational]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut slots = match q {
            0 => vec![zeros(3), g.b.clone(), d_rat(levels, 0, 2).mul_vec(&g.b)?],
            1 => vec![zeros(2), neg(&g.a)],
            2 => vec![zeros(1), neg(&g.f)],
            _ => vec![to_rational_vec(&g.n)],
        };
        let want = presheaf.slots(p).len();
        while slots.len() < want {
            slots.push(zeros(p));
        }
        *part = presheaf.join_slots(p, &slots);
    }
    let datum = DescentDatum::from_total(&crate::equivariant::TotalCochain { degree: 3, parts });
    Ok(dc.glue(&datum)?.global)
}

/// `J(v) = (0, v)` or `(0, v, dv)` into `DC_3^p` of a complex, as a map from
/// rational `(p−1)`-cochains.
fn layer_map(x: &SimplicialComplex, p: usize) -> MixedMap {
    let module = Presheaf::Diff { s: 3 }.module(x, p);
    let n = x.count(p - 1);
    let mut qq = RationalMatrix::zeros(module.rat_dim, n);
    qq.place(0, 0, &RationalMatrix::identity(n));
    if p >= 3 {
        qq.place(n, 0, &x.coboundary_matrix(p - 1).to_rational());
    }
    MixedMap::new(crate::algebra::IntegerMatrix::zeros(module.int_rank, 0), RationalMatrix::zeros(module.rat_dim, 0), qq)
        .expect("layer map shapes")
}

/// Solves `d u + sign · J(v) = rhs` on one Čech level, naming the first
/// piece without a solution.
fn solve_level(levels: &CechLevels, q: usize, p: usize, sign: i64, rhs: &MixedVector) -> Result<(MixedVector, Vec<BigRational>)> {
    let presheaf = Presheaf::Diff { s: 3 };
    let system = |x: &SimplicialComplex| {
        let d = presheaf.differential(x, p - 1);
        let j = layer_map(x, p).scaled(sign);
        let dom = d.domain();
        let mut m = MixedMap::zero(MixedModule::sum(&[dom, j.domain()]), d.codomain());
        m.place((0, 0), (0, 0), &d);
        m.place((0, 0), (dom.int_rank, dom.rat_dim), &j);
        (m, dom)
    };
    let level = levels.level(q).expect("level exists");
    let (m, dom) = system(level);
    if let Some(sol) = solve_mixed_system(&m, rhs)? {
        let mut rats = sol.rats;
        let v = rats.split_off(dom.rat_dim);
        return Ok((MixedVector::new(sol.ints, rats), v));
    }
    for (j, tuple) in levels.tuples(q).iter().enumerate() {
        let inc = levels.piece_inclusion(q, j);
        let local = presheaf.pullback(&inc, p).apply(rhs)?;
        if solve_mixed_system(&system(levels.piece(q, j)).0, &local)?.is_none() {
            return Err(Error::LocalTrivialization { level: q, index: j, indices: tuple.clone() });
        }
    }
    Err(Error::InvalidDatum(format!("level {q} has no trivialization")))
}

/// Local trivialization of a `DC_s^3` cocycle: finds `U = (u_0, u_1, u_2)`
/// in `DC_3` with `π^*x − δU` equal to the total cocycle of a gerbe, and
/// returns that gerbe with the flavor's ignored layers zeroed.
pub fn dc_to_gerbe(dc: &DescentComplex, x: &DiffCochain, flavor: GerbeFlavor) -> Result<GerbeCocycle> {
    if x.degree() != 3 || x.height() != dc.height() {
        return Err(Error::DimensionMismatch("expects a DC_s^3 cochain of the complex's height".into()));
    }
    if !is_cocycle(dc.global(), x)? {
        return Err(Error::NotACocycle("only cocycles have local trivializations".into()));
    }
    let levels = dc.levels();
    let p3 = Presheaf::Diff { s: 3 };
    let mut g = GerbeCocycle::zero(levels);
    // in degree 3 the layouts of DC_s and DC_3 agree
    let rhs = levels.augmented_coface(p3, 0, 3).apply(&x.to_vector())?;
    let (u0, b) = solve_level(levels, 0, 3, 1, &rhs)?;
    g.b = b;
    if levels.level(1).is_some() {
        let rhs = levels.object().coface(p3, 0, 2).apply(&u0)?;
        let (u1, a) = solve_level(levels, 1, 2, 1, &rhs)?;
        g.a = a;
        if levels.level(2).is_some() {
            let rhs = levels.object().coface(p3, 1, 1).apply(&u1)?.neg();
            let (u2, f) = solve_level(levels, 2, 1, -1, &rhs)?;
            g.f = f;
            if levels.level(3).is_some() {
                g.n = levels.object().coface(p3, 2, 0).apply(&u2)?.neg().ints;
            }
        }
    }
    let g = g.forget(flavor);
    debug_assert!(validate_gerbe(levels, &g, flavor).is_empty());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::diffcocycle::{char_class, dc_differential, find_one_arrow, random_cocycle, random_vector, DiffComplex};
    use crate::fixtures;
    use crate::simplicial::Cover;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn is_zero(x: &[BigRational]) -> bool {
        x.iter().all(Zero::is_zero)
    }

    fn facet(x: SimplicialComplex, s: usize) -> DescentComplex {
        DescentComplex::new(&Cover::facet_cover(Arc::new(x)).unwrap(), s).unwrap()
    }

    #[test]
    fn zero_gerbe() {
        let dc = facet(fixtures::boundary_tetrahedron(), 3);
        let z = GerbeCocycle::zero(dc.levels());
        for flavor in GerbeFlavor::ALL {
            assert!(validate_gerbe(dc.levels(), &z, flavor).is_empty());
        }
        assert!(gerbe_to_dc(&dc, &z, GerbeFlavor::WithConnectionAndCurving).unwrap().is_zero());
        assert!(is_zero(&gerbe_curvature(dc.levels(), &z).unwrap()));
        assert_eq!(dc_to_gerbe(&dc, &dc.global().zero(3), GerbeFlavor::WithConnectionAndCurving).unwrap(), z);
    }

    #[test]
    fn global_curving_maps_to_the_trivial_form() {
        let dc = facet(fixtures::torus(), 3);
        let beta: Vec<BigRational> = (0..dc.global().base().count(2)).map(|i| rat(i as i64 % 5 - 2, 3)).collect();
        let g = GerbeCocycle::global_curving(dc.levels(), &beta).unwrap();
        assert!(validate_gerbe(dc.levels(), &g, GerbeFlavor::WithConnectionAndCurving).is_empty());
        let x = gerbe_to_dc(&dc, &g, GerbeFlavor::WithConnectionAndCurving).unwrap();
        let dbeta = dc.global().base().coboundary_matrix(2).to_rational().mul_vec(&beta).unwrap();
        let want = DiffCochain::new(dc.global(), 3, vec![BigInt::zero(); dc.global().base().count(3)], beta, Some(dbeta.clone())).unwrap();
        assert!(find_one_arrow(dc.global(), &x, &want).unwrap().is_some());
        assert_eq!(gerbe_curvature(dc.levels(), &g).unwrap(), dbeta);
    }

    #[test]
    fn half_shift_of_f_breaks_only_the_integrality_condition() {
        let dc = facet(fixtures::boundary_4simplex(), 1);
        let mut g = GerbeCocycle::zero(dc.levels());
        let l2 = dc.levels().level(2).unwrap();
        for (i, v) in l2.simplices(0).iter().enumerate() {
            if dc.levels().decode(v).0 == 0 {
                g.f[i] = rat(1, 2);
            }
        }
        for flavor in GerbeFlavor::ALL {
            assert_eq!(validate_gerbe(dc.levels(), &g, flavor), vec!["∂f = n".to_string()]);
        }
    }

    #[test]
    fn round_trips_keep_the_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for x in [fixtures::boundary_tetrahedron(), fixtures::rp2()] {
            for flavor in GerbeFlavor::ALL {
                let dc = facet(x.clone(), flavor.height());
                let (c, _) = random_cocycle(dc.global(), 3.max(flavor.height()), &mut rng).unwrap();
                let g = dc_to_gerbe(&dc, &c, flavor).unwrap();
                assert!(validate_gerbe(dc.levels(), &g, flavor).is_empty(), "{flavor:?}");
                let back = gerbe_to_dc(&dc, &g, flavor).unwrap();
                assert_eq!(char_class(dc.global(), &back).unwrap(), char_class(dc.global(), &c).unwrap());
                assert!(find_one_arrow(dc.global(), &back, &c).unwrap().is_some(), "{flavor:?}");
            }
        }
    }

    #[test]
    fn perturbed_curvature_stays_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let dc = facet(fixtures::boundary_4simplex(), 3);
        let cx = DiffComplex::new(dc.global().base().clone(), 3);
        let gen = cx.integer_cohomology(3).unwrap().generator(0);
        let x = crate::diffcocycle::lift_integral(&cx, 3, &gen).unwrap();
        let y = DiffCochain::from_vector(&cx, 2, random_vector(cx.module(2), &mut rng, 2)).unwrap();
        let x = x.add(&dc_differential(&cx, &y).unwrap()).unwrap();
        let g = dc_to_gerbe(&dc, &x, GerbeFlavor::WithConnectionAndCurving).unwrap();
        let levels = dc.levels();
        let rho = random_vector(MixedModule::new(0, count(levels, 0, 1)), &mut rng, 3).rats;
        let mu = random_vector(MixedModule::new(0, count(levels, 1, 0)), &mut rng, 3).rats;
        let k = vec![BigInt::from(1); count(levels, 2, 0)];
        let p = g.perturbed(levels, &rho, &mu, &k).unwrap();
        assert!(validate_gerbe(levels, &p, GerbeFlavor::WithConnectionAndCurving).is_empty());
        let periods = curvature_periods(dc.global().base(), &gerbe_curvature(levels, &p).unwrap()).unwrap();
        assert_eq!(periods.len(), 1);
        assert!(periods[0] == rat(1, 1) || periods[0] == rat(-1, 1));
    }
}
