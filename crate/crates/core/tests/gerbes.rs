//! Gerbe cocycles against transition data and under forgetting layers.

use std::sync::Arc;

use cocycle_forge::algebra::MixedModule;
use cocycle_forge::descent::{dd_class_from_transition, transition_from_cocycle, DescentComplex, LiftRule};
use cocycle_forge::diffcocycle::{char_class, find_one_arrow, random_cocycle, random_vector};
use cocycle_forge::fixtures;
use cocycle_forge::gerbe::{dc_to_gerbe, gerbe_to_dc, validate_gerbe, GerbeCocycle, GerbeFlavor};
use cocycle_forge::simplicial::Cover;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sphere3(s: usize) -> DescentComplex {
    DescentComplex::new(&Cover::facet_cover(Arc::new(fixtures::boundary_4simplex())).unwrap(), s).unwrap()
}

/// The bare gerbe `(n, f)` with `f` the continuous lift of transition data.
#[test]
fn bare_gerbe_from_transition_data_has_the_dd_class() {
    let dc = sphere3(1);
    let levels = dc.levels();
    let l3 = levels.level(3).unwrap();
    let j = levels.piece_index(3, &[0, 1, 2, 3]).unwrap();
    for weight in [1i64, -1] {
        let n: Vec<BigInt> = l3.simplices(0).iter().map(|v| BigInt::from(if levels.decode(v).0 == j { weight } else { 0 })).collect();
        let t = transition_from_cocycle(levels, &n).unwrap();
        let dd = dd_class_from_transition(levels, &t, LiftRule::Centered).unwrap();
        let f = t.lift(levels, LiftRule::Centered).unwrap();
        let df = levels.object().coface_matrix(2, 0).to_rational().mul_vec(&f).unwrap();
        let g = GerbeCocycle { f, n: df.iter().map(|v| v.to_integer()).collect(), ..GerbeCocycle::zero(levels) };
        assert!(validate_gerbe(levels, &g, GerbeFlavor::Bare).is_empty());
        let x = gerbe_to_dc(&dc, &g, GerbeFlavor::Bare).unwrap();
        assert_eq!(char_class(dc.global(), &x).unwrap(), dd, "weight {weight}");
        assert_eq!(dd, vec![BigInt::from(weight)]);
    }
}

/// On this cover the partition of unity has weight 1/4, so twice the
/// generator jumps by exactly 1/2 and has no well-defined continuous lift.
#[test]
fn ambiguous_transition_data_is_rejected() {
    let levels = sphere3(1).levels().clone();
    let j = levels.piece_index(3, &[0, 1, 2, 3]).unwrap();
    let n: Vec<BigInt> =
        levels.level(3).unwrap().simplices(0).iter().map(|v| BigInt::from(if levels.decode(v).0 == j { 2 } else { 0 })).collect();
    let t = transition_from_cocycle(&levels, &n).unwrap();
    assert!(dd_class_from_transition(&levels, &t, LiftRule::UnitInterval).is_err());
}

#[test]
fn forgetting_layers_keeps_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let full = sphere3(3);
    for _ in 0..4 {
        let (x, class) = random_cocycle(full.global(), 3, &mut rng).unwrap();
        let g = dc_to_gerbe(&full, &x, GerbeFlavor::WithConnectionAndCurving).unwrap();
        for flavor in GerbeFlavor::ALL {
            let dc = sphere3(flavor.height());
            let weaker = g.forget(flavor);
            assert!(validate_gerbe(dc.levels(), &weaker, flavor).is_empty(), "{flavor:?}");
            assert_eq!(char_class(dc.global(), &gerbe_to_dc(&dc, &weaker, flavor).unwrap()).unwrap(), class, "{flavor:?}");
        }
    }
}

/// Gerbes related by a gauge transformation give isomorphic differential
/// cocycles; gerbes of different class do not.
#[test]
fn gauge_equivalent_gerbes_are_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dc = sphere3(3);
    let levels = dc.levels();
    let count = |q: usize, p: usize| levels.level(q).unwrap().count(p);
    let flavor = GerbeFlavor::WithConnectionAndCurving;
    for _ in 0..4 {
        let (x, _) = random_cocycle(dc.global(), 3, &mut rng).unwrap();
        let g = dc_to_gerbe(&dc, &x, flavor).unwrap();
        let rho = random_vector(MixedModule::new(0, count(0, 1)), &mut rng, 3).rats;
        let mu = random_vector(MixedModule::new(0, count(1, 0)), &mut rng, 3).rats;
        let per_piece: Vec<i64> = (0..levels.tuples(2).len()).map(|_| rng.gen_range(-2..=2)).collect();
        let k: Vec<BigInt> = levels.level(2).unwrap().simplices(0).iter().map(|v| BigInt::from(per_piece[levels.decode(v).0])).collect();
        let h = g.perturbed(levels, &rho, &mu, &k).unwrap();
        let (gx, hx) = (gerbe_to_dc(&dc, &g, flavor).unwrap(), gerbe_to_dc(&dc, &h, flavor).unwrap());
        assert!(find_one_arrow(dc.global(), &gx, &hx).unwrap().is_some());
        // shifting the curving by a closed but non-exact amount changes the isomorphism class
        let (y, _) = random_cocycle(dc.global(), 3, &mut rng).unwrap();
        let other = gerbe_to_dc(&dc, &dc_to_gerbe(&dc, &y, flavor).unwrap(), flavor).unwrap();
        let same = char_class(dc.global(), &gx).unwrap() == char_class(dc.global(), &other).unwrap()
            && gx.omega().unwrap() == other.omega().unwrap();
        assert_eq!(find_one_arrow(dc.global(), &gx, &other).unwrap().is_some(), same);
    }
}

#[test]
fn half_integral_transition_is_not_a_gerbe() {
    let dc = sphere3(1);
    let mut g = GerbeCocycle::zero(dc.levels());
    g.f[0] = BigRational::new(1.into(), 2.into());
    assert_eq!(validate_gerbe(dc.levels(), &g, GerbeFlavor::Bare), vec!["∂f = n".to_string()]);
    assert!(gerbe_to_dc(&dc, &g, GerbeFlavor::Bare).is_err());
}
