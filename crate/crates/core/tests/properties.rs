//! Property tests for the algebra kernel and the differential cochain complexes.

use std::sync::Arc;

use cocycle_forge::algebra::{smith_normal_form, solve_integer_system, Cohomology, IntegerMatrix};
use cocycle_forge::diffcocycle::{char_class, dc_differential, random_cocycle, random_vector, DiffCochain, DiffComplex};
use cocycle_forge::fixtures;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-9i64..=9, r * c)))
}

fn to_matrix(r: usize, c: usize, v: &[i64]) -> IntegerMatrix {
    IntegerMatrix::from_vec(r, c, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_reconstructs((r, c, v) in matrix()) {
        let a = to_matrix(r, c, &v);
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&a).unwrap().mul(&d.v).unwrap(), d.s.clone());
        prop_assert_eq!(d.u_inv.mul(&d.s).unwrap().mul(&d.v_inv).unwrap(), a);
        prop_assert!(d.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn smith_form_is_deterministic((r, c, v) in matrix()) {
        let a = to_matrix(r, c, &v);
        prop_assert_eq!(smith_normal_form(&a).u, smith_normal_form(&a).u);
    }

    #[test]
    fn integer_systems_with_a_solution_are_solved((r, c, v) in matrix(), x in prop::collection::vec(-5i64..=5, 6)) {
        let a = to_matrix(r, c, &v);
        let x: Vec<BigInt> = x[..c].iter().map(|&t| BigInt::from(t)).collect();
        let y = a.mul_vec(&x).unwrap();
        let sol = solve_integer_system(&a, &y).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), y);
        for k in &sol.kernel {
            prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dc_differential_squares_to_zero(seed in any::<u64>(), s in 1usize..=3, k in 0usize..=2, which in 0usize..3) {
        let x = [fixtures::circle(), fixtures::boundary_tetrahedron(), fixtures::rp2()][which].clone();
        let cx = DiffComplex::new(Arc::new(x), s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = DiffCochain::from_vector(&cx, k, random_vector(cx.module(k), &mut rng, 5)).unwrap();
        let dd = dc_differential(&cx, &dc_differential(&cx, &y).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn classes_ignore_exact_terms(seed in any::<u64>(), s in 1usize..=2) {
        let cx = DiffComplex::new(Arc::new(fixtures::torus()), s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, coords) = random_cocycle(&cx, 2, &mut rng).unwrap();
        let y = DiffCochain::from_vector(&cx, 1, random_vector(cx.module(1), &mut rng, 4)).unwrap();
        let x2 = x.add(&dc_differential(&cx, &y).unwrap()).unwrap();
        prop_assert_eq!(char_class(&cx, &x2).unwrap(), coords);
    }

    #[test]
    fn class_coordinates_round_trip(c0 in -3i64..=3, c1 in 0i64..2) {
        // H^2(RP²) = ℤ/2 and H^1(T²) = ℤ²: representatives have the coordinates they were built from
        let x = fixtures::rp2();
        let h = Cohomology::new(&x.coboundary_matrix(1), &x.coboundary_matrix(2)).unwrap();
        prop_assert_eq!(h.class_of(&h.representative(&[BigInt::from(c1)])).unwrap(), vec![BigInt::from(c1)]);
        let t = fixtures::torus();
        let h = Cohomology::new(&t.coboundary_matrix(0), &t.coboundary_matrix(1)).unwrap();
        let coords = vec![BigInt::from(c0), BigInt::from(c1)];
        prop_assert_eq!(h.class_of(&h.representative(&coords)).unwrap(), coords);
    }
}
