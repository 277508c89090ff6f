//! Differential cocycles on the torus: characteristic classes, 1-arrows
//! between cocycles and 2-arrows between parallel 1-arrows.

use std::sync::Arc;

use cocycle_forge::diffcocycle::{
    char_class, dc_differential, find_one_arrow, find_two_arrow, lift_integral, random_cocycle, random_vector, DiffCochain, DiffComplex,
    OneArrow,
};
use cocycle_forge::fixtures;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cocycle_forge::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cx = DiffComplex::new(Arc::new(fixtures::torus()), 1);
    println!("H^2(T²; ℤ) = {}", cx.integer_cohomology(2)?.group());

    let (x, coords) = random_cocycle(&cx, 2, &mut rng)?;
    assert_eq!(char_class(&cx, &x)?, coords);
    println!("random cocycle of class {coords:?}");

    // an exact perturbation gives an isomorphic cocycle
    let y = DiffCochain::from_vector(&cx, 1, random_vector(cx.module(1), &mut rng, 3))?;
    let x2 = x.add(&dc_differential(&cx, &y)?)?;
    let b = find_one_arrow(&cx, &x, &x2)?.expect("cohomologous cocycles are connected");
    println!("1-arrow x → x + dy found: {}", b.validate(&cx)?);
    println!("1-arrow x → 0 exists: {}", find_one_arrow(&cx, &x, &cx.zero(2))?.is_some());

    // shifting b by a closed integral lift keeps it an arrow but changes its 2-isomorphism class
    for j in 0..cx.integer_cohomology(1)?.group().coordinate_count() {
        let shift = lift_integral(&cx, 1, &cx.integer_cohomology(1)?.generator(j))?;
        let b2 = OneArrow { b: b.b.add(&shift)?, ..b.clone() };
        assert!(b2.validate(&cx)?);
        println!("b ⇒ b + lift(e_{j}) exists: {}", find_two_arrow(&cx, &b, &b2)?.is_some());
    }
    let a = DiffCochain::from_vector(&cx, 0, random_vector(cx.module(0), &mut rng, 3))?;
    let b3 = OneArrow { b: b.b.add(&dc_differential(&cx, &a)?)?, ..b.clone() };
    println!("b ⇒ b + d(a) exists: {}", find_two_arrow(&cx, &b, &b3)?.is_some());
    Ok(())
}
