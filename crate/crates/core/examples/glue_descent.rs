//! Descent: restrict a global cocycle to a cover, disturb it by an exact
//! total cochain, glue it back and check the witness.

use std::sync::Arc;

use cocycle_forge::descent::{DescentComplex, DescentDatum};
use cocycle_forge::diffcocycle::{char_class, find_one_arrow, lift_integral, random_cocycle, random_vector};
use cocycle_forge::fixtures;
use cocycle_forge::simplicial::Cover;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cocycle_forge::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cover = Cover::facet_cover(Arc::new(fixtures::boundary_4simplex()))?;
    let dc = DescentComplex::new(&cover, 2)?;
    println!("{} cover members, Čech levels 0..={}", cover.len(), dc.levels().top());

    // a random cocycle shifted into the generating class
    let cx = dc.global();
    let (x, _) = random_cocycle(cx, 3, &mut rng)?;
    let x = x.add(&lift_integral(cx, 3, &cx.integer_cohomology(3)?.generator(0))?)?;
    let class = char_class(cx, &x)?;
    let restricted = dc.pullback_global(&x)?;
    let e = dc.total().unflatten(2, &random_vector(dc.total().module(2), &mut rng, 2));
    let datum = DescentDatum::from_total(&restricted.add(&dc.total().delta(&e)?));
    dc.validate(&datum)?;

    let glued = dc.glue(&datum)?;
    println!("witness checks: {}", dc.check_witness(&datum, &glued)?);
    println!("class before {class:?}, after {:?}", char_class(dc.global(), &glued.global)?);
    println!("glued cocycle isomorphic to the original: {}", find_one_arrow(dc.global(), &glued.global, &x)?.is_some());

    // a datum violating the overlap condition is rejected with its name
    let mut bad = datum.clone();
    bad.components[1].rats[0] += num_rational::BigRational::from_integer(1.into());
    match dc.validate(&bad) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
