//! Equivariant cohomology through the nerve of an action groupoid, and Čech
//! cohomology through the nerve of a cover groupoid.

use std::sync::Arc;

use cocycle_forge::equivariant::{equivariant_cohomology, ActionGroupoid, CechGroupoid};
use cocycle_forge::fixtures;
use cocycle_forge::simplicial::Cover;

fn main() -> cocycle_forge::Result<()> {
    let bz2 = ActionGroupoid::new(fixtures::trivial_action(2, fixtures::point()));
    for k in 0..=3 {
        println!("H^{k}_ℤ/2(pt) = {}", equivariant_cohomology(&bz2, k)?);
    }

    // free action: equivariant cohomology of S² is the cohomology of RP²
    let anti = ActionGroupoid::new(fixtures::antipodal_action());
    for k in 0..=2 {
        println!("H^{k}_ℤ/2(S², antipodal) = {}", equivariant_cohomology(&anti, k)?);
    }

    let cover = Cover::two_set_cover(Arc::new(fixtures::torus()))?;
    let cech = CechGroupoid::new(cover);
    for k in 0..=2 {
        println!("H^{k}(Čech nerve of a torus cover) = {}", equivariant_cohomology(&cech, k)?);
    }
    Ok(())
}
