//! The degree-3 class of ℚ/ℤ transition data on triple intersections,
//! for the generator of H^3(S³; ℤ) over the facet cover of ∂Δ⁴.

use std::sync::Arc;

use cocycle_forge::descent::{dd_class_from_transition, transition_from_cocycle, LiftRule};
use cocycle_forge::fixtures;
use cocycle_forge::simplicial::{build_cech_levels, Cover};
use num_bigint::BigInt;

fn main() -> cocycle_forge::Result<()> {
    let cover = Cover::facet_cover(Arc::new(fixtures::boundary_4simplex()))?;
    let levels = build_cech_levels(&cover, 4)?;
    let l3 = levels.level(3).expect("four facets meet");

    // n = 1 on the quadruple intersection U_0 ∩ U_1 ∩ U_2 ∩ U_3, zero elsewhere
    let j = levels.piece_index(3, &[0, 1, 2, 3]).expect("nonempty intersection");
    let n: Vec<BigInt> = l3.simplices(0).iter().map(|v| BigInt::from(u8::from(levels.decode(v).0 == j))).collect();

    let t = transition_from_cocycle(&levels, &n)?;
    println!("{} transition values, e.g. {:?}", t.values().len(), t.values().iter().take(4).map(ToString::to_string).collect::<Vec<_>>());
    for rule in [LiftRule::UnitInterval, LiftRule::Centered] {
        println!("{rule:?}: class {:?}", dd_class_from_transition(&levels, &t, rule)?);
    }
    Ok(())
}
