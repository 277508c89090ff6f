//! Čech–Deligne gerbe cocycles: from the generator of H^3(S³; ℤ) to a gerbe
//! with connection and curving, its curvature and back.
//!
//! `cargo run --example gerbe -- out.json` also writes the gerbe as a CLI
//! input document.

use std::sync::Arc;

use cocycle_forge::descent::DescentComplex;
use cocycle_forge::diffcocycle::{char_class, find_one_arrow, lift_integral, DiffComplex};
use cocycle_forge::fixtures;
use cocycle_forge::gerbe::{curvature_periods, dc_to_gerbe, gerbe_curvature, gerbe_to_dc, validate_gerbe, GerbeFlavor};
use cocycle_forge::simplicial::Cover;
use serde_json::json;

fn main() -> cocycle_forge::Result<()> {
    let cover = Cover::facet_cover(Arc::new(fixtures::boundary_4simplex()))?;
    for flavor in GerbeFlavor::ALL {
        let dc = DescentComplex::new(&cover, flavor.height())?;
        let cx: &DiffComplex = dc.global();
        let x = lift_integral(cx, 3, &cx.integer_cohomology(3)?.generator(0))?;
        let g = dc_to_gerbe(&dc, &x, flavor)?;
        println!("{}: violations {:?}", flavor.name(), validate_gerbe(dc.levels(), &g, flavor));
        let back = gerbe_to_dc(&dc, &g, flavor)?;
        println!("  class {:?}, isomorphic to the input: {}", char_class(cx, &back)?, find_one_arrow(cx, &back, &x)?.is_some());
        if flavor == GerbeFlavor::WithConnectionAndCurving {
            let omega = gerbe_curvature(dc.levels(), &g)?;
            let periods = curvature_periods(cx.base(), &omega)?;
            println!("  curvature periods {:?}", periods.iter().map(ToString::to_string).collect::<Vec<_>>());
            if let Some(path) = std::env::args().nth(1) {
                let s = |v: &[num_rational::BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
                let doc = json!({
                    "kind": "gerbe",
                    "complex": "sphere3",
                    "cover": "facet",
                    "flavor": flavor.name(),
                    "layers": {
                        "B": s(&g.b),
                        "A": s(&g.a),
                        "f": s(&g.f),
                        "n": g.n.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    },
                });
                std::fs::write(&path, serde_json::to_string_pretty(&doc).expect("serializes") + "\n")
                    .map_err(|e| cocycle_forge::Error::Io { path: path.clone(), message: e.to_string() })?;
                println!("  wrote {path}");
            }
        }
    }
    Ok(())
}
