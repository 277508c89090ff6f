//! The truncated complex keeps only the degrees that matter for the cocycle
//! 2-category in degree k, and gives the same answers as the full complex.

use std::sync::Arc;

use cocycle_forge::diffcocycle::{dc_differential, random_cocycle, random_vector, truncate, CocycleCategory, DiffCochain, DiffComplex};
use cocycle_forge::fixtures;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cocycle_forge::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cx = DiffComplex::new(Arc::new(fixtures::boundary_4simplex()), 2);
    let k = 3;
    let t = truncate(&cx, k);
    for p in 0..=k {
        let (full, cut) = (cx.module(p), t.module(p));
        println!("degree {p}: full ℤ^{} ⊕ ℚ^{}, truncated ℤ^{} ⊕ ℚ^{}", full.int_rank, full.rat_dim, cut.int_rank, cut.rat_dim);
    }
    let full = cx.category(k);
    for _ in 0..6 {
        let (x1, _) = random_cocycle(&cx, k, &mut rng)?;
        // half of the time x2 is cohomologous to x1
        let x2 = if rng.gen_bool(0.5) {
            let y = DiffCochain::from_vector(&cx, k - 1, random_vector(cx.module(k - 1), &mut rng, 2))?;
            x1.add(&dc_differential(&cx, &y)?)?
        } else {
            random_cocycle(&cx, k, &mut rng)?.0
        };
        let (v1, v2) = (x1.to_vector(), x2.to_vector());
        let a = full.one_arrow(&v1, &v2)?.is_some();
        assert_eq!(a, t.one_arrow(&v1, &v2)?.is_some());
        println!("arrow x1 → x2: {a} in both");
    }
    Ok(())
}
