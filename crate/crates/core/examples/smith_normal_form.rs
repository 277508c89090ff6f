//! Smith normal form of an integer matrix, and integral cohomology of the
//! real projective plane read off from it.

use cocycle_forge::algebra::{cohomology_group, smith_normal_form, IntegerMatrix};
use cocycle_forge::fixtures;

fn main() -> cocycle_forge::Result<()> {
    let a = IntegerMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let snf = smith_normal_form(&a);
    println!("invariant factors: {:?}", snf.factors.iter().map(ToString::to_string).collect::<Vec<_>>());
    // U·A·V really is the diagonal
    assert_eq!(snf.u.mul(&a)?.mul(&snf.v)?, snf.s);

    let x = fixtures::rp2();
    for k in 0..=2 {
        let d_in = if k == 0 { IntegerMatrix::zeros(x.count(0), 0) } else { x.coboundary_matrix(k - 1) };
        println!("H^{k}(RP²; ℤ) = {}", cohomology_group(&d_in, &x.coboundary_matrix(k))?);
    }
    Ok(())
}
