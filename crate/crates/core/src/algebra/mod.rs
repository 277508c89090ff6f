//! Exact linear algebra over ℤ and ℚ.

mod group;
mod matrix;
mod mixed;
mod smith;
mod solve;

pub use group::{cohomology_group, Cohomology, FgAbelianGroup};
pub use matrix::{int_vec, rat, to_rational_vec, IntegerMatrix, RationalMatrix};
pub use mixed::{solve_mixed_system, MixedMap, MixedModule, MixedVector};
pub use smith::{smith_normal_form, SmithDecomposition};
pub use solve::{integer_kernel, rational_rref, solve_integer_system, solve_rational_system, IntegerSolution, Rref};
