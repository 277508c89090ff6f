//! Exact computations with differential cocycles on finite simplicial complexes.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: Smith normal form, integer and mixed ℤ/ℚ system solving,
//!   cohomology of integer cochain complexes.
//! * [`simplicial`]: complexes, cochains, simplicial maps, covers, Čech levels
//!   and the Čech contraction.
//! * [`diffcocycle`]: the differential cochain complexes `DC_s` and decision
//!   procedures for arrows of their cocycle 2-categories.
//! * [`equivariant`]: nerves of finite groupoids, total complexes and
//!   equivariant classification.
//! * [`descent`]: descent data, gluing and class extraction from transition data.
//! * [`gerbe`]: Čech–Deligne gerbe cocycles and their translation to
//!   differential cocycles.
//! * [`cli`]: the report-producing front end used by the `cocycle-forge` binary.

pub mod algebra;
pub mod cli;
pub mod descent;
pub mod diffcocycle;
pub mod equivariant;
mod error;
pub mod fixtures;
pub mod gerbe;
pub mod simplicial;

pub use error::{Error, Result};
