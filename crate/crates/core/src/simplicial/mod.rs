//! Finite simplicial complexes and everything built directly on top of them:
//! cochains, simplicial maps, cochain presheaves, covers, Čech levels and the
//! Čech contraction.

mod cech;
mod cochain;
mod complex;
mod cover;
mod map;
mod presheaf;

pub use cech::{build_cech_levels, cech_contraction, CechLevels, SimplicialObject};
pub use cochain::{coboundary, Cochain, Coefficients};
pub use complex::{Simplex, SimplicialComplex};
pub use cover::Cover;
pub use map::{pullback_cochain, SimplicialMap};
pub use presheaf::{Presheaf, Slot};
