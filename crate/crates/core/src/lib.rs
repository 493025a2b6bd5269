pub mod boundary_trace;
pub mod cli;
pub mod cusp_invariants;
pub mod deformation;
pub mod error;
pub mod hyptrig;
pub mod slopes;
pub mod symmetry;
pub mod tetrahedron;
pub mod xk;

pub use error::{Error, Result};
