//! Constrained pole placement for generalized state-space systems: exact
//! characteristic maps, Schubert-calculus degree formulas and a homotopy
//! solver that counts and verifies the feedback laws.

mod error;

pub mod pencil;
pub mod poly;
pub mod problem;
pub mod sampling;
pub mod schubert;
pub mod solver;

pub use error::{Error, Result};
pub use problem::Problem;
