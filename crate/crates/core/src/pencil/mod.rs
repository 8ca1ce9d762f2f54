//! Generalized state-space systems, feedback subspaces, Plücker coordinates
//! and the polynomial systems that encode pole placement.

mod coefficients;
mod minors;
mod plucker;
mod probe;
mod system;

pub use coefficients::{closed_loop_coefficients, coefficient_system, CoefficientSystem};
pub use minors::{minor_polys, CharImage, MinorSystem};
pub use plucker::{
    banded_toeplitz_frame, banded_toeplitz_relations, exterior_power, grass24_quadric,
    plucker_coords, plucker_of_feedback, subset_index, PluckerVector, MAX_PLUCKER_COLS,
};
pub use probe::{nondegeneracy_probe, DegenerateWitness, ProbeVerdict};
pub use system::{normalize_monic, FeedbackSubspace, MatrixPencil, MonicTarget, Normalized};
