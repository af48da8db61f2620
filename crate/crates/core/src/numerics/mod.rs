//! Dense real linear algebra and nonnegative feasibility, sized for frames
//! with a few hundred vectors at most.

pub mod eigen;
pub mod lp;
pub mod lu;
pub mod matrix;
pub mod svd;

pub use eigen::{symmetric_eigen, SpectralData};
pub use lp::{
    solve_feasibility, FeasibilityOutcome, FeasibilityProblem, FeasibilityStatus,
};
pub use lu::{cofactor_row, determinant};
pub use matrix::{dot, max_abs, norm, Matrix};
pub use svd::{independent_rows, least_squares, nullspace_basis, rank, singular_system};
