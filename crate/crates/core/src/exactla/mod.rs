//! Exact linear algebra over the integers, the rationals and prime fields.

mod elimination;
mod homology;
mod matrix;
mod snf;

pub use elimination::{invariant_factors, rank};
pub use homology::{cohomology_at, decompose, piece_from_factors, solve_in_image, GradedPiece, HomologyClass, HomologyDecomposition};
pub use matrix::{DenseMatrix, Matrix, SparseMatrix, DENSE_LIMIT};
pub use snf::{smith_normal_form, SnfDecomposition};
