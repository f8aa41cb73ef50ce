//! Hilbert-space (exponent 2) machinery: kernel Gram matrices, least-norm interpolation
//! constants, finite sections of the embedding, and the reverse-Carleson witness.
//!
//! At exponent 2 the extremal problems behind trace-space equalities become finite
//! dimensional linear algebra, so every number produced here is an eigenvalue of an
//! explicit Hermitian matrix built from the data.

mod interpolant;
mod kernel;
mod margins;
mod report;
mod section;
mod witness;

pub use interpolant::{finite_interpolant_hardy, FiniteInterpolant};
pub use kernel::{hardy_gram_inverse, kernel_gram, GramMatrix, SINGULARITY_THRESHOLD};
pub use margins::{least_norm_margin, min_norm_interpolation_norm, riesz_bounds, riesz_ladder};
pub use report::{hermitian_extremes, SeriesPoint, SpectralReport};
pub use section::{section_ladder, section_matrix, section_matrix_spectrum};
pub use witness::{default_witness_path, reverse_witness, WitnessPoint};
