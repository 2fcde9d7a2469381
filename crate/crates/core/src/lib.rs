//! Structured nearness analysis for real symmetric tridiagonal Toeplitz
//! (STT) matrices `(n; δ, σ)`.
//!
//! * [`stt`]: the value type and its closed-form eigenpairs.
//! * [`sensitivity`]: structured eigenvalue condition numbers.
//! * [`distance`]: unstructured and structured distance to singularity,
//!   nearest structured singular matrices, tie analysis, spectral bounds.
//! * [`cholesky`]: bidiagonal Cholesky factor and its monotonicity structure.
//! * [`oracle`]: independent brute-force checks and the sampling experiment.
//! * [`report`]: number formatting and CSV helpers.

pub mod cholesky;
pub mod config;
pub mod distance;
pub mod error;
pub mod oracle;
pub mod report;
pub mod sensitivity;
pub mod stt;

pub use config::Tolerances;
pub use distance::{NearestSingularReport, SingularCandidate};
pub use error::{SttError, SttResult};
pub use sensitivity::SttProjection;
pub use stt::{EigenPair, Spectrum, SttMatrix};
