//! Reference implementations used as ground truth for the fast path.
//!
//! * [`mrdft_direct`]: every window multiplied against its DFT matrix.
//! * [`mrdft_per_level_fft`]: an independent FFT per window and level, the
//!   baseline the operation savings are measured against.
//! * [`factors`]: dense matrices for each factor of the fast procedure, for
//!   `m <= 4`.
//!
//! All of it is deliberately naive and single threaded.

mod dense;
mod direct;
pub mod factors;

pub use dense::DenseMatrix;
pub use direct::{
    def_matrix, level_errors, mrdft_direct, mrdft_per_level_fft, mrdft_per_level_fft_with_plan,
    rel_l2_error,
};
pub use factors::{build_gamma, build_stage_matrices, mrdft_dense_pipeline, StageFactors};
