//! Fast multiresolution discrete Fourier transform (MrDFT).
//!
//! A length-`N = 2^m` signal is analysed at `m` resolution levels. Level `i`
//! holds the `2^i`-point DFTs of the `2^(m-i)` consecutive rectangular windows
//! of the signal, so the top level is the ordinary whole-signal DFT and the
//! bottom level is a bank of 2-point butterflies.
//!
//! The fast path ([`mrdft_fast`]) computes level `i` from level `i-1`: the even
//! bins of every window are the sums of the two half-window spectra already
//! available, and only the odd bins need a twiddle diagonal plus a half-size
//! DIF FFT. All stages run in place over one `m * N` buffer and a single
//! bit-reversal permutation is applied at the end.
//!
//! Alongside the fast path the crate ships
//!
//! * [`oracle`]: the direct definition, a per-level FFT baseline and a dense
//!   matrix model of every factor in the pipeline,
//! * [`opcount`]: the closed-form complexity model the instrumented counters
//!   are checked against,
//! * [`io`]: signal/spectrum file formats and a PGM spectrogram writer.
//!
//! Everything numeric is generic over [`MrScalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod counter;
pub mod error;
pub mod io;
pub mod kernels;
pub mod opcount;
pub mod oracle;
pub mod plan;
pub mod scalar;
pub mod signal;
pub mod spectrum;
pub mod transform;

pub use num_complex::Complex;

pub use counter::{OpCounter, OpTally, StageTally};
pub use error::{Error, Result};
pub use kernels::{apply_gamma, gamma_permute, stage_combine, stage_one, sub_fft_dif};
pub use plan::{bit_reverse_index, make_plan, MrPlan, TwiddleKind, MAX_LEVELS};
pub use scalar::MrScalar;
pub use spectrum::{Layout, MrSpectrum};
pub use transform::{mrdft_fast, mrdft_fast_with, Execution};

/// Contiguous complex samples, the working state of every transform.
pub type ComplexBuffer<T> = Vec<Complex<T>>;

/// Double precision plan.
pub type Plan = MrPlan<f64>;
/// Single precision plan.
pub type Plan32 = MrPlan<f32>;
/// Double precision spectrum.
pub type Spectrum = MrSpectrum<f64>;
/// Single precision spectrum.
pub type Spectrum32 = MrSpectrum<f32>;
/// Double precision dense matrix (oracle only).
pub type Matrix = oracle::DenseMatrix<f64>;
/// Double precision sample buffer.
pub type Buffer = ComplexBuffer<f64>;
