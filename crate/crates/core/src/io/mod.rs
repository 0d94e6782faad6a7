//! File formats: signals in (CSV or raw little-endian `f64`), spectra out
//! (JSON or CSV) and one-level spectrogram images (binary PGM).
//!
//! All writers are byte-deterministic for a given input.

mod pgm;
mod signal_file;
mod spectrum_file;

pub use pgm::{encode_level_pgm, write_level_pgm, PgmScale};
pub use signal_file::{
    decode_signal, encode_signal, read_signal, write_signal, Padding, SignalFile, SignalFormat,
};
pub use spectrum_file::{
    decode_spectrum, encode_spectrum, read_spectrum, write_spectrum, SpectrumFormat,
};
