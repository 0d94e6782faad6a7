use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgmScale {
    /// `255 |y| / max`
    Linear,
    /// `255 ln(1 + |y|) / ln(1 + max)`
    Log,
}

/// Binary greymap of one level's magnitudes: one column per frame (time), one
/// row per bin (frequency, bin 0 on top).
pub fn encode_level_pgm<T: MrScalar>(
    spectrum: &MrSpectrum<T>,
    level: usize,
    scale: PgmScale,
) -> Result<Vec<u8>> {
    if spectrum.layout() != Layout::Natural {
        return Err(Error::ContractViolation(
            "spectrogram needs a natural-order spectrum".into(),
        ));
    }
    if !(1..=spectrum.m()).contains(&level) {
        return Err(Error::invalid(format!(
            "level out of range: {level} not in [1, {}]",
            spectrum.m()
        )));
    }
    let width = spectrum.frame_count(level);
    let height = 1usize << level;
    let mags: Vec<f64> = spectrum
        .level(level)
        .iter()
        .map(|z| z.norm().to_f64())
        .collect();
    let max = mags.iter().copied().fold(0.0f64, f64::max);

    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.reserve(width * height);
    for bin in 0..height {
        for frame in 0..width {
            let mag = mags[(frame << level) + bin];
            let value = if max == 0.0 {
                0.0
            } else {
                match scale {
                    PgmScale::Linear => 255.0 * mag / max,
                    PgmScale::Log => 255.0 * mag.ln_1p() / max.ln_1p(),
                }
            };
            out.push(value.round().clamp(0.0, 255.0) as u8);
        }
    }
    Ok(out)
}

pub fn write_level_pgm<T: MrScalar>(
    spectrum: &MrSpectrum<T>,
    level: usize,
    path: impl AsRef<Path>,
    scale: PgmScale,
) -> Result<()> {
    let bytes = encode_level_pgm(spectrum, level, scale)?;
    let path = path.as_ref();
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
