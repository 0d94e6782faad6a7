use std::fs;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::MrScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalFormat {
    /// One sample per line, `re` or `re,im`.
    Csv,
    /// Little-endian `f64` pairs `re, im`.
    Raw64,
}

/// What to do with a length that is not a power of two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Padding {
    #[default]
    Reject,
    Zeros,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignalFile<T> {
    pub samples: Vec<Complex<T>>,
    pub format: SignalFormat,
    /// Original length when zero padding was applied.
    pub padded_from: Option<usize>,
}

impl<T> SignalFile<T> {
    /// `log2` of the length.
    pub fn m(&self) -> usize {
        self.samples.len().trailing_zeros() as usize
    }
}

pub fn read_signal<T: MrScalar>(
    path: impl AsRef<Path>,
    format: SignalFormat,
    padding: Padding,
) -> Result<SignalFile<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_signal(&bytes, format, padding, path)
}

/// Parses an in-memory signal file. `origin` only labels error messages.
pub fn decode_signal<T: MrScalar>(
    bytes: &[u8],
    format: SignalFormat,
    padding: Padding,
    origin: &Path,
) -> Result<SignalFile<T>> {
    let mut samples = match format {
        SignalFormat::Csv => parse_csv(bytes, origin)?,
        SignalFormat::Raw64 => parse_raw64(bytes, origin)?,
    };
    if samples.is_empty() {
        return Err(Error::invalid(format!(
            "{}: signal file is empty",
            origin.display()
        )));
    }
    let len = samples.len();
    let mut padded_from = None;
    if !len.is_power_of_two() {
        match padding {
            Padding::Reject => {
                return Err(Error::invalid(format!(
                    "signal length {len} is not a power of two (use zero padding to extend it)"
                )))
            }
            Padding::Zeros => {
                samples.resize(len.next_power_of_two(), Complex::new(T::zero(), T::zero()));
                padded_from = Some(len);
            }
        }
    }
    if samples.len() < 2 {
        return Err(Error::invalid(format!(
            "signal length {} gives m = 0; m must be >= 1",
            samples.len()
        )));
    }
    Ok(SignalFile {
        samples,
        format,
        padded_from,
    })
}

fn parse_csv<T: MrScalar>(bytes: &[u8], origin: &Path) -> Result<Vec<Complex<T>>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut fields = line.split(',').map(str::trim);
        let mut number = |name: &str| -> Result<f64> {
            let field = fields
                .next()
                .ok_or_else(|| parse_err(lineno, format!("missing {name} part")))?;
            field
                .parse::<f64>()
                .map_err(|_| parse_err(lineno, format!("malformed {name} part {field:?}")))
        };
        let re = number("real")?;
        let im = if line.contains(',') {
            number("imaginary")?
        } else {
            0.0
        };
        if fields.next().is_some() {
            return Err(parse_err(lineno, "expected at most two fields".into()));
        }
        out.push(Complex::new(T::from_f64(re), T::from_f64(im)));
    }
    Ok(out)
}

fn parse_raw64<T: MrScalar>(bytes: &[u8], origin: &Path) -> Result<Vec<Complex<T>>> {
    if !bytes.len().is_multiple_of(16) {
        return Err(Error::invalid(format!(
            "{}: raw64 size {} is not a multiple of 16 bytes",
            origin.display(),
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(16)
        .map(|pair| {
            let re = f64::from_le_bytes(pair[..8].try_into().unwrap());
            let im = f64::from_le_bytes(pair[8..].try_into().unwrap());
            Complex::new(T::from_f64(re), T::from_f64(im))
        })
        .collect())
}

/// Serializes samples in either signal format.
pub fn encode_signal<T: MrScalar>(samples: &[Complex<T>], format: SignalFormat) -> Vec<u8> {
    match format {
        SignalFormat::Csv => {
            let mut out = String::new();
            for z in samples {
                out.push_str(&format!("{:?},{:?}\n", z.re.to_f64(), z.im.to_f64()));
            }
            out.into_bytes()
        }
        SignalFormat::Raw64 => {
            let mut out = Vec::with_capacity(samples.len() * 16);
            for z in samples {
                out.extend_from_slice(&z.re.to_f64().to_le_bytes());
                out.extend_from_slice(&z.im.to_f64().to_le_bytes());
            }
            out
        }
    }
}

pub fn write_signal<T: MrScalar>(
    samples: &[Complex<T>],
    path: impl AsRef<Path>,
    format: SignalFormat,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_signal(samples, format)).map_err(|e| Error::io(path, e))
}
