use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumFormat {
    /// `{"n", "m", "layout", "levels": [{"i", "frames": [[[re, im], …], …]}, …]}`
    Json,
    /// Header `level,frame,bin,re,im`, one row per value.
    Csv,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    n: usize,
    m: usize,
    layout: Layout,
    levels: Vec<LevelRecord>,
}

#[derive(Serialize, Deserialize)]
struct LevelRecord {
    i: usize,
    frames: Vec<Vec<[f64; 2]>>,
}

const CSV_HEADER: &str = "level,frame,bin,re,im";

/// Byte-exact rendering of `spectrum`. Floats use the shortest decimal that
/// reads back to the same `f64`.
pub fn encode_spectrum<T: MrScalar>(spectrum: &MrSpectrum<T>, format: SpectrumFormat) -> Vec<u8> {
    match format {
        SpectrumFormat::Json => {
            let record = SpectrumRecord {
                n: spectrum.n(),
                m: spectrum.m(),
                layout: spectrum.layout(),
                levels: (1..=spectrum.m())
                    .map(|i| LevelRecord {
                        i,
                        frames: spectrum
                            .frames(i)
                            .map(|f| f.iter().map(|z| [z.re.to_f64(), z.im.to_f64()]).collect())
                            .collect(),
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec(&record).expect("plain data serializes");
            out.push(b'\n');
            out
        }
        SpectrumFormat::Csv => {
            let mut out = Vec::new();
            writeln!(out, "{CSV_HEADER}").unwrap();
            for i in 1..=spectrum.m() {
                for (f, frame) in spectrum.frames(i).enumerate() {
                    for (b, z) in frame.iter().enumerate() {
                        writeln!(out, "{i},{f},{b},{:?},{:?}", z.re.to_f64(), z.im.to_f64())
                            .unwrap();
                    }
                }
            }
            out
        }
    }
}

pub fn write_spectrum<T: MrScalar>(
    spectrum: &MrSpectrum<T>,
    path: impl AsRef<Path>,
    format: SpectrumFormat,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_spectrum(spectrum, format)).map_err(|e| Error::io(path, e))
}

pub fn read_spectrum<T: MrScalar>(
    path: impl AsRef<Path>,
    format: SpectrumFormat,
) -> Result<MrSpectrum<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_spectrum(&bytes, format, path)
}

pub fn decode_spectrum<T: MrScalar>(
    bytes: &[u8],
    format: SpectrumFormat,
    origin: &Path,
) -> Result<MrSpectrum<T>> {
    match format {
        SpectrumFormat::Json => decode_json(bytes, origin),
        SpectrumFormat::Csv => decode_csv(bytes, origin),
    }
}

fn cplx<T: MrScalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

fn decode_json<T: MrScalar>(bytes: &[u8], origin: &Path) -> Result<MrSpectrum<T>> {
    let record: SpectrumRecord = serde_json::from_slice(bytes).map_err(|source| Error::Json {
        path: origin.to_path_buf(),
        source,
    })?;
    let bad = |msg: String| Error::invalid(format!("{}: {msg}", origin.display()));
    if record.m == 0 || record.m >= usize::BITS as usize || record.n != 1 << record.m {
        return Err(bad(format!(
            "inconsistent n={} and m={}",
            record.n, record.m
        )));
    }
    if record.levels.len() != record.m {
        return Err(bad(format!(
            "expected {} levels, got {}",
            record.m,
            record.levels.len()
        )));
    }
    let mut data = Vec::with_capacity(record.m * record.n);
    for (idx, level) in record.levels.iter().enumerate() {
        let i = idx + 1;
        if level.i != i {
            return Err(bad(format!("level {} listed at position {i}", level.i)));
        }
        if level.frames.len() != record.n >> i || level.frames.iter().any(|f| f.len() != 1 << i) {
            return Err(bad(format!("level {i} has the wrong frame geometry")));
        }
        data.extend(level.frames.iter().flatten().map(|[re, im]| cplx(*re, *im)));
    }
    MrSpectrum::from_parts(record.m, data, record.layout)
}

/// CSV carries no layout; it reads back as natural order.
fn decode_csv<T: MrScalar>(bytes: &[u8], origin: &Path) -> Result<MrSpectrum<T>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(parse_err(1, format!("expected header {CSV_HEADER:?}"))),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 5 {
            return Err(parse_err(idx + 1, "expected 5 fields".into()));
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(idx + 1, format!("bad index {s:?}")))
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| parse_err(idx + 1, format!("bad number {s:?}")))
        };
        rows.push((int(f[0])?, int(f[1])?, int(f[2])?, num(f[3])?, num(f[4])?));
    }
    let m = rows.iter().map(|r| r.0).max().unwrap_or(0);
    if m == 0 || m >= usize::BITS as usize {
        return Err(Error::invalid(format!(
            "{}: no spectrum rows",
            origin.display()
        )));
    }
    let n = 1usize << m;
    if rows.len() != m * n {
        return Err(Error::invalid(format!(
            "{}: expected {} rows for m={m}, got {}",
            origin.display(),
            m * n,
            rows.len()
        )));
    }
    let mut data = vec![Complex::new(T::zero(), T::zero()); m * n];
    let mut seen = vec![false; m * n];
    for (level, frame, bin, re, im) in rows {
        if level == 0 || frame >= n >> level || bin >= 1 << level {
            return Err(Error::invalid(format!(
                "{}: coordinate ({level},{frame},{bin}) out of range",
                origin.display()
            )));
        }
        let idx = (level - 1) * n + (frame << level) + bin;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::invalid(format!(
                "{}: duplicate coordinate ({level},{frame},{bin})",
                origin.display()
            )));
        }
        data[idx] = cplx(re, im);
    }
    MrSpectrum::from_parts(m, data, Layout::Natural)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn two_point_impulse() -> MrSpectrum<f64> {
        MrSpectrum::from_parts(1, vec![C::new(1.0, 0.0), C::new(1.0, 0.0)], Layout::Natural)
            .unwrap()
    }

    #[test]
    fn json_shape() {
        let text =
            String::from_utf8(encode_spectrum(&two_point_impulse(), SpectrumFormat::Json)).unwrap();
        assert_eq!(
            text,
            "{\"n\":2,\"m\":1,\"layout\":\"natural\",\"levels\":[{\"i\":1,\"frames\":[[[1.0,0.0],[1.0,0.0]]]}]}\n"
        );
    }

    #[test]
    fn csv_rows() {
        let text =
            String::from_utf8(encode_spectrum(&two_point_impulse(), SpectrumFormat::Csv)).unwrap();
        assert_eq!(
            text,
            "level,frame,bin,re,im\n1,0,0,1.0,0.0\n1,0,1,1.0,0.0\n"
        );
    }

    #[test]
    fn lossless_round_trip() {
        let data: Vec<C> = (0..24)
            .map(|k| {
                C::new(
                    (k as f64 * 0.1).sin() / 3.0,
                    std::f64::consts::PI.powi(k) * 1e-9,
                )
            })
            .collect();
        let spectrum = MrSpectrum::from_parts(3, data, Layout::BitReversed).unwrap();
        let json = encode_spectrum(&spectrum, SpectrumFormat::Json);
        let back: MrSpectrum<f64> =
            decode_spectrum(&json, SpectrumFormat::Json, Path::new("x")).unwrap();
        assert_eq!(back, spectrum);

        let csv = encode_spectrum(&spectrum, SpectrumFormat::Csv);
        let back: MrSpectrum<f64> =
            decode_spectrum(&csv, SpectrumFormat::Csv, Path::new("x")).unwrap();
        assert_eq!(back.data(), spectrum.data());
        assert_eq!(back.layout(), Layout::Natural);
    }

    #[test]
    fn json_geometry_is_checked() {
        let bad =
            br#"{"n":4,"m":2,"layout":"natural","levels":[{"i":1,"frames":[[[1,0],[1,0]]]}]}"#;
        assert!(decode_spectrum::<f64>(bad, SpectrumFormat::Json, Path::new("x")).is_err());
        assert!(decode_spectrum::<f64>(b"{", SpectrumFormat::Json, Path::new("x")).is_err());
    }

    #[test]
    fn csv_errors() {
        assert!(decode_spectrum::<f64>(b"nope\n", SpectrumFormat::Csv, Path::new("x")).is_err());
        let dup = b"level,frame,bin,re,im\n1,0,0,1,0\n1,0,0,1,0\n";
        assert!(decode_spectrum::<f64>(dup, SpectrumFormat::Csv, Path::new("x")).is_err());
    }
}
