//! Stacked multiresolution output vector.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bin order inside every frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Bin `k` at position `k`.
    Natural,
    /// Bin `rev(k)` at position `k`; the raw output of the fast stages.
    #[serde(rename = "bitreversed")]
    BitReversed,
}

impl Layout {
    pub fn as_str(self) -> &'static str {
        match self {
            Layout::Natural => "natural",
            Layout::BitReversed => "bitreversed",
        }
    }
}

/// The `m * N` output vector. Level `i` occupies `[(i-1)N, iN)` and is split
/// into `2^(m-i)` frames of `2^i` bins.
#[derive(Clone, Debug, PartialEq)]
pub struct MrSpectrum<T> {
    m: usize,
    n: usize,
    data: Vec<Complex<T>>,
    layout: Layout,
}

impl<T> MrSpectrum<T> {
    pub fn from_parts(m: usize, data: Vec<Complex<T>>, layout: Layout) -> Result<Self> {
        if m == 0 || m >= usize::BITS as usize {
            return Err(Error::invalid(format!("m must be >= 1, got {m}")));
        }
        let n = 1usize << m;
        if data.len() != m * n {
            return Err(Error::invalid(format!(
                "spectrum for m={m} needs {} values, got {}",
                m * n,
                data.len()
            )));
        }
        Ok(MrSpectrum { m, n, data, layout })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub(crate) fn set_layout(&mut self, layout: Layout) {
        self.layout = layout;
    }

    #[inline]
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    /// Flat position of `(level, frame, bin)`.
    ///
    /// # Panics
    ///
    /// If any coordinate is out of range.
    #[inline]
    pub fn index(&self, level: usize, frame: usize, bin: usize) -> usize {
        assert!((1..=self.m).contains(&level), "level {level} out of range");
        assert!(
            frame < self.frame_count(level),
            "frame {frame} out of range"
        );
        assert!(bin < 1 << level, "bin {bin} out of range");
        (level - 1) * self.n + (frame << level) + bin
    }

    /// Number of frames at `level`: `2^(m - level)`.
    #[inline]
    pub fn frame_count(&self, level: usize) -> usize {
        self.n >> level
    }

    pub fn level(&self, level: usize) -> &[Complex<T>] {
        assert!((1..=self.m).contains(&level), "level {level} out of range");
        &self.data[(level - 1) * self.n..level * self.n]
    }

    pub fn frame(&self, level: usize, frame: usize) -> &[Complex<T>] {
        let start = self.index(level, frame, 0);
        &self.data[start..start + (1 << level)]
    }

    pub fn frames(&self, level: usize) -> std::slice::Chunks<'_, Complex<T>> {
        self.level(level).chunks(1 << level)
    }

    #[inline]
    pub fn get(&self, level: usize, frame: usize, bin: usize) -> &Complex<T> {
        &self.data[self.index(level, frame, bin)]
    }
}
