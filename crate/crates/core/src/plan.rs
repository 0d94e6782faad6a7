//! Precomputed, immutable transform descriptor for a fixed `N = 2^m`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::MrScalar;

/// Largest accepted number of levels. Memory is `O(m * 2^m)`.
pub const MAX_LEVELS: usize = 24;

/// Classification of a twiddle factor `w_{2^i}^k`.
///
/// `One` (`k = 0`) and `MinusJ` (`k = 2^i / 4`) are detected by index, never by
/// comparing values, so the classification is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwiddleKind {
    One,
    MinusJ,
    General,
}

impl TwiddleKind {
    #[inline]
    pub fn is_trivial(self) -> bool {
        !matches!(self, TwiddleKind::General)
    }
}

/// Twiddle tables, bit-reversal tables and level geometry for one signal
/// length. Safe to share between threads; nothing in it changes after
/// [`make_plan`].
#[derive(Clone, Debug)]
pub struct MrPlan<T> {
    m: usize,
    n: usize,
    // index `level - 1`
    twiddles: Vec<Vec<Complex<T>>>,
    kinds: Vec<Vec<TwiddleKind>>,
    bitrev: Vec<Vec<usize>>,
}

/// Builds the plan for `N = 2^m`, `1 <= m <= MAX_LEVELS`.
pub fn make_plan<T: MrScalar>(m: usize) -> Result<MrPlan<T>> {
    MrPlan::new(m)
}

impl<T: MrScalar> MrPlan<T> {
    pub fn new(m: usize) -> Result<Self> {
        if !(1..=MAX_LEVELS).contains(&m) {
            return Err(Error::invalid(format!(
                "m must be in [1, {MAX_LEVELS}], got {m}"
            )));
        }
        let mut twiddles = Vec::with_capacity(m);
        let mut kinds = Vec::with_capacity(m);
        let mut bitrev = Vec::with_capacity(m);
        for level in 1..=m {
            let size = 1usize << level;
            let half = size / 2;
            let quarter = size / 4;
            let mut table = Vec::with_capacity(half);
            let mut flags = Vec::with_capacity(half);
            for k in 0..half {
                let kind = if k == 0 {
                    TwiddleKind::One
                } else if level >= 2 && k == quarter {
                    TwiddleKind::MinusJ
                } else {
                    TwiddleKind::General
                };
                let w = match kind {
                    TwiddleKind::One => Complex::new(T::one(), T::zero()),
                    TwiddleKind::MinusJ => Complex::new(T::zero(), -T::one()),
                    TwiddleKind::General => {
                        let angle = -2.0 * std::f64::consts::PI * k as f64 / size as f64;
                        Complex::new(T::from_f64(angle.cos()), T::from_f64(angle.sin()))
                    }
                };
                table.push(w);
                flags.push(kind);
            }
            twiddles.push(table);
            kinds.push(flags);
            bitrev.push((0..size).map(|p| reverse_bits(p, level)).collect());
        }
        Ok(MrPlan {
            m,
            n: 1 << m,
            twiddles,
            kinds,
            bitrev,
        })
    }

    /// Negates `w_{2^level}^k`. Produces a deliberately broken plan for
    /// negative-control checks of the verification tooling.
    #[doc(hidden)]
    pub fn with_flipped_twiddle(mut self, level: usize, k: usize) -> Self {
        let w = &mut self.twiddles[level - 1][k];
        *w = -*w;
        self
    }
}

impl<T> MrPlan<T> {
    /// Number of resolution levels.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Signal length `2^m`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `w_{2^level}^k` for `k < 2^(level-1)`.
    #[inline]
    pub fn twiddles(&self, level: usize) -> &[Complex<T>] {
        &self.twiddles[level - 1]
    }

    #[inline]
    pub fn twiddle_kinds(&self, level: usize) -> &[TwiddleKind] {
        &self.kinds[level - 1]
    }

    /// Trivial-twiddle mask for `level`: `true` at `k = 0` and `k = 2^level / 4`.
    pub fn trivial_mask(&self, level: usize) -> Vec<bool> {
        self.kinds[level - 1]
            .iter()
            .map(|k| k.is_trivial())
            .collect()
    }

    /// `level`-bit reversal of every position `0..2^level`.
    #[inline]
    pub fn bitrev(&self, level: usize) -> &[usize] {
        &self.bitrev[level - 1]
    }
}

#[inline]
pub(crate) fn reverse_bits(p: usize, bits: usize) -> usize {
    if bits == 0 {
        return 0;
    }
    p.reverse_bits() >> (usize::BITS as usize - bits)
}

/// Reverses the low `bits` binary digits of `p`.
pub fn bit_reverse_index(bits: usize, p: usize) -> Result<usize> {
    if bits == 0 || bits >= usize::BITS as usize {
        return Err(Error::invalid(format!(
            "bit width must be in [1, {}], got {bits}",
            usize::BITS - 1
        )));
    }
    if p >> bits != 0 {
        return Err(Error::invalid(format!(
            "index {p} out of range for {bits} bits (must be < {})",
            1usize << bits
        )));
    }
    Ok(reverse_bits(p, bits))
}
