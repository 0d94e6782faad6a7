//! In-place stage kernels of the fast transform.
//!
//! The working buffer is `m` blocks of `N` values. Block 1 is turned into
//! 2-point spectra by [`stage_one`]; block `i >= 2` is built from block `i-1`
//! and its own raw copy of the signal by [`stage_combine`]. Every frame
//! leaves its stage in bit-reversed bin order and [`apply_gamma`] fixes all
//! levels at once at the end.
//!
//! The kernels never materialize the expansion matrices: the duplicated copy
//! of block `i-1` that the expansion step would produce is read directly from
//! `prev`.

use num_complex::Complex;

use crate::counter::OpTally;
use crate::error::{Error, Result};
use crate::plan::{MrPlan, TwiddleKind};
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

/// `z * w`, with the two trivial twiddles reduced to a copy or a
/// swap-and-negate.
#[inline(always)]
fn mul_twiddle<T: MrScalar>(z: Complex<T>, w: Complex<T>, kind: TwiddleKind) -> Complex<T> {
    match kind {
        TwiddleKind::One => z,
        TwiddleKind::MinusJ => Complex::new(z.im, -z.re),
        TwiddleKind::General => z * w,
    }
}

/// First iteration: every adjacent pair `(a, b)` becomes `(a + b, a - b)`.
///
/// The `w_2^0` factor of each pair is tallied as a trivial multiplication.
pub fn stage_one<T: MrScalar, S: OpTally>(block: &mut [Complex<T>], tally: &mut S) {
    assert!(
        block.len().is_multiple_of(2),
        "stage one needs an even-length block"
    );
    for pair in block.chunks_exact_mut(2) {
        let (a, b) = (pair[0], pair[1]);
        pair[0] = a + b;
        pair[1] = a - b;
        tally.mul(true);
        tally.add(2);
    }
}

/// Iteration `level >= 2` over every frame in `cur`.
///
/// `prev` holds the finished (bit-reversed) level `level-1` spectra covering
/// the same samples; `cur` holds the untouched signal. Afterwards each
/// `2^level` frame of `cur` is the DFT of its window in bit-reversed order:
/// the upper half gets the even bins as sums of the two half-window spectra,
/// the lower half gets the twiddled time-domain difference of the two
/// half-windows pushed through a half-size DIF FFT, which yields the odd bins.
pub fn stage_combine<T: MrScalar, S: OpTally>(
    prev: &[Complex<T>],
    cur: &mut [Complex<T>],
    level: usize,
    plan: &MrPlan<T>,
    tally: &mut S,
) {
    assert!(
        (2..=plan.m()).contains(&level),
        "combine level {level} outside [2, {}]",
        plan.m()
    );
    let size = 1usize << level;
    assert_eq!(
        prev.len(),
        cur.len(),
        "prev and cur must cover the same samples"
    );
    assert!(
        cur.len().is_multiple_of(size),
        "block length is not a multiple of the frame size"
    );
    for (p, c) in prev.chunks_exact(size).zip(cur.chunks_exact_mut(size)) {
        fold_halves(p, c, tally);
        twiddle_lower(c, level, plan, tally);
        sub_fft_dif(&mut c[size / 2..], plan, tally);
    }
}

/// Upper half: `prev[k] + prev[half + k]`. Lower half: `cur[k] - cur[half + k]`.
pub(crate) fn fold_halves<T: MrScalar, S: OpTally>(
    prev: &[Complex<T>],
    cur: &mut [Complex<T>],
    tally: &mut S,
) {
    let half = cur.len() / 2;
    let (top, bottom) = cur.split_at_mut(half);
    let (prev_a, prev_b) = prev.split_at(half);
    for k in 0..half {
        let diff = top[k] - bottom[k];
        top[k] = prev_a[k] + prev_b[k];
        bottom[k] = diff;
    }
    tally.add(2 * half as u64);
}

/// Multiplies the lower half of one frame by `w_{2^level}^k`.
pub(crate) fn twiddle_lower<T: MrScalar, S: OpTally>(
    frame: &mut [Complex<T>],
    level: usize,
    plan: &MrPlan<T>,
    tally: &mut S,
) {
    let half = frame.len() / 2;
    let w = plan.twiddles(level);
    let kinds = plan.twiddle_kinds(level);
    for (k, z) in frame[half..].iter_mut().enumerate() {
        *z = mul_twiddle(*z, w[k], kinds[k]);
        tally.mul(kinds[k].is_trivial());
    }
}

/// Radix-2 decimation-in-frequency FFT of `buffer` in place, output in
/// bit-reversed order.
///
/// Each stage butterflies the two halves of every block and then scales the
/// lower half by the block-size twiddles; block sizes run from `len` down
/// to 2. A length of 1 is the identity.
pub fn sub_fft_dif<T: MrScalar, S: OpTally>(
    buffer: &mut [Complex<T>],
    plan: &MrPlan<T>,
    tally: &mut S,
) {
    let size = buffer.len();
    assert!(
        size.is_power_of_two(),
        "FFT length {size} is not a power of two"
    );
    assert!(size <= plan.n(), "FFT length {size} exceeds the plan");
    let mut len = size;
    while len >= 2 {
        let level = len.trailing_zeros() as usize;
        let half = len / 2;
        let w = plan.twiddles(level);
        let kinds = plan.twiddle_kinds(level);
        for block in buffer.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for k in 0..half {
                let (a, b) = (lo[k], hi[k]);
                lo[k] = a + b;
                hi[k] = mul_twiddle(a - b, w[k], kinds[k]);
                tally.mul(kinds[k].is_trivial());
            }
            tally.add(len as u64);
        }
        len = half;
    }
}

/// Permutes every frame of every level by its bit-reversal table.
///
/// An involution: applying it twice restores the input.
pub fn gamma_permute<T>(data: &mut [Complex<T>], plan: &MrPlan<T>) {
    let (m, n) = (plan.m(), plan.n());
    assert_eq!(data.len(), m * n, "buffer does not match the plan");
    for (level_idx, block) in data.chunks_exact_mut(n).enumerate() {
        let level = level_idx + 1;
        let rev = plan.bitrev(level);
        for frame in block.chunks_exact_mut(1 << level) {
            for (p, &q) in rev.iter().enumerate() {
                if p < q {
                    frame.swap(p, q);
                }
            }
        }
    }
}

/// Brings a bit-reversed spectrum into natural order.
pub fn apply_gamma<T>(spectrum: &mut MrSpectrum<T>, plan: &MrPlan<T>) -> Result<()> {
    if spectrum.layout() == Layout::Natural {
        return Err(Error::ContractViolation(
            "spectrum is already in natural order".into(),
        ));
    }
    if spectrum.m() != plan.m() {
        return Err(Error::invalid(format!(
            "spectrum has m={} but plan has m={}",
            spectrum.m(),
            plan.m()
        )));
    }
    gamma_permute(spectrum.data_mut(), plan);
    spectrum.set_layout(Layout::Natural);
    Ok(())
}
