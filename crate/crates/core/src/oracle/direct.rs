use num_complex::Complex;

use super::dense::DenseMatrix;
use crate::counter::{OpCounter, StageTally};
use crate::error::{Error, Result};
use crate::kernels::sub_fft_dif;
use crate::plan::MrPlan;
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

/// `exp(-j 2π r / size)` for `r = 0..size`, each from its own exact angle.
fn roots<T: MrScalar>(size: usize) -> Vec<Complex<T>> {
    (0..size)
        .map(|r| {
            let a = -2.0 * std::f64::consts::PI * r as f64 / size as f64;
            Complex::new(T::from_f64(a.cos()), T::from_f64(a.sin()))
        })
        .collect()
}

fn check_length<T>(x: &[Complex<T>], m: usize) -> Result<usize> {
    if m == 0 || m > crate::plan::MAX_LEVELS {
        return Err(Error::invalid(format!(
            "m must be in [1, {}], got {m}",
            crate::plan::MAX_LEVELS
        )));
    }
    let n = 1usize << m;
    if x.len() != n {
        return Err(Error::invalid(format!(
            "signal length {} does not match 2^{m} = {n}",
            x.len()
        )));
    }
    Ok(n)
}

/// The `size x size` DFT matrix with entries `exp(-j 2π nk / size)`.
pub fn def_matrix<T: MrScalar>(size: usize) -> Result<DenseMatrix<T>> {
    if size < 2 || !size.is_power_of_two() {
        return Err(Error::invalid(format!(
            "DFT matrix size must be a power of two >= 2, got {size}"
        )));
    }
    let w = roots::<T>(size);
    let mut e = DenseMatrix::zeros(size, size);
    for n in 0..size {
        for k in 0..size {
            e[(n, k)] = w[(n * k) % size];
        }
    }
    Ok(e)
}

/// Multiresolution DFT straight from its definition: every window at every
/// level is multiplied against the DFT matrix of its size. Natural bin order.
pub fn mrdft_direct<T: MrScalar>(x: &[Complex<T>], m: usize) -> Result<MrSpectrum<T>> {
    let n = check_length(x, m)?;
    let zero = Complex::new(T::zero(), T::zero());
    let mut data = Vec::with_capacity(m * n);
    for level in 1..=m {
        let size = 1usize << level;
        let w = roots::<T>(size);
        for window in x.chunks_exact(size) {
            for k in 0..size {
                let mut acc = zero;
                for (t, v) in window.iter().enumerate() {
                    acc += *v * w[(t * k) & (size - 1)];
                }
                data.push(acc);
            }
        }
    }
    MrSpectrum::from_parts(m, data, Layout::Natural)
}

/// Baseline without cross-level reuse: a full radix-2 FFT of every window at
/// every level, followed by bit reversal. Operations are counted with the
/// same convention as the fast transform.
pub fn mrdft_per_level_fft<T: MrScalar>(
    x: &[Complex<T>],
    m: usize,
    counter: Option<&mut OpCounter>,
) -> Result<MrSpectrum<T>> {
    let plan = MrPlan::<T>::new(m)?;
    mrdft_per_level_fft_with_plan(x, &plan, counter)
}

pub fn mrdft_per_level_fft_with_plan<T: MrScalar>(
    x: &[Complex<T>],
    plan: &MrPlan<T>,
    mut counter: Option<&mut OpCounter>,
) -> Result<MrSpectrum<T>> {
    let m = plan.m();
    let n = check_length(x, m)?;
    let mut data = Vec::with_capacity(m * n);
    for level in 1..=m {
        let size = 1usize << level;
        let rev = plan.bitrev(level);
        let mut tally = StageTally::default();
        let mut scratch = vec![Complex::new(T::zero(), T::zero()); size];
        for window in x.chunks_exact(size) {
            scratch.copy_from_slice(window);
            if counter.is_some() {
                sub_fft_dif(&mut scratch, plan, &mut tally);
            } else {
                sub_fft_dif(&mut scratch, plan, &mut ());
            }
            data.extend(rev.iter().map(|&p| scratch[p]));
        }
        if let Some(c) = counter.as_deref_mut() {
            c.record(level, tally);
        }
    }
    MrSpectrum::from_parts(m, data, Layout::Natural)
}

/// `||got - want|| / ||want||`, or the absolute error when `want` is zero.
pub fn rel_l2_error<T: MrScalar>(got: &[Complex<T>], want: &[Complex<T>]) -> f64 {
    assert_eq!(got.len(), want.len());
    let mut diff = 0.0;
    let mut norm = 0.0;
    for (g, w) in got.iter().zip(want) {
        let d = *g - *w;
        diff += d.re.to_f64().powi(2) + d.im.to_f64().powi(2);
        norm += w.re.to_f64().powi(2) + w.im.to_f64().powi(2);
    }
    if norm == 0.0 {
        diff.sqrt()
    } else {
        (diff / norm).sqrt()
    }
}

/// Relative L2 error of every level of `got` against `want`.
pub fn level_errors<T: MrScalar>(got: &MrSpectrum<T>, want: &MrSpectrum<T>) -> Vec<f64> {
    assert_eq!(got.m(), want.m());
    (1..=got.m())
        .map(|i| rel_l2_error(got.level(i), want.level(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{impulse, seeded_signal};

    type C = Complex<f64>;

    fn reals(v: &[f64]) -> Vec<C> {
        v.iter().map(|&x| C::new(x, 0.0)).collect()
    }

    #[test]
    fn dft_matrix_entries() {
        let e2 = def_matrix::<f64>(2).unwrap();
        assert!(e2.max_abs_diff(&DenseMatrix::hadamard2()) < 1e-15);
        let e4 = def_matrix::<f64>(4).unwrap();
        assert!((e4[(1, 1)] - C::new(0.0, -1.0)).norm() < 1e-15);
        let e8 = def_matrix::<f64>(8).unwrap();
        let g = e8.matmul(&e8.conj_transpose());
        let scaled = DenseMatrix::identity(8).scale(C::new(8.0, 0.0));
        assert!(g.max_abs_diff(&scaled) <= 1e-12);
        assert!(def_matrix::<f64>(6).is_err());
        assert!(def_matrix::<f64>(1).is_err());
    }

    #[test]
    fn direct_small_cases() {
        let y = mrdft_direct(&reals(&[1.0, 0.0, 0.0, 0.0]), 2).unwrap();
        assert_eq!(
            y.data(),
            &reals(&[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0])[..]
        );

        let y = mrdft_direct(&reals(&[1.0, 2.0, 3.0, 4.0]), 2).unwrap();
        let want = [
            C::new(3.0, 0.0),
            C::new(-1.0, 0.0),
            C::new(7.0, 0.0),
            C::new(-1.0, 0.0),
            C::new(10.0, 0.0),
            C::new(-2.0, 2.0),
            C::new(-2.0, 0.0),
            C::new(-2.0, -2.0),
        ];
        assert!(rel_l2_error(y.data(), &want) < 1e-15);

        assert!(mrdft_direct(&reals(&[1.0, 2.0, 3.0]), 2).is_err());
    }

    #[test]
    fn direct_impulse_columns() {
        let m = 3;
        for k in 0..8 {
            let y = mrdft_direct(&impulse::<f64>(8, k), m).unwrap();
            for level in 1..=m {
                let size = 1usize << level;
                for (f, frame) in y.frames(level).enumerate() {
                    if f == k / size {
                        let off = k % size;
                        let col = def_matrix::<f64>(size).unwrap();
                        for (bin, v) in frame.iter().enumerate() {
                            assert!((v - col[(bin, off)]).norm() < 1e-15);
                        }
                    } else {
                        assert!(frame.iter().all(|v| v.norm() == 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn baseline_matches_direct_and_counts() {
        for m in 1..=8 {
            let x = seeded_signal::<f64>(1 << m, 1000 + m as u64);
            let mut counter = OpCounter::default();
            let y = mrdft_per_level_fft(&x, m, Some(&mut counter)).unwrap();
            let d = mrdft_direct(&x, m).unwrap();
            for e in level_errors(&y, &d) {
                assert!(e <= 1e-10);
            }
            let total = counter.total().mults;
            assert_eq!(total, (m * (m + 1)) as u64 * (1u64 << m) / 4);
            for i in 1..=m {
                assert_eq!(counter.mults(i), i as u64 * (1u64 << (m - 1)));
                assert_eq!(counter.adds(i), 2 * counter.mults(i));
            }
        }
    }

    #[test]
    fn baseline_eight_point_total() {
        let mut counter = OpCounter::default();
        mrdft_per_level_fft(&seeded_signal::<f64>(8, 3), 3, Some(&mut counter)).unwrap();
        assert_eq!(counter.total().mults, 24);
    }

    #[test]
    fn relative_error_of_zero_reference() {
        let z = vec![C::new(0.0, 0.0); 2];
        assert_eq!(rel_l2_error(&z, &z), 0.0);
        assert_eq!(rel_l2_error(&[C::new(3.0, 4.0)], &[C::new(0.0, 0.0)]), 5.0);
    }
}
