//! The end-to-end fast transform.

use num_complex::Complex;
use rayon::prelude::*;

use crate::counter::{OpCounter, OpTally, StageTally};
use crate::error::{Error, Result};
use crate::kernels::{gamma_permute, stage_combine, stage_one};
use crate::plan::MrPlan;
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

/// How frames inside a stage are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Sequential,
    /// Frames of one stage are split across the current rayon pool. Stages
    /// still run one after another.
    Parallel,
}

/// Smallest slice handed to one rayon task.
const PAR_GRAIN: usize = 1 << 12;

/// Computes every level of the multiresolution DFT of `x`.
///
/// When `counter` is given, the operations of iteration `i` are added to its
/// slot `i`. With `Layout::BitReversed` the final permutation is skipped.
pub fn mrdft_fast<T: MrScalar>(
    x: &[Complex<T>],
    plan: &MrPlan<T>,
    counter: Option<&mut OpCounter>,
    layout: Layout,
) -> Result<MrSpectrum<T>> {
    mrdft_fast_with(x, plan, counter, layout, Execution::Sequential)
}

pub fn mrdft_fast_with<T: MrScalar>(
    x: &[Complex<T>],
    plan: &MrPlan<T>,
    counter: Option<&mut OpCounter>,
    layout: Layout,
    exec: Execution,
) -> Result<MrSpectrum<T>> {
    if x.len() != plan.n() {
        return Err(Error::invalid(format!(
            "signal length {} does not match plan length {}",
            x.len(),
            plan.n()
        )));
    }
    let data = match counter {
        Some(counter) => {
            let (data, tallies) = run::<T, StageTally>(x, plan, exec);
            counter.ensure_levels(plan.m());
            for (idx, t) in tallies.into_iter().enumerate() {
                counter.record(idx + 1, t);
            }
            data
        }
        None => run::<T, ()>(x, plan, exec).0,
    };
    let mut spectrum = MrSpectrum::from_parts(plan.m(), data, Layout::BitReversed)?;
    if layout == Layout::Natural {
        crate::kernels::apply_gamma(&mut spectrum, plan)?;
    }
    Ok(spectrum)
}

fn run<T: MrScalar, S: OpTally>(
    x: &[Complex<T>],
    plan: &MrPlan<T>,
    exec: Execution,
) -> (Vec<Complex<T>>, Vec<S>) {
    let (m, n) = (plan.m(), plan.n());
    // Expansion: every block starts as a copy of the signal.
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m {
        data.extend_from_slice(x);
    }
    let mut tallies = Vec::with_capacity(m);

    let first = &mut data[..n];
    tallies.push(match exec {
        Execution::Sequential => {
            let mut t = S::default();
            stage_one(first, &mut t);
            t
        }
        Execution::Parallel => first
            .par_chunks_mut(PAR_GRAIN.min(n))
            .map(|chunk| {
                let mut t = S::default();
                stage_one(chunk, &mut t);
                t
            })
            .reduce(S::default, merged),
    });

    for level in 2..=m {
        let (done, rest) = data.split_at_mut((level - 1) * n);
        let prev = &done[(level - 2) * n..];
        let cur = &mut rest[..n];
        tallies.push(match exec {
            Execution::Sequential => {
                let mut t = S::default();
                stage_combine(prev, cur, level, plan, &mut t);
                t
            }
            Execution::Parallel => {
                let chunk = PAR_GRAIN.max(1 << level).min(n);
                prev.par_chunks(chunk)
                    .zip(cur.par_chunks_mut(chunk))
                    .map(|(p, c)| {
                        let mut t = S::default();
                        stage_combine(p, c, level, plan, &mut t);
                        t
                    })
                    .reduce(S::default, merged)
            }
        });
    }
    (data, tallies)
}

fn merged<S: OpTally>(mut a: S, b: S) -> S {
    a.merge(b);
    a
}

/// Applies the output permutation to a raw bit-reversed buffer of the fast
/// stages. Exposed for callers that keep their own buffers.
pub fn natural_order<T>(data: &mut [Complex<T>], plan: &MrPlan<T>) {
    gamma_permute(data, plan);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::make_plan;

    type C = Complex<f64>;

    fn reals(v: &[f64]) -> Vec<C> {
        v.iter().map(|&x| C::new(x, 0.0)).collect()
    }

    fn run_natural(x: &[f64]) -> Vec<C> {
        let m = x.len().trailing_zeros() as usize;
        let plan = make_plan::<f64>(m).unwrap();
        mrdft_fast(&reals(x), &plan, None, Layout::Natural)
            .unwrap()
            .into_data()
    }

    #[test]
    fn four_point_closed_forms() {
        assert_eq!(
            run_natural(&[1.0, 0.0, 0.0, 0.0]),
            reals(&[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0])
        );
        assert_eq!(
            run_natural(&[1.0, 1.0, 1.0, 1.0]),
            reals(&[2.0, 0.0, 2.0, 0.0, 4.0, 0.0, 0.0, 0.0])
        );
        assert_eq!(
            run_natural(&[1.0, 2.0, 3.0, 4.0]),
            vec![
                C::new(3.0, 0.0),
                C::new(-1.0, 0.0),
                C::new(7.0, 0.0),
                C::new(-1.0, 0.0),
                C::new(10.0, 0.0),
                C::new(-2.0, 2.0),
                C::new(-2.0, 0.0),
                C::new(-2.0, -2.0),
            ]
        );
    }

    #[test]
    fn one_level_is_a_butterfly() {
        assert_eq!(run_natural(&[2.0, 5.0]), reals(&[7.0, -3.0]));
    }

    #[test]
    fn length_mismatch() {
        let plan = make_plan::<f64>(3).unwrap();
        let err = mrdft_fast(&reals(&[1.0; 4]), &plan, None, Layout::Natural).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn counter_is_filled_per_iteration() {
        let plan = make_plan::<f64>(3).unwrap();
        let mut counter = OpCounter::default();
        mrdft_fast(
            &reals(&[0.0; 8]),
            &plan,
            Some(&mut counter),
            Layout::Natural,
        )
        .unwrap();
        assert_eq!(counter.mults_per_iter(), &[4, 6, 8]);
        assert_eq!(counter.nontrivial_per_iter(), &[0, 0, 2]);
        assert_eq!(counter.adds_per_iter(), &[8, 12, 16]);
    }

    #[test]
    fn bitreversed_then_gamma_is_natural() {
        let plan = make_plan::<f64>(5).unwrap();
        let x: Vec<C> = (0..32)
            .map(|k| C::new(k as f64, -(k as f64) / 3.0))
            .collect();
        let natural = mrdft_fast(&x, &plan, None, Layout::Natural).unwrap();
        let mut raw = mrdft_fast(&x, &plan, None, Layout::BitReversed)
            .unwrap()
            .into_data();
        natural_order(&mut raw, &plan);
        assert_eq!(raw, natural.data());
    }

    #[test]
    fn parallel_is_bitwise_sequential() {
        let plan = make_plan::<f64>(14).unwrap();
        let x: Vec<C> = (0..plan.n())
            .map(|k| C::new((k as f64 * 0.1).sin(), (k as f64 * 0.7).cos()))
            .collect();
        let mut c1 = OpCounter::default();
        let mut c2 = OpCounter::default();
        let a = mrdft_fast_with(
            &x,
            &plan,
            Some(&mut c1),
            Layout::Natural,
            Execution::Sequential,
        )
        .unwrap();
        let b = mrdft_fast_with(
            &x,
            &plan,
            Some(&mut c2),
            Layout::Natural,
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(c1, c2);
    }
}
