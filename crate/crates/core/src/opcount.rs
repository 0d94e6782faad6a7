//! Closed-form operation counts of the fast transform and of the per-level
//! FFT baseline.
//!
//! Per iteration `i` of an `N = 2^m` transform:
//!
//! * complex multiplications `(i + 1) 2^(m-2)`, trivial twiddles included,
//! * nontrivial multiplications `0` for `i = 1`, `(i - 2) 2^(m-2)` otherwise,
//! * complex additions, twice the multiplications.
//!
//! The baseline spends `i 2^(m-1)` multiplications on level `i`, so the
//! multiplication ratio is `(m + 3) / (2 (m + 1))`, which falls towards 1/2.

use num_complex::Complex;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::counter::OpCounter;
use crate::error::{Error, Result};
use crate::plan::MrPlan;
use crate::spectrum::Layout;
use crate::transform::mrdft_fast;

/// Largest `m` the analytic model accepts.
pub const MAX_REPORT_LEVELS: usize = 30;

/// Where a report row's numbers come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSource {
    Analytic,
    /// `m = 1`: the per-iteration formula carries a `2^(m-2)` factor, so the
    /// row is taken from a counted run instead.
    Instrumented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IterationRow {
    pub i: usize,
    pub mults: u64,
    pub nontrivial: u64,
    pub adds: u64,
    pub baseline_mults: u64,
    pub source: RowSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub m: usize,
    pub rows: Vec<IterationRow>,
    pub total_mults: u64,
    pub total_nontrivial: u64,
    pub total_adds: u64,
    pub baseline_mults: u64,
    #[serde(serialize_with = "ratio_as_string")]
    pub savings: Ratio<u64>,
}

impl ComplexityReport {
    pub fn savings_f64(&self) -> f64 {
        *self.savings.numer() as f64 / *self.savings.denom() as f64
    }
}

fn ratio_as_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn check(m: usize, i: usize) -> Result<()> {
    if !(1..=MAX_REPORT_LEVELS).contains(&m) {
        return Err(Error::invalid(format!(
            "m must be in [1, {MAX_REPORT_LEVELS}], got {m}"
        )));
    }
    if !(1..=m).contains(&i) {
        return Err(Error::invalid(format!("iteration {i} outside [1, {m}]")));
    }
    Ok(())
}

fn counted_single_level() -> OpCounter {
    let plan = MrPlan::<f64>::new(1).expect("m = 1 is always valid");
    let mut counter = OpCounter::new(1);
    let zeros = [Complex::new(0.0, 0.0); 2];
    mrdft_fast(&zeros, &plan, Some(&mut counter), Layout::BitReversed)
        .expect("length matches the plan");
    counter
}

/// Complex multiplications in iteration `i`, trivial twiddles included.
pub fn mults_iter(m: usize, i: usize) -> Result<u64> {
    check(m, i)?;
    if m == 1 {
        return Ok(counted_single_level().mults(1));
    }
    Ok((i as u64 + 1) << (m - 2))
}

/// Complex multiplications in iteration `i` with trivial twiddles excluded.
pub fn nontrivial_iter(m: usize, i: usize) -> Result<u64> {
    check(m, i)?;
    if i == 1 {
        return Ok(0);
    }
    Ok((i as u64 - 2) << (m - 2))
}

/// Complex additions in iteration `i`.
pub fn adds_iter(m: usize, i: usize) -> Result<u64> {
    Ok(2 * mults_iter(m, i)?)
}

/// Multiplications the per-level FFT baseline spends on level `i`.
pub fn baseline_iter(m: usize, i: usize) -> Result<u64> {
    check(m, i)?;
    Ok((i as u64) << (m - 1))
}

/// `m (m + 3) 2^(m-3)`.
pub fn total_mults(m: usize) -> u64 {
    ((m * (m + 3)) as u64) << m >> 3
}

/// `(m - 1)(m - 2) 2^(m-3)`; zero for `m <= 2`.
pub fn total_nontrivial(m: usize) -> u64 {
    if m <= 2 {
        return 0;
    }
    (((m - 1) * (m - 2)) as u64) << m >> 3
}

/// `m (m + 1) 2^(m-2)`.
pub fn baseline_total(m: usize) -> u64 {
    ((m * (m + 1)) as u64) << m >> 2
}

/// `(m + 3) / (2 (m + 1))`.
pub fn savings_ratio(m: usize) -> Ratio<u64> {
    Ratio::new(m as u64 + 3, 2 * (m as u64 + 1))
}

pub fn report(m: usize) -> Result<ComplexityReport> {
    check(m, 1)?;
    let source = if m == 1 {
        RowSource::Instrumented
    } else {
        RowSource::Analytic
    };
    let rows = (1..=m)
        .map(|i| {
            Ok(IterationRow {
                i,
                mults: mults_iter(m, i)?,
                nontrivial: nontrivial_iter(m, i)?,
                adds: adds_iter(m, i)?,
                baseline_mults: baseline_iter(m, i)?,
                source,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total_mults: u64 = rows.iter().map(|r| r.mults).sum();
    let baseline_mults: u64 = rows.iter().map(|r| r.baseline_mults).sum();
    Ok(ComplexityReport {
        m,
        total_nontrivial: rows.iter().map(|r| r.nontrivial).sum(),
        total_adds: rows.iter().map(|r| r.adds).sum(),
        rows,
        total_mults,
        baseline_mults,
        savings: Ratio::new(total_mults, baseline_mults),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_point_rows() {
        assert_eq!(mults_iter(3, 1).unwrap(), 4);
        assert_eq!(mults_iter(3, 2).unwrap(), 6);
        assert_eq!(mults_iter(3, 3).unwrap(), 8);
        assert_eq!((1..=3).map(|i| mults_iter(3, i).unwrap()).sum::<u64>(), 18);
        assert_eq!(nontrivial_iter(3, 1).unwrap(), 0);
        assert_eq!(nontrivial_iter(3, 2).unwrap(), 0);
        assert_eq!(nontrivial_iter(3, 3).unwrap(), 2);
        assert_eq!(
            (1..=3).map(|i| nontrivial_iter(3, i).unwrap()).sum::<u64>(),
            2
        );
    }

    #[test]
    fn eight_point_report() {
        let r = report(3).unwrap();
        assert_eq!(r.total_mults, 18);
        assert_eq!(r.total_nontrivial, 2);
        assert_eq!(r.total_adds, 36);
        assert_eq!(r.baseline_mults, 24);
        assert_eq!(r.savings, Ratio::new(3, 4));
        assert_eq!(r.savings_f64(), 0.75);
        let rows: Vec<_> = r
            .rows
            .iter()
            .map(|r| (r.mults, r.nontrivial, r.adds))
            .collect();
        assert_eq!(rows, vec![(4, 0, 8), (6, 0, 12), (8, 2, 16)]);
    }

    #[test]
    fn ten_level_ratio() {
        let r = report(10).unwrap();
        assert_eq!(r.savings, Ratio::new(13, 22));
        assert!((r.savings_f64() - 0.5909).abs() < 1e-4);
    }

    #[test]
    fn single_level_is_instrumented() {
        let r = report(1).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].source, RowSource::Instrumented);
        assert_eq!(
            (r.rows[0].mults, r.rows[0].nontrivial, r.rows[0].adds),
            (1, 0, 2)
        );
        assert_eq!(r.total_mults, total_mults(1));
        assert_eq!(r.baseline_mults, 1);
    }

    #[test]
    fn totals_agree_with_rows() {
        for m in 1..=MAX_REPORT_LEVELS {
            let r = report(m).unwrap();
            assert_eq!(r.total_mults, total_mults(m), "m = {m}");
            assert_eq!(r.total_nontrivial, total_nontrivial(m), "m = {m}");
            assert_eq!(r.total_adds, 2 * r.total_mults);
            assert_eq!(r.baseline_mults, baseline_total(m));
            assert_eq!(r.savings, savings_ratio(m));
            for row in &r.rows {
                assert_eq!(row.adds, 2 * row.mults);
            }
        }
    }

    #[test]
    fn ratio_decreases_towards_half() {
        let half = Ratio::new(1u64, 2);
        for m in 1..MAX_REPORT_LEVELS {
            assert!(savings_ratio(m + 1) < savings_ratio(m));
            assert!(savings_ratio(m) > half);
        }
        assert!(savings_ratio(1_000_000) - half < Ratio::new(1, 1_000_000));
    }

    #[test]
    fn ranges() {
        assert!(mults_iter(3, 0).is_err());
        assert!(mults_iter(3, 4).is_err());
        assert!(report(0).is_err());
        assert!(report(31).is_err());
    }

    #[test]
    fn report_serializes_ratio_as_fraction() {
        let json = serde_json::to_string(&report(3).unwrap()).unwrap();
        assert!(json.contains("\"savings\":\"3/4\""), "{json}");
    }
}
