//! Complex operation instrumentation.
//!
//! Kernels report every complex multiplication and addition to an [`OpTally`].
//! `()` is the no-op tally used when counting is off; [`StageTally`] collects
//! one stage's numbers and [`OpCounter`] keeps them per iteration.

/// Sink for operation events emitted by the kernels.
pub trait OpTally: Default + Send {
    /// One complex multiplication; `trivial` when the twiddle is `1` or `-j`.
    fn mul(&mut self, trivial: bool);

    /// `count` complex additions or subtractions.
    fn add(&mut self, count: u64);

    fn merge(&mut self, other: Self);
}

impl OpTally for () {
    #[inline(always)]
    fn mul(&mut self, _trivial: bool) {}

    #[inline(always)]
    fn add(&mut self, _count: u64) {}

    #[inline(always)]
    fn merge(&mut self, _other: Self) {}
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTally {
    pub mults: u64,
    pub nontrivial: u64,
    pub adds: u64,
}

impl OpTally for StageTally {
    #[inline]
    fn mul(&mut self, trivial: bool) {
        self.mults += 1;
        self.nontrivial += u64::from(!trivial);
    }

    #[inline]
    fn add(&mut self, count: u64) {
        self.adds += count;
    }

    #[inline]
    fn merge(&mut self, other: Self) {
        self.mults += other.mults;
        self.nontrivial += other.nontrivial;
        self.adds += other.adds;
    }
}

/// Per-iteration operation counts. Iterations are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    mults_per_iter: Vec<u64>,
    nontrivial_per_iter: Vec<u64>,
    adds_per_iter: Vec<u64>,
}

impl OpCounter {
    pub fn new(levels: usize) -> Self {
        OpCounter {
            mults_per_iter: vec![0; levels],
            nontrivial_per_iter: vec![0; levels],
            adds_per_iter: vec![0; levels],
        }
    }

    pub fn levels(&self) -> usize {
        self.mults_per_iter.len()
    }

    pub(crate) fn ensure_levels(&mut self, levels: usize) {
        if self.levels() < levels {
            self.mults_per_iter.resize(levels, 0);
            self.nontrivial_per_iter.resize(levels, 0);
            self.adds_per_iter.resize(levels, 0);
        }
    }

    /// Adds a stage tally to iteration `iter`, growing the counter if needed.
    pub fn record(&mut self, iter: usize, tally: StageTally) {
        assert!(iter >= 1, "iterations are numbered from 1");
        self.ensure_levels(iter);
        self.mults_per_iter[iter - 1] += tally.mults;
        self.nontrivial_per_iter[iter - 1] += tally.nontrivial;
        self.adds_per_iter[iter - 1] += tally.adds;
    }

    pub fn reset(&mut self) {
        for v in [
            &mut self.mults_per_iter,
            &mut self.nontrivial_per_iter,
            &mut self.adds_per_iter,
        ] {
            v.iter_mut().for_each(|c| *c = 0);
        }
    }

    pub fn mults(&self, iter: usize) -> u64 {
        self.mults_per_iter[iter - 1]
    }

    pub fn nontrivial(&self, iter: usize) -> u64 {
        self.nontrivial_per_iter[iter - 1]
    }

    pub fn adds(&self, iter: usize) -> u64 {
        self.adds_per_iter[iter - 1]
    }

    pub fn mults_per_iter(&self) -> &[u64] {
        &self.mults_per_iter
    }

    pub fn nontrivial_per_iter(&self) -> &[u64] {
        &self.nontrivial_per_iter
    }

    pub fn adds_per_iter(&self) -> &[u64] {
        &self.adds_per_iter
    }

    pub fn total(&self) -> StageTally {
        StageTally {
            mults: self.mults_per_iter.iter().sum(),
            nontrivial: self.nontrivial_per_iter.iter().sum(),
            adds: self.adds_per_iter.iter().sum(),
        }
    }
}
