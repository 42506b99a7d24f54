//! Kogge-Stone inclusive-prefix schedule.
//!
//! Round `t` (one-based) pairs every position `p >= 2^(t-1)` with source
//! `p - 2^(t-1)` and replaces `p` by `op[p] ∘ op[source]`. After
//! `ceil(log2 m)` rounds position `p` holds the composition of positions
//! `0..=p`.

use crate::error::{Error, Result};

/// One combine step: `target <- target ∘ source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanPair {
    pub target: usize,
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSchedule {
    m: usize,
    rounds: Vec<Vec<ScanPair>>,
}

/// `ceil(log2 m)` for `m >= 1`.
pub fn ceil_log2(m: usize) -> usize {
    debug_assert!(m >= 1);
    (usize::BITS - (m - 1).leading_zeros()) as usize
}

pub fn build_schedule(m: usize) -> Result<ScanSchedule> {
    if m == 0 {
        return Err(Error::EmptySchedule);
    }
    let mut rounds = Vec::with_capacity(ceil_log2(m));
    let mut stride = 1;
    while stride < m {
        rounds.push(
            (stride..m)
                .map(|target| ScanPair {
                    target,
                    source: target - stride,
                })
                .collect(),
        );
        stride *= 2;
    }
    Ok(ScanSchedule { m, rounds })
}

impl ScanSchedule {
    /// Number of positions.
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn rounds(&self) -> &[Vec<ScanPair>] {
        &self.rounds
    }

    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    /// Total combine steps over all rounds.
    pub fn composition_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Run the schedule sequentially with an arbitrary associative `combine(later, earlier)`.
    pub fn run<T: Clone>(&self, mut items: Vec<T>, combine: impl Fn(&T, &T) -> T) -> Vec<T> {
        assert_eq!(items.len(), self.m, "schedule built for {} positions", self.m);
        for round in &self.rounds {
            let updates: Vec<T> = round
                .iter()
                .map(|p| combine(&items[p.target], &items[p.source]))
                .collect();
            for (p, v) in round.iter().zip(updates) {
                items[p.target] = v;
            }
        }
        items
    }
}
