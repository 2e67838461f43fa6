use serde::Serialize;

use super::{MpcConfig, RoundStats};
use crate::error::{EscapeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SemigroupOp {
    Min,
    Max,
    Sum,
}

impl SemigroupOp {
    pub fn apply(self, a: i64, b: i64) -> i64 {
        match self {
            SemigroupOp::Min => a.min(b),
            SemigroupOp::Max => a.max(b),
            SemigroupOp::Sum => a + b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate<K> {
    /// One value per distinct key, sorted by key.
    pub values: Vec<(K, i64)>,
    pub rounds: Vec<RoundStats>,
}

/// Per-key reduction by a tree of machines.
///
/// Records sorted by key are dealt to machines in blocks of at most `m`.
/// Each machine folds its runs of equal keys. A key whose records all landed
/// on one machine is final; a key cut by a block border leaves one partial per
/// machine, and the partials form the next level. Every level is one round, so
/// `m` records of one key finish in one round and `m^2` in two. A machine
/// forwards at most two partials, so with `m >= 3` every level shrinks.
pub fn semigroup_aggregate<K>(records: Vec<(K, i64)>, op: SemigroupOp, cfg: &MpcConfig) -> Result<Aggregate<K>>
where
    K: Ord + Clone + Send + Sync,
{
    aggregate_from(records, op, cfg, "aggregate", 1)
}

pub(crate) fn aggregate_from<K>(
    mut records: Vec<(K, i64)>,
    op: SemigroupOp,
    cfg: &MpcConfig,
    phase: &str,
    first_round: usize,
) -> Result<Aggregate<K>>
where
    K: Ord + Clone + Send + Sync,
{
    if cfg.memory < 3 {
        return Err(EscapeError::MpcConfig("aggregation needs memory >= 3".into()));
    }
    records.sort_by(|a, b| a.0.cmp(&b.0));
    let m = cfg.memory;
    let mut finals = Vec::new();
    let mut rounds = Vec::new();
    let mut level = records;
    while !level.is_empty() {
        let round = first_round + rounds.len();
        let blocks = level.len().div_ceil(m);
        if blocks > cfg.machines {
            return Err(EscapeError::MemoryCap {
                round,
                machine: cfg.machines,
                records: level.len(),
                cap: m,
            });
        }
        rounds.push(RoundStats {
            round,
            phase: phase.to_string(),
            records_shuffled: level.len(),
            max_machine_memory: level.len().min(m),
            machines_used: blocks,
        });

        let lv = &level;
        let folded = cfg.exec.map_range(blocks, |b| {
            let lo = b * m;
            let hi = (lo + m).min(lv.len());
            let mut out: Vec<(K, i64, bool)> = Vec::new();
            let mut i = lo;
            while i < hi {
                let key = &lv[i].0;
                let mut acc = lv[i].1;
                let mut j = i + 1;
                while j < hi && lv[j].0 == *key {
                    acc = op.apply(acc, lv[j].1);
                    j += 1;
                }
                let cut = (i == lo && lo > 0 && lv[lo - 1].0 == *key)
                    || (j == hi && hi < lv.len() && lv[hi].0 == *key);
                out.push((key.clone(), acc, !cut));
                i = j;
            }
            out
        });

        let mut next = Vec::new();
        for (k, v, done) in folded.into_iter().flatten() {
            if done {
                finals.push((k, v));
            } else {
                next.push((k, v));
            }
        }
        level = next;
    }
    finals.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Aggregate { values: finals, rounds })
}
