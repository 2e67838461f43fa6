use serde::Serialize;

use super::MpcTrace;
use crate::error::{EscapeError, Result};
use crate::exec::Exec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpcConfig {
    /// Number of machines `L`.
    pub machines: usize,
    /// Records a machine may receive in one round.
    pub memory: usize,
    /// Allowed records shuffled per round, as a multiple of the input size.
    pub comm_factor: usize,
    pub replication_bound: f64,
    /// `log_n L` and `log_n m`, for reporting only.
    pub eta_machines: f64,
    pub eta_memory: f64,
    #[serde(skip)]
    pub exec: Exec,
}

fn eta(value: usize, n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    (value as f64).ln() / (n as f64).ln()
}

impl MpcConfig {
    pub fn new(machines: usize, memory: usize, n: usize) -> Self {
        MpcConfig {
            machines,
            memory,
            comm_factor: 5,
            replication_bound: 5.0,
            eta_machines: eta(machines, n),
            eta_memory: eta(memory, n),
            exec: Exec::default(),
        }
    }

    /// `L = ceil(sqrt n)` machines with `m = 4 ceil(sqrt n) + 4` records each.
    pub fn for_input(n: usize) -> Self {
        let root = (n as f64).sqrt().ceil() as usize;
        let root = (root.saturating_sub(1)..=root + 1)
            .find(|r| r * r >= n)
            .unwrap_or(root)
            .max(1);
        MpcConfig::new(root, 4 * root + 4, n)
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// The four directional copies of `n` points must fit in aggregate memory.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.machines == 0 {
            return Err(EscapeError::MpcConfig("need at least one machine".into()));
        }
        if self.memory < 4 {
            return Err(EscapeError::MpcConfig(format!(
                "memory {} is below the 4 records one point needs",
                self.memory
            )));
        }
        if self.machines.saturating_mul(self.memory) < 4 * n {
            return Err(EscapeError::MpcConfig(format!(
                "{} machines x {} records cannot hold 4 x {n} records",
                self.machines, self.memory
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Memory { round: usize, peak: usize, cap: usize },
    Communication { round: usize, records: usize, cap: usize },
    Machines { round: usize, used: usize, cap: usize },
    Replication { factor: f64, bound: f64 },
}

/// Checks per-machine memory, per-round linear communication, machine count
/// and replication factor. Reports, never fails.
pub fn check_mpc_constraints(trace: &MpcTrace, cfg: &MpcConfig, n: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let comm_cap = cfg.comm_factor * n.max(1);
    for r in &trace.rounds {
        if r.max_machine_memory > cfg.memory {
            out.push(Violation::Memory { round: r.round, peak: r.max_machine_memory, cap: cfg.memory });
        }
        if r.records_shuffled > comm_cap {
            out.push(Violation::Communication { round: r.round, records: r.records_shuffled, cap: comm_cap });
        }
        if r.machines_used > cfg.machines {
            out.push(Violation::Machines { round: r.round, used: r.machines_used, cap: cfg.machines });
        }
    }
    if trace.replication_factor > cfg.replication_bound {
        out.push(Violation::Replication { factor: trace.replication_factor, bound: cfg.replication_bound });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpc::RoundStats;

    fn trace(peak: usize) -> MpcTrace {
        MpcTrace {
            rounds: vec![RoundStats {
                round: 1,
                phase: "aggregate".into(),
                records_shuffled: 8,
                max_machine_memory: peak,
                machines_used: 2,
            }],
            iterations: 1,
            replication_factor: 4.0,
            naive_rounds: 3,
        }
    }

    #[test]
    fn for_input_sizes() {
        let c = MpcConfig::for_input(100);
        assert_eq!((c.machines, c.memory), (10, 44));
        let c = MpcConfig::for_input(101);
        assert_eq!((c.machines, c.memory), (11, 48));
        assert!(MpcConfig::for_input(1).validate(1).is_ok());
        for n in [1, 2, 3, 10, 99, 1000, 12345] {
            assert!(MpcConfig::for_input(n).validate(n).is_ok());
        }
        assert!(MpcConfig::new(1, 4, 10).validate(10).is_err());
        assert!(MpcConfig::new(0, 4, 1).validate(1).is_err());
    }

    #[test]
    fn compliant_and_violating_traces() {
        let cfg = MpcConfig::new(2, 4, 2);
        assert!(check_mpc_constraints(&trace(4), &cfg, 2).is_empty());
        let v = check_mpc_constraints(&trace(5), &cfg, 2);
        assert_eq!(v, vec![Violation::Memory { round: 1, peak: 5, cap: 4 }]);
    }
}
