use std::collections::HashMap;

use serde::Serialize;

use super::aggregate::aggregate_from;
use super::{MpcConfig, SemigroupOp};
use crate::error::{EscapeError, Result};
use crate::geometry::{Direction, EscapeAssignment, LatticePoint, SepInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundStats {
    pub round: usize,
    pub phase: String,
    pub records_shuffled: usize,
    pub max_machine_memory: usize,
    pub machines_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpcTrace {
    pub rounds: Vec<RoundStats>,
    pub iterations: usize,
    /// Largest number of records alive in one round divided by the input size.
    pub replication_factor: f64,
    /// Round count if every extrema computation took a single round.
    pub naive_rounds: usize,
}

impl MpcTrace {
    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpcRun {
    pub assignment: EscapeAssignment,
    /// 1-based iteration in which each point was assigned.
    pub iteration_of: Vec<usize>,
    pub trace: MpcTrace,
}

// which extremum a directional copy of a point competes for
const X_MIN: u8 = 0;
const X_MAX: u8 = 1;
const Y_MIN: u8 = 2;
const Y_MAX: u8 = 3;

/// The record a point contributes for `op`: key `(op, line)` and a value
/// oriented so that every extremum becomes a minimum.
fn copy_of(p: LatticePoint, op: u8) -> ((u8, i64), i64) {
    match op {
        X_MIN => ((op, p.y), p.x),
        X_MAX => ((op, p.y), -p.x),
        Y_MIN => ((op, p.x), p.y),
        Y_MAX => ((op, p.x), -p.y),
        _ => unreachable!("four copies per point"),
    }
}

/// The branch chain: row minimum, row maximum, column minimum, column maximum.
fn decide(p: LatticePoint, extreme: impl Fn((u8, i64)) -> i64) -> Option<Direction> {
    (0..4u8).find_map(|op| {
        let (key, v) = copy_of(p, op);
        (extreme(key) == v).then(|| Direction::from_index(op as usize))
    })
}

/// Direct single-machine execution of the extrema peeling.
pub fn sequential_reference(inst: &SepInstance) -> Result<(EscapeAssignment, Vec<usize>)> {
    inst.require_disjoint()?;
    let n = inst.len();
    let mut dirs = vec![Direction::Left; n];
    let mut iteration_of = vec![0; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut iteration = 0;
    while !remaining.is_empty() {
        iteration += 1;
        let mut best: HashMap<(u8, i64), i64> = HashMap::new();
        for &i in &remaining {
            for op in 0..4 {
                let (k, v) = copy_of(inst.points[i], op);
                best.entry(k).and_modify(|b| *b = (*b).min(v)).or_insert(v);
            }
        }
        remaining.retain(|&i| match decide(inst.points[i], |k| best[&k]) {
            Some(d) => {
                dirs[i] = d;
                iteration_of[i] = iteration;
                false
            }
            None => true,
        });
    }
    Ok((EscapeAssignment::new(dirs), iteration_of))
}

/// Runs the peeling on the simulated cluster.
///
/// Each iteration takes one aggregation per tree level for the row and column
/// extrema, one round returning extrema of keys that were split across
/// machines, and one round regrouping the four copies of every point so the
/// point can pick its branch. `round_cap` bounds the iterations (default
/// `4n`).
pub fn run_sep_mpc(inst: &SepInstance, cfg: &MpcConfig, round_cap: Option<usize>) -> Result<MpcRun> {
    inst.require_disjoint()?;
    let n = inst.len();
    cfg.validate(n)?;
    let cap = round_cap.unwrap_or(4 * n);
    let m = cfg.memory;

    let mut dirs = vec![Direction::Left; n];
    let mut iteration_of = vec![0; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();
    let mut iterations = 0;
    let mut peak_records = 0usize;

    while !remaining.is_empty() {
        if iterations == cap {
            return Err(EscapeError::RoundCap { cap });
        }
        iterations += 1;

        let copies: Vec<((u8, i64), i64)> = remaining
            .iter()
            .flat_map(|&i| (0..4).map(move |op| copy_of(inst.points[i], op)))
            .collect();
        peak_records = peak_records.max(copies.len());

        // the broadcast is addressed by the first-level layout
        let mut keys: Vec<(u8, i64)> = copies.iter().map(|c| c.0).collect();
        keys.sort_unstable();
        let agg = aggregate_from(copies, SemigroupOp::Min, cfg, "aggregate", rounds.len() + 1)?;
        rounds.extend(agg.rounds);

        let blocks = keys.len().div_ceil(m);
        let mut deliveries = 0;
        let mut busiest = 0;
        for b in 0..blocks {
            let (lo, hi) = (b * m, ((b + 1) * m).min(keys.len()));
            let first_cut = lo > 0 && keys[lo - 1] == keys[lo];
            let last_cut = hi < keys.len() && keys[hi] == keys[hi - 1];
            let got = usize::from(first_cut) + usize::from(last_cut && (hi - lo > 1 || !first_cut));
            deliveries += got;
            busiest = busiest.max(got);
        }
        rounds.push(RoundStats {
            round: rounds.len() + 1,
            phase: "broadcast".into(),
            records_shuffled: deliveries,
            max_machine_memory: busiest,
            machines_used: blocks,
        });

        let per_machine = m / 4;
        let machines = remaining.len().div_ceil(per_machine);
        if machines > cfg.machines {
            return Err(EscapeError::MemoryCap {
                round: rounds.len() + 1,
                machine: cfg.machines,
                records: 4 * remaining.len(),
                cap: m,
            });
        }
        rounds.push(RoundStats {
            round: rounds.len() + 1,
            phase: "decide".into(),
            records_shuffled: 4 * remaining.len(),
            max_machine_memory: 4 * remaining.len().min(per_machine),
            machines_used: machines,
        });

        let extremes: HashMap<(u8, i64), i64> = agg.values.into_iter().collect();
        let chosen = cfg.exec.map_slice(&remaining, |&i| decide(inst.points[i], |k| extremes[&k]));
        let mut next = Vec::with_capacity(remaining.len());
        for (&i, d) in remaining.iter().zip(chosen) {
            match d {
                Some(d) => {
                    dirs[i] = d;
                    iteration_of[i] = iterations;
                }
                None => next.push(i),
            }
        }
        if next.len() == remaining.len() {
            return Err(EscapeError::NoProgress { remaining: next.len() });
        }
        remaining = next;
    }

    let trace = MpcTrace {
        rounds,
        iterations,
        replication_factor: if n == 0 { 0.0 } else { peak_records as f64 / n as f64 },
        naive_rounds: 3 * iterations,
    };
    Ok(MpcRun {
        assignment: EscapeAssignment::new(dirs),
        iteration_of,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::geometry::Boundary;
    use crate::mpc::check_mpc_constraints;
    use crate::peeling::peel;
    use proptest::prelude::*;
    use Direction::*;

    fn sep(w: i64, pts: &[(i64, i64)]) -> SepInstance {
        SepInstance::new(Boundary::new(w, w), pts.iter().map(|&(x, y)| LatticePoint { x, y }).collect()).unwrap()
    }

    fn run(inst: &SepInstance) -> MpcRun {
        run_sep_mpc(inst, &MpcConfig::for_input(inst.len()), None).unwrap()
    }

    #[test]
    fn single_point_goes_left() {
        let r = run(&sep(4, &[(2, 2)]));
        assert_eq!(r.assignment.as_slice(), &[Left]);
        assert_eq!(r.trace.iterations, 1);
    }

    #[test]
    fn collinear_triple() {
        // the middle point is alone in its column, so it escapes down at once
        let r = run(&sep(8, &[(1, 4), (3, 4), (5, 4)]));
        assert_eq!(r.assignment.as_slice(), &[Left, Down, Right]);
        assert_eq!(r.iteration_of, vec![1, 1, 1]);
    }

    #[test]
    fn fenced_middle_waits_a_round() {
        let r = run(&sep(10, &[(1, 5), (3, 5), (5, 5), (3, 2), (3, 8)]));
        assert_eq!(r.assignment.as_slice(), &[Left, Left, Right, Left, Left]);
        assert_eq!(r.iteration_of, vec![1, 2, 1, 1, 1]);
        assert_eq!(r.trace.iterations, 2);
    }

    #[test]
    fn empty_instance_runs_no_rounds() {
        let inst = SepInstance::new(Boundary::new(3, 3), vec![]).unwrap();
        let r = run(&inst);
        assert!(r.trace.rounds.is_empty());
    }

    #[test]
    fn caps_fault() {
        let inst = sep(10, &[(1, 5), (3, 5), (5, 5), (3, 2), (3, 8)]);
        let cfg = MpcConfig::for_input(5);
        assert!(matches!(run_sep_mpc(&inst, &cfg, Some(1)), Err(EscapeError::RoundCap { cap: 1 })));
        let tight = MpcConfig::new(5, 4, 5);
        assert!(run_sep_mpc(&inst, &tight, None).is_ok());
        let dup = sep(10, &[(1, 1), (1, 1)]);
        assert!(matches!(run_sep_mpc(&dup, &cfg, None), Err(EscapeError::NotDisjoint { .. })));
    }

    #[test]
    fn trace_serializes() {
        let r = run(&sep(8, &[(1, 4), (3, 4)]));
        let json = r.trace.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rounds"][0]["round"], 1);
        assert!(v["rounds"][0]["records_shuffled"].is_u64());
        assert!(v["rounds"][0]["max_machine_memory"].is_u64());
    }

    fn disjoint_sep() -> impl Strategy<Value = SepInstance> {
        (3i64..40).prop_flat_map(|w| {
            prop::collection::btree_set((1..w, 1..w), 1..120)
                .prop_map(move |s| sep(w, &s.into_iter().collect::<Vec<_>>()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn simulation_matches_reference(inst in disjoint_sep()) {
            let n = inst.len();
            let cfg = MpcConfig::for_input(n);
            let (want, want_iter) = sequential_reference(&inst).unwrap();
            let a = run_sep_mpc(&inst, &cfg.clone().with_exec(Exec::Sequential), None).unwrap();
            let b = run_sep_mpc(&inst, &cfg.clone().with_exec(Exec::Parallel), None).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a.assignment, &want);
            prop_assert_eq!(&a.iteration_of, &want_iter);
            prop_assert!(check_mpc_constraints(&a.trace, &cfg, n).is_empty());
            prop_assert!(a.trace.replication_factor <= 4.0);
            let rho = peel(&inst.as_unit_squares()).unwrap().rho;
            prop_assert!(a.trace.iterations <= rho);
            if n >= 4 {
                let first = a.iteration_of.iter().filter(|&&t| t == 1).count();
                prop_assert!(first >= 4);
            }
        }
    }
}
