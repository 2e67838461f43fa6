use std::fmt::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::ValueEnum;
use escape_core::geometry::{compute_density_rep, compute_density_sep};
use escape_core::lp::{deterministic_round, import_fractional, randomized_round};
use escape_core::matching::solve_sep;
use escape_core::mpc::{check_mpc_constraints, run_sep_mpc, MpcConfig};
use escape_core::oracle::{solve_exact_rep, solve_exact_sep, DEFAULT_CAP};
use escape_core::peeling::{level_densities, solve_peeling};
use escape_core::{DensityReport, EscapeAssignment, EscapeError, Instance, RepInstance, Solution};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Peel,
    Match,
    Mpc,
    RoundDet,
    RoundRand,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Peel => "peel",
            Algo::Match => "match",
            Algo::Mpc => "mpc",
            Algo::RoundDet => "round-det",
            Algo::RoundRand => "round-rand",
        }
    }
}

pub struct Outcome {
    pub solution: Solution,
    pub report: DensityReport,
    pub summary: String,
    /// Peeling levels' own densities, when the algorithm peels.
    pub level_densities: Vec<u64>,
    pub mpc_violations: usize,
}

fn outcome(a: &EscapeAssignment, report: DensityReport, summary: String) -> Outcome {
    Outcome {
        solution: Solution::new(a, &report),
        report,
        summary,
        level_densities: Vec::new(),
        mpc_violations: 0,
    }
}

fn incompatible(algo: Algo, what: &str) -> anyhow::Error {
    EscapeError::Incompatible(format!("{} needs {what}", algo.name())).into()
}

fn rep_for_peeling(inst: &Instance) -> RepInstance {
    match inst {
        Instance::Rep(r) => r.clone(),
        Instance::Sep(s) => s.as_unit_squares(),
    }
}

pub fn evaluate(algo: Algo, inst: &Instance, frac: Option<&str>, seed: u64) -> Result<Outcome> {
    match (algo, inst) {
        (Algo::Peel, _) => {
            let rep = rep_for_peeling(inst);
            let sol = solve_peeling(&rep)?;
            let report = match inst {
                Instance::Rep(_) => sol.report,
                Instance::Sep(s) => compute_density_sep(s, &sol.assignment)?,
            };
            let summary = format!("peel density {} boundary {} rho {}", report.density, report.boundary_density, sol.peeling.rho);
            let mut out = outcome(&sol.assignment, report, summary);
            out.level_densities = level_densities(&rep, &sol.peeling)?;
            Ok(out)
        }
        (Algo::Match, Instance::Sep(s)) => {
            let m = solve_sep(s)?;
            let report = compute_density_sep(s, &m.assignment)?;
            let summary = format!("match density {} boundary {} k_B {}", report.density, report.boundary_density, m.k_b);
            Ok(outcome(&m.assignment, report, summary))
        }
        (Algo::Mpc, Instance::Sep(s)) => {
            let cfg = MpcConfig::for_input(s.len());
            let run = run_sep_mpc(s, &cfg, None)?;
            let report = compute_density_sep(s, &run.assignment)?;
            let violations = check_mpc_constraints(&run.trace, &cfg, s.len()).len();
            let summary = format!(
                "mpc density {} boundary {} iterations {} rounds {}",
                report.density,
                report.boundary_density,
                run.trace.iterations,
                run.trace.round_count()
            );
            let mut out = outcome(&run.assignment, report, summary);
            out.mpc_violations = violations;
            Ok(out)
        }
        (Algo::Match | Algo::Mpc, Instance::Rep(_)) => Err(incompatible(algo, "a SEP instance")),
        (Algo::RoundDet | Algo::RoundRand, Instance::Rep(r)) => {
            let Some(text) = frac else {
                bail!(CliError::Usage(format!("{} needs --frac", algo.name())));
            };
            let f = import_fractional(text, r)?;
            let (a, report) = if algo == Algo::RoundDet {
                deterministic_round(&f, r)?
            } else {
                randomized_round(&f, r, seed)?
            };
            let summary = format!(
                "{} density {} boundary {} k_f {}{}",
                algo.name(),
                report.density,
                report.boundary_density,
                f.k_f,
                if f.exact { "" } else { " (within tolerance)" }
            );
            Ok(outcome(&a, report, summary))
        }
        (Algo::RoundDet | Algo::RoundRand, Instance::Sep(_)) => Err(incompatible(algo, "a REP instance")),
    }
}

/// Exact optimum, when the instance is small enough to enumerate.
fn optimum(inst: &Instance) -> Result<Option<u64>> {
    if inst.len() > DEFAULT_CAP {
        return Ok(None);
    }
    Ok(Some(match inst {
        Instance::Rep(r) => solve_exact_rep(r)?.opt_density,
        Instance::Sep(s) => solve_exact_sep(s)?.opt_density,
    }))
}

fn ratio_bound(algo: Algo, inst: &Instance) -> Option<u64> {
    match (algo, inst) {
        (Algo::Peel, Instance::Rep(_)) => Some(8),
        (Algo::Match, Instance::Sep(s)) => Some(if s.is_disjoint() { 2 } else { 4 }),
        _ => None,
    }
}

/// Checks the bounds that are monitored rather than guaranteed.
pub fn strict_checks(algo: Algo, inst: &Instance, out: &Outcome) -> Result<()> {
    if let Some((t, d)) = out.level_densities.iter().enumerate().find(|(_, &d)| d > 2) {
        bail!(CliError::Strict(format!("level {} has density {d} > 2", t + 1)));
    }
    if out.mpc_violations > 0 {
        bail!(CliError::Strict(format!("{} MPC constraint violations", out.mpc_violations)));
    }
    if let (Some(bound), Some(opt)) = (ratio_bound(algo, inst), optimum(inst)?) {
        if opt >= 2 && out.report.density > bound * opt {
            bail!(CliError::Strict(format!(
                "{} density {} exceeds {bound} x OPT = {}",
                algo.name(),
                out.report.density,
                bound * opt
            )));
        }
    }
    Ok(())
}

/// One row per algorithm: density, boundary density, ratio to the optimum
/// when `--oracle` is given, and wall time.
pub fn compare(inst: &Instance, algos: &[Algo], oracle: bool, frac: Option<&str>, seed: u64) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "{:<12} {:>8} {:>9} {:>7} {:>10}", "algo", "density", "boundary", "ratio", "ms");
    let opt = if oracle {
        let start = Instant::now();
        let (opt, boundary) = match inst {
            Instance::Rep(r) => {
                let o = solve_exact_rep(r)?;
                (o.opt_density, compute_density_rep(r, &o.opt_assignment)?.boundary_density)
            }
            Instance::Sep(s) => {
                let o = solve_exact_sep(s)?;
                (o.opt_density, o.opt_boundary_density.unwrap_or(0))
            }
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let _ = writeln!(out, "{:<12} {:>8} {:>9} {:>7} {:>10.3}", "oracle", opt, boundary, "1.000", ms);
        Some(opt)
    } else {
        None
    };
    for &algo in algos {
        let start = Instant::now();
        match evaluate(algo, inst, frac, seed) {
            Ok(o) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let ratio = match opt {
                    Some(0) => "-".to_string(),
                    Some(k) => format!("{:.3}", o.report.density as f64 / k as f64),
                    None => "-".to_string(),
                };
                let _ = writeln!(
                    out,
                    "{:<12} {:>8} {:>9} {:>7} {:>10.3}",
                    algo.name(),
                    o.report.density,
                    o.report.boundary_density,
                    ratio,
                    ms
                );
            }
            Err(e) if is_skippable(&e) => {
                let _ = writeln!(out, "{:<12} skipped: {e}", algo.name());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn is_skippable(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<CliError>(), Some(CliError::Usage(_)))
        || matches!(
            e.downcast_ref::<EscapeError>(),
            Some(EscapeError::Incompatible(_) | EscapeError::NotDisjoint { .. })
        )
}
