use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use escape_core::gen::{generate, Family, GenSpec, Kind};
use escape_core::lp::export_lp;
use escape_core::mpc::{check_mpc_constraints, run_sep_mpc, MpcConfig};
use escape_core::oracle::{solve_exact_rep_with, solve_exact_sep_with, OracleConfig, DEFAULT_CAP};
use escape_core::{EscapeError, Instance, Solution};

mod render;
mod run;

use run::{evaluate, Algo};

#[derive(Parser)]
#[command(name = "escape", version, about = "Escape routing solvers for REP and SEP instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        #[arg(long, default_value = "rep")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        disjoint: bool,
        /// Box width, default 8n.
        #[arg(long)]
        width: Option<i64>,
        /// Box height, default 8n.
        #[arg(long)]
        height: Option<i64>,
        #[arg(long, default_value = "random")]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm and write a solution file.
    Solve {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long = "in")]
        input: PathBuf,
        /// Fractional solution, required by the rounding algorithms.
        #[arg(long)]
        frac: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat monitored approximation bounds as hard failures (exit 3).
        #[arg(long)]
        strict: bool,
    },
    /// Recompute the density of a solution and compare it with the file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sol: PathBuf,
    },
    /// Solve exactly by enumeration.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run several algorithms on one instance and tabulate the results.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', num_args = 0..)]
        algos: Vec<Algo>,
        /// Add the exact optimum and ratios against it.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        frac: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the SEP peeling on a simulated MPC cluster.
    Mpc {
        #[arg(long = "in")]
        input: PathBuf,
        /// Machine count, default ceil(sqrt n).
        #[arg(long)]
        machines: Option<usize>,
        /// Records per machine, default 4 ceil(sqrt n) + 4.
        #[arg(long)]
        memory: Option<usize>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        round_cap: Option<usize>,
        #[arg(long)]
        strict: bool,
    },
    /// Write the linear relaxation of a REP instance in LP format.
    LpExport {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, conflicts_with = "levels")]
        sol: Option<PathBuf>,
        /// Colour elements by peeling level.
        #[arg(long)]
        levels: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failures detected by the front end itself.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("strict check failed: {0}")]
    Strict(String),
    #[error("{0}")]
    Mismatch(String),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CliError>() {
        Some(CliError::Usage(_)) => return 1,
        Some(CliError::Strict(_)) => return 3,
        Some(CliError::Mismatch(_)) => return 2,
        None => {}
    }
    match err.downcast_ref::<EscapeError>() {
        Some(EscapeError::BoundViolation(_) | EscapeError::Cycle(_) | EscapeError::NoProgress { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Gen { kind, n, seed, disjoint, width, height, family, out } => {
            let side = 8 * n.max(2) as i64;
            let spec = GenSpec {
                kind,
                n,
                seed,
                disjoint,
                width: width.unwrap_or(side),
                height: height.unwrap_or(side),
                family,
            };
            emit(out.as_deref(), &generate(&spec)?.to_json())
        }
        Command::Solve { algo, input, frac, seed, out, strict } => {
            let inst = read_instance(&input)?;
            let frac = frac.map(|p| fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))).transpose()?;
            let outcome = evaluate(algo, &inst, frac.as_deref(), seed)?;
            emit(out.as_deref(), &outcome.solution.to_json())?;
            eprintln!("{}", outcome.summary);
            if strict {
                run::strict_checks(algo, &inst, &outcome)?;
            }
            Ok(())
        }
        Command::Verify { input, sol } => verify(&input, &sol),
        Command::Oracle { input, cap, out } => {
            let inst = read_instance(&input)?;
            let cfg = OracleConfig { cap, ..OracleConfig::default() };
            let (result, report) = match &inst {
                Instance::Rep(r) => {
                    let o = solve_exact_rep_with(r, &cfg)?;
                    let rep = escape_core::geometry::compute_density_rep(r, &o.opt_assignment)?;
                    (o, rep)
                }
                Instance::Sep(s) => {
                    let o = solve_exact_sep_with(s, &cfg)?;
                    let rep = escape_core::geometry::compute_density_sep(s, &o.opt_assignment)?;
                    (o, rep)
                }
            };
            emit(out.as_deref(), &Solution::new(&result.opt_assignment, &report).to_json())?;
            match result.opt_boundary_density {
                Some(kb) => eprintln!("opt density {} min boundary density {kb}", result.opt_density),
                None => eprintln!("opt density {}", result.opt_density),
            }
            Ok(())
        }
        Command::Compare { input, algos, oracle, frac, seed } => {
            if algos.is_empty() {
                bail!(CliError::Usage("compare needs at least one algorithm in --algos".into()));
            }
            let inst = read_instance(&input)?;
            let frac = frac.map(|p| fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))).transpose()?;
            print!("{}", run::compare(&inst, &algos, oracle, frac.as_deref(), seed)?);
            Ok(())
        }
        Command::Mpc { input, machines, memory, trace, out, round_cap, strict } => {
            let Instance::Sep(inst) = read_instance(&input)? else {
                return Err(EscapeError::Incompatible("mpc runs on SEP instances".into()).into());
            };
            let n = inst.len();
            let base = MpcConfig::for_input(n);
            let cfg = MpcConfig::new(machines.unwrap_or(base.machines), memory.unwrap_or(base.memory), n);
            let run = run_sep_mpc(&inst, &cfg, round_cap)?;
            if let Some(path) = &trace {
                fs::write(path, run.trace.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            let report = escape_core::geometry::compute_density_sep(&inst, &run.assignment)?;
            emit(out.as_deref(), &Solution::new(&run.assignment, &report).to_json())?;
            let violations = check_mpc_constraints(&run.trace, &cfg, n);
            eprintln!(
                "iterations {} rounds {} (single-round extrema: {}) replication {:.3} violations {}",
                run.trace.iterations,
                run.trace.round_count(),
                run.trace.naive_rounds,
                run.trace.replication_factor,
                violations.len()
            );
            for v in &violations {
                eprintln!("violation: {}", serde_json::to_string(v)?);
            }
            if strict && !violations.is_empty() {
                bail!(CliError::Strict(format!("{} MPC constraint violations", violations.len())));
            }
            Ok(())
        }
        Command::LpExport { input, out } => {
            let Instance::Rep(inst) = read_instance(&input)? else {
                return Err(EscapeError::Incompatible("lp-export needs a REP instance".into()).into());
            };
            emit(out.as_deref(), &export_lp(&inst))
        }
        Command::Render { input, sol, levels, out } => {
            let inst = read_instance(&input)?;
            let sol = match sol {
                Some(p) => Some(Solution::from_json(&fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?)?),
                None => None,
            };
            let svg = render::render(&inst, sol.as_ref(), levels)?;
            fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))
        }
    }
}

fn verify(input: &Path, sol: &Path) -> Result<()> {
    let inst = read_instance(input)?;
    let text = fs::read_to_string(sol).with_context(|| format!("reading {}", sol.display()))?;
    let sol = Solution::from_json(&text).with_context(|| format!("parsing {}", sol.display()))?;
    let a = sol.assignment();
    let report = match &inst {
        Instance::Rep(r) => escape_core::geometry::compute_density_rep(r, &a)?,
        Instance::Sep(s) => escape_core::geometry::compute_density_sep(s, &a)?,
    };
    println!("{}", serde_json::to_string(&report)?);
    if report.density != sol.density || report.boundary_density != sol.boundary_density {
        bail!(CliError::Mismatch(format!(
            "solution claims density {} / boundary {}, recomputed {} / {}",
            sol.density, sol.boundary_density, report.density, report.boundary_density
        )));
    }
    println!("ok density {} boundary {}", report.density, report.boundary_density);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&CliError::Usage("x".into()).into()), 1);
        assert_eq!(exit_code(&CliError::Mismatch("x".into()).into()), 2);
        assert_eq!(exit_code(&CliError::Strict("x".into()).into()), 3);
        assert_eq!(exit_code(&EscapeError::BoundViolation("x".into()).into()), 3);
        assert_eq!(exit_code(&EscapeError::Incompatible("x".into()).into()), 2);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), 2);
    }
}
