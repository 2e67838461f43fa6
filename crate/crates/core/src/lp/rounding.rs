use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fractional::TOLERANCE;
use super::FractionalSolution;
use crate::error::{EscapeError, Result};
use crate::exec::Exec;
use crate::geometry::{compute_density_rep, DensityReport, Direction, EscapeAssignment, RepInstance};

fn check_len(f: &FractionalSolution, inst: &RepInstance) -> Result<()> {
    if f.len() != inst.len() {
        return Err(EscapeError::AssignmentLength { expected: inst.len(), got: f.len() });
    }
    Ok(())
}

/// Routes each rectangle along its largest fractional direction, ties going
/// to the canonically first one, and checks the density against `4 k_f`.
///
/// For solutions accepted only within tolerance the check relaxes to
/// `4 (k_f + tol) / (1 - tol)`.
pub fn deterministic_round(f: &FractionalSolution, inst: &RepInstance) -> Result<(EscapeAssignment, DensityReport)> {
    check_len(f, inst)?;
    let dirs = f
        .r
        .iter()
        .map(|row| {
            let mut best = 0;
            for d in 1..4 {
                if row[d] > row[best] {
                    best = d;
                }
            }
            Direction::from_index(best)
        })
        .collect();
    let a = EscapeAssignment::new(dirs);
    let report = compute_density_rep(inst, &a)?;

    let four = BigRational::from_integer(BigInt::from(4));
    let density = BigRational::from_integer(BigInt::from(report.density));
    let bound = if f.exact {
        &four * &f.k_f
    } else {
        let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
        &four * (&f.k_f + &tol) / (BigRational::one() - tol)
    };
    if density > bound {
        return Err(EscapeError::BoundViolation(format!(
            "rounded density {} exceeds {bound} (k_f = {})",
            report.density, f.k_f
        )));
    }
    Ok((a, report))
}

/// Draws one direction per rectangle from its normalized weights. The
/// generator for `trial` is seeded with `seed` on stream `trial`, so trials
/// are independent of scheduling.
pub fn sample_assignment(weights: &[[f64; 4]], seed: u64, trial: u64) -> EscapeAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    weights
        .iter()
        .map(|w| {
            let dist = WeightedIndex::new(w).expect("escape sum is positive");
            Direction::from_index(dist.sample(&mut rng))
        })
        .collect::<Vec<_>>()
        .into()
}

pub fn randomized_round(f: &FractionalSolution, inst: &RepInstance, seed: u64) -> Result<(EscapeAssignment, DensityReport)> {
    check_len(f, inst)?;
    let a = sample_assignment(&f.weights(), seed, 0);
    let report = compute_density_rep(inst, &a)?;
    Ok((a, report))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub epsilon: f64,
    pub k_f: f64,
    /// `4 n^2 exp(-(k/4) eps^2 / 3)` with `k = ceil(k_f)`.
    pub analytic_bound: f64,
    /// Fraction of trials whose density reached `(1 + eps) k_f`.
    pub empirical_frequency: f64,
    pub hits: u64,
    pub trials: u64,
    pub seed: u64,
}

pub fn chernoff_tail(inst: &RepInstance, f: &FractionalSolution, epsilon: f64, trials: u64, seed: u64) -> Result<TailEstimate> {
    chernoff_tail_with(inst, f, epsilon, trials, seed, Exec::default())
}

/// Monte Carlo estimate of the probability that randomized rounding exceeds
/// `(1 + eps) k_f`, next to the analytic tail bound.
pub fn chernoff_tail_with(
    inst: &RepInstance,
    f: &FractionalSolution,
    epsilon: f64,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<TailEstimate> {
    check_len(f, inst)?;
    if !(epsilon > 0.0 && epsilon < 3.0) {
        return Err(EscapeError::Epsilon(epsilon));
    }
    let n = inst.len() as f64;
    let k_f = f.k_f_f64();
    let k = k_f.ceil();
    let analytic_bound = 4.0 * n * n * (-(k / 4.0) * epsilon * epsilon / 3.0).exp();
    let threshold = (1.0 + epsilon) * k_f - TOLERANCE;
    let weights = f.weights();
    let hits = exec.sum_range(trials as usize, |t| {
        let a = sample_assignment(&weights, seed, t as u64);
        let d = compute_density_rep(inst, &a).expect("lengths match").density;
        u64::from(d as f64 >= threshold)
    });
    Ok(TailEstimate {
        epsilon,
        k_f,
        analytic_bound,
        empirical_frequency: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
        hits,
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, GenSpec};
    use crate::geometry::{Boundary, Instance, Rect};
    use crate::lp::import_fractional;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn one_rect() -> RepInstance {
        RepInstance::new(Boundary::new(4, 4), vec![Rect::new(1, 1, 2, 2)], true).unwrap()
    }

    #[test]
    fn argmax_and_tie_break() {
        let inst = one_rect();
        let f = import_fractional("0 l 1\n", &inst).unwrap();
        assert_eq!(deterministic_round(&f, &inst).unwrap().0.as_slice(), &[Direction::Left]);
        let f = FractionalSolution::uniform(&inst).unwrap();
        assert_eq!(deterministic_round(&f, &inst).unwrap().0.as_slice(), &[Direction::Left]);
        let f = import_fractional("0 l 0.2\n0 u 0.4\n0 d 0.4\n", &inst).unwrap();
        assert_eq!(deterministic_round(&f, &inst).unwrap().0.as_slice(), &[Direction::Down]);
    }

    #[test]
    fn point_mass_always_samples_its_direction() {
        let inst = one_rect();
        let f = import_fractional("0 r 1\n", &inst).unwrap();
        for seed in 0..50 {
            assert_eq!(randomized_round(&f, &inst, seed).unwrap().0.as_slice(), &[Direction::Right]);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let Instance::Rep(inst) = generate(&GenSpec::random_rep(20, 30, 3, false)).unwrap() else {
            unreachable!()
        };
        let f = FractionalSolution::uniform(&inst).unwrap();
        assert_eq!(randomized_round(&f, &inst, 7).unwrap(), randomized_round(&f, &inst, 7).unwrap());
        assert_ne!(randomized_round(&f, &inst, 7).unwrap().0, randomized_round(&f, &inst, 8).unwrap().0);
    }

    #[test]
    fn frequencies_follow_weights() {
        // weights 1/2, 1/4, 1/8, 1/8 for a single rectangle
        let w = [[0.5, 0.25, 0.125, 0.125]];
        let trials = 10_000u64;
        let mut counts = [0u64; 4];
        for t in 0..trials {
            counts[sample_assignment(&w, 11, t).get(0).index()] += 1;
        }
        for d in 0..4 {
            let p = w[0][d];
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            let got = counts[d] as f64 / trials as f64;
            assert!((got - p).abs() <= 3.0 * se, "direction {d}: {got} vs {p}");
        }
    }

    #[test]
    fn tail_inputs() {
        let inst = one_rect();
        let f = FractionalSolution::uniform(&inst).unwrap();
        assert!(matches!(chernoff_tail(&inst, &f, 0.0, 10, 1), Err(EscapeError::Epsilon(_))));
        assert!(matches!(chernoff_tail(&inst, &f, 3.0, 10, 1), Err(EscapeError::Epsilon(_))));
        let t = chernoff_tail(&inst, &f, 2.5, 200, 1).unwrap();
        assert_eq!(t.hits, 0);
        assert_eq!(t.k_f, 1.0);
        let expect = 4.0 * (-(0.25) * 6.25 / 3.0f64).exp();
        assert!((t.analytic_bound - expect).abs() < 1e-12);
    }

    #[test]
    fn analytic_bound_drops_below_one() {
        // n = 2, eps near 3, k large
        let rects = vec![Rect::new(0, 0, 1, 1), Rect::new(2, 2, 3, 3)];
        let inst = RepInstance::new(Boundary::new(4, 4), rects, true).unwrap();
        let mut f = FractionalSolution::uniform(&inst).unwrap();
        f.k_f = q(40, 1);
        let t = chernoff_tail(&inst, &f, 2.99, 1, 0).unwrap();
        assert!(t.analytic_bound < 1.0);
    }

    #[test]
    fn tail_is_schedule_independent() {
        let Instance::Rep(inst) = generate(&GenSpec::random_rep(15, 20, 5, false)).unwrap() else {
            unreachable!()
        };
        let f = FractionalSolution::uniform(&inst).unwrap();
        let a = chernoff_tail_with(&inst, &f, 0.5, 300, 9, Exec::Sequential).unwrap();
        let b = chernoff_tail_with(&inst, &f, 0.5, 300, 9, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
