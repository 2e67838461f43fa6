use std::fmt::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cell_paths;
use crate::error::{EscapeError, Result};
use crate::geometry::{Direction, RepInstance};

/// Slack allowed when checking solver output, which is rounded to a finite
/// number of digits.
pub const TOLERANCE: f64 = 1e-9;

fn tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

/// A feasible point of the relaxation, checked against an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSolution {
    pub r: Vec<[BigRational; 4]>,
    pub k_f: BigRational,
    /// Whether every constraint holds without tolerance.
    pub exact: bool,
}

/// Parses a decimal (`0.25`, `-1.5e-3`) or a fraction (`3/4`) exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).ok()?;
        let b = BigInt::from_str(b.trim()).ok()?;
        return (!b.is_zero()).then(|| BigRational::new(a, b));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int}{frac}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    if negative {
        num = -num;
    }
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Reads `i dir value` lines and an optional `objective value` (or `k value`)
/// line. Blank lines and `#` comments are ignored; unlisted variables are 0.
/// Returns the values and the declared objective.
pub fn parse_fractional(text: &str, n: usize) -> Result<(Vec<[BigRational; 4]>, Option<BigRational>)> {
    let zero = || [0, 0, 0, 0].map(|_| BigRational::zero());
    let mut r: Vec<[BigRational; 4]> = (0..n).map(|_| zero()).collect();
    let mut seen = vec![[false; 4]; n];
    let mut objective = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| EscapeError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [tag, value] if *tag == "objective" || *tag == "k" => {
                if objective.is_some() {
                    return Err(err("objective given twice".into()));
                }
                let v = parse_rational(value).ok_or_else(|| err(format!("bad number {value:?}")))?;
                objective = Some(v);
            }
            [i, dir, value] => {
                let i: usize = i.parse().map_err(|_| err(format!("bad index {i:?}")))?;
                if i >= n {
                    return Err(err(format!("index {i} out of range for {n} rectangles")));
                }
                let d = Direction::from_str(dir).map_err(err)?;
                if seen[i][d.index()] {
                    return Err(err(format!("duplicate entry for {i} {d}")));
                }
                seen[i][d.index()] = true;
                r[i][d.index()] = parse_rational(value).ok_or_else(|| err(format!("bad number {value:?}")))?;
            }
            _ => return Err(err(format!("expected `i dir value` or `objective value`, got {content:?}"))),
        }
    }
    Ok((r, objective))
}

/// Parses and checks a fractional solution against `inst`. Without an
/// objective line, `k_f` is the largest cell load.
pub fn import_fractional(text: &str, inst: &RepInstance) -> Result<FractionalSolution> {
    let (r, objective) = parse_fractional(text, inst.len())?;
    FractionalSolution::check(inst, r, objective)
}

impl FractionalSolution {
    /// Uses the largest cell load as `k_f`, which is the least feasible
    /// objective for these values.
    pub fn from_values(inst: &RepInstance, r: Vec<[BigRational; 4]>) -> Result<Self> {
        Self::check(inst, r, None)
    }

    /// `r = 1/4` everywhere.
    pub fn uniform(inst: &RepInstance) -> Result<Self> {
        let q = BigRational::new(BigInt::one(), BigInt::from(4));
        Self::from_values(inst, vec![[q.clone(), q.clone(), q.clone(), q]; inst.len()])
    }

    pub fn check(inst: &RepInstance, r: Vec<[BigRational; 4]>, objective: Option<BigRational>) -> Result<Self> {
        if r.len() != inst.len() {
            return Err(EscapeError::AssignmentLength { expected: inst.len(), got: r.len() });
        }
        let tol = tolerance();
        let one = BigRational::one();
        let mut exact = true;
        for (i, row) in r.iter().enumerate() {
            for (d, v) in Direction::ALL.iter().zip(row) {
                if v < &-tol.clone() || v > &(&one + &tol) {
                    return Err(EscapeError::Infeasible(format!("{} = {v} lies outside [0, 1]", super::var_name(i, *d))));
                }
                exact &= !v.is_negative() && v <= &one;
            }
            let sum: BigRational = row.iter().sum();
            if sum < &one - &tol {
                return Err(EscapeError::Infeasible(format!("rectangle {i}: escape sum {sum} < 1")));
            }
            exact &= sum >= one;
        }

        let loads = cell_loads(inst, &r);
        let (worst, load) = loads
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(c, l)| (c, l.clone()))
            .unwrap_or((0, BigRational::zero()));
        let k_f = match objective {
            Some(k) => {
                if k.is_negative() {
                    return Err(EscapeError::Infeasible(format!("objective {k} is negative")));
                }
                if load > &k + &tol {
                    let rows = cell_paths(inst).0.rows();
                    return Err(EscapeError::Infeasible(format!(
                        "cell ({}, {}) carries load {load} > k_f = {k}",
                        worst / rows,
                        worst % rows
                    )));
                }
                exact &= load <= k;
                k
            }
            None => load,
        };
        Ok(FractionalSolution { r, k_f, exact })
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn k_f_f64(&self) -> f64 {
        self.k_f.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Values as floats, negatives clamped to zero.
    pub fn weights(&self) -> Vec<[f64; 4]> {
        self.r
            .iter()
            .map(|row| row.clone().map(|v| v.to_f64().unwrap_or(0.0).max(0.0)))
            .collect()
    }

    /// Serializes in the format accepted by [`import_fractional`].
    pub fn to_text(&self) -> String {
        let mut out = format!("objective {}\n", self.k_f);
        for (i, row) in self.r.iter().enumerate() {
            for (d, v) in Direction::ALL.iter().zip(row) {
                if !v.is_zero() {
                    let _ = writeln!(out, "{i} {} {v}", d.code());
                }
            }
        }
        out
    }
}

/// Exact fractional load of every escape grid cell.
pub(crate) fn cell_loads(inst: &RepInstance, r: &[[BigRational; 4]]) -> Vec<BigRational> {
    let (_, cells) = cell_paths(inst);
    cells
        .iter()
        .map(|paths| paths.iter().map(|&(i, d)| &r[i][d.index()]).sum())
        .collect()
}
