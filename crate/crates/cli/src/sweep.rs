//! Parameter grids and their parallel evaluation.

use std::str::FromStr;

use rayon::prelude::*;
use thermoq_core::search::{linspace, logspace};

use crate::error::{CliError, Result};

/// `param:min:max:count[:log]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl SweepSpec {
    /// Grid points; the end points are exact.
    pub fn points(&self) -> Vec<f64> {
        let mut xs = if self.log { logspace(self.min, self.max, self.count) } else { linspace(self.min, self.max, self.count) };
        xs[0] = self.min;
        xs[self.count - 1] = self.max;
        xs
    }
}

impl FromStr for SweepSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| CliError::Validation(format!("invalid sweep `{s}`: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        let log = match parts.len() {
            4 => false,
            5 if parts[4] == "log" => true,
            5 => return Err(bad("the fifth field may only be `log`")),
            _ => return Err(bad("expected param:min:max:count[:log]")),
        };
        let (min, max) = parse_range(&parts[1..3]).map_err(|why| bad(&why))?;
        let count: usize = parts[3].parse().map_err(|_| bad("count must be an integer"))?;
        if count < 2 {
            return Err(bad("count must be at least 2"));
        }
        if log && min <= 0.0 {
            return Err(bad("a log grid needs min > 0"));
        }
        Ok(Self { param: parts[0].to_string(), min, max, count, log })
    }
}

/// `lo:hi` with `lo < hi`, both finite.
pub fn parse_bracket(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!("invalid bracket `{s}`: expected lo:hi")));
    }
    parse_range(&parts).map_err(|why| CliError::Validation(format!("invalid bracket `{s}`: {why}")))
}

fn parse_range(parts: &[&str]) -> std::result::Result<(f64, f64), String> {
    let num = |p: &str| p.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("`{p}` is not a finite number"));
    let (lo, hi) = (num(parts[0])?, num(parts[1])?);
    if !(lo < hi) {
        return Err(format!("min must be below max, got {lo} and {hi}"));
    }
    Ok((lo, hi))
}

/// Thread cap from `THERMOQ_THREADS`; unset or 0 lets rayon decide.
pub fn thread_count() -> Result<usize> {
    match std::env::var("THERMOQ_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("THERMOQ_THREADS must be a non-negative integer, got `{v}`"))),
    }
}

/// Maps `f` over `xs` in parallel; results keep the order of `xs`.
pub fn par_map<I, T, F>(xs: &[I], f: F) -> Result<Vec<T>>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Solver(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| xs.par_iter().map(&f).collect()))
}
