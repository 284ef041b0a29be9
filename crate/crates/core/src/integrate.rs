//! Fixed-step RK4 integration of `dρ/dt = L(ρ)`.
//!
//! Every step is validated as a density operator. A step that fails is
//! redone as two half steps, and the finer resolution is kept for the rest
//! of the run, up to [`MAX_HALVINGS`] times.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::op::{DensityOperator, Operator};

/// Negative eigenvalues down to `-MID_TRAJECTORY_POSITIVITY_TOL` are accepted
/// while integrating.
pub const MID_TRAJECTORY_POSITIVITY_TOL: f64 = 1e-8;
pub const MAX_HALVINGS: u32 = 10;
/// Trace distance between successive checkpoints that counts as converged.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// `0.01 / max(largest coupling rate, largest Bohr frequency)`.
pub fn default_step<G: Generator + ?Sized>(gen: &G) -> f64 {
    let levels = gen.hamiltonian().diagonal();
    let lo = levels.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    0.01 / gen.rate_range().1.max(hi - lo)
}

pub fn rk4_step<G: Generator + ?Sized>(gen: &G, rho: &Operator, h: f64) -> Operator {
    let k1 = gen.rhs(rho);
    let k2 = gen.rhs(&(rho + &(&k1 * (0.5 * h))));
    let k3 = gen.rhs(&(rho + &(&k2 * (0.5 * h))));
    let k4 = gen.rhs(&(rho + &(&k3 * h)));
    let mut incr = &k1 + &k4;
    incr += &(&(&k2 + &k3) * 2.0);
    rho + &(&incr * (h / 6.0))
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub t: f64,
    pub rho: DensityOperator,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// Nominal step.
    pub dt: f64,
    /// How often the step had to be halved.
    pub halvings: u32,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory holds the initial state")
    }
}

struct Stepper<'a, G: ?Sized> {
    gen: &'a G,
    halvings: u32,
}

impl<G: Generator + ?Sized> Stepper<'_, G> {
    /// Advances `rho` from `t` by `h`, split into `2^halvings` substeps.
    fn advance(&mut self, rho: &DensityOperator, t: f64, h: f64) -> Result<DensityOperator> {
        loop {
            let pieces = 1u32 << self.halvings;
            let sub = h / pieces as f64;
            let mut state = rho.operator().clone();
            let mut failure = None;
            for _ in 0..pieces {
                state = rk4_step(self.gen, &state, sub).hermitian_part();
                if let Err(e) = DensityOperator::with_positivity_tolerance(state.clone(), MID_TRAJECTORY_POSITIVITY_TOL) {
                    failure = Some(e);
                    break;
                }
            }
            match failure {
                None => return DensityOperator::with_positivity_tolerance(state, MID_TRAJECTORY_POSITIVITY_TOL),
                Some(e) if self.halvings >= MAX_HALVINGS => {
                    return Err(Error::IntegrationFailed { time: t, dt: sub, reason: format!("{e}") });
                }
                Some(_) => self.halvings += 1,
            }
        }
    }
}

/// Integrates to `t_final`, recording every step. The step is shrunk
/// slightly so that it divides `t_final`.
pub fn evolve<G: Generator + ?Sized>(gen: &G, rho0: &DensityOperator, t_final: f64, dt: f64) -> Result<Trajectory> {
    evolve_sampled(gen, rho0, t_final, dt, 1)
}

/// Like [`evolve`] but records only every `every`-th step (and the last).
pub fn evolve_sampled<G: Generator + ?Sized>(
    gen: &G,
    rho0: &DensityOperator,
    t_final: f64,
    dt: f64,
    every: usize,
) -> Result<Trajectory> {
    check_inputs(gen, rho0, t_final, dt)?;
    let steps = if t_final == 0.0 { 0 } else { libm::ceil(t_final / dt) as usize };
    let h = if steps == 0 { dt } else { t_final / steps as f64 };
    let every = every.max(1);
    let mut stepper = Stepper { gen, halvings: 0 };
    let mut samples = Vec::with_capacity(steps / every + 2);
    samples.push(Sample { t: 0.0, rho: rho0.clone() });
    let mut rho = rho0.clone();
    for k in 0..steps {
        let t = k as f64 * h;
        rho = stepper.advance(&rho, t, h)?;
        if (k + 1) % every == 0 || k + 1 == steps {
            samples.push(Sample { t: (k + 1) as f64 * h, rho: rho.clone() });
        }
    }
    Ok(Trajectory { samples, dt: h, halvings: stepper.halvings })
}

#[derive(Clone, Debug)]
pub struct Convergence {
    /// Checkpoints, spaced `interval` apart.
    pub trajectory: Trajectory,
    pub interval: f64,
    /// Trace distance between the last two checkpoints.
    pub last_change: f64,
}

/// Integrates until two checkpoints `interval` apart are within
/// [`CONVERGENCE_TOL`] in trace distance, or fails past `t_max`.
pub fn evolve_to_convergence<G: Generator + ?Sized>(
    gen: &G,
    rho0: &DensityOperator,
    dt: f64,
    interval: f64,
    t_max: f64,
) -> Result<Convergence> {
    check_inputs(gen, rho0, t_max, dt)?;
    if !(interval > 0.0 && interval.is_finite()) {
        return Err(Error::InvalidParameter { name: "interval", reason: format!("checkpoint interval must be positive, got {interval}") });
    }
    let per_interval = libm::ceil(interval / dt).max(1.0) as usize;
    let h = interval / per_interval as f64;
    let mut stepper = Stepper { gen, halvings: 0 };
    let mut samples = alloc::vec![Sample { t: 0.0, rho: rho0.clone() }];
    let mut rho = rho0.clone();
    let mut t = 0.0;
    loop {
        for k in 0..per_interval {
            rho = stepper.advance(&rho, t + k as f64 * h, h)?;
        }
        t += interval;
        let change = rho.trace_distance(&samples.last().unwrap().rho);
        samples.push(Sample { t, rho: rho.clone() });
        if change < CONVERGENCE_TOL {
            let trajectory = Trajectory { samples, dt: h, halvings: stepper.halvings };
            return Ok(Convergence { trajectory, interval, last_change: change });
        }
        if t >= t_max {
            return Err(Error::IntegrationFailed {
                time: t,
                dt: h,
                reason: format!("no convergence by t = {t_max}; last change {change:e}"),
            });
        }
    }
}

fn check_inputs<G: Generator + ?Sized>(gen: &G, rho0: &DensityOperator, t_final: f64, dt: f64) -> Result<()> {
    if rho0.dim() != gen.dim() {
        return Err(Error::DimensionMismatch { expected: gen.dim(), found: rho0.dim() });
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter { name: "dt", reason: format!("step must be positive, got {dt}") });
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidParameter { name: "t_final", reason: format!("final time must be non-negative, got {t_final}") });
    }
    Ok(())
}
