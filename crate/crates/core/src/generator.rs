//! What the collision, bosonic and qutrit models have in common: a linear
//! generator `dρ/dt = L(ρ)`, its stationary state, and for the two-qubit
//! fridge the thermodynamic report built on top of it.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{Bath, BathQubit, BathTriple, FridgeSpec};
use crate::op::{DensityOperator, Operator};
use crate::superop::Superoperator;

/// Largest admissible `‖L(ρ_S)‖` for a state to count as stationary.
pub const STATIONARY_TOL: f64 = 1e-10;
/// Largest admissible off-diagonal element of a stationary state.
pub const COHERENCE_TOL: f64 = 1e-10;
/// Margin on `r1 - r_c` below which the fridge is not reported as cooling.
pub const COOLING_TOL: f64 = 1e-10;

pub trait Generator {
    fn dim(&self) -> usize;

    fn hamiltonian(&self) -> &Operator;

    /// `dρ/dt`.
    fn rhs(&self, rho: &Operator) -> Operator;

    /// `rhs` tabulated as a `dim² × dim²` matrix.
    fn liouvillian(&self) -> &Superoperator;

    /// Level-to-level Markov rates (`rates[i * dim + j]` for `j → i`),
    /// assembled from the coupling parameters rather than read off the
    /// Liouvillian.
    fn population_rates(&self) -> Vec<f64>;

    /// Smallest and largest bath coupling rate.
    fn rate_range(&self) -> (f64, f64);

    /// Human-readable parameter dump for diagnostics.
    fn describe(&self) -> String;
}

/// Stationary state of a generator plus its cross-checks.
#[derive(Clone, Debug)]
pub struct Stationary {
    pub rho: DensityOperator,
    /// Frobenius norm of `L(ρ_S)`.
    pub residual: f64,
    pub max_coherence: f64,
    /// Largest gap between the null-space populations and the populations
    /// of the diagonal rate equations.
    pub rate_equation_deviation: f64,
}

/// Solves `L(ρ) = 0`, `Tr ρ = 1` through the null space of the full
/// Liouvillian and compares against the diagonal rate equations.
pub fn stationary<G: Generator + ?Sized>(gen: &G) -> Result<Stationary> {
    let rho = gen.liouvillian().stationary_state(|| gen.describe())?;
    let max_coherence = rho.operator().max_off_diagonal();
    if max_coherence >= COHERENCE_TOL {
        return Err(Error::CoherentSteadyState { max_coherence });
    }
    let residual = gen.rhs(rho.operator()).frobenius_norm();
    let fast = linalg::stationary_distribution(&gen.population_rates(), gen.dim())?;
    let rate_equation_deviation = rho
        .populations()
        .iter()
        .zip(&fast)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(Stationary { rho, residual, max_coherence, rate_equation_deviation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Collision,
    Bosonic,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Collision => "collision",
            ModelKind::Bosonic => "bosonic",
        }
    }
}

/// A two-qubit fridge generator that knows its baths and can resolve the
/// energy flow per bath.
pub trait FridgeDynamics: Generator {
    fn model(&self) -> ModelKind;

    fn spec(&self) -> &FridgeSpec;

    fn baths(&self) -> &BathTriple;

    fn bath_qubit(&self, bath: Bath) -> BathQubit;

    /// Heat current for `bath` without a stationarity check. Positive means
    /// into the fridge for the cold and hot baths and into the sink for the
    /// sink bath.
    fn energy_current(&self, bath: Bath, rho: &Operator) -> f64;

    /// Closed-form stationary populations, where one is available.
    fn closed_form_populations(&self) -> Option<[f64; 4]>;
}

/// Heat current of `bath` in the stationary state `rho`.
pub fn heat_current<G: FridgeDynamics + ?Sized>(gen: &G, rho: &DensityOperator, bath: Bath) -> Result<f64> {
    let residual = gen.rhs(rho.operator()).frobenius_norm();
    if !(residual < STATIONARY_TOL) {
        return Err(Error::NotStationary { residual });
    }
    Ok(gen.energy_current(bath, rho.operator()))
}

#[derive(Clone, Debug)]
pub struct SteadyStateReport {
    pub model: ModelKind,
    pub spec: FridgeSpec,
    pub baths: BathTriple,
    pub rho_s: DensityOperator,
    /// Ground population of qubit 1.
    pub r1: f64,
    /// Ground population of a cold-bath qubit.
    pub r_c: f64,
    pub q_c: f64,
    pub q_h: f64,
    pub q_r: f64,
    /// `Q_c / Q_h`, when heat flows from the hot bath at all.
    pub efficiency_realized: Option<f64>,
    pub cooling: bool,
    pub residual: f64,
    pub max_coherence: f64,
    pub rate_equation_deviation: f64,
    /// Largest deviation from the closed-form populations, if available.
    pub closed_form_deviation: Option<f64>,
}

impl SteadyStateReport {
    pub fn current(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Cold => self.q_c,
            Bath::Sink => self.q_r,
            Bath::Hot => self.q_h,
        }
    }

    /// `Q_c + Q_h - Q_r`.
    pub fn first_law_defect(&self) -> f64 {
        self.q_c + self.q_h - self.q_r
    }

    /// Entropy production rate of the reservoirs,
    /// `β_r Q_r - β_c Q_c - β_h Q_h`.
    pub fn entropy_production(&self) -> f64 {
        self.baths.beta(Bath::Sink) * self.q_r
            - self.baths.beta(Bath::Cold) * self.q_c
            - self.baths.beta(Bath::Hot) * self.q_h
    }
}

/// Stationary state of a two-qubit fridge with currents and cross-checks.
pub fn steady_state<G: FridgeDynamics + ?Sized>(gen: &G) -> Result<SteadyStateReport> {
    let Stationary { rho, residual, max_coherence, rate_equation_deviation } = stationary(gen)?;
    let pops = rho.populations();
    let r1 = pops[0] + pops[2];
    let r_c = gen.bath_qubit(Bath::Cold).r;
    if !(residual < STATIONARY_TOL) {
        return Err(Error::NotStationary { residual });
    }
    let q_c = gen.energy_current(Bath::Cold, rho.operator());
    let q_h = gen.energy_current(Bath::Hot, rho.operator());
    let q_r = gen.energy_current(Bath::Sink, rho.operator());
    let closed_form_deviation = gen.closed_form_populations().map(|cf| {
        cf.iter().zip(&pops).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    });
    Ok(SteadyStateReport {
        model: gen.model(),
        spec: *gen.spec(),
        baths: *gen.baths(),
        rho_s: rho,
        r1,
        r_c,
        q_c,
        q_h,
        q_r,
        efficiency_realized: (q_h.abs() > 1e-12).then(|| q_c / q_h),
        cooling: r1 - r_c > COOLING_TOL,
        residual,
        max_coherence,
        rate_equation_deviation,
        closed_form_deviation,
    })
}
