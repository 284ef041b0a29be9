//! The standard three-level absorption fridge, run with the same collision
//! formalism and the same bath resources as the two-qubit fridge.
//!
//! Levels `0, 2E1, E1+E2`: the cold bath drives `0 ↔ 1` with gap `2E1`, the
//! hot bath `1 ↔ 2` with gap `E2 - E1` and the sink `0 ↔ 2` with gap
//! `E1 + E2`, so the cold transition sees the same virtual temperature.

use alloc::vec;

use crate::collision::{steady_state as fridge_steady_state, CollisionGenerator, CouplingRates, InteractionSpec, Transition, DEFAULT_STRENGTH};
use crate::error::{Error, Result};
use crate::generator::{stationary, Generator};
use crate::model::{bath_population, Bath, BathTriple, FridgeSpec};
use crate::op::DensityOperator;

/// Both cold currents below this count as zero when picking a winner.
pub const TIE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QutritSpec {
    e1: f64,
    e2: f64,
}

impl QutritSpec {
    pub fn from_fridge(spec: &FridgeSpec) -> Self {
        Self { e1: spec.e1(), e2: spec.e2() }
    }

    pub fn levels(&self) -> [f64; 3] {
        [0.0, 2.0 * self.e1, self.e1 + self.e2]
    }

    pub fn transition(&self, bath: Bath) -> Transition {
        match bath {
            Bath::Cold => Transition::new(0, 1),
            Bath::Hot => Transition::new(1, 2),
            Bath::Sink => Transition::new(0, 2),
        }
    }

    pub fn transition_energy(&self, bath: Bath) -> f64 {
        let l = self.levels();
        let t = self.transition(bath);
        l[t.upper] - l[t.lower]
    }

    /// Inverse temperature of the cold transition set by the hot and sink
    /// baths alone.
    pub fn virtual_beta(&self, baths: &BathTriple) -> f64 {
        (baths.beta(Bath::Sink) * self.transition_energy(Bath::Sink)
            - baths.beta(Bath::Hot) * self.transition_energy(Bath::Hot))
            / self.transition_energy(Bath::Cold)
    }
}

/// Three-level collision generator. `cold_scale` multiplies `p_c`.
pub fn qutrit_generator(spec: &QutritSpec, baths: &BathTriple, rates: &CouplingRates, cold_scale: f64) -> Result<CollisionGenerator> {
    let rates = rates.scaled(Bath::Cold, cold_scale)?;
    let levels = spec.levels();
    let mut couplings = vec![];
    for bath in Bath::ALL {
        let energy = spec.transition_energy(bath);
        let interaction = InteractionSpec::new(bath, &levels, vec![spec.transition(bath)], energy, DEFAULT_STRENGTH)?;
        couplings.push((interaction, bath_population(energy, baths.beta(bath)), rates.get(bath)));
    }
    CollisionGenerator::new(&levels, couplings)
}

#[derive(Clone, Debug)]
pub struct QutritReport {
    pub rho_s: DensityOperator,
    pub q_c: f64,
    pub q_h: f64,
    pub q_r: f64,
    pub residual: f64,
    pub max_coherence: f64,
}

pub fn qutrit_steady_state(gen: &CollisionGenerator) -> Result<QutritReport> {
    if gen.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: gen.dim() });
    }
    let s = stationary(gen)?;
    Ok(QutritReport {
        q_c: gen.heat_current(&s.rho, Bath::Cold)?,
        q_h: gen.heat_current(&s.rho, Bath::Hot)?,
        q_r: gen.heat_current(&s.rho, Bath::Sink)?,
        rho_s: s.rho,
        residual: s.residual,
        max_coherence: s.max_coherence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    TwoQubit,
    Qutrit,
    Tie,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::TwoQubit => "two-qubit",
            Winner::Qutrit => "qutrit",
            Winner::Tie => "tie",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonReport {
    pub spec: FridgeSpec,
    pub baths: BathTriple,
    pub rates: CouplingRates,
    pub cold_scale: f64,
    pub q_c_two_qubit: f64,
    pub q_c_qutrit: f64,
    pub winner: Winner,
}

pub fn winner(q_two_qubit: f64, q_qutrit: f64) -> Winner {
    if (q_two_qubit.abs() < TIE_TOL && q_qutrit.abs() < TIE_TOL) || (q_two_qubit - q_qutrit).abs() < TIE_TOL {
        Winner::Tie
    } else if q_two_qubit > q_qutrit {
        Winner::TwoQubit
    } else {
        Winner::Qutrit
    }
}

/// Cold currents of both fridges under identical baths and rates.
pub fn compare(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates) -> Result<ComparisonReport> {
    compare_with_scale(spec, baths, rates, 1.0)
}

pub fn compare_with_scale(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates, cold_scale: f64) -> Result<ComparisonReport> {
    let two = fridge_steady_state(&CollisionGenerator::fridge(spec, baths, rates)?)?;
    let three = qutrit_steady_state(&qutrit_generator(&QutritSpec::from_fridge(spec), baths, rates, cold_scale)?)?;
    Ok(ComparisonReport {
        spec: *spec,
        baths: *baths,
        rates: *rates,
        cold_scale,
        q_c_two_qubit: two.q_c,
        q_c_qutrit: three.q_c,
        winner: winner(two.q_c, three.q_c),
    })
}
