//! Weak-coupling Lindblad model with bosonic baths.
//!
//! Bath `α` drives the same transition as in the collision model through the
//! jump pair `σ₊^α, σ₋^α`, with decay rate `Γ_α = γ_α E_α³ (1 + N_α)` and
//! excitation rate `Γ_{-α} = e^{-β_α E_α} Γ_α`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::collision::{closed_form, fridge_transitions, CouplingRates};
use crate::error::{Error, Result};
use crate::generator::{self, FridgeDynamics, Generator, ModelKind, SteadyStateReport};
use crate::model::{bath_qubit, Bath, BathQubit, BathTriple, FridgeSpec};
use crate::op::{two_qubit, Operator};
use crate::superop::Superoperator;

/// Bath coupling constants `γ_c, γ_r, γ_h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BosonicCoupling {
    gamma: [f64; 3],
}

impl BosonicCoupling {
    pub fn new(gamma_c: f64, gamma_r: f64, gamma_h: f64) -> Result<Self> {
        for (name, g) in [("gamma_c", gamma_c), ("gamma_r", gamma_r), ("gamma_h", gamma_h)] {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::InvalidParameter { name, reason: format!("{name} must be positive and finite, got {g}") });
            }
        }
        Ok(Self { gamma: [gamma_c, gamma_r, gamma_h] })
    }

    pub fn gamma(&self, bath: Bath) -> f64 {
        self.gamma[bath as usize]
    }
}

/// Bose-Einstein occupation `1 / (e^{βE} - 1)`.
pub fn thermal_occupation(energy: f64, beta: f64) -> f64 {
    1.0 / libm::expm1(beta * energy)
}

/// `(Γ_α, Γ_{-α})` for one bath.
pub fn decay_rates(coupling: &BosonicCoupling, spec: &FridgeSpec, baths: &BathTriple, bath: Bath) -> (f64, f64) {
    let e = spec.transition_energy(bath);
    let beta = baths.beta(bath);
    let down = coupling.gamma(bath) * e * e * e * (1.0 + thermal_occupation(e, beta));
    (down, libm::exp(-beta * e) * down)
}

/// `σ₊` and `σ₋ = σ₊†` for one bath.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpPair {
    pub bath: Bath,
    pub raise: Operator,
    pub lower: Operator,
}

/// `σ₊^c = |1⟩⟨0| ⊗ I`, `σ₊^r = |11⟩⟨00|`, `σ₊^h = |01⟩⟨10|`, in the order
/// of [`Bath::ALL`].
pub fn jump_operators() -> [JumpPair; 3] {
    Bath::ALL.map(|bath| {
        let raise = match bath {
            Bath::Cold => two_qubit(&Operator::ket_bra(2, 1, 0), &Operator::identity(2)),
            _ => {
                let mut op = Operator::zeros(4);
                for t in fridge_transitions(bath) {
                    op[(t.upper, t.lower)] = C64::ONE;
                }
                op
            }
        };
        JumpPair { bath, lower: raise.adjoint(), raise }
    })
}

/// `D[L]ρ = LρL† - ½{L†L, ρ}`.
pub fn dissipator(l: &Operator, rho: &Operator) -> Operator {
    let ldl = l.adjoint().matmul(l);
    let anti = &ldl.matmul(rho) + &rho.matmul(&ldl);
    &l.matmul(rho).matmul(&l.adjoint()) - &(&anti * 0.5)
}

#[derive(Clone, Debug)]
struct Channel {
    jumps: JumpPair,
    energy: f64,
    down: f64,
    up: f64,
    // projectors onto the lower and upper levels of the driven transitions
    lower_levels: Operator,
    upper_levels: Operator,
}

/// `dρ/dt = i[ρ, H0] + Σ_α Γ_α D[σ₋^α]ρ + Γ_{-α} D[σ₊^α]ρ`.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    spec: FridgeSpec,
    baths: BathTriple,
    coupling: BosonicCoupling,
    h0: Operator,
    channels: Vec<Channel>,
    liouvillian: Superoperator,
}

impl LindbladGenerator {
    pub fn new(spec: &FridgeSpec, baths: &BathTriple, coupling: &BosonicCoupling) -> Self {
        let channels = jump_operators()
            .into_iter()
            .map(|jumps| {
                let (down, up) = decay_rates(coupling, spec, baths, jumps.bath);
                Channel {
                    energy: spec.transition_energy(jumps.bath),
                    down,
                    up,
                    lower_levels: jumps.lower.matmul(&jumps.raise),
                    upper_levels: jumps.raise.matmul(&jumps.lower),
                    jumps,
                }
            })
            .collect();
        let mut gen = Self {
            spec: *spec,
            baths: *baths,
            coupling: *coupling,
            h0: spec.hamiltonian(),
            channels,
            liouvillian: Superoperator::zeros(4),
        };
        gen.liouvillian = Superoperator::from_map(4, |x| gen.rhs(x));
        gen
    }

    pub fn coupling(&self) -> &BosonicCoupling {
        &self.coupling
    }

    /// `(Γ_α, Γ_{-α})`.
    pub fn rates(&self, bath: Bath) -> (f64, f64) {
        let c = self.channel(bath);
        (c.down, c.up)
    }

    fn channel(&self, bath: Bath) -> &Channel {
        self.channels.iter().find(|c| c.jumps.bath == bath).expect("one channel per bath")
    }
}

impl Generator for LindbladGenerator {
    fn dim(&self) -> usize {
        4
    }

    fn hamiltonian(&self) -> &Operator {
        &self.h0
    }

    fn rhs(&self, rho: &Operator) -> Operator {
        let mut out = &(&rho.matmul(&self.h0) - &self.h0.matmul(rho)) * C64::I;
        for c in &self.channels {
            out += &(&dissipator(&c.jumps.lower, rho) * c.down);
            out += &(&dissipator(&c.jumps.raise, rho) * c.up);
        }
        out
    }

    fn liouvillian(&self) -> &Superoperator {
        &self.liouvillian
    }

    fn population_rates(&self) -> Vec<f64> {
        let mut rates = vec![0.0; 16];
        for c in &self.channels {
            for t in fridge_transitions(c.jumps.bath) {
                rates[t.upper * 4 + t.lower] += c.up;
                rates[t.lower * 4 + t.upper] += c.down;
            }
        }
        rates
    }

    fn rate_range(&self) -> (f64, f64) {
        self.channels
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), c| (lo.min(c.down.min(c.up)), hi.max(c.down.max(c.up))))
    }

    fn describe(&self) -> String {
        let mut s = format!("bosonic model, E1={} E2={}", self.spec.e1(), self.spec.e2());
        for c in &self.channels {
            s += &format!(
                "; bath {} gamma={} beta={} Gamma={} Gamma_minus={}",
                c.jumps.bath.label(),
                self.coupling.gamma(c.jumps.bath),
                self.baths.beta(c.jumps.bath),
                c.down,
                c.up
            );
        }
        s
    }
}

impl FridgeDynamics for LindbladGenerator {
    fn model(&self) -> ModelKind {
        ModelKind::Bosonic
    }

    fn spec(&self) -> &FridgeSpec {
        &self.spec
    }

    fn baths(&self) -> &BathTriple {
        &self.baths
    }

    fn bath_qubit(&self, bath: Bath) -> BathQubit {
        bath_qubit(&self.spec, &self.baths, bath)
    }

    /// Gain-loss balance `E_α (Γ_{-α} ⟨σ₋σ₊⟩ - Γ_α ⟨σ₊σ₋⟩)`, negated for the
    /// sink.
    fn energy_current(&self, bath: Bath, rho: &Operator) -> f64 {
        let c = self.channel(bath);
        let flow = c.energy * (c.up * c.lower_levels.expectation(rho) - c.down * c.upper_levels.expectation(rho));
        if bath == Bath::Sink {
            -flow
        } else {
            flow
        }
    }

    /// The rate equations are those of the collision model with
    /// `p_α = Γ_α / r_α`, up to an overall factor of two.
    fn closed_form_populations(&self) -> Option<[f64; 4]> {
        let p = Bath::ALL.map(|bath| self.channel(bath).down / self.bath_qubit(bath).r);
        let rates = CouplingRates::new(p[0], p[1], p[2]).ok()?;
        Some(closed_form(&self.spec, &self.baths, &rates).populations)
    }
}

/// `dρ/dt` of the Lindblad equation.
pub fn lindblad_rhs(gen: &LindbladGenerator, rho: &Operator) -> Operator {
    gen.rhs(rho)
}

/// Stationary state of the bosonic model with heat currents.
pub fn steady_state_bosonic(gen: &LindbladGenerator) -> Result<SteadyStateReport> {
    generator::steady_state(gen)
}

/// Coupling constants for which `Γ_α = p_α r_α`, so that the stationary
/// state coincides with the collision model's.
pub fn equivalence_map(rates: &CouplingRates, baths: &BathTriple, spec: &FridgeSpec) -> BosonicCoupling {
    let gamma = Bath::ALL.map(|bath| {
        let q = bath_qubit(spec, baths, bath);
        let e = q.energy;
        rates.get(bath) * q.r / (e * e * e * (1.0 + thermal_occupation(e, q.beta)))
    });
    BosonicCoupling { gamma }
}
