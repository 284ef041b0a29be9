//! Collision-model dynamics.
//!
//! Each bath is a stream of thermal qubits. A bath qubit that hits the
//! machine undergoes an energy-conserving swap with one transition (or, for
//! the cold bath, with qubit 1 as a whole). The interaction time is uniformly
//! uncertain over one swap period, so its effect is the time-averaged channel
//!
//! ```text
//! Ω_j(ρ) = Tr_j[ (g/2π) ∫₀^{2π/g} e^{-iH_j t} (ρ ⊗ τ_j) e^{iH_j t} dt ]
//! ```
//!
//! and collisions at rate `p_j` give the master equation
//! `dρ/dt = i[ρ, H0] + Σ_j p_j (Ω_j(ρ) - ρ)`.
//!
//! The coupled transitions of one bath never share a lower or an upper level,
//! so the spectrum of every `H_j` is `{-g, 0, g}`, all Bohr frequencies are
//! integer multiples of `g` and the average over a full period is exactly
//! the projection onto the eigenspaces of `H_j`. That is how Ω_j is
//! evaluated here, which makes it independent of `g` by construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::generator::{self, FridgeDynamics, Generator, ModelKind, SteadyStateReport, STATIONARY_TOL};
use crate::model::{bath_qubit, Bath, BathQubit, BathTriple, FridgeSpec};
use crate::op::{fridge_index, DensityOperator, Operator};
use crate::superop::Superoperator;

/// Swap strength used when none is given; results do not depend on it.
pub const DEFAULT_STRENGTH: f64 = 1.0;
const RESONANCE_TOL: f64 = 1e-12;

/// Collision rates per unit time for the three baths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingRates {
    cold: f64,
    sink: f64,
    hot: f64,
}

impl CouplingRates {
    pub fn new(p_c: f64, p_r: f64, p_h: f64) -> Result<Self> {
        for (name, p) in [("p_c", p_c), ("p_r", p_r), ("p_h", p_h)] {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("{name} must be positive and finite, got {p}"),
                });
            }
        }
        Ok(Self { cold: p_c, sink: p_r, hot: p_h })
    }

    pub fn uniform(p: f64) -> Result<Self> {
        Self::new(p, p, p)
    }

    pub fn get(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Cold => self.cold,
            Bath::Sink => self.sink,
            Bath::Hot => self.hot,
        }
    }

    /// Copy with one rate multiplied by `factor`.
    pub fn scaled(&self, bath: Bath, factor: f64) -> Result<Self> {
        let mut p = [self.cold, self.sink, self.hot];
        p[bath as usize] *= factor;
        Self::new(p[0], p[1], p[2])
    }

    pub fn min(&self) -> f64 {
        self.cold.min(self.sink).min(self.hot)
    }

    pub fn max(&self) -> f64 {
        self.cold.max(self.sink).max(self.hot)
    }
}

/// A machine transition `lower ↔ upper` (indices into the level list).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
}

impl Transition {
    pub const fn new(lower: usize, upper: usize) -> Self {
        Self { lower, upper }
    }
}

/// Transitions of the two-qubit fridge that `bath` drives.
pub fn fridge_transitions(bath: Bath) -> Vec<Transition> {
    match bath {
        Bath::Cold => vec![
            Transition::new(fridge_index(0, 0), fridge_index(1, 0)),
            Transition::new(fridge_index(0, 1), fridge_index(1, 1)),
        ],
        Bath::Sink => vec![Transition::new(fridge_index(0, 0), fridge_index(1, 1))],
        Bath::Hot => vec![Transition::new(fridge_index(1, 0), fridge_index(0, 1))],
    }
}

/// How one bath couples to the machine.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionSpec {
    bath: Bath,
    levels: Vec<f64>,
    transitions: Vec<Transition>,
    energy: f64,
    strength: f64,
}

impl InteractionSpec {
    /// Checks that every transition is resonant with the bath qubit energy.
    pub fn new(bath: Bath, levels: &[f64], transitions: Vec<Transition>, energy: f64, strength: f64) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::InvalidParameter { name: "transitions", reason: "no transition coupled".into() });
        }
        if !strength.is_finite() {
            return Err(Error::InvalidParameter { name: "strength", reason: format!("non-finite strength {strength}") });
        }
        for t in &transitions {
            if t.lower >= levels.len() || t.upper >= levels.len() || t.lower == t.upper {
                return Err(Error::InvalidParameter {
                    name: "transitions",
                    reason: format!("bad transition {} -> {} for {} levels", t.lower, t.upper, levels.len()),
                });
            }
            if transitions.iter().filter(|o| o.lower == t.lower || o.upper == t.upper).count() > 1 {
                return Err(Error::InvalidParameter {
                    name: "transitions",
                    reason: format!("transitions sharing a lower or an upper level ({} -> {})", t.lower, t.upper),
                });
            }
            let gap = levels[t.upper] - levels[t.lower];
            if (gap - energy).abs() > RESONANCE_TOL * energy.abs().max(1.0) {
                return Err(Error::OffResonant { bath, gap, energy });
            }
        }
        Ok(Self { bath, levels: levels.to_vec(), transitions, energy, strength })
    }

    /// The coupling of `bath` to the two-qubit fridge.
    pub fn fridge(spec: &FridgeSpec, bath: Bath, strength: f64) -> Result<Self> {
        Self::new(bath, &spec.levels(), fridge_transitions(bath), spec.transition_energy(bath), strength)
    }

    pub fn bath(&self) -> Bath {
        self.bath
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Bath qubit gap.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn with_strength(&self, strength: f64) -> Self {
        Self { strength, ..self.clone() }
    }

    /// Dimension of the machine.
    pub fn system_dim(&self) -> usize {
        self.levels.len()
    }

    /// Projector onto the upper levels of the coupled transitions.
    pub fn upper_projector(&self) -> Operator {
        let mut p = Operator::zeros(self.system_dim());
        for t in &self.transitions {
            p[(t.upper, t.upper)] = C64::ONE;
        }
        p
    }
}

/// `H_j = g Σ (|lower⟩⟨upper| ⊗ |1⟩⟨0| + h.c.)` on machine ⊗ bath qubit.
pub fn interaction_hamiltonian(spec: &InteractionSpec) -> Operator {
    let mut h = Operator::zeros(2 * spec.system_dim());
    let g = C64::new(spec.strength, 0.0);
    for t in &spec.transitions {
        // |lower, 1⟩⟨upper, 0|
        let (a, b) = (2 * t.lower + 1, 2 * t.upper);
        h[(a, b)] = g;
        h[(b, a)] = g;
    }
    h
}

/// Spectral projectors of `H_j`, stored as their nonzero entries. Each
/// coupled pair `|l,1⟩, |u,0⟩` is a 2×2 block with eigenvalues `±g`;
/// everything else has eigenvalue 0.
#[derive(Clone, Debug)]
struct Dephasing {
    projectors: Vec<Vec<(usize, usize, f64)>>,
}

impl Dephasing {
    fn new(spec: &InteractionSpec) -> Self {
        let dim = 2 * spec.system_dim();
        if spec.strength == 0.0 {
            return Self { projectors: vec![(0..dim).map(|k| (k, k, 1.0)).collect()] };
        }
        let (mut plus, mut minus) = (vec![], vec![]);
        let mut coupled = vec![false; dim];
        for t in &spec.transitions {
            let (a, b) = (2 * t.lower + 1, 2 * t.upper);
            for (i, j) in [(a, a), (b, b), (a, b), (b, a)] {
                plus.push((i, j, 0.5));
                minus.push((i, j, if i == j { 0.5 } else { -0.5 }));
            }
            coupled[a] = true;
            coupled[b] = true;
        }
        let zero = (0..dim).filter(|&k| !coupled[k]).map(|k| (k, k, 1.0)).collect();
        Self { projectors: vec![plus, minus, zero] }
    }

    fn dense(&self, dim: usize) -> Vec<Operator> {
        self.projectors
            .iter()
            .map(|entries| {
                let mut p = Operator::zeros(dim);
                for &(i, j, v) in entries {
                    p[(i, j)] = C64::new(v, 0.0);
                }
                p
            })
            .collect()
    }

    /// `Tr_b Σ_k P_k (ρ ⊗ τ) P_k`, with the machine index slow.
    fn apply(&self, tau: &Operator, rho: &Operator) -> Operator {
        let mut out = Operator::zeros(rho.dim());
        for entries in &self.projectors {
            for &(r, m, v) in entries {
                for &(q, c, w) in entries {
                    if r % 2 == c % 2 {
                        out[(r / 2, c / 2)] += rho[(m / 2, q / 2)] * tau[(m % 2, q % 2)] * (v * w);
                    }
                }
            }
        }
        out
    }
}

/// Spectral projectors of `H_j` as dense operators on machine ⊗ qubit.
pub fn spectral_projectors(spec: &InteractionSpec) -> Vec<Operator> {
    Dephasing::new(spec).dense(2 * spec.system_dim())
}

/// Applies Ω_j to `rho` with bath-qubit state `tau`.
pub fn time_averaged_map(spec: &InteractionSpec, tau: &DensityOperator, rho: &DensityOperator) -> Result<DensityOperator> {
    if tau.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: tau.dim() });
    }
    if rho.dim() != spec.system_dim() {
        return Err(Error::DimensionMismatch { expected: spec.system_dim(), found: rho.dim() });
    }
    let out = Dephasing::new(spec).apply(tau.operator(), rho.operator());
    Ok(DensityOperator::new_unchecked(out))
}

/// Ω_j tabulated as a superoperator on the machine.
pub fn time_averaged_channel(spec: &InteractionSpec, qubit: &BathQubit) -> Superoperator {
    let dephasing = Dephasing::new(spec);
    let tau = qubit.state();
    Superoperator::from_map(spec.system_dim(), |x| dephasing.apply(&tau, x))
}

#[derive(Clone, Debug)]
pub struct CollisionCoupling {
    pub interaction: InteractionSpec,
    pub qubit: BathQubit,
    pub rate: f64,
    channel: Superoperator,
    upper: Operator,
}

impl CollisionCoupling {
    pub fn channel(&self) -> &Superoperator {
        &self.channel
    }
}

/// `dρ/dt = i[ρ, H0] + Σ_j p_j (Ω_j(ρ) - ρ)` for an arbitrary level scheme.
#[derive(Clone, Debug)]
pub struct CollisionGenerator {
    h0: Operator,
    couplings: Vec<CollisionCoupling>,
    liouvillian: Superoperator,
    fridge: Option<(FridgeSpec, BathTriple)>,
}

impl CollisionGenerator {
    /// `couplings` lists `(interaction, bath qubit, collision rate)`.
    pub fn new(levels: &[f64], couplings: Vec<(InteractionSpec, BathQubit, f64)>) -> Result<Self> {
        let n = levels.len();
        let mut built = Vec::with_capacity(couplings.len());
        for (interaction, qubit, rate) in couplings {
            if interaction.levels() != levels {
                return Err(Error::DimensionMismatch { expected: n, found: interaction.system_dim() });
            }
            if !(rate.is_finite() && rate > 0.0) {
                return Err(Error::InvalidParameter { name: "rate", reason: format!("collision rate must be positive, got {rate}") });
            }
            if (qubit.energy - interaction.energy()).abs() > RESONANCE_TOL * qubit.energy.abs().max(1.0) {
                return Err(Error::OffResonant { bath: interaction.bath(), gap: interaction.energy(), energy: qubit.energy });
            }
            let channel = time_averaged_channel(&interaction, &qubit);
            let upper = interaction.upper_projector();
            built.push(CollisionCoupling { interaction, qubit, rate, channel, upper });
        }
        let mut gen = Self {
            h0: Operator::from_real_diagonal(levels),
            couplings: built,
            liouvillian: Superoperator::zeros(n),
            fridge: None,
        };
        let mut liouvillian = Superoperator::from_map(n, |x| &(&x.matmul(&gen.h0) - &gen.h0.matmul(x)) * C64::I);
        for c in &gen.couplings {
            let mut kick = c.channel.clone();
            kick.add_assign(&Superoperator::identity(n).scaled(-1.0));
            liouvillian.add_assign(&kick.scaled(c.rate));
        }
        gen.liouvillian = liouvillian;
        Ok(gen)
    }

    /// The two-qubit fridge.
    pub fn fridge(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates) -> Result<Self> {
        let couplings = Bath::ALL
            .iter()
            .map(|&bath| {
                let interaction = InteractionSpec::fridge(spec, bath, DEFAULT_STRENGTH)?;
                Ok((interaction, bath_qubit(spec, baths, bath), rates.get(bath)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gen = Self::new(&spec.levels(), couplings)?;
        gen.fridge = Some((*spec, *baths));
        Ok(gen)
    }

    pub fn couplings(&self) -> &[CollisionCoupling] {
        &self.couplings
    }

    pub fn coupling(&self, bath: Bath) -> Option<&CollisionCoupling> {
        self.couplings.iter().find(|c| c.interaction.bath() == bath)
    }

    /// Fridge parameters, if this is the two-qubit fridge.
    pub fn fridge_parameters(&self) -> Option<(&FridgeSpec, &BathTriple)> {
        self.fridge.as_ref().map(|(s, b)| (s, b))
    }

    /// `p_j E_j Tr[(Ω_j(ρ) - ρ) Π_j]`, negated for the sink so that heat
    /// dumped into the sink counts as positive. Zero if `bath` is absent.
    pub fn current(&self, bath: Bath, rho: &Operator) -> f64 {
        let Some(c) = self.coupling(bath) else { return 0.0 };
        let gain = c.upper.expectation(&(&c.channel.apply(rho) - rho));
        let flow = c.rate * c.interaction.energy() * gain;
        if bath == Bath::Sink {
            -flow
        } else {
            flow
        }
    }

    /// [`current`](Self::current) after checking that `rho` is stationary.
    pub fn heat_current(&self, rho: &DensityOperator, bath: Bath) -> Result<f64> {
        let residual = self.rhs(rho.operator()).frobenius_norm();
        if !(residual < STATIONARY_TOL) {
            return Err(Error::NotStationary { residual });
        }
        Ok(self.current(bath, rho.operator()))
    }
}

impl Generator for CollisionGenerator {
    fn dim(&self) -> usize {
        self.h0.dim()
    }

    fn hamiltonian(&self) -> &Operator {
        &self.h0
    }

    fn rhs(&self, rho: &Operator) -> Operator {
        let mut out = &(&rho.matmul(&self.h0) - &self.h0.matmul(rho)) * C64::I;
        for c in &self.couplings {
            let kick = &c.channel.apply(rho) - rho;
            out += &(&kick * c.rate);
        }
        out
    }

    fn liouvillian(&self) -> &Superoperator {
        &self.liouvillian
    }

    fn population_rates(&self) -> Vec<f64> {
        let n = self.dim();
        let mut rates = vec![0.0; n * n];
        for c in &self.couplings {
            // half of the swaps complete on average
            let up = 0.5 * c.rate * c.qubit.rbar();
            let down = 0.5 * c.rate * c.qubit.r;
            for t in c.interaction.transitions() {
                rates[t.upper * n + t.lower] += up;
                rates[t.lower * n + t.upper] += down;
            }
        }
        rates
    }

    fn rate_range(&self) -> (f64, f64) {
        self.couplings.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), c| (lo.min(c.rate), hi.max(c.rate)))
    }

    fn describe(&self) -> String {
        let mut s = format!("collision model, levels {:?}", self.h0.diagonal());
        for c in &self.couplings {
            s += &format!(
                "; bath {} p={} E={} beta={} r={}",
                c.interaction.bath().label(),
                c.rate,
                c.qubit.energy,
                c.qubit.beta,
                c.qubit.r
            );
        }
        s
    }
}

struct FridgeView<'a> {
    gen: &'a CollisionGenerator,
    spec: FridgeSpec,
    baths: BathTriple,
}

impl Generator for FridgeView<'_> {
    fn dim(&self) -> usize {
        self.gen.dim()
    }
    fn hamiltonian(&self) -> &Operator {
        self.gen.hamiltonian()
    }
    fn rhs(&self, rho: &Operator) -> Operator {
        self.gen.rhs(rho)
    }
    fn liouvillian(&self) -> &Superoperator {
        self.gen.liouvillian()
    }
    fn population_rates(&self) -> Vec<f64> {
        self.gen.population_rates()
    }
    fn rate_range(&self) -> (f64, f64) {
        self.gen.rate_range()
    }
    fn describe(&self) -> String {
        self.gen.describe()
    }
}

impl FridgeDynamics for FridgeView<'_> {
    fn model(&self) -> ModelKind {
        ModelKind::Collision
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
    fn energy_current(&self, bath: Bath, rho: &Operator) -> f64 {
        self.gen.current(bath, rho)
    }
    fn closed_form_populations(&self) -> Option<[f64; 4]> {
        let rates = CouplingRates::new(
            self.gen.coupling(Bath::Cold)?.rate,
            self.gen.coupling(Bath::Sink)?.rate,
            self.gen.coupling(Bath::Hot)?.rate,
        )
        .ok()?;
        Some(closed_form(&self.spec, &self.baths, &rates).populations)
    }
}

/// `dρ/dt` of the collision master equation.
pub fn master_rhs(gen: &CollisionGenerator, rho: &DensityOperator) -> Operator {
    gen.rhs(rho.operator())
}

/// Steady state of the two-qubit collision fridge with heat currents.
pub fn steady_state(gen: &CollisionGenerator) -> Result<SteadyStateReport> {
    let (spec, baths) = gen.fridge.ok_or(Error::InvalidParameter {
        name: "generator",
        reason: "steady_state needs the two-qubit fridge".into(),
    })?;
    generator::steady_state(&FridgeView { gen, spec, baths })
}

/// Closed-form stationary solution of the collision fridge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForm {
    /// Populations of `|00⟩, |10⟩, |01⟩, |11⟩`.
    pub populations: [f64; 4],
    /// Normalisation `D`.
    pub normalization: f64,
    /// `r̄_c² r_r r̄_h - r_c² r̄_r r_h`; positive iff the fridge cools.
    pub cooling_numerator: f64,
    /// Ground population of qubit 1, `r_c + 2 N / (p_c D)`.
    pub r1: f64,
    /// Cold current `E1 N / D`.
    pub q_c: f64,
}

/// Stationary populations from the four-level rate equations, solved in
/// closed form.
pub fn closed_form(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates) -> ClosedForm {
    let rc = bath_qubit(spec, baths, Bath::Cold).r;
    let rr = bath_qubit(spec, baths, Bath::Sink).r;
    let rh = bath_qubit(spec, baths, Bath::Hot).r;
    let (bc, br, bh) = (1.0 - rc, 1.0 - rr, 1.0 - rh);
    let (pc, pr, ph) = (rates.get(Bath::Cold), rates.get(Bath::Sink), rates.get(Bath::Hot));

    let via_sink_hot_lower = rc * rh / pr + bc * rr / ph;
    let via_sink_hot_upper = bc * bh / pr + rc * br / ph;
    let sink_pair = (rc * rh + bc * bh) / pc;
    let hot_pair = (rc * br + bc * rr) / pc;
    let populations = [
        rc * via_sink_hot_lower + rr * sink_pair,
        bc * via_sink_hot_lower + rh * hot_pair,
        rc * via_sink_hot_upper + bh * hot_pair,
        bc * via_sink_hot_upper + br * sink_pair,
    ];
    let d = (1.0 / pc + 1.0 / pr) * (rc * rh + bc * bh) + (1.0 / pc + 1.0 / ph) * (rc * br + bc * rr);
    let n = bc * bc * rr * bh - rc * rc * br * rh;
    ClosedForm {
        populations: populations.map(|p| p / d),
        normalization: d,
        cooling_numerator: n,
        r1: rc + 2.0 * n / (pc * d),
        q_c: spec.e1() * n / d,
    }
}

/// Cold current in the limit `T_h → ∞` (hot qubits maximally mixed).
pub fn q_c_hot_limit(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates) -> f64 {
    let rc = bath_qubit(spec, baths, Bath::Cold).r;
    let rr = bath_qubit(spec, baths, Bath::Sink).r;
    let (bc, br) = (1.0 - rc, 1.0 - rr);
    let (pc, pr, ph) = (rates.get(Bath::Cold), rates.get(Bath::Sink), rates.get(Bath::Hot));
    let denom = 0.5 * (1.0 / pc + 1.0 / pr) + (1.0 / pc + 1.0 / ph) * (rc * br + bc * rr);
    spec.e1() * (bc * bc * rr - rc * rc * br) / (2.0 * denom)
}
