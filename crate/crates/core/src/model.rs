//! Static design of the fridge: parameters, bath qubits, the four-stroke
//! cooling cycle, the virtual temperature and the efficiency bounds.
//!
//! Nothing in this module needs the dynamics.

use alloc::format;

use crate::error::{Error, Result};
use crate::op::Operator;
use crate::search;

/// Shared tolerance for deciding strict cooling at the Carnot boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bath {
    Cold,
    Sink,
    Hot,
}

impl Bath {
    pub const ALL: [Bath; 3] = [Bath::Cold, Bath::Sink, Bath::Hot];

    pub fn label(self) -> &'static str {
        match self {
            Bath::Cold => "c",
            Bath::Sink => "r",
            Bath::Hot => "h",
        }
    }
}

/// Gaps of the two machine qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FridgeSpec {
    e1: f64,
    e2: f64,
}

impl FridgeSpec {
    pub fn new(e1: f64, e2: f64) -> Result<Self> {
        if !(e1.is_finite() && e1 > 0.0) {
            return Err(invalid("E1", format!("E1 must be positive and finite, got {e1}")));
        }
        if !(e2.is_finite() && e2 > e1) {
            return Err(invalid("E2", format!("E2 must exceed E1 (E1 = {e1}, E2 = {e2})")));
        }
        Ok(Self { e1, e2 })
    }

    #[inline]
    pub fn e1(&self) -> f64 {
        self.e1
    }

    #[inline]
    pub fn e2(&self) -> f64 {
        self.e2
    }

    /// Energy quantum exchanged with `bath`.
    pub fn transition_energy(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Cold => self.e1,
            Bath::Sink => self.e1 + self.e2,
            Bath::Hot => self.e2 - self.e1,
        }
    }

    /// Level energies in fridge basis order: `0, E1, E2, E1 + E2`.
    pub fn levels(&self) -> [f64; 4] {
        [0.0, self.e1, self.e2, self.e1 + self.e2]
    }

    /// Free Hamiltonian `E1 |1⟩⟨1| ⊗ I + E2 I ⊗ |1⟩⟨1|`.
    pub fn hamiltonian(&self) -> Operator {
        Operator::from_real_diagonal(&self.levels())
    }
}

/// Temperatures of the cold, sink ("room") and hot reservoirs.
///
/// Requires `0 < T_c ≤ T_r ≤ T_h`. `T_r = T_h` is admitted so that the
/// single-temperature equilibrium can be represented.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathTriple {
    t_c: f64,
    t_r: f64,
    t_h: f64,
}

impl BathTriple {
    pub fn new(t_c: f64, t_r: f64, t_h: f64) -> Result<Self> {
        for (name, t) in [("T_c", t_c), ("T_r", t_r), ("T_h", t_h)] {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid(name, format!("{name} must be positive and finite, got {t}")));
            }
        }
        if t_c > t_r {
            return Err(invalid("T_c", format!("T_c must not exceed T_r ({t_c} > {t_r})")));
        }
        if t_r > t_h {
            return Err(invalid("T_h", format!("T_h must not be below T_r ({t_h} < {t_r})")));
        }
        Ok(Self { t_c, t_r, t_h })
    }

    /// All three reservoirs at `t`.
    pub fn equilibrium(t: f64) -> Result<Self> {
        Self::new(t, t, t)
    }

    pub fn temperature(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Cold => self.t_c,
            Bath::Sink => self.t_r,
            Bath::Hot => self.t_h,
        }
    }

    pub fn beta(&self, bath: Bath) -> f64 {
        1.0 / self.temperature(bath)
    }

    pub fn t_c(&self) -> f64 {
        self.t_c
    }

    pub fn t_r(&self) -> f64 {
        self.t_r
    }

    pub fn t_h(&self) -> f64 {
        self.t_h
    }
}

/// Thermal bath qubit: `τ = r |0⟩⟨0| + r̄ |1⟩⟨1|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathQubit {
    pub energy: f64,
    pub beta: f64,
    /// Ground-state population.
    pub r: f64,
}

impl BathQubit {
    #[inline]
    pub fn rbar(&self) -> f64 {
        1.0 - self.r
    }

    pub fn state(&self) -> Operator {
        Operator::from_real_diagonal(&[self.r, self.rbar()])
    }
}

/// Ground population `1 / (1 + e^{-βE})` of a bath qubit with gap `energy`
/// at inverse temperature `beta`.
pub fn bath_population(energy: f64, beta: f64) -> BathQubit {
    let r = 1.0 / (1.0 + libm::exp(-beta * energy));
    BathQubit { energy, beta, r }
}

/// The bath qubit that bath `bath` offers the fridge.
pub fn bath_qubit(spec: &FridgeSpec, baths: &BathTriple, bath: Bath) -> BathQubit {
    bath_population(spec.transition_energy(bath), baths.beta(bath))
}

/// One transition of the cooling cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stroke {
    pub from: usize,
    pub to: usize,
    pub bath: Bath,
    /// Energy absorbed by the fridge (negative when dumped).
    pub absorbed: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleLedger {
    pub strokes: [Stroke; 4],
    /// Heat drawn from the cold bath per cycle.
    pub q_c: f64,
    /// Heat drawn from the hot bath per cycle.
    pub q_h: f64,
    /// Heat dumped into the sink per cycle.
    pub q_r: f64,
}

/// The cycle `|00⟩ → |10⟩ → |01⟩ → |11⟩ → |00⟩` with per-stroke energies.
pub fn cycle_ledger(spec: &FridgeSpec) -> CycleLedger {
    let (e1, e2) = (spec.e1, spec.e2);
    let strokes = [
        Stroke { from: 0, to: 1, bath: Bath::Cold, absorbed: e1 },
        Stroke { from: 1, to: 2, bath: Bath::Hot, absorbed: e2 - e1 },
        Stroke { from: 2, to: 3, bath: Bath::Cold, absorbed: e1 },
        Stroke { from: 3, to: 0, bath: Bath::Sink, absorbed: -(e2 + e1) },
    ];
    let net = |bath: Bath| -> f64 {
        strokes.iter().filter(|s| s.bath == bath).map(|s| s.absorbed).sum()
    };
    CycleLedger { strokes, q_c: net(Bath::Cold), q_h: net(Bath::Hot), q_r: -net(Bath::Sink) }
}

/// Inverse virtual temperature of the cooled qubit,
/// `β_V = [β_r (E2 + E1) - β_h (E2 - E1)] / (2 E1)`.
pub fn virtual_beta(spec: &FridgeSpec, baths: &BathTriple) -> f64 {
    let (e1, e2) = (spec.e1, spec.e2);
    (baths.beta(Bath::Sink) * (e2 + e1) - baths.beta(Bath::Hot) * (e2 - e1)) / (2.0 * e1)
}

/// `T_V = 1/β_V`, or `None` when `β_V ≤ 0`.
pub fn virtual_temperature(spec: &FridgeSpec, baths: &BathTriple) -> Option<f64> {
    let beta = virtual_beta(spec, baths);
    (beta > 0.0).then(|| 1.0 / beta)
}

/// True iff `β_V > β_c`, strictly beyond [`BOUNDARY_TOL`].
pub fn cooling_predicate(spec: &FridgeSpec, baths: &BathTriple) -> bool {
    virtual_beta(spec, baths) - baths.beta(Bath::Cold) > BOUNDARY_TOL
}

/// Entropy produced in the reservoirs by one cooling cycle,
/// `ΔS = -2 β_c E1 - β_h (E2 - E1) + β_r (E2 + E1)`.
pub fn cycle_entropy(spec: &FridgeSpec, baths: &BathTriple) -> f64 {
    let (e1, e2) = (spec.e1, spec.e2);
    let ds = -2.0 * baths.beta(Bath::Cold) * e1 - baths.beta(Bath::Hot) * (e2 - e1)
        + baths.beta(Bath::Sink) * (e2 + e1);
    debug_assert!(
        (ds - 2.0 * e1 * (virtual_beta(spec, baths) - baths.beta(Bath::Cold))).abs()
            <= 1e-9 * (1.0 + ds.abs() + e2 * baths.beta(Bath::Sink))
    );
    ds
}

/// Whether a cycle-entropy value signals cooling, using the same boundary
/// tolerance as [`cooling_predicate`] (per unit of `2 E1`).
pub fn entropy_signals_cooling(spec: &FridgeSpec, entropy: f64) -> bool {
    entropy / (2.0 * spec.e1) > BOUNDARY_TOL
}

/// Coefficient of performance `η = 2 E1 / (E2 - E1)`.
pub fn efficiency(spec: &FridgeSpec) -> f64 {
    2.0 * spec.e1 / (spec.e2 - spec.e1)
}

/// The same efficiency written through the virtual temperature,
/// `(β_r - β_h) / (β_V - β_r)`; `None` when `β_r = β_h`.
pub fn efficiency_from_temperatures(spec: &FridgeSpec, baths: &BathTriple) -> Option<f64> {
    let (b_r, b_h) = (baths.beta(Bath::Sink), baths.beta(Bath::Hot));
    let denom = virtual_beta(spec, baths) - b_r;
    (b_r != b_h && denom != 0.0).then(|| (b_r - b_h) / denom)
}

/// Carnot coefficient of performance `(β_r - β_h) / (β_c - β_r)`.
/// `None` (unbounded) when `T_c = T_r`.
pub fn carnot_efficiency(baths: &BathTriple) -> Option<f64> {
    let (b_c, b_r, b_h) = (baths.beta(Bath::Cold), baths.beta(Bath::Sink), baths.beta(Bath::Hot));
    (b_c != b_r).then(|| (b_r - b_h) / (b_c - b_r))
}

/// Tolerance on `|β_V - β_c|` at the located Carnot point.
pub const CARNOT_TOL: f64 = 1e-10;

/// Second-qubit gap at which `β_V = β_c` (the reversible point), found by a
/// monotone root search in `E2 > E1`.
pub fn carnot_e2(e1: f64, baths: &BathTriple) -> Result<f64> {
    let (b_c, b_r, b_h) = (baths.beta(Bath::Cold), baths.beta(Bath::Sink), baths.beta(Bath::Hot));
    if !(b_r > b_h) {
        return Err(Error::SearchFailed(format!("no thermal gradient between sink and hot baths (T_r = T_h = {})", baths.t_h)));
    }
    if !(b_c > b_r) {
        return Err(Error::SearchFailed(format!("no Carnot point with E2 > E1: T_c = T_r = {}", baths.t_r)));
    }
    // β_V(E2) increases linearly from β_r at E2 = E1.
    let beta_v = |e2: f64| (b_r * (e2 + e1) - b_h * (e2 - e1)) / (2.0 * e1);
    let mut hi = 2.0 * e1;
    while beta_v(hi) <= b_c {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::SearchFailed("Carnot bracket diverged".into()));
        }
    }
    let root = search::bisect(|e2| beta_v(e2) - b_c, e1, hi, 0.0)?;
    let miss = (beta_v(root) - b_c).abs();
    if miss >= CARNOT_TOL {
        return Err(Error::SearchFailed(format!("Carnot root misses β_c by {miss:e}")));
    }
    Ok(root)
}

fn invalid(name: &'static str, reason: alloc::string::String) -> Error {
    Error::InvalidParameter { name, reason }
}
