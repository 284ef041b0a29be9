//! Cooling power as a function of the design parameters.

use alloc::vec::Vec;

use crate::collision::{steady_state, CollisionGenerator, CouplingRates};
use crate::error::Result;
use crate::model::{BathTriple, FridgeSpec};
use crate::search::{self, Extremum};

/// Upper end of the default `E2` bracket.
pub const E2_BRACKET_MAX: f64 = 12.0;
/// Width of the final golden-section bracket.
pub const E2_XTOL: f64 = 1e-6;
/// Points of the coarse grid that brackets the maximum.
pub const COARSE_POINTS: usize = 64;

/// Stationary cold current of the collision fridge.
pub fn cold_current(spec: &FridgeSpec, baths: &BathTriple, rates: &CouplingRates) -> Result<f64> {
    Ok(steady_state(&CollisionGenerator::fridge(spec, baths, rates)?)?.q_c)
}

/// `Q_c` as a function of `E2`; points that fail are `-∞` so that a search
/// never selects them.
pub fn cold_current_vs_e2(e1: f64, baths: &BathTriple, rates: &CouplingRates) -> impl Fn(f64) -> f64 {
    let (baths, rates) = (*baths, *rates);
    move |e2| {
        FridgeSpec::new(e1, e2)
            .and_then(|spec| cold_current(&spec, &baths, &rates))
            .unwrap_or(f64::NEG_INFINITY)
    }
}

/// Default bracket `(E1, E2_BRACKET_MAX]`, opened slightly at the left end.
pub fn default_bracket(e1: f64) -> (f64, f64) {
    (e1 * (1.0 + 1e-6), E2_BRACKET_MAX.max(2.0 * e1))
}

/// `E2` that maximises `Q_c` inside `(lo, hi)`; fails when the maximum of
/// the coarse grid sits on the bracket edge.
pub fn optimal_e2(e1: f64, baths: &BathTriple, rates: &CouplingRates, lo: f64, hi: f64) -> Result<Extremum> {
    search::interior_max(cold_current_vs_e2(e1, baths, rates), lo, hi, COARSE_POINTS, E2_XTOL)
}

/// `(T_h, E2^opt)` over a grid of hot temperatures.
pub fn optimal_e2_scan(e1: f64, t_c: f64, t_r: f64, t_h: &[f64], rates: &CouplingRates) -> Vec<(f64, Result<Extremum>)> {
    let (lo, hi) = default_bracket(e1);
    t_h.iter()
        .map(|&th| (th, BathTriple::new(t_c, t_r, th).and_then(|baths| optimal_e2(e1, &baths, rates, lo, hi))))
        .collect()
}
