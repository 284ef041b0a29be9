#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermoq_core::collision::CouplingRates;
use thermoq_core::model::{BathTriple, FridgeSpec};
use thermoq_core::op::{DensityOperator, Operator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn case_study(e2: f64, t_h: f64) -> (FridgeSpec, BathTriple, CouplingRates) {
    (
        FridgeSpec::new(1.0, e2).unwrap(),
        BathTriple::new(1.0, 1.1, t_h).unwrap(),
        CouplingRates::uniform(1.0).unwrap(),
    )
}

#[derive(Clone, Copy, Debug)]
pub struct Draw {
    pub spec: FridgeSpec,
    pub baths: BathTriple,
    pub rates: CouplingRates,
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Parameters spread over cooling and heating regimes with ordered baths.
pub fn random_draw(rng: &mut impl Rng) -> Draw {
    let e1 = rng.random_range(0.5..2.0);
    let e2 = e1 * (1.0 + log_uniform(rng, 0.02, 8.0));
    let t_c = rng.random_range(0.5..2.0);
    let t_r = t_c * rng.random_range(1.0..2.0);
    let t_h = t_r * log_uniform(rng, 1.0, 200.0);
    Draw {
        spec: FridgeSpec::new(e1, e2).unwrap(),
        baths: BathTriple::new(t_c, t_r, t_h).unwrap(),
        rates: CouplingRates::new(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0))
            .unwrap(),
    }
}

pub fn random_draws(seed: u64, n: usize) -> Vec<Draw> {
    let mut rng = rng(seed);
    (0..n).map(|_| random_draw(&mut rng)).collect()
}

/// `A A† / Tr(A A†)` for a matrix of uniform complex entries.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let a = Operator::from_fn(dim, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = a.matmul(&a.adjoint());
    let tr = m.trace();
    DensityOperator::new(m.scale(C64::ONE / tr).hermitian_part()).unwrap()
}

pub fn max_entry_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
