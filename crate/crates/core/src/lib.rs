//! Numerics for a two-qubit quantum absorption refrigerator whose baths couple
//! to joint transitions of the machine while the qubit being cooled couples
//! directly to the cold bath.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It covers:
//!
//! * [`op`]: dense complex operators, density operators, tensor products,
//!   partial traces and unitary evolution for Hilbert spaces of dimension ≤ 8.
//! * [`model`]: the static design of the fridge (bath populations, the four
//!   stroke cycle, virtual temperature, efficiency and Carnot bound).
//! * [`collision`]: the collision-model master equation built from
//!   time-averaged swap maps, its steady state and heat currents.
//! * [`bosonic`]: the weak-coupling Lindblad equation with bosonic baths and
//!   the rate substitution that makes both models share a steady state.
//! * [`qutrit`]: the three-level reference fridge used for benchmarking.
//! * [`integrate`]: fixed-step RK4 integration of any [`Generator`].
//! * [`search`] and [`performance`]: root finding, golden-section search and
//!   the optimisation of the second qubit's gap.
//!
//! Units are natural: ħ = k_B = 1. The two-qubit basis is always ordered
//! `|00⟩, |10⟩, |01⟩, |11⟩` with the first label belonging to qubit 1
//! (see [`op::FRIDGE_BASIS`]).
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x < tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bosonic;
pub mod collision;
pub mod eigen;
mod error;
pub mod generator;
pub mod integrate;
pub mod linalg;
pub mod model;
pub mod op;
pub mod performance;
pub mod qutrit;
pub mod search;
pub mod superop;

pub use error::{Error, Result};
pub use generator::{Generator, SteadyStateReport};
pub use num_complex::Complex64 as C64;
