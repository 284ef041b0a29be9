//! Linear maps on operators, stored as matrices acting on row-major `vec(ρ)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::op::{DensityOperator, Operator};

/// Relative pivot tolerance when ranking a generator.
pub const NULL_SPACE_TOL: f64 = 1e-11;
/// Relative pivot below which the trace-constrained stationary system is
/// singular, i.e. the stationary state is not unique.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    dim: usize,
    matrix: Vec<C64>,
}

impl Superoperator {
    pub fn zeros(dim: usize) -> Self {
        let n = dim * dim;
        Self { dim, matrix: vec![C64::ZERO; n * n] }
    }

    pub fn identity(dim: usize) -> Self {
        let n = dim * dim;
        let mut out = Self::zeros(dim);
        for k in 0..n {
            out.matrix[k * n + k] = C64::ONE;
        }
        out
    }

    /// Tabulates a linear map by applying it to every matrix unit `|i⟩⟨j|`.
    pub fn from_map(dim: usize, f: impl Fn(&Operator) -> Operator) -> Self {
        let n = dim * dim;
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let col = i * dim + j;
                let image = f(&Operator::ket_bra(dim, i, j));
                for (row, z) in image.as_slice().iter().enumerate() {
                    out.matrix[row * n + col] = *z;
                }
            }
        }
        out
    }

    /// Hilbert-space dimension the map acts on.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major `dim² × dim²` matrix.
    pub fn matrix(&self) -> &[C64] {
        &self.matrix
    }

    /// Matrix element between `vec` indices `(i·d + j)` pairs.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix[row * self.dim * self.dim + col]
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        assert_eq!(rho.dim(), self.dim, "dimension mismatch");
        let n = self.dim * self.dim;
        let x = rho.as_slice();
        let mut out = Vec::with_capacity(n);
        for row in 0..n {
            let line = &self.matrix[row * n..(row + 1) * n];
            out.push(line.iter().zip(x).map(|(a, b)| a * b).sum());
        }
        Operator::from_row_major(self.dim, out).expect("shape preserved")
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { dim: self.dim, matrix: self.matrix.iter().map(|z| z * s).collect() }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (a, b) in self.matrix.iter_mut().zip(&other.matrix) {
            *a += b;
        }
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`; positive semidefinite iff the
    /// map is completely positive.
    pub fn choi(&self) -> Operator {
        let d = self.dim;
        let mut out = Operator::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                let image = self.apply(&Operator::ket_bra(d, i, j));
                for a in 0..d {
                    for b in 0..d {
                        out[(i * d + a, j * d + b)] = image[(a, b)];
                    }
                }
            }
        }
        out
    }

    /// Unique unit-trace fixed point of the generator.
    ///
    /// `describe` is only called on failure, to attach the parameters that
    /// produced a degenerate generator.
    pub fn stationary_state(&self, describe: impl FnOnce() -> String) -> Result<DensityOperator> {
        let n = self.dim * self.dim;
        // Trace preservation makes the population rows sum to zero, so the
        // first one is redundant; replace it by Tr ρ = 1.
        let mut a = self.matrix.clone();
        for (k, entry) in a[..n].iter_mut().enumerate() {
            *entry = if k % (self.dim + 1) == 0 { C64::ONE } else { C64::ZERO };
        }
        let mut b = vec![C64::ZERO; n];
        b[0] = C64::ONE;
        let Some(x) = linalg::solve_complex(&a, &b, SINGULAR_TOL) else {
            let nullity = linalg::null_space(&self.matrix, n, n, NULL_SPACE_TOL).len();
            return Err(Error::DegenerateGenerator { nullity, dump: describe() });
        };
        let op = Operator::from_row_major(self.dim, x)?;
        let trace = op.trace();
        if trace.norm() < 1e-300 {
            return Err(Error::DegenerateGenerator { nullity: 1, dump: describe() });
        }
        let rho = op.scale(C64::ONE / trace).hermitian_part();
        DensityOperator::new(rho)
    }
}
