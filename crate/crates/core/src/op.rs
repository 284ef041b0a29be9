//! Dense complex operators and density operators on small Hilbert spaces.
//!
//! Matrices are stored row-major. Nothing here is sparse: the largest space
//! touched by the fridge is the machine plus one bath qubit (dimension 8).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64 as C64;

use crate::eigen::HermitianEigen;
use crate::error::{Error, Result};

/// Tolerance for Hermiticity checks, entrywise on `A - A†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `|Tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue a density operator may carry.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Labels of the two-qubit product basis in storage order. First label is
/// qubit 1 (the cooled qubit), so index = q1 + 2·q2.
pub const FRIDGE_BASIS: [&str; 4] = ["|00>", "|10>", "|01>", "|11>"];
/// Level labels of the three-level reference fridge.
pub const QUTRIT_BASIS: [&str; 3] = ["|0>", "|1>", "|2>"];

/// Index of a two-qubit basis state in [`FRIDGE_BASIS`] order.
#[inline]
pub const fn fridge_index(q1: usize, q2: usize) -> usize {
    q1 + 2 * q2
}

#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self { dim, data: vec![C64::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = C64::ONE;
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] = f(i, j);
            }
        }
        out
    }

    /// Builds an operator from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Self {
        let mut out = Self::zeros(diagonal.len());
        for (i, &d) in diagonal.iter().enumerate() {
            out[(i, i)] = C64::new(d, 0.0);
        }
        out
    }

    /// `|i⟩⟨j|` on a space of dimension `dim`.
    pub fn ket_bra(dim: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zeros(dim);
        out[(i, j)] = C64::ONE;
        out
    }

    pub fn projector(dim: usize, i: usize) -> Self {
        Self::ket_bra(dim, i, i)
    }

    /// Rank-one operator `|v⟩⟨v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Real parts of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    /// `max |A - A†|` entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(())
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    worst = worst.max(self[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// `Re Tr[A ρ]`.
    pub fn expectation(&self, rho: &Self) -> f64 {
        assert_eq!(self.dim, rho.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = C64::ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * rho.data[k * n + i];
            }
        }
        acc.re
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&Operator> for Operator {
    fn sub_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<C64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: C64) -> Operator {
        self.scale(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Kronecker product `a ⊗ b`; `a`'s index is the slow one.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    let (m, n) = (a.dim, b.dim);
    let mut out = Operator::zeros(m * n);
    for i1 in 0..m {
        for j1 in 0..m {
            let x = a[(i1, j1)];
            if x == C64::ZERO {
                continue;
            }
            for i2 in 0..n {
                for j2 in 0..n {
                    out[(i1 * n + i2, j1 * n + j2)] = x * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Two-qubit operator `q1 ⊗ q2` laid out in [`FRIDGE_BASIS`] order.
///
/// Qubit 1 is the fast index, so this is the Kronecker product with the
/// factors swapped.
pub fn two_qubit(q1: &Operator, q2: &Operator) -> Operator {
    assert!(q1.dim == 2 && q2.dim == 2, "two_qubit expects 2x2 factors");
    tensor(q2, q1)
}

fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

/// Partial trace over every factor not listed in `keep`.
///
/// `dims` lists the factor dimensions with the first factor slowest (the
/// [`tensor`] convention). `keep` must be a non-empty, strictly increasing
/// list of factor positions.
pub fn partial_trace(op: &Operator, dims: &[usize], keep: &[usize]) -> Result<Operator> {
    let total: usize = dims.iter().product();
    if total != op.dim {
        return Err(Error::DimensionMismatch { expected: total, found: op.dim });
    }
    if keep.is_empty() {
        return Err(Error::InvalidSubsystems("no subsystem kept"));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidSubsystems("keep must be increasing and in range"));
    }
    let kept: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept.iter().product();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();

    let compose = |d: &[usize], sel: &[usize]| -> usize {
        sel.iter().fold(0, |acc, &k| acc * dims[k] + d[k])
    };

    let mut out = Operator::zeros(out_dim);
    let mut row = vec![0; dims.len()];
    let mut col = vec![0; dims.len()];
    for r in 0..total {
        digits(r, dims, &mut row);
        for c in 0..total {
            digits(c, dims, &mut col);
            if traced.iter().all(|&k| row[k] == col[k]) {
                out[(compose(&row, keep), compose(&col, keep))] += op[(r, c)];
            }
        }
    }
    Ok(out)
}

/// `exp(-i H t)` from the eigendecomposition of Hermitian `h`.
pub fn unitary(h: &Operator, t: f64) -> Result<Operator> {
    h.ensure_hermitian()?;
    let eig = HermitianEigen::new(h);
    Ok(eig.map(|lambda| {
        let phase = -lambda * t;
        C64::new(libm::cos(phase), libm::sin(phase))
    }))
}

/// `U ρ U†` with `U = exp(-i H t)`.
pub fn evolve_unitary(rho: &DensityOperator, h: &Operator, t: f64) -> Result<DensityOperator> {
    if h.dim != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: h.dim });
    }
    let u = unitary(h, t)?;
    Ok(DensityOperator::new_unchecked(rho.operator().conjugate_by(&u)))
}

/// Trace distance `½ Σ |λ_i(A - B)|` between Hermitian operators.
pub fn trace_distance(a: &Operator, b: &Operator) -> f64 {
    let diff = (a - b).hermitian_part();
    0.5 * HermitianEigen::new(&diff).values.iter().map(|v| v.abs()).sum::<f64>()
}

/// Checks the density-operator invariants with the given positivity tolerance.
pub fn validate_density(op: &Operator, positivity_tol: f64) -> Result<()> {
    let trace = op.trace();
    if (trace - C64::ONE).norm() > TRACE_TOL {
        return Err(Error::TraceNotUnit { trace: trace.re });
    }
    op.ensure_hermitian()?;
    let min_eigenvalue = min_eigenvalue(op);
    if min_eigenvalue < -positivity_tol {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

fn min_eigenvalue(op: &Operator) -> f64 {
    HermitianEigen::new(&op.hermitian_part()).values[0]
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, PartialEq)]
pub struct DensityOperator(Operator);

impl DensityOperator {
    pub fn new(op: Operator) -> Result<Self> {
        Self::with_positivity_tolerance(op, POSITIVITY_TOL)
    }

    pub fn with_positivity_tolerance(op: Operator, tol: f64) -> Result<Self> {
        validate_density(&op, tol)?;
        Ok(Self(op))
    }

    pub(crate) fn new_unchecked(op: Operator) -> Self {
        Self(op)
    }

    /// Diagonal state with the given populations.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        Self::new(Operator::from_real_diagonal(populations))
    }

    pub fn basis_state(dim: usize, i: usize) -> Self {
        Self(Operator::projector(dim, i))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(&Operator::identity(dim) * (1.0 / dim as f64))
    }

    /// `exp(-β H) / Z` for Hermitian `h`.
    pub fn gibbs(h: &Operator, beta: f64) -> Result<Self> {
        h.ensure_hermitian()?;
        let eig = HermitianEigen::new(h);
        let ground = eig.values[0];
        let z: f64 = eig.values.iter().map(|e| libm::exp(-beta * (e - ground))).sum();
        let rho = eig.map(|e| C64::new(libm::exp(-beta * (e - ground)) / z, 0.0));
        Ok(Self(rho.hermitian_part()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    #[inline]
    pub fn operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn populations(&self) -> Vec<f64> {
        self.0.diagonal()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.0)
    }

    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        partial_trace(&self.0, dims, keep).map(Self)
    }

    pub fn trace_distance(&self, other: &Self) -> f64 {
        trace_distance(&self.0, &other.0)
    }
}

impl fmt::Debug for DensityOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityOperator{:?}", self.0)
    }
}

impl AsRef<Operator> for DensityOperator {
    fn as_ref(&self) -> &Operator {
        &self.0
    }
}
