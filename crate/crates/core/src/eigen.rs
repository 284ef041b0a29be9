//! Eigendecomposition of small complex Hermitian matrices by cyclic Jacobi
//! rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the classical real Jacobi rotation, so the accumulated transform stays
//! unitary. Matrices here are at most 16×16 and converge in a handful of
//! sweeps.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::op::Operator;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: Operator,
}

impl HermitianEigen {
    /// Decomposes the Hermitian part of `a`.
    pub fn new(a: &Operator) -> Self {
        let n = a.dim();
        let mut m = a.hermitian_part();
        let mut v = Operator::identity(n);
        let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&m) <= 1e-16 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
        let values = order.iter().map(|&i| m[(i, i)].re).collect();
        let vectors = Operator::from_fn(n, |row, k| v[(row, order[k])]);
        Self { values, vectors }
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim()).map(|row| self.vectors[(row, k)]).collect()
    }

    /// `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> Operator {
        let n = self.vectors.dim();
        let weights: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        Operator::from_fn(n, |i, j| {
            (0..n).map(|k| self.vectors[(i, k)] * weights[k] * self.vectors[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> Operator {
        self.map(|l| C64::new(l, 0.0))
    }

    /// Orthogonal projectors onto the eigenspaces, merging eigenvalues closer
    /// than `tol`. Returned with their (mean) eigenvalue, ascending.
    pub fn spectral_projectors(&self, tol: f64) -> Vec<(f64, Operator)> {
        let n = self.values.len();
        let mut out: Vec<(f64, Operator)> = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && self.values[end] - self.values[end - 1] <= tol {
                end += 1;
            }
            let mut proj = Operator::zeros(n);
            for k in start..end {
                proj += &Operator::outer(&self.eigenvector(k));
            }
            let mean = self.values[start..end].iter().sum::<f64>() / (end - start) as f64;
            out.push((mean, proj));
            start = end;
        }
        out
    }
}

fn off_diagonal_norm(m: &Operator) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

fn rotate(m: &mut Operator, v: &mut Operator, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) block.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * -s;
    let g_qq = phase.conj() * c;

    let n = m.dim();
    for k in 0..n {
        let (x, y) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = x * g_pp + y * g_qp;
        m[(k, q)] = x * g_pq + y * g_qq;
    }
    for k in 0..n {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        m[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    m[(p, q)] = C64::ZERO;
    m[(q, p)] = C64::ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}
