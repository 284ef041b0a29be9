//! Gaussian elimination helpers: null spaces of complex matrices and
//! stationary distributions of continuous-time Markov generators.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Basis of the null space of the row-major `rows × cols` matrix `a`.
///
/// Reduces `a` to reduced row-echelon form with partial pivoting; a column
/// whose best pivot is below `rel_tol · max|a|` is treated as free.
pub fn null_space(a: &[C64], rows: usize, cols: usize, rel_tol: f64) -> Vec<Vec<C64>> {
    assert_eq!(a.len(), rows * cols, "matrix shape mismatch");
    let mut m = a.to_vec();
    let scale = m.iter().fold(0.0f64, |s, z| s.max(z.norm()));
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);

    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, mag) = (row..rows)
            .map(|r| (r, m[r * cols + col].norm()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            continue;
        }
        if best != row {
            for c in 0..cols {
                m.swap(best * cols + c, row * cols + c);
            }
        }
        let inv = C64::ONE / m[row * cols + col];
        for c in 0..cols {
            m[row * cols + c] *= inv;
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let factor = m[r * cols + col];
            if factor == C64::ZERO {
                continue;
            }
            for c in 0..cols {
                let v = m[row * cols + c];
                m[r * cols + c] -= factor * v;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![C64::ZERO; cols];
            x[f] = C64::ONE;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = -m[r * cols + f];
            }
            x
        })
        .collect()
}

/// Solves the real square system `a x = b` by partial-pivot elimination.
pub fn solve(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    if a.len() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: a.len() });
    }
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))
            .unwrap_or(col);
        if m[pivot * n + col] == 0.0 {
            return Err(Error::SearchFailed("singular linear system".into()));
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            x.swap(pivot, col);
        }
        for r in col + 1..n {
            let factor = m[r * n + col] / m[col * n + col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] -= factor * m[col * n + c];
            }
            x[r] -= factor * x[col];
        }
    }
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| m[r * n + c] * x[c]).sum();
        x[r] = (x[r] - tail) / m[r * n + r];
    }
    Ok(x)
}

/// Solves the complex square system `a x = b` by partial-pivot elimination.
/// `None` when a pivot falls below `rel_tol · max|a|`.
pub fn solve_complex(a: &[C64], b: &[C64], rel_tol: f64) -> Option<Vec<C64>> {
    let n = b.len();
    assert_eq!(a.len(), n * n, "matrix shape mismatch");
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let tol = rel_tol * m.iter().fold(0.0f64, |s, z| s.max(z.norm()));
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm()))?;
        if !(m[pivot * n + col].norm() > tol) {
            return None;
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            x.swap(pivot, col);
        }
        let inv = C64::ONE / m[col * n + col];
        for r in col + 1..n {
            let factor = m[r * n + col] * inv;
            if factor == C64::ZERO {
                continue;
            }
            for c in col..n {
                let v = m[col * n + c];
                m[r * n + c] -= factor * v;
            }
            let v = x[col];
            x[r] -= factor * v;
        }
    }
    for r in (0..n).rev() {
        let tail: C64 = (r + 1..n).map(|c| m[r * n + c] * x[c]).sum();
        x[r] = (x[r] - tail) / m[r * n + r];
    }
    Some(x)
}

/// Stationary distribution of a Markov generator.
///
/// `rates[i * n + j]` is the transition rate from state `j` to state `i`
/// (`i ≠ j`); the diagonal is ignored and rebuilt from the column sums.
pub fn stationary_distribution(rates: &[f64], n: usize) -> Result<Vec<f64>> {
    if rates.len() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: rates.len() });
    }
    let mut generator = rates.to_vec();
    for j in 0..n {
        generator[j * n + j] = 0.0;
        let out: f64 = (0..n).map(|i| generator[i * n + j]).sum();
        generator[j * n + j] = -out;
    }
    // replace the last balance equation by normalisation
    for j in 0..n {
        generator[(n - 1) * n + j] = 1.0;
    }
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    solve(&generator, &rhs)
}
