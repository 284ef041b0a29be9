//! Scalar root finding and maximisation.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `(√5 - 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points evenly spaced in `ln x`; both ends must be positive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(libm::log(lo), libm::log(hi), n).into_iter().map(libm::exp).collect()
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `xtol`.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::SearchFailed(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> Extremum {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut evaluations = 2;
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let (x, value) = if fc > fd { (c, fc) } else { (d, fd) };
    Extremum { x, value, evaluations }
}

/// Largest value of `f` on an `n`-point grid; returns the grid index too.
pub fn grid_argmax(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, n: usize) -> (usize, Extremum) {
    let grid = linspace(lo, hi, n);
    let mut best = (0, Extremum { x: lo, value: f64::NEG_INFINITY, evaluations: n });
    for (i, &x) in grid.iter().enumerate() {
        let v = f(x);
        if v > best.1.value {
            best = (i, Extremum { x, value: v, evaluations: n });
        }
    }
    best
}

/// Locates an interior maximum: a coarse grid brackets it, golden-section
/// refines it. Fails if the coarse maximum sits on either end.
pub fn interior_max(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    coarse: usize,
    xtol: f64,
) -> Result<Extremum> {
    let coarse = coarse.max(3);
    let (i, best) = grid_argmax(&mut f, lo, hi, coarse);
    if i == 0 || i == coarse - 1 {
        return Err(Error::NoInteriorMaximum { x: best.x, value: best.value });
    }
    let step = (hi - lo) / (coarse - 1) as f64;
    let mut refined = golden_section_max(&mut f, best.x - step, best.x + step, xtol);
    refined.evaluations += coarse;
    Ok(refined)
}
