//! Bracketed root finding.
//!
//! Every quantity the constructions solve for is monotone in its parameter,
//! so bisection with an explicit bracket is used throughout.

use crate::error::{Error, Result};

/// Outcome of a bisection solve.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    /// |f(x)| at the returned point.
    pub residual: f64,
    pub iterations: u32,
}

/// Find `x` in `[lo, hi]` with `f(x) = 0` by bisection.
///
/// Requires `f(lo)` and `f(hi)` to have opposite signs (zero counts as
/// either). Stops once `|f(mid)| <= f_tol` or the bracket width drops
/// below `x_tol` or floating-point resolution.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    f_tol: f64,
) -> Result<Root> {
    let mut f_lo = f(lo);
    if f_lo.abs() <= f_tol {
        return Ok(Root { x: lo, residual: f_lo.abs(), iterations: 0 });
    }
    let f_hi = f(hi);
    if f_hi.abs() <= f_tol {
        return Ok(Root { x: hi, residual: f_hi.abs(), iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketError(format!(
            "no sign change on [{lo:e}, {hi:e}]: f = {f_lo:e}, {f_hi:e}"
        )));
    }
    let mut mid = 0.5 * (lo + hi);
    let mut f_mid = f(mid);
    let mut iterations = 1;
    // 200 caps pathological tolerances; bisection on f64 brackets needs < 64.
    while iterations < 200 {
        if f_mid.abs() <= f_tol {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if (hi - lo) <= x_tol || next == lo || next == hi {
            mid = next;
            f_mid = f(mid);
            iterations += 1;
            break;
        }
        mid = next;
        f_mid = f(mid);
        iterations += 1;
    }
    Ok(Root { x: mid, residual: f_mid.abs(), iterations })
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > x_tol {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((r.x - std::f64::consts::SQRT_2).abs() < 1e-13);
    }

    #[test]
    fn bisect_endpoint_root() {
        let r = bisect(|x| x - 1.0, 1.0, 3.0, 1e-14, 1e-15).unwrap();
        assert_eq!(r.x, 1.0);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0).is_err());
    }

    #[test]
    fn golden_finds_parabola_min() {
        let m = golden_min(|x| (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-12);
        assert!((m - 0.3).abs() < 1e-10);
    }
}
