//! Bracketed root search for continuous scalar functions.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Stop once the bracket is narrower than this.
    pub x_tol: f64,
    /// Stop once `|f(x)|` falls below this.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-10,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

/// Finds a sign change of `f` in `[lo, hi]`.
///
/// Each step tries the secant point of the current bracket and falls back to
/// bisection whenever the secant point lands too close to an endpoint or the
/// bracket failed to shrink by half on the previous step.
pub fn bracketed_root<F>(mut f: F, mut lo: f64, mut hi: f64, opts: RootOptions) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::Bracket(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }

    let mut last_width = hi - lo;
    let mut force_bisect = false;
    for _ in 0..opts.max_iter {
        let width = hi - lo;
        if width <= opts.x_tol {
            break;
        }
        let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        let margin = 0.01 * width;
        let x = if force_bisect || !(secant > lo + margin && secant < hi - margin) {
            0.5 * (lo + hi)
        } else {
            secant
        };

        let fx = f(x)?;
        if fx.abs() <= opts.f_tol || fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        let new_width = hi - lo;
        force_bisect = new_width > 0.5 * last_width;
        last_width = new_width;
    }

    // Linear interpolation inside the final bracket.
    Ok(if f_hi != f_lo {
        (hi - f_hi * (hi - lo) / (f_hi - f_lo)).clamp(lo, hi)
    } else {
        0.5 * (lo + hi)
    })
}
