//! λ_θ and its companions: Holst moments, the largest-atom law, the small-
//! and large-θ expansions, the λ_θ = target crossover, and the exact finite-n
//! oracle (see [`exact`]).

pub mod exact;

use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate_semi_infinite, QuadResult, TailBound};
use crate::roots::{bracketed_root, RootOptions};
use crate::specfun::{e1_unchecked, PositiveReal, EULER_GAMMA};
use crate::{Error, Result};

pub use exact::{
    cycle_type_law, cycle_types, exact_expected_longest, exact_expected_longest_rational, CycleType,
    MAX_EXACT_N,
};

/// Ewens parameter θ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Theta(f64);

impl Theta {
    pub fn new(value: f64) -> Result<Self> {
        if value >= 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!("theta must be finite and >= 0, got {value}")))
        }
    }

    /// θ > 0, as required by the samplers and the largest-atom law.
    pub fn positive(value: f64) -> Result<Self> {
        Self::new(value)?.require_positive()
    }

    pub fn require_positive(self) -> Result<Self> {
        if self.0 > 0.0 {
            Ok(self)
        } else {
            Err(Error::Domain("theta must be strictly positive here".into()))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Theta {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AsymptoticRegime {
    SmallTheta,
    LargeTheta,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}

/// `exp(-θ·E₁(t))`, flushed to zero before the exponent underflows.
#[inline]
pub(crate) fn no_atom_above(theta: f64, t: f64) -> f64 {
    let exponent = theta * e1_unchecked(t);
    if exponent > 745.0 {
        0.0
    } else {
        (-exponent).exp()
    }
}

/// Truncation point for λ_θ-type integrals; keeps the mass peak near
/// `ln θ - ln ln θ` well inside `[0, T]`.
fn tail_for(theta: f64, tol: f64) -> TailBound {
    let cutoff = (-tol.ln()).max(theta.max(1.0).ln()) + 40.0;
    TailBound::exponential(1.0).with_min_cutoff(cutoff)
}

/// λ_θ with the underlying quadrature diagnostics.
pub fn lambda_theta_quad(theta: Theta, tol: f64) -> Result<QuadResult> {
    check_tol(tol)?;
    let th = theta.get();
    if th == 0.0 {
        return Ok(QuadResult {
            value: 1.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    integrate_semi_infinite(|t| (-t).exp() * no_atom_above(th, t), tol, tail_for(th, tol))
}

/// `λ_θ = ∫_0^∞ exp(-t - θ·E₁(t)) dt`, the limiting expected fraction of the
/// longest cycle under ESF(θ). `λ_0 = 1` exactly.
pub fn lambda_theta(theta: Theta, tol: f64) -> Result<f64> {
    lambda_theta_quad(theta, tol).map(|r| r.value)
}

/// CDF of the largest atom of a Poisson process with intensity `θe^{-t}/t`:
/// `P(X ≤ x) = exp(-θ·E₁(x))`.
pub fn largest_atom_cdf(theta: Theta, x: PositiveReal) -> Result<f64> {
    let th = theta.require_positive()?.get();
    Ok(no_atom_above(th, x.get()))
}

/// Quantile of [`largest_atom_cdf`], for `p` in `(0, 1)`.
pub fn largest_atom_quantile(theta: Theta, p: f64) -> Result<f64> {
    let th = theta.require_positive()?.get();
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {p}")));
    }
    // Solve E₁(x) = -ln(p)/θ in log x; E₁ is strictly decreasing.
    let level = -p.ln() / th;
    let g = |log_x: f64| Ok(e1_unchecked(log_x.exp()) - level);
    let mut lo = -20.0f64;
    while g(lo)? < 0.0 {
        lo -= 20.0;
        if lo < -700.0 {
            return Err(Error::Bracket(format!("quantile {p} below representable range")));
        }
    }
    let hi = 7.0; // E₁(e^7) underflows to 0 < level
    let log_x = bracketed_root(g, lo, hi, RootOptions { x_tol: 1e-13, ..Default::default() })?;
    Ok(log_x.exp())
}

/// k-th moment of the largest PD(θ) component:
/// `E[Y^k] = ∫ y^{k-1} e^{-y-θE₁(y)} dy / ((θ+1)⋯(θ+k-1))`.
pub fn holst_moment(theta: Theta, k: u32, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let th = theta.require_positive()?.get();
    if k == 0 {
        return Err(Error::InvalidParameter("moment order k must be >= 1".into()));
    }
    let denominator: f64 = (1..k).map(|i| th + f64::from(i)).product();
    let power = (k - 1) as i32;
    let tail = tail_for(th, tol);
    let tail = tail.with_min_cutoff(tail.min_cutoff + 2.0 * f64::from(k));
    let r = integrate_semi_infinite(
        |y| y.powi(power) * (-y).exp() * no_atom_above(th, y),
        tol * denominator,
        tail,
    )?;
    Ok(r.value / denominator)
}

/// Leading-order expansions: `1 - θ ln 2` as θ → 0 and
/// `(ln θ - ln ln θ + γ)/θ` as θ → ∞ (defined for θ > e).
pub fn asymptotic_lambda(theta: Theta, regime: AsymptoticRegime) -> Result<f64> {
    let th = theta.get();
    match regime {
        AsymptoticRegime::SmallTheta => Ok(1.0 - std::f64::consts::LN_2 * th),
        AsymptoticRegime::LargeTheta => {
            if th <= std::f64::consts::E {
                return Err(Error::Domain(format!(
                    "large-theta expansion needs theta > e, got {th}"
                )));
            }
            Ok((th.ln() - th.ln().ln() + EULER_GAMMA) / th)
        }
    }
}

const CROSSOVER_MAX_THETA: f64 = 1e6;

/// Solves `λ_θ = target` for θ by bracketed bisection/secant on the strictly
/// decreasing map θ ↦ λ_θ.
pub fn crossover_theta(target: f64, tol: f64) -> Result<Theta> {
    check_tol(tol)?;
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::Domain(format!("target must lie in (0, 1], got {target}")));
    }
    if target == 1.0 {
        return Ok(Theta(0.0));
    }
    let quad_tol = (0.1 * tol).max(1e-13);
    let g = |th: f64| Ok(lambda_theta(Theta::new(th)?, quad_tol)? - target);

    let mut lo = 1e-6;
    if g(lo)? < 0.0 {
        lo = 0.0;
    }
    let mut hi = 10.0;
    while g(hi)? > 0.0 {
        lo = hi;
        hi *= 4.0;
        if hi > CROSSOVER_MAX_THETA {
            return Err(Error::Bracket(format!(
                "lambda_theta stays above {target} for theta <= {CROSSOVER_MAX_THETA:e}"
            )));
        }
    }
    let root = bracketed_root(
        g,
        lo,
        hi,
        RootOptions {
            x_tol: 1e-10,
            f_tol: 0.5 * tol,
            max_iter: 200,
        },
    )?;
    Theta::new(root)
}
