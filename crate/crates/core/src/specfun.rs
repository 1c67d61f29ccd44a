//! Exponential integral E₁ and Euler's constant.
//!
//! E₁ is evaluated with the classical two-regime scheme: the convergent power
//! series for `x <= 1` and a continued fraction (modified Lentz) above it.

use crate::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Above this argument `E₁(x) < e^{-x}/x` underflows to zero.
const UNDERFLOW_CUTOFF: f64 = 745.0;

const SERIES_REL_EPS: f64 = 1e-17;
const LENTZ_REL_EPS: f64 = 1e-16;
const LENTZ_MAX_ITER: usize = 200;

/// A strictly positive real number (`+∞` admitted).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && !value.is_nan() {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!("expected a positive real, got {value}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

#[inline]
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// `E₁(x) = ∫_x^∞ e^{-t}/t dt`.
///
/// Returns `0.0` once the result underflows (`x > 745`).
pub fn exp_integral_e1(x: PositiveReal) -> f64 {
    e1_unchecked(x.get())
}

/// Fallible convenience wrapper around [`exp_integral_e1`].
pub fn e1(x: f64) -> Result<f64> {
    PositiveReal::new(x).map(exp_integral_e1)
}

/// E₁ without the domain check. Callers guarantee `x > 0`.
#[inline]
pub(crate) fn e1_unchecked(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > UNDERFLOW_CUTOFF {
        0.0
    } else if x <= 1.0 {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    }
}

/// `-γ - ln x + Σ_{k≥1} (-1)^{k+1} x^k / (k·k!)`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    // term_k holds (-1)^{k+1} x^k / k!
    let mut term = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x / kf;
        let contribution = -term / kf;
        sum += contribution;
        if contribution.abs() < SERIES_REL_EPS * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() + sum
}

/// `e^{-x} / (x+1 - 1²/(x+3 - 2²/(x+5 - …)))`, evaluated by modified Lentz.
fn e1_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=LENTZ_MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < LENTZ_REL_EPS {
            break;
        }
    }
    h * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: `E₁(x) = ∫_0^∞ exp(-x·e^v) dv` by composite Simpson.
    fn e1_oracle(x: f64) -> f64 {
        let upper = (60.0 / x).ln().max(1.0) + 1.0;
        let n = 200_000usize;
        let h = upper / n as f64;
        let f = |v: f64| (-x * v.exp()).exp();
        let mut acc = f(0.0) + f(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn e1_at_one() {
        let v = e1(1.0).unwrap();
        assert!((v - 0.219_383_934_395_520_27).abs() < 1e-15, "{v}");
        assert!((e1_oracle(1.0) - 0.219_383_934_395_520_27).abs() < 1e-13);
    }

    #[test]
    fn e1_bracket_at_ten() {
        let v = e1(10.0).unwrap();
        let e = (-10.0f64).exp();
        assert!(e / 11.0 < v && v < e / 10.0);
    }

    #[test]
    fn e1_small_argument_series() {
        let x = 1e-6f64;
        // 30-term series oracle, independent of the implementation's stopping rule.
        let mut s = 0.0;
        let mut fact = 1.0;
        for k in 1..=30 {
            fact *= k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            s += sign * x.powi(k) / (k as f64 * fact);
        }
        let oracle = -EULER_GAMMA - x.ln() + s;
        let v = e1(x).unwrap();
        assert!((v - oracle).abs() < 1e-13);
        assert!((v - (-EULER_GAMMA - x.ln())).abs() < 2e-6);
    }

    #[test]
    fn gamma_value() {
        assert_eq!(euler_gamma(), 0.5772156649015329);
        assert!(euler_gamma() > 0.5 && euler_gamma() < 0.6);
        for &x in &[1e-4, 1e-6, 1e-8] {
            let limit = e1(x).unwrap() + x.ln() + euler_gamma();
            assert!(limit.abs() < 2.0 * x);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(e1(0.0).is_err());
        assert!(e1(-1.0).is_err());
        assert!(e1(f64::NAN).is_err());
        assert!(PositiveReal::try_from(-3.0).is_err());
    }

    #[test]
    fn underflow_is_zero() {
        assert_eq!(e1(746.0).unwrap(), 0.0);
        assert_eq!(e1(1e10).unwrap(), 0.0);
        assert!(e1(700.0).unwrap() > 0.0);
        assert!(e1(f64::INFINITY).unwrap() == 0.0);
    }

    #[test]
    fn bracket_on_log_grid() {
        for i in 0..=400 {
            let x = 10f64.powf(-6.0 + 8.0 * i as f64 / 400.0);
            let v = e1(x).unwrap();
            let e = (-x).exp();
            assert!(e / (x + 1.0) < v && v < e / x, "x = {x}");
        }
    }

    #[test]
    fn derivative_matches_closed_form() {
        for i in 0..=60 {
            let x = 10f64.powf(-3.0 + 5.0 * i as f64 / 60.0);
            if x > 700.0 {
                continue;
            }
            let h = 1e-5 * x;
            let fd = (e1(x + h).unwrap() - e1(x - h).unwrap()) / (2.0 * h);
            let exact = -(-x).exp() / x;
            assert!(((fd - exact) / exact).abs() < 1e-6, "x = {x}: {fd} vs {exact}");
        }
    }

    #[test]
    fn agrees_with_quadrature_oracle_across_regime_split() {
        for &x in &[0.01, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 20.0, 50.0] {
            let v = e1(x).unwrap();
            assert!((v - e1_oracle(x)).abs() < 1e-12, "x = {x}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn oracle_equivalence(x in 0.01f64..50.0) {
            prop_assert!((e1(x).unwrap() - e1_oracle(x)).abs() <= 1e-12);
        }

        #[test]
        fn monotone_decreasing(a in 1e-8f64..700.0, frac in 1e-6f64..1.0) {
            let b = a * (1.0 + frac);
            prop_assert!(e1(a).unwrap() > e1(b).unwrap());
        }
    }
}
