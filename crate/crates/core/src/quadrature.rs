//! Globally adaptive Gauss–Kronrod (G7/K15) integration on finite intervals
//! and on `[0, ∞)` with an analytic exponential tail bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::{Error, Result};

/// Maximum number of panels kept by the adaptive driver.
pub const PANEL_BUDGET: usize = 10_000;

/// Points per K15 panel evaluation.
pub const KRONROD_POINTS: usize = 15;

// Kronrod abscissae; the odd-indexed entries (and 0) are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Decay hint for integrands on `[0, ∞)`: `|f(t)| ≲ e^{-rate·t}` beyond the
/// cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub rate: f64,
    /// Lower bound on the truncation point; the default cutoff
    /// `(-ln tol + 5) / rate` is used if it is larger.
    pub min_cutoff: f64,
}

impl TailBound {
    pub fn exponential(rate: f64) -> Self {
        Self { rate, min_cutoff: 0.0 }
    }

    pub fn with_min_cutoff(mut self, cutoff: f64) -> Self {
        self.min_cutoff = cutoff;
        self
    }

    pub fn cutoff(&self, tol: f64) -> f64 {
        ((-tol.ln() + 5.0) / self.rate).max(self.min_cutoff)
    }
}

impl Default for TailBound {
    fn default() -> Self {
        Self::exponential(1.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Max-heap on error; ties broken by position so the pop order is fixed.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn checked<F: Fn(f64) -> f64>(f: &F, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: t, value: v })
    }
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = checked(f, center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let error = ((kronrod - gauss) * half).abs().max(50.0 * f64::EPSILON * abs_value);
    Ok(Panel { a, b, value, error })
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol`. Panel values are summed in order of their left
/// endpoints so the result is independent of refinement history.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }

    let mut heap = BinaryHeap::new();
    let first = kronrod_panel(&f, a, b)?;
    let mut total_error = first.error;
    let mut evaluations = KRONROD_POINTS;
    heap.push(first);

    while total_error > tol {
        if heap.len() >= PANEL_BUDGET {
            return Err(Error::QuadratureBudget {
                panels: heap.len(),
                error: total_error,
                tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval no longer splittable in floating point.
            return Err(Error::QuadratureBudget {
                panels: heap.len() + 1,
                error: total_error,
                tol,
            });
        }
        let left = kronrod_panel(&f, worst.a, mid)?;
        let right = kronrod_panel(&f, mid, worst.b)?;
        evaluations += 2 * KRONROD_POINTS;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    // Recompute so accumulated cancellation in the running total is dropped.
    let abs_error_estimate = panels.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        abs_error_estimate,
        evaluations,
    })
}

/// Integrates `f` over `[0, ∞)`: adaptive quadrature on `[0, T]` plus an
/// analytic bound for the discarded tail, with `T` chosen from `tail`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, tol: f64, tail: TailBound) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if !(tail.rate > 0.0) {
        return Err(Error::InvalidParameter(format!("tail decay rate must be positive, got {}", tail.rate)));
    }
    let cutoff = tail.cutoff(tol);
    let at_cutoff = checked(&f, cutoff)?.abs();
    let tail_error = ((-tail.rate * cutoff).exp() / tail.rate).max(at_cutoff / tail.rate);

    let body = integrate_finite(&f, 0.0, cutoff, tol)?;
    Ok(QuadResult {
        value: body.value,
        abs_error_estimate: body.abs_error_estimate + tail_error,
        evaluations: body.evaluations + 1,
    })
}
