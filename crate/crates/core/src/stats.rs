//! Summary statistics and goodness-of-fit helpers for the Monte Carlo checks.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GofResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Mean and standard error (unbiased sample variance over `√len`).
/// The standard error is `NaN` for fewer than two values.
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0) / n).sqrt())
}

fn chi_square_p(statistic: f64, dof: usize) -> Result<f64> {
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(dist.sf(statistic))
}

/// Pearson goodness of fit of `observed` counts against cell probabilities.
/// Cells with expected count below `min_expected` are pooled, smallest first.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], min_expected: f64) -> Result<GofResult> {
    if observed.len() != probs.len() || observed.is_empty() {
        return Err(Error::InvalidParameter("observed and probs must be non-empty and equal length".into()));
    }
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut cells: Vec<(f64, f64)> = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| (p * total, o as f64))
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (e, o) in cells {
        acc.0 += e;
        acc.1 += o;
        if acc.0 >= min_expected {
            pooled.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 > 0.0 || acc.1 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => pooled.push(acc),
        }
    }
    if pooled.len() < 2 {
        return Err(Error::InvalidParameter("fewer than two cells after pooling".into()));
    }
    let statistic: f64 = pooled.iter().map(|&(e, o)| (o - e) * (o - e) / e).sum();
    let dof = pooled.len() - 1;
    Ok(GofResult {
        statistic,
        dof,
        p_value: chi_square_p(statistic, dof)?,
    })
}

/// Two-sample chi-square homogeneity test on binned counts. Adjacent bins are
/// merged until each has at least `min_count` combined observations.
pub fn chi_square_two_sample(a: &[u64], b: &[u64], min_count: u64) -> Result<GofResult> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidParameter("samples must be binned identically".into()));
    }
    let mut bins: Vec<(u64, u64)> = Vec::new();
    let mut acc = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        acc.0 += x;
        acc.1 += y;
        if acc.0 + acc.1 >= min_count {
            bins.push(acc);
            acc = (0, 0);
        }
    }
    if acc.0 + acc.1 > 0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }
    if bins.len() < 2 {
        return Err(Error::InvalidParameter("fewer than two bins after merging".into()));
    }
    let na: u64 = bins.iter().map(|b| b.0).sum();
    let nb: u64 = bins.iter().map(|b| b.1).sum();
    let (ka, kb) = (((nb as f64) / (na as f64)).sqrt(), ((na as f64) / (nb as f64)).sqrt());
    let statistic: f64 = bins
        .iter()
        .map(|&(x, y)| {
            let d = ka * x as f64 - kb * y as f64;
            d * d / (x + y) as f64
        })
        .sum();
    let dof = bins.len() - 1;
    Ok(GofResult {
        statistic,
        dof,
        p_value: chi_square_p(statistic, dof)?,
    })
}

/// Fraction of `sorted` values `<= x`.
pub fn ecdf_at(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_se() {
        let (m, se) = mean_and_std_error(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert!(mean_and_std_error(&[1.0]).1.is_nan());
    }

    #[test]
    fn gof_perfect_fit() {
        let r = chi_square_gof(&[250, 250, 500], &[0.25, 0.25, 0.5], 5.0).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 2);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gof_detects_mismatch() {
        let r = chi_square_gof(&[400, 100, 500], &[0.25, 0.25, 0.5], 5.0).unwrap();
        assert!(r.p_value < 1e-10);
    }

    #[test]
    fn gof_pools_sparse_cells() {
        let r = chi_square_gof(&[0, 1, 499, 500], &[0.0005, 0.0005, 0.499, 0.5], 5.0).unwrap();
        assert_eq!(r.dof, 1);
    }

    #[test]
    fn two_sample_same_counts() {
        let r = chi_square_two_sample(&[10, 20, 30, 40], &[10, 20, 30, 40], 5).unwrap();
        assert_eq!(r.statistic, 0.0);
        let r = chi_square_two_sample(&[100, 0], &[0, 100], 5).unwrap();
        assert!(r.p_value < 1e-20);
    }

    #[test]
    fn ecdf() {
        let s = [0.1, 0.2, 0.2, 0.5];
        assert_eq!(ecdf_at(&s, 0.0), 0.0);
        assert_eq!(ecdf_at(&s, 0.2), 0.75);
        assert_eq!(ecdf_at(&s, 1.0), 1.0);
    }
}
