//! Replicated experiments over the samplers.
//!
//! Replicate `r` always draws from `replicate_stream(seed, r)` and results are
//! folded in replicate order, so summaries are bit-identical for any worker
//! count.

use serde::Serialize;

use crate::ewens::{largest_atom_quantile, no_atom_above, Theta};
use crate::parallel::map_indexed;
use crate::rng::{derive_seed, replicate_stream};
use crate::samplers::{sample_sizes, Model, Partition, Seed, TiltedPoissonModel};
use crate::stats::{ecdf_at, mean_and_std_error};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub replicates: u64,
    pub seed: Seed,
    /// 0 = one per core, 1 = sequential.
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(n: usize, replicates: u64, seed: u64) -> Self {
        Self {
            n,
            replicates,
            seed: Seed(seed),
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateSummary {
    pub mean: f64,
    pub std_error: f64,
    pub replicates: u64,
    pub n: usize,
    pub theta: f64,
    pub model: Model,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfReport {
    pub grid: Vec<f64>,
    pub empirical: Vec<f64>,
    pub theoretical: Vec<f64>,
    pub sup_distance: f64,
}

/// The spaghetti process has no free parameter: it is ESF(1/2).
pub const SPAGHETTI_THETA: f64 = 0.5;

fn check_model_theta(model: Model, theta: Theta) -> Result<f64> {
    let th = theta.require_positive()?.get();
    if model == Model::Spaghetti && th != SPAGHETTI_THETA {
        return Err(Error::InvalidParameter(format!(
            "spaghetti hoops realise theta = 1/2 only, got theta = {th}"
        )));
    }
    Ok(th)
}

fn check_config(config: &ExperimentConfig) -> Result<()> {
    if config.n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if config.replicates < 2 {
        return Err(Error::InvalidParameter("need at least 2 replicates".into()));
    }
    Ok(())
}

/// All replicate partitions of an experiment, in replicate order.
pub fn sample_partitions(model: Model, theta: Theta, config: &ExperimentConfig) -> Result<Vec<Partition>> {
    let th = check_model_theta(model, theta)?;
    if config.n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let (n, seed) = (config.n, config.seed.0);
    let sizes = map_indexed(config.replicates, config.workers, |r| {
        let mut rng = replicate_stream(seed, r);
        sample_sizes(model, th, n, &mut rng)
    });
    Ok(sizes
        .into_iter()
        .map(|s| Partition::new(n, s, model))
        .collect())
}

/// Monte Carlo estimate of `E[(L_n/n)^k]`.
pub fn estimate_moment(model: Model, theta: Theta, k: u32, config: &ExperimentConfig) -> Result<EstimateSummary> {
    let th = check_model_theta(model, theta)?;
    check_config(config)?;
    if k == 0 {
        return Err(Error::InvalidParameter("moment order k must be >= 1".into()));
    }
    let (n, seed) = (config.n, config.seed.0);
    let values = map_indexed(config.replicates, config.workers, |r| {
        let mut rng = replicate_stream(seed, r);
        let sizes = sample_sizes(model, th, n, &mut rng);
        let largest = sizes.iter().copied().max().unwrap_or(0);
        (largest as f64 / n as f64).powi(k as i32)
    });
    let (mean, std_error) = mean_and_std_error(&values);
    Ok(EstimateSummary {
        mean,
        std_error,
        replicates: config.replicates,
        n,
        theta: th,
        model,
        master_seed: seed,
    })
}

/// Monte Carlo estimate of `E[L_n]/n`, the finite-n proxy for λ_θ.
pub fn estimate_lambda(model: Model, theta: Theta, config: &ExperimentConfig) -> Result<EstimateSummary> {
    estimate_moment(model, theta, 1, config)
}

/// One estimate per θ. Each θ gets a seed derived from the master seed and the
/// bit pattern of θ, so entries do not depend on list order or membership.
/// Failures are reported per entry.
pub fn sweep(thetas: &[Theta], model: Model, config: &ExperimentConfig) -> Vec<Result<EstimateSummary>> {
    thetas
        .iter()
        .map(|&theta| {
            let per_theta = ExperimentConfig {
                seed: Seed(theta_seed(config.seed, theta)),
                ..*config
            };
            estimate_lambda(model, theta, &per_theta)
        })
        .collect()
}

pub fn theta_seed(master: Seed, theta: Theta) -> u64 {
    derive_seed(master.0, theta.get().to_bits())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaConfig {
    pub s: f64,
    pub replicates: u64,
    pub seed: Seed,
    pub grid_size: usize,
    pub workers: usize,
}

impl LemmaConfig {
    pub const DEFAULT_GRID: usize = 256;

    pub fn new(s: f64, replicates: u64, seed: u64) -> Self {
        Self {
            s,
            replicates,
            seed: Seed(seed),
            grid_size: Self::DEFAULT_GRID,
            workers: 0,
        }
    }
}

/// Compares the empirical CDF of `s·L(μ)` under the tilted Poisson model with
/// the scaling limit `exp(-θE₁(x))` on a grid of theoretical quantiles
/// spanning levels 0.001 to 0.999.
pub fn verify_lemma(theta: Theta, config: &LemmaConfig) -> Result<CdfReport> {
    let th = theta.require_positive()?;
    if !(config.s > 0.0 && config.s <= 1e-2) {
        return Err(Error::InvalidParameter(format!("s must lie in (0, 0.01], got {}", config.s)));
    }
    if config.replicates < 1000 {
        return Err(Error::InvalidParameter("need at least 1000 replicates".into()));
    }
    if config.grid_size < 2 {
        return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
    }

    let model = TiltedPoissonModel::new(th, config.s)?;
    let (s, seed) = (config.s, config.seed.0);
    let mut scaled = map_indexed(config.replicates, config.workers, |r| {
        let mut rng = replicate_stream(seed, r);
        s * model.sample(&mut rng).largest_index as f64
    });
    scaled.sort_by(f64::total_cmp);

    let (p_lo, p_hi) = (0.001, 0.999);
    let last = (config.grid_size - 1) as f64;
    let grid = (0..config.grid_size)
        .map(|i| largest_atom_quantile(th, p_lo + (p_hi - p_lo) * i as f64 / last))
        .collect::<Result<Vec<f64>>>()?;
    let theoretical: Vec<f64> = grid.iter().map(|&x| no_atom_above(th.get(), x)).collect();
    let empirical: Vec<f64> = grid.iter().map(|&x| ecdf_at(&scaled, x)).collect();
    let sup_distance = empirical
        .iter()
        .zip(&theoretical)
        .map(|(e, t)| (e - t).abs())
        .fold(0.0, f64::max);

    Ok(CdfReport {
        grid,
        empirical,
        theoretical,
        sup_distance,
    })
}
