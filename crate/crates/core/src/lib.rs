//! The generalized Golomb-Dickman constant λ_θ under the Ewens measure.
//!
//! λ_θ is the limiting expected fraction of the longest cycle of an
//! ESF(θ)-distributed permutation, and equals
//! `∫_0^∞ exp(-t - θ·E₁(t)) dt`. This crate evaluates it by adaptive
//! quadrature, provides its small- and large-θ expansions, moments of the
//! largest Poisson–Dirichlet component, an exact finite-n oracle, and a set of
//! independent samplers (Hoppe urn, Chinese restaurant process, spaghetti
//! hoops, tilted Poisson occupancy) driven by a deterministic Monte Carlo
//! harness.
//!
//! With the default `parallel` feature, replicates are distributed with
//! rayon; results are bit-identical for every worker count.

mod error;
pub mod ewens;
pub mod montecarlo;
pub mod parallel;
pub mod quadrature;
pub mod rng;
pub mod roots;
pub mod samplers;
pub mod specfun;
pub mod stats;

pub use error::{Error, Result};
pub use ewens::{
    asymptotic_lambda, crossover_theta, exact_expected_longest, holst_moment, lambda_theta,
    largest_atom_cdf, AsymptoticRegime, CycleType, Theta,
};
pub use montecarlo::{estimate_lambda, sweep, verify_lemma, CdfReport, EstimateSummary, ExperimentConfig};
pub use quadrature::QuadResult;
pub use samplers::{Model, Partition, Seed};
pub use specfun::{euler_gamma, exp_integral_e1, PositiveReal};
