//! Exact finite-n law of the cycle type under ESF(θ).
//!
//! `P(c) = n! / Π_j (j^{c_j} c_j!) · θ^{Σ c_j} / (θ(θ+1)⋯(θ+n-1))`, summed over
//! all integer partitions of `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Theta;
use crate::{Error, Result};

/// Largest `n` accepted by the enumeration oracle (5604 partitions).
pub const MAX_EXACT_N: usize = 30;

/// Cycle type `(c_1, …, c_n)` with `Σ j·c_j = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType {
    n: usize,
    /// `multiplicities[j - 1] = c_j`.
    multiplicities: Vec<u32>,
}

impl CycleType {
    pub fn new(n: usize, multiplicities: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cycle type needs n >= 1".into()));
        }
        let mut multiplicities = multiplicities;
        if multiplicities.len() > n {
            if multiplicities[n..].iter().any(|&c| c != 0) {
                return Err(Error::InvalidParameter(format!("cycle longer than n = {n}")));
            }
            multiplicities.truncate(n);
        }
        multiplicities.resize(n, 0);
        let total: usize = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1) * c as usize)
            .sum();
        if total != n {
            return Err(Error::InvalidParameter(format!(
                "sum of j*c_j is {total}, expected {n}"
            )));
        }
        Ok(Self { n, multiplicities })
    }

    /// Cycle type of a multiset of part sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        if n == 0 || sizes.contains(&0) {
            return Err(Error::InvalidParameter("part sizes must be positive".into()));
        }
        let mut mult = vec![0u32; n];
        for &s in sizes {
            mult[s - 1] += 1;
        }
        Self::new(n, mult)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `c_j` for `j >= 1`.
    pub fn count(&self, j: usize) -> u32 {
        if j == 0 || j > self.n {
            0
        } else {
            self.multiplicities[j - 1]
        }
    }

    pub fn cycles(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.multiplicities
            .iter()
            .rposition(|&c| c > 0)
            .map_or(0, |i| i + 1)
    }

    /// Part sizes in decreasing order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cycles() as usize);
        for j in (1..=self.n).rev() {
            out.extend(std::iter::repeat_n(j, self.count(j) as usize));
        }
        out
    }

    /// Number of permutations of `[n]` with this cycle type,
    /// `n! / Π_j (j^{c_j} c_j!)`.
    pub fn permutation_count(&self) -> BigInt {
        let mut num = factorial(self.n);
        let mut den = BigInt::one();
        for (i, &c) in self.multiplicities.iter().enumerate() {
            if c > 0 {
                den *= BigInt::from(i + 1).pow(c) * factorial(c as usize);
            }
        }
        num /= den;
        num
    }

    fn ln_permutation_count(&self) -> f64 {
        let mut acc = ln_factorial(self.n);
        for (i, &c) in self.multiplicities.iter().enumerate() {
            if c > 0 {
                acc -= f64::from(c) * ((i + 1) as f64).ln() + ln_factorial(c as usize);
            }
        }
        acc
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("n must be >= 1".into()))
    } else if n > MAX_EXACT_N {
        Err(Error::SizeTooLarge { n, max: MAX_EXACT_N })
    } else {
        Ok(())
    }
}

/// All cycle types of `[n]`, in reverse-lexicographic order of the
/// decreasing part sequence (starting with the single `n`-cycle).
pub fn cycle_types(n: usize) -> Result<Vec<CycleType>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n);
    partitions_into(n, n, &mut parts, &mut out);
    Ok(out)
}

fn partitions_into(remaining: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<CycleType>) {
    if remaining == 0 {
        out.push(CycleType::from_sizes(parts).expect("parts of a partition are positive"));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        parts.push(p);
        partitions_into(remaining - p, p, parts, out);
        parts.pop();
    }
}

/// ESF(θ) probabilities of every cycle type of `[n]`, evaluated in log space.
pub fn cycle_type_law(theta: Theta, n: usize) -> Result<Vec<(CycleType, f64)>> {
    let th = theta.require_positive()?.get();
    let types = cycle_types(n)?;
    let ln_rising: f64 = (0..n).map(|i| (th + i as f64).ln()).sum();
    let ln_theta = th.ln();
    Ok(types
        .into_iter()
        .map(|c| {
            let lp = c.ln_permutation_count() + f64::from(c.cycles()) * ln_theta - ln_rising;
            (c, lp.exp())
        })
        .collect())
}

/// `E_n^θ[L_n] / n`, by enumeration over cycle types.
pub fn exact_expected_longest(theta: Theta, n: usize) -> Result<f64> {
    let law = cycle_type_law(theta, n)?;
    let mean: f64 = law.iter().map(|(c, p)| p * c.largest() as f64).sum();
    Ok(mean / n as f64)
}

/// Exact rational `E_n^θ[L_n] / n` for rational θ > 0.
pub fn exact_expected_longest_rational(theta: &BigRational, n: usize) -> Result<BigRational> {
    if *theta <= BigRational::zero() {
        return Err(Error::Domain("theta must be strictly positive".into()));
    }
    let types = cycle_types(n)?;
    let mut weighted = BigRational::zero();
    let mut total = BigRational::zero();
    for c in &types {
        let w = BigRational::from_integer(c.permutation_count()) * pow(theta, c.cycles());
        weighted += &w * BigRational::from_integer(BigInt::from(c.largest()));
        total += w;
    }
    Ok(weighted / (total * BigRational::from_integer(BigInt::from(n))))
}

fn pow(base: &BigRational, exp: u32) -> BigRational {
    (0..exp).fold(BigRational::one(), |acc, _| acc * base)
}
