//! Random ESF(θ) partitions and the tilted Poisson occupancy model.
//!
//! Three sequential constructions produce exact ESF(θ) partitions of `[n]`:
//! the Hoppe urn, the Chinese restaurant process (implemented separately, by
//! seating next to a uniformly chosen earlier customer) and the spaghetti-hoops
//! end-tying process, whose loop sizes follow ESF(1/2).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ewens::{CycleType, Theta};
use crate::rng::replicate_stream;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hoppe,
    Crp,
    Spaghetti,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Hoppe, Model::Crp, Model::Spaghetti];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Hoppe => "hoppe",
            Model::Crp => "crp",
            Model::Spaghetti => "spaghetti",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hoppe" => Ok(Model::Hoppe),
            "crp" => Ok(Model::Crp),
            "spaghetti" => Ok(Model::Spaghetti),
            other => Err(Error::InvalidParameter(format!("unknown model '{other}'"))),
        }
    }
}

/// Class (cycle, table, loop) sizes of one sampled partition of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: usize,
    sizes: Vec<usize>,
    model: Model,
}

impl Partition {
    pub(crate) fn new(n: usize, sizes: Vec<usize>, model: Model) -> Self {
        debug_assert_eq!(sizes.iter().sum::<usize>(), n);
        debug_assert!(sizes.iter().all(|&s| s >= 1));
        Self { n, sizes, model }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sizes in order of class creation.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_sizes(&self.sizes).expect("partition sizes are positive")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("n must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Hoppe urn: at draw `k` the black ball (weight θ) is picked with
/// probability `θ/(θ+k-1)` and opens a new colour; otherwise an existing colour
/// is reinforced with probability proportional to its size.
pub fn hoppe_urn(theta: Theta, n: usize, seed: Seed) -> Result<Partition> {
    let th = theta.require_positive()?.get();
    check_n(n)?;
    let mut rng = replicate_stream(seed.0, 0);
    Ok(Partition::new(n, hoppe_sizes(th, n, &mut rng, |_| {}), Model::Hoppe))
}

/// Colour sizes after each of the `n` draws of one Hoppe urn run.
pub fn hoppe_urn_trace(theta: Theta, n: usize, seed: Seed) -> Result<Vec<Vec<usize>>> {
    let th = theta.require_positive()?.get();
    check_n(n)?;
    let mut rng = replicate_stream(seed.0, 0);
    let mut trace = Vec::with_capacity(n);
    hoppe_sizes(th, n, &mut rng, |sizes| trace.push(sizes.to_vec()));
    Ok(trace)
}

pub(crate) fn hoppe_sizes<R: Rng + ?Sized>(
    theta: f64,
    n: usize,
    rng: &mut R,
    mut observe: impl FnMut(&[usize]),
) -> Vec<usize> {
    let mut sizes: Vec<usize> = Vec::new();
    for k in 1..=n {
        let existing = (k - 1) as f64;
        let u = rng.random::<f64>() * (theta + existing);
        if u < theta {
            sizes.push(1);
        } else {
            // u - θ is uniform on [0, k-1); its integer part picks a ball.
            let ball = ((u - theta) as usize).min(k - 2);
            let mut acc = 0;
            let idx = sizes
                .iter()
                .position(|&s| {
                    acc += s;
                    ball < acc
                })
                .expect("ball index below total weight");
            sizes[idx] += 1;
        }
        observe(&sizes);
    }
    sizes
}

/// Chinese restaurant process: customer `k` opens a new table with
/// probability `θ/(θ+k-1)`, else sits at the table of a uniformly chosen
/// earlier customer.
pub fn crp(theta: Theta, n: usize, seed: Seed) -> Result<Partition> {
    let th = theta.require_positive()?.get();
    check_n(n)?;
    let mut rng = replicate_stream(seed.0, 0);
    Ok(Partition::new(n, crp_sizes(th, n, &mut rng), Model::Crp))
}

pub(crate) fn crp_sizes<R: Rng + ?Sized>(theta: f64, n: usize, rng: &mut R) -> Vec<usize> {
    let mut occupancy: Vec<usize> = Vec::new();
    let mut seat_of: Vec<u32> = Vec::with_capacity(n);
    for k in 1..=n {
        let seated = k - 1;
        let open_new = rng.random::<f64>() < theta / (theta + seated as f64);
        let table = if open_new {
            occupancy.push(0);
            occupancy.len() - 1
        } else {
            seat_of[rng.random_range(0..seated)] as usize
        };
        occupancy[table] += 1;
        seat_of.push(table as u32);
    }
    occupancy
}

/// Spaghetti hoops: the `2n` free ends of `n` strands are tied in pairs chosen
/// uniformly at random; tying both ends of one chain closes a loop. Returns
/// loop sizes in strands.
pub fn spaghetti_hoops(n_strands: usize, seed: Seed) -> Result<Partition> {
    check_n(n_strands)?;
    let mut rng = replicate_stream(seed.0, 0);
    Ok(Partition::new(n_strands, spaghetti_sizes(n_strands, &mut rng), Model::Spaghetti))
}

pub(crate) fn spaghetti_sizes<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    // Ends 2i and 2i+1 belong to strand i; chains are union-find sets of ends.
    let mut parent: Vec<u32> = (0..2 * n as u32).collect();
    let mut strands: Vec<u32> = vec![0; 2 * n];
    for i in 0..n {
        parent[2 * i + 1] = 2 * i as u32;
        strands[2 * i] = 1;
    }
    let mut free: Vec<u32> = (0..2 * n as u32).collect();
    let mut loops = Vec::new();

    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }

    while !free.is_empty() {
        let a = free.swap_remove(rng.random_range(0..free.len()));
        let b = free.swap_remove(rng.random_range(0..free.len()));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            loops.push(strands[ra as usize] as usize);
        } else {
            parent[rb as usize] = ra;
            strands[ra as usize] += strands[rb as usize];
        }
    }
    loops
}

/// Pass-through for the Monte Carlo harness: one partition from `model`.
pub(crate) fn sample_sizes<R: Rng + ?Sized>(model: Model, theta: f64, n: usize, rng: &mut R) -> Vec<usize> {
    match model {
        Model::Hoppe => hoppe_sizes(theta, n, rng, |_| {}),
        Model::Crp => crp_sizes(theta, n, rng),
        Model::Spaghetti => spaghetti_sizes(n, rng),
    }
}

/// Neglected Poisson mass beyond the truncation index.
pub const TILTED_TAIL_MASS: f64 = 1e-12;

/// Independent `μ_j ~ Poisson(θ e^{-sj} / j)`, `j = 1..=J_max`, with `J_max`
/// the first index whose tail mass bound drops below [`TILTED_TAIL_MASS`].
#[derive(Debug, Clone)]
pub struct TiltedPoissonModel {
    theta: f64,
    s: f64,
    means: Vec<f64>,
    zero_prob: Vec<f64>,
}

/// One draw of the tilted occupancy model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltedOccupancy {
    pub s: f64,
    pub theta: f64,
    /// Indices `j` with `μ_j > 0`, ascending.
    pub occupied: Vec<usize>,
    /// `μ_j` for each entry of `occupied`.
    pub counts: Vec<u64>,
    /// `max(occupied)`, or 0 if nothing is occupied.
    pub largest_index: usize,
}

impl TiltedOccupancy {
    /// `Σ_j j·μ_j`.
    pub fn total_size(&self) -> u64 {
        self.occupied.iter().zip(&self.counts).map(|(&j, &c)| j as u64 * c).sum()
    }
}

impl TiltedPoissonModel {
    pub fn new(theta: Theta, s: f64) -> Result<Self> {
        let th = theta.require_positive()?.get();
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParameter(format!("tilt s must lie in (0, 1), got {s}")));
        }
        let j_max = truncation_index(th, s);
        let means: Vec<f64> = (1..=j_max).map(|j| th * (-s * j as f64).exp() / j as f64).collect();
        let zero_prob = means.iter().map(|m| (-m).exp()).collect();
        Ok(Self {
            theta: th,
            s,
            means,
            zero_prob,
        })
    }

    pub fn j_max(&self) -> usize {
        self.means.len()
    }

    pub fn mean(&self, j: usize) -> f64 {
        self.means[j - 1]
    }

    /// Exact `P(L(μ) < k) = exp(-Σ_{j≥k} θe^{-sj}/j)` for the truncated model.
    pub fn prob_largest_below(&self, k: usize) -> f64 {
        let start = k.max(1) - 1;
        let tail: f64 = self.means.get(start..).map_or(0.0, |m| m.iter().rev().sum());
        (-tail).exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TiltedOccupancy {
        let mut occupied = Vec::new();
        let mut counts = Vec::new();
        for (i, (&m, &p0)) in self.means.iter().zip(&self.zero_prob).enumerate() {
            let u = rng.random::<f64>();
            if u < p0 {
                continue;
            }
            occupied.push(i + 1);
            counts.push(poisson_tail_search(u, m, p0));
        }
        TiltedOccupancy {
            s: self.s,
            theta: self.theta,
            largest_index: occupied.last().copied().unwrap_or(0),
            occupied,
            counts,
        }
    }
}

/// Smallest `J` with `θ e^{-s(J+1)} / ((J+1)(1 - e^{-s})) < TILTED_TAIL_MASS`,
/// an upper bound on `Σ_{j>J} θe^{-sj}/j`.
fn truncation_index(theta: f64, s: f64) -> usize {
    let bound = |j: usize| {
        let next = (j + 1) as f64;
        theta * (-s * next).exp() / (next * -(-s).exp_m1())
    };
    let mut hi = 1usize;
    while bound(hi) >= TILTED_TAIL_MASS {
        hi *= 2;
    }
    let mut lo = hi / 2;
    if bound(lo) < TILTED_TAIL_MASS {
        return lo.max(1);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) < TILTED_TAIL_MASS {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Inversion by sequential search, continuing past `P(0) = p0 <= u`.
fn poisson_tail_search(u: f64, mean: f64, p0: f64) -> u64 {
    let mut k = 0u64;
    let mut p = p0;
    let mut cdf = p0;
    while u >= cdf {
        k += 1;
        p *= mean / k as f64;
        cdf += p;
        if p < f64::EPSILON * cdf && k as f64 > mean {
            break;
        }
    }
    k
}

/// Single draw of the tilted Poisson model.
pub fn tilted_poisson(theta: Theta, s: f64, seed: Seed) -> Result<TiltedOccupancy> {
    let model = TiltedPoissonModel::new(theta, s)?;
    let mut rng = replicate_stream(seed.0, 0);
    Ok(model.sample(&mut rng))
}
