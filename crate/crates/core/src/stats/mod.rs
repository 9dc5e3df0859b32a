//! Degree histograms, birth-time curves and the Monte Carlo engine.

mod experiment;
mod fit;

pub use experiment::{
    replicate_seed, run_count_experiment, run_monte_carlo, run_monte_carlo_with_threads,
    CountHistogram, ExperimentConfig, ExperimentResults, Model, OutputKind, ReplicateSummary,
};
pub use fit::{chi_square_gof, tail_slope, total_variation, ChiSquareResult, DEFAULT_FIT_WINDOW};

use crate::error::{Error, Result};
use crate::exact::{pmf_constant_delta_dp, pmf_general, Pmf};
use crate::graph::EvolvingGraph;
use crate::history::DrawHistory;
use crate::schedule::ReinforcementSchedule;

/// Vertex counts per degree, pooled over replicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    horizon: usize,
    replicates: u64,
    // counts[k] for k = 0..=t+1; counts[0] stays 0.
    counts: Vec<u64>,
}

impl DegreeHistogram {
    pub fn new(horizon: usize) -> Self {
        DegreeHistogram {
            horizon,
            replicates: 0,
            counts: vec![0; horizon + 2],
        }
    }

    pub fn from_graph(graph: &EvolvingGraph) -> Self {
        let mut h = Self::new(graph.time());
        h.add_graph(graph);
        h
    }

    pub fn add_graph(&mut self, graph: &EvolvingGraph) {
        debug_assert_eq!(graph.time(), self.horizon);
        for &d in graph.degrees() {
            self.counts[d as usize] += 1;
        }
        self.replicates += 1;
    }

    /// Adds another histogram over the same horizon.
    pub fn merge(&mut self, other: &DegreeHistogram) {
        assert_eq!(self.horizon, other.horizon, "horizons differ");
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.replicates += other.replicates;
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn replicates(&self) -> u64 {
        self.replicates
    }

    /// Number of vertices with degree `k`.
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }
}

/// `p(k)`: the chance that a uniformly chosen vertex has degree `k`, from
/// pooled counts. Degrees never observed are omitted.
pub fn degree_distribution(histogram: &DegreeHistogram) -> Vec<(usize, f64)> {
    let total = histogram.total() as f64;
    histogram
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (k, c as f64 / total))
        .collect()
}

/// Per-degree birth-time sums with the second moments needed for a
/// ratio-estimator standard error. All sums are integers, so merging is
/// exact and order-independent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct BirthMoments {
    n: u64,
    sum: u64,
    // Σ over replicates of S_r², C_r² and S_r·C_r.
    sum_sq: u128,
    count_sq: u128,
    cross: u128,
}

/// Mean birth time of the vertices holding each degree at the horizon.
///
/// Only vertices `1..=t` enter; the newest vertex `t + 1` is left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthTimeCurve {
    horizon: usize,
    replicates: u64,
    moments: Vec<BirthMoments>,
}

/// One row of a [`BirthTimeCurve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirthTimePoint {
    pub degree: usize,
    pub mean_birth_time: f64,
    pub n_samples: u64,
}

impl BirthTimeCurve {
    pub fn new(horizon: usize) -> Self {
        BirthTimeCurve {
            horizon,
            replicates: 0,
            moments: vec![BirthMoments::default(); horizon + 2],
        }
    }

    pub fn from_graph(graph: &EvolvingGraph) -> Self {
        let mut c = Self::new(graph.time());
        c.add_replicate(&per_degree_birth_sums(graph.degrees()));
        c
    }

    /// `sums` holds `(degree, vertex count, birth-time sum)` of one replicate.
    fn add_replicate(&mut self, sums: &[(usize, u64, u64)]) {
        for &(k, c, s) in sums {
            let m = &mut self.moments[k];
            m.n += c;
            m.sum += s;
            m.sum_sq += (s as u128) * (s as u128);
            m.count_sq += (c as u128) * (c as u128);
            m.cross += (s as u128) * (c as u128);
        }
        self.replicates += 1;
    }

    pub fn merge(&mut self, other: &BirthTimeCurve) {
        assert_eq!(self.horizon, other.horizon, "horizons differ");
        for (a, b) in self.moments.iter_mut().zip(&other.moments) {
            a.n += b.n;
            a.sum += b.sum;
            a.sum_sq += b.sum_sq;
            a.count_sq += b.count_sq;
            a.cross += b.cross;
        }
        self.replicates += other.replicates;
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn replicates(&self) -> u64 {
        self.replicates
    }

    /// Number of (replicate, vertex) pairs with degree `k`.
    pub fn n_samples(&self, k: usize) -> u64 {
        self.moments.get(k).map_or(0, |m| m.n)
    }

    /// Pooled mean birth time of degree-`k` vertices; `None` when no vertex
    /// had that degree.
    pub fn mean(&self, k: usize) -> Option<f64> {
        let m = self.moments.get(k)?;
        (m.n > 0).then(|| m.sum as f64 / m.n as f64)
    }

    /// Standard error of [`mean`](Self::mean) treating replicates as the
    /// independent units (ratio estimator).
    pub fn standard_error(&self, k: usize) -> Option<f64> {
        let m = self.moments.get(k)?;
        let r = self.replicates as f64;
        if m.n == 0 || self.replicates < 2 {
            return None;
        }
        let mean = m.sum as f64 / m.n as f64;
        let resid = m.sum_sq as f64 - 2.0 * mean * m.cross as f64 + mean * mean * m.count_sq as f64;
        let avg_count = m.n as f64 / r;
        Some((resid.max(0.0) / (r * (r - 1.0))).sqrt() / avg_count)
    }

    /// Degrees with at least one contributor, ascending.
    pub fn points(&self) -> Vec<BirthTimePoint> {
        self.moments
            .iter()
            .enumerate()
            .filter(|(_, m)| m.n > 0)
            .map(|(k, m)| BirthTimePoint {
                degree: k,
                mean_birth_time: m.sum as f64 / m.n as f64,
                n_samples: m.n,
            })
            .collect()
    }
}

/// `(degree, count, Σ birth times)` over vertices `1..=t` of one graph.
pub(crate) fn per_degree_birth_sums(degrees: &[u64]) -> Vec<(usize, u64, u64)> {
    let t = degrees.len() - 1;
    let mut dense: Vec<(u64, u64)> = vec![(0, 0); t + 2];
    for (j0, &d) in degrees[..t].iter().enumerate() {
        let e = &mut dense[d as usize];
        e.0 += 1;
        e.1 += j0 as u64;
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, (c, _))| *c > 0)
        .map(|(k, (c, s))| (k, c, s))
        .collect()
}

fn average_birth_time_of(degrees: impl Iterator<Item = u64>, k: u64) -> Option<f64> {
    let (mut n, mut sum) = (0u64, 0u64);
    for (j0, d) in degrees.enumerate() {
        if d == k {
            n += 1;
            sum += j0 as u64;
        }
    }
    (n > 0).then(|| sum as f64 / n as f64)
}

/// `b_t(k)`: mean birth time `j − 1` over vertices `j ∈ 1..=t` of degree `k`.
pub fn average_birth_time(graph: &EvolvingGraph, k: usize) -> Option<f64> {
    let t = graph.time();
    average_birth_time_of(graph.degrees()[..t].iter().copied(), k as u64)
}

/// [`average_birth_time`] computed from draw counts instead of a graph.
pub fn average_birth_time_from_history(history: &DrawHistory, k: usize) -> Option<f64> {
    let t = history.len();
    let counts = history.all_counts();
    average_birth_time_of(counts[..t].iter().map(|&n| 1 + n as u64), k as u64)
}

/// Exact laws of `N_{j,t}` for `j = 1..=t`: the recurrence for constant
/// schedules, enumeration otherwise.
pub fn count_pmfs(t: usize, schedule: &ReinforcementSchedule) -> Result<Vec<Pmf>> {
    (1..=t)
        .map(|j| match schedule.as_constant() {
            Some(d) => pmf_constant_delta_dp(j, t, d),
            None => pmf_general(j, t, schedule),
        })
        .collect()
}

fn check_degree(t: usize, k: usize) -> Result<()> {
    if t == 0 || k == 0 || k > t + 1 {
        return Err(Error::IndexOutOfRange {
            what: "k",
            value: k,
            lo: 1,
            hi: t + 1,
        });
    }
    Ok(())
}

/// Expected number of vertices among `1..=t` with degree `k`:
/// `Σ_j P(N_{j,t} = k − 1)`.
pub fn expected_degree_count(t: usize, k: usize, schedule: &ReinforcementSchedule) -> Result<f64> {
    check_degree(t, k)?;
    Ok(count_pmfs(t, schedule)?.iter().map(|p| p.prob(k - 1)).sum())
}

/// `Σ_{j=1}^{t} (j − 1) P(N_{j,t} = k − 1)`, the birth times weighted by
/// the chance each vertex ends with degree `k`, without normalization.
pub fn expected_birth_time_sum(
    t: usize,
    k: usize,
    schedule: &ReinforcementSchedule,
) -> Result<f64> {
    check_degree(t, k)?;
    Ok(count_pmfs(t, schedule)?
        .iter()
        .enumerate()
        .map(|(j0, p)| j0 as f64 * p.prob(k - 1))
        .sum())
}

/// Expected birth time of degree-`k` vertices: [`expected_birth_time_sum`]
/// divided by [`expected_degree_count`]. This is the limit of the pooled
/// Monte Carlo mean in [`BirthTimeCurve`].
pub fn expected_birth_time_exact(
    t: usize,
    k: usize,
    schedule: &ReinforcementSchedule,
) -> Result<f64> {
    check_degree(t, k)?;
    let pmfs = count_pmfs(t, schedule)?;
    let (mut weighted, mut mass) = (0.0, 0.0);
    for (j0, p) in pmfs.iter().enumerate() {
        let q = p.prob(k - 1);
        weighted += j0 as f64 * q;
        mass += q;
    }
    Ok(weighted / mass)
}
