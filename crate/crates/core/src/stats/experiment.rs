use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{per_degree_birth_sums, BirthTimeCurve, DegreeHistogram};
use crate::error::{Error, Result};
use crate::graph::{ba_generate_with_rng, generate_with_rng, EvolvingGraph};
use crate::schedule::ReinforcementSchedule;

/// Which growth process an experiment samples.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Polya(ReinforcementSchedule),
    BarabasiAlbert,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Polya(_) => "polya",
            Model::BarabasiAlbert => "ba",
        }
    }
}

/// Result artifacts an experiment can write.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputKind {
    /// `degree_distribution.csv`
    Degree,
    /// `birth_time.csv`
    BirthTime,
    /// `summary.json`
    Summary,
    /// `replicates.csv`
    Replicates,
    /// `count_histogram.csv`, the law of one color's draw count.
    Count,
}

impl OutputKind {
    pub const ALL: [OutputKind; 5] = [
        OutputKind::Degree,
        OutputKind::BirthTime,
        OutputKind::Summary,
        OutputKind::Replicates,
        OutputKind::Count,
    ];

    pub fn key(self) -> &'static str {
        match self {
            OutputKind::Degree => "degree",
            OutputKind::BirthTime => "birth_time",
            OutputKind::Summary => "summary",
            OutputKind::Replicates => "replicates",
            OutputKind::Count => "count",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            OutputKind::Degree => "degree_distribution.csv",
            OutputKind::BirthTime => "birth_time.csv",
            OutputKind::Summary => "summary.json",
            OutputKind::Replicates => "replicates.csv",
            OutputKind::Count => "count_histogram.csv",
        }
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for OutputKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        OutputKind::ALL
            .into_iter()
            .find(|k| k.key() == s)
            .ok_or_else(|| format!("unknown output `{s}`"))
    }
}

/// A replicated Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub horizon: usize,
    pub replicates: usize,
    pub seed: u64,
    pub outputs: BTreeSet<OutputKind>,
    /// Color whose draw count is histogrammed when [`OutputKind::Count`]
    /// is requested.
    pub count_color: Option<usize>,
}

impl ExperimentConfig {
    pub const DEFAULT_REPLICATES: usize = 250;

    pub fn default_outputs() -> BTreeSet<OutputKind> {
        [
            OutputKind::Degree,
            OutputKind::BirthTime,
            OutputKind::Summary,
        ]
        .into_iter()
        .collect()
    }

    pub fn new(model: Model, horizon: usize, replicates: usize, seed: u64) -> Self {
        ExperimentConfig {
            model,
            horizon,
            replicates,
            seed,
            outputs: Self::default_outputs(),
            count_color: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return Err(Error::IndexOutOfRange {
                what: "t",
                value: self.horizon,
                lo: 1,
                hi: usize::MAX,
            });
        }
        if self.replicates < 1 {
            return Err(Error::IndexOutOfRange {
                what: "replicates",
                value: self.replicates,
                lo: 1,
                hi: usize::MAX,
            });
        }
        if let Model::Polya(s) = &self.model {
            s.validate()?;
        }
        match (self.outputs.contains(&OutputKind::Count), self.count_color) {
            (true, None) => Err(Error::Invariant(
                "count output requested without a color".into(),
            )),
            (_, Some(j)) if j == 0 || j > self.horizon + 1 => Err(Error::InvalidColor {
                color: j,
                max: self.horizon + 1,
            }),
            _ => Ok(()),
        }
    }
}

/// Derives the seed of replicate `r` from the master seed:
/// the SplitMix64 finalizer applied to `master + (r + 1)·0x9E3779B97F4A7C15`
/// (wrapping arithmetic).
pub fn replicate_seed(master: u64, replicate: u64) -> u64 {
    let mut z = master.wrapping_add(
        replicate
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Headline numbers of one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicateSummary {
    pub replicate: u64,
    pub seed: u64,
    pub max_degree: u64,
    /// Lowest-numbered vertex attaining the maximum degree.
    pub hub: usize,
}

/// Pooled histogram of `N_{j,t}` for one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountHistogram {
    pub color: usize,
    pub horizon: usize,
    /// `counts[k]` replicates drew the color exactly `k` times.
    pub counts: Vec<u64>,
}

impl CountHistogram {
    pub fn replicates(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.replicates() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }
}

/// Everything one experiment produced.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub degrees: DegreeHistogram,
    pub birth_times: BirthTimeCurve,
    pub counts: Option<CountHistogram>,
    pub replicates: Vec<ReplicateSummary>,
}

struct Outcome {
    degrees: Vec<(usize, u64)>,
    births: Vec<(usize, u64, u64)>,
    count: Option<usize>,
    summary: ReplicateSummary,
}

fn run_replicate(config: &ExperimentConfig, r: u64) -> Result<Outcome> {
    let seed = replicate_seed(config.seed, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = config.horizon;
    let graph = match &config.model {
        Model::Polya(schedule) => generate_with_rng(t, schedule, &mut rng).1,
        Model::BarabasiAlbert => ba_generate_with_rng(t, &mut rng),
    };
    check_replicate(&graph)?;

    let degrees = graph.degrees();
    let (hub, &max_degree) = degrees
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|(_, &d)| d)
        .expect("graph has a vertex");
    let mut dense = vec![0u64; t + 2];
    for &d in degrees {
        dense[d as usize] += 1;
    }
    Ok(Outcome {
        degrees: dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .collect(),
        births: per_degree_birth_sums(degrees),
        count: config.count_color.map(|j| degrees[j - 1] as usize - 1),
        summary: ReplicateSummary {
            replicate: r,
            seed,
            max_degree,
            hub: hub + 1,
        },
    })
}

fn check_replicate(graph: &EvolvingGraph) -> Result<()> {
    graph.check_invariants()?;
    let t = graph.time() as u64;
    for (j0, &d) in graph.degrees().iter().enumerate() {
        // Vertex j can be drawn at most t - j + 1 times.
        if d > t - j0 as u64 + 1 {
            return Err(Error::Invariant(format!(
                "vertex {} has degree {d} above its ceiling",
                j0 + 1
            )));
        }
    }
    Ok(())
}

/// Runs every replicate on the current rayon pool and merges the results
/// in replicate order. Output depends only on the config.
pub fn run_monte_carlo(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let outcomes: Vec<Outcome> = (0..config.replicates as u64)
        .into_par_iter()
        .map(|r| run_replicate(config, r))
        .collect::<Result<_>>()?;

    let t = config.horizon;
    let mut degrees = DegreeHistogram::new(t);
    let mut birth_times = BirthTimeCurve::new(t);
    let mut counts = config.count_color.map(|color| CountHistogram {
        color,
        horizon: t,
        counts: vec![0; t + 2 - color],
    });
    let mut replicates = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        degrees.add_sparse(&o.degrees);
        birth_times.add_replicate(&o.births);
        if let (Some(h), Some(k)) = (counts.as_mut(), o.count) {
            h.counts[k] += 1;
        }
        replicates.push(o.summary);
    }
    Ok(ExperimentResults {
        config: config.clone(),
        degrees,
        birth_times,
        counts,
        replicates,
    })
}

/// [`run_monte_carlo`] on a dedicated pool of `threads` workers
/// (all cores when `None`).
pub fn run_monte_carlo_with_threads(
    config: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<ExperimentResults> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_monte_carlo(config))
}

/// Empirical law of `N_{color,t}` over `replicates` independent urn runs.
pub fn run_count_experiment(
    color: usize,
    t: usize,
    schedule: &ReinforcementSchedule,
    replicates: usize,
    seed: u64,
) -> Result<CountHistogram> {
    let mut config = ExperimentConfig::new(Model::Polya(schedule.clone()), t, replicates, seed);
    config.outputs = [OutputKind::Count].into_iter().collect();
    config.count_color = Some(color);
    Ok(run_monte_carlo(&config)?
        .counts
        .expect("count output was requested"))
}

impl DegreeHistogram {
    pub(crate) fn add_sparse(&mut self, counts: &[(usize, u64)]) {
        for &(k, c) in counts {
            self.counts[k] += c;
        }
        self.replicates += 1;
    }
}
