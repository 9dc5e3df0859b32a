//! `polya`: generate urn graphs, compute exact draw-count laws and run
//! replicated experiments.
//!
//! Data goes to files or stdout; progress and diagnostics go to stderr.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polya_core::exact::{
    brute_force_pmf, delta_one_discrepancy, pmf_constant_delta, pmf_constant_delta_dp,
    pmf_delta_one, pmf_general,
};
use polya_core::figures::{figure, figure_names, Figure};
use polya_core::graph::{ba_generate, generate, reconstruct_graph};
use polya_core::io::{load_config, parse_schedule, write_count_pmf_csv, write_outputs};
use polya_core::stats::{
    chi_square_gof, degree_distribution, run_monte_carlo_with_threads, tail_slope,
    ExperimentConfig, ExperimentResults, Model, OutputKind, DEFAULT_FIT_WINDOW,
};
use polya_core::{DrawHistory, Error, EvolvingGraph, Pmf, ReinforcementSchedule};

#[derive(Parser, Debug)]
#[command(
    name = "polya",
    version,
    about = "Polya urn preferential-attachment graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grow one graph and write its edge list and degree table.
    Generate(GenerateArgs),
    /// Exact law of the number of draws of color j by time t.
    Exact(ExactArgs),
    /// Replicated Monte Carlo run.
    Experiment(ExperimentArgs),
    /// Rerun a frozen figure configuration.
    Repro(ReproArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Number of attachment steps.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value = "const:1")]
    schedule: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Polya)]
    model: ModelArg,
    /// Replay the colors listed in this file instead of sampling.
    #[arg(long, conflicts_with = "model")]
    draws: Option<PathBuf>,
    /// Directory for `edges.txt` and `degrees.csv`; without it the edge
    /// list goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    j: usize,
    #[arg(long)]
    t: usize,
    /// Print only P(N = k).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "const:1")]
    schedule: String,
    #[arg(long, value_enum, default_value_t = Method::General)]
    method: Method,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Experiment file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, short = 'R', alias = "R")]
    replicates: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated: degree, birth_time, summary, replicates, count.
    #[arg(long)]
    outputs: Option<String>,
    /// Color whose draw count is histogrammed by the `count` output.
    #[arg(long)]
    color: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct ReproArgs {
    /// Figure name; run `polya repro list` to see them all.
    figure: String,
    /// Output directory; defaults to `repro/<figure>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the frozen replicate count.
    #[arg(long, short = 'R', alias = "R")]
    replicates: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelArg {
    Polya,
    Ba,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    /// Tuple enumeration for any schedule.
    General,
    /// Closed-form products for constant schedules.
    Constant,
    /// Recurrence for constant schedules, no size cap.
    Dp,
    /// Sum over every draw path.
    Oracle,
    /// Gamma-function form for unit reinforcement.
    DeltaOne,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(PathBuf, io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(..) => 4,
            Failure::Core(e) => match e {
                Error::InvalidColor { .. }
                | Error::IndexOutOfRange { .. }
                | Error::Range { .. }
                | Error::Parse { .. }
                | Error::InvalidHistory(_) => 2,
                Error::MissingFile { .. }
                | Error::MalformedConfig { .. }
                | Error::UnknownKey { .. } => 3,
                Error::Unwritable { .. } | Error::Io { .. } => 4,
                Error::CapExceeded { .. } => 5,
                Error::Invariant(_) => 6,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Repro(a) => cmd_repro(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (`polya exact ... | head`) is not an error.
        Err(Failure::Io(_, e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn create_dir(dir: &Path) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(dir.to_path_buf(), e))
}

fn read_draws(path: &Path, schedule: ReinforcementSchedule) -> CliResult<DrawHistory> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    let mut draws = Vec::new();
    let mut offset = 0;
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        if !token.is_empty() {
            let color = token.parse().map_err(|_| Error::Parse {
                position: offset,
                message: format!("`{token}` is not a color index"),
            })?;
            draws.push(color);
        }
        offset += token.chars().count() + 1;
    }
    Ok(DrawHistory::new(schedule, draws)?)
}

fn cmd_generate(a: GenerateArgs) -> CliResult {
    let schedule = parse_schedule(&a.schedule)?;
    let graph: EvolvingGraph = match (&a.draws, a.model) {
        (Some(path), _) => {
            let history = read_draws(path, schedule)?;
            if let Some(t) = a.t {
                if t != history.len() {
                    return Err(Failure::Usage(format!(
                        "--t {t} disagrees with {} draws in {}",
                        history.len(),
                        path.display()
                    )));
                }
            }
            reconstruct_graph(&history)
        }
        (None, model) => {
            let t = a
                .t
                .ok_or_else(|| Failure::Usage("--t is required unless --draws is given".into()))?;
            match model {
                ModelArg::Polya => generate(t, &schedule, a.seed).1,
                ModelArg::Ba => ba_generate(t, a.seed),
            }
        }
    };
    graph.check_invariants()?;

    match &a.out {
        Some(dir) => {
            create_dir(dir)?;
            let edges = dir.join("edges.txt");
            let mut w = create(&edges)?;
            graph
                .write_edge_list(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::Io(edges.clone(), e))?;
            let degrees = dir.join("degrees.csv");
            let mut w = create(&degrees)?;
            graph
                .write_degree_csv(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::Io(degrees.clone(), e))?;
            eprintln!(
                "generate: {} vertices written to {}",
                graph.num_vertices(),
                dir.display()
            );
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            graph
                .write_edge_list(&mut w)
                .map_err(|e| Failure::Io("<stdout>".into(), e))?;
        }
    }
    Ok(())
}

fn require_constant(schedule: &ReinforcementSchedule, method: &str) -> CliResult<f64> {
    schedule.as_constant().ok_or_else(|| {
        Failure::Usage(format!(
            "--method {method} needs a constant schedule, got `{schedule}`"
        ))
    })
}

fn cmd_exact(a: ExactArgs) -> CliResult {
    let schedule = parse_schedule(&a.schedule)?;
    if a.j == 0 || a.j > a.t {
        return Err(Failure::Usage(format!(
            "--j must lie in 1..={} (got {})",
            a.t, a.j
        )));
    }
    let (j, t) = (a.j, a.t);
    let pmf: Pmf = match a.method {
        Method::General => pmf_general(j, t, &schedule)?,
        Method::Oracle => brute_force_pmf(j, t, &schedule)?,
        Method::Constant => pmf_constant_delta(j, t, require_constant(&schedule, "constant")?)?,
        Method::Dp => pmf_constant_delta_dp(j, t, require_constant(&schedule, "dp")?)?,
        Method::DeltaOne => {
            if require_constant(&schedule, "delta-one")? != 1.0 {
                return Err(Failure::Usage("--method delta-one needs const:1".into()));
            }
            let gap = delta_one_discrepancy(j, t)?;
            eprintln!(
                "delta-one: literal product form differs by up to {:.3e} (mass {:.6})",
                gap.max_abs_diff, gap.uncorrected_mass
            );
            pmf_delta_one(j, t)?
        }
    };

    if let Some(k) = a.k {
        if k >= pmf.probs().len() {
            return Err(Failure::Usage(format!(
                "--k must lie in 0..={} (got {k})",
                pmf.probs().len() - 1
            )));
        }
        println!("{}", polya_core::io::fmt_f64(pmf.prob(k)));
        return Ok(());
    }
    match &a.out {
        Some(path) => write_count_pmf_csv(&pmf, path)?,
        None => {
            let stdout = io::stdout();
            pmf.write_csv(stdout.lock())
                .map_err(|e| Failure::Io("<stdout>".into(), e))?;
        }
    }
    Ok(())
}

fn experiment_config(a: &ExperimentArgs) -> CliResult<(ExperimentConfig, Option<PathBuf>)> {
    let (mut config, mut out) = match &a.config {
        Some(path) => {
            let doc = load_config(path)?;
            (doc.experiment, doc.out_dir)
        }
        None => {
            let t =
                a.t.ok_or_else(|| Failure::Usage("--t is required without --config".into()))?;
            let config = ExperimentConfig::new(
                Model::Polya(ReinforcementSchedule::Constant(1.0)),
                t,
                ExperimentConfig::DEFAULT_REPLICATES,
                0,
            );
            (config, None)
        }
    };
    if let Some(s) = &a.schedule {
        if a.model == Some(ModelArg::Ba) {
            return Err(Failure::Usage(
                "--schedule does not apply to --model ba".into(),
            ));
        }
        config.model = Model::Polya(parse_schedule(s)?);
    }
    match a.model {
        Some(ModelArg::Ba) => config.model = Model::BarabasiAlbert,
        Some(ModelArg::Polya) if config.model == Model::BarabasiAlbert => {
            config.model = Model::Polya(ReinforcementSchedule::Constant(1.0))
        }
        _ => {}
    }
    if let Some(t) = a.t {
        config.horizon = t;
    }
    if let Some(r) = a.replicates {
        config.replicates = r;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if let Some(list) = &a.outputs {
        config.outputs = list
            .split(',')
            .map(|s| s.trim().parse::<OutputKind>())
            .collect::<Result<_, _>>()
            .map_err(Failure::Usage)?;
    }
    if let Some(c) = a.color {
        config.count_color = Some(c);
        config.outputs.insert(OutputKind::Count);
    }
    if a.out.is_some() {
        out = a.out.clone();
    }
    config.validate()?;
    Ok((config, out))
}

fn run(
    config: &ExperimentConfig,
    threads: Option<usize>,
    label: &str,
) -> CliResult<ExperimentResults> {
    if threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let model = match &config.model {
        Model::Polya(s) => format!("polya {s}"),
        Model::BarabasiAlbert => "ba".into(),
    };
    eprintln!(
        "{label}: {model}, t = {}, {} replicates, seed {}",
        config.horizon, config.replicates, config.seed
    );
    let start = Instant::now();
    let results = run_monte_carlo_with_threads(config, threads)?;
    eprintln!("{label}: done in {:.2?}", start.elapsed());
    if config.outputs.contains(&OutputKind::Degree) {
        let (lo, hi) = DEFAULT_FIT_WINDOW;
        if let Ok(slope) = tail_slope(&degree_distribution(&results.degrees), lo, hi) {
            eprintln!("{label}: log-log slope over k in [{lo}, {hi}] = {slope:.3}");
        }
    }
    Ok(results)
}

fn cmd_experiment(a: ExperimentArgs) -> CliResult {
    let (config, out) = experiment_config(&a)?;
    let dir = out.unwrap_or_else(|| PathBuf::from("results"));
    let results = run(&config, a.threads, "experiment")?;
    for path in write_outputs(&results, &dir)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_repro(a: ReproArgs) -> CliResult {
    if a.figure == "list" {
        for name in figure_names() {
            let f = figure(name).expect("listed figure exists");
            println!("{name}\t{}", f.description);
        }
        return Ok(());
    }
    let fig: &Figure = figure(&a.figure).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown figure `{}`; choose one of: {}",
            a.figure,
            figure_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let root = a
        .out
        .clone()
        .unwrap_or_else(|| Path::new("repro").join(fig.name));
    create_dir(&root)?;

    let exact = match fig.exact {
        Some(o) => {
            let pmf = pmf_constant_delta_dp(o.color, o.horizon, o.delta)?;
            let path = root.join("exact_pmf.csv");
            write_count_pmf_csv(&pmf, &path)?;
            eprintln!("wrote {}", path.display());
            Some(pmf)
        }
        None => None,
    };

    for r in fig.runs {
        let mut config = r.document()?.experiment;
        if let Some(n) = a.replicates {
            config.replicates = n;
        }
        let results = run(&config, a.threads, &format!("{}/{}", fig.name, r.label))?;
        for path in write_outputs(&results, &root.join(r.label))? {
            eprintln!("wrote {}", path.display());
        }
        if let (Some(pmf), Some(h)) = (&exact, &results.counts) {
            let gof = chi_square_gof(&h.counts, pmf.probs(), 5.0);
            eprintln!(
                "{}: chi-square {:.3} on {} dof, p = {:.4}",
                fig.name, gof.statistic, gof.dof, gof.p_value
            );
        }
    }
    Ok(())
}
