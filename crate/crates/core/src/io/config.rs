//! Flat `key = value` experiment files.
//!
//! ```text
//! # degree distribution under Δ = 2
//! model = polya
//! schedule = const:2
//! t = 5000
//! replicates = 250
//! seed = 1
//! outputs = degree,birth_time,summary
//! out = results/const2
//! ```
//!
//! Keys: `model` (`polya` or `ba`), `schedule`, `t`, `replicates`, `seed`,
//! `outputs`, `color` and `out`. Only `t` is required.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::parse_schedule;
use crate::error::{Error, Result};
use crate::schedule::ReinforcementSchedule;
use crate::stats::{ExperimentConfig, Model, OutputKind};

/// A parsed experiment file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub experiment: ExperimentConfig,
    /// Directory for result files, relative paths as written.
    pub out_dir: Option<PathBuf>,
}

impl ConfigDocument {
    pub fn new(experiment: ExperimentConfig) -> Self {
        ConfigDocument {
            experiment,
            out_dir: None,
        }
    }
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedConfig {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| {
        malformed(
            line,
            format!("`{key}` expects a non-negative integer, got `{value}`"),
        )
    })
}

pub fn parse_config(text: &str) -> Result<ConfigDocument> {
    let mut model = "polya".to_string();
    let mut schedule: Option<ReinforcementSchedule> = None;
    let mut horizon: Option<usize> = None;
    let mut replicates = ExperimentConfig::DEFAULT_REPLICATES;
    let mut seed = 0u64;
    let mut outputs: Option<BTreeSet<OutputKind>> = None;
    let mut color = None;
    let mut out_dir = None;
    let mut seen = BTreeSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| malformed(line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(malformed(line, format!("duplicate key `{key}`")));
        }
        match key {
            "model" => match value {
                "polya" | "ba" => model = value.to_string(),
                _ => return Err(malformed(line, format!("unknown model `{value}`"))),
            },
            "schedule" => {
                schedule = Some(parse_schedule(value).map_err(|e| malformed(line, e.to_string()))?)
            }
            "t" => horizon = Some(number(line, key, value)?),
            "replicates" => replicates = number(line, key, value)?,
            "seed" => seed = number(line, key, value)?,
            "color" => color = Some(number(line, key, value)?),
            "out" => out_dir = Some(PathBuf::from(value)),
            "outputs" => {
                let set = value
                    .split(',')
                    .map(|s| s.trim().parse::<OutputKind>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| malformed(line, e))?;
                outputs = Some(set);
            }
            _ => {
                return Err(Error::UnknownKey {
                    key: key.to_string(),
                    line,
                })
            }
        }
    }

    let horizon = horizon.ok_or_else(|| malformed(0, "missing required key `t`"))?;
    let model = match model.as_str() {
        "ba" => {
            if schedule.is_some() {
                return Err(malformed(0, "`schedule` does not apply to model `ba`"));
            }
            Model::BarabasiAlbert
        }
        _ => Model::Polya(schedule.unwrap_or(ReinforcementSchedule::Constant(1.0))),
    };
    let mut experiment = ExperimentConfig::new(model, horizon, replicates, seed);
    if let Some(o) = outputs {
        experiment.outputs = o;
    }
    experiment.count_color = color;
    experiment.validate()?;
    Ok(ConfigDocument {
        experiment,
        out_dir,
    })
}

pub fn load_config(path: &Path) -> Result<ConfigDocument> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::io(path, e),
    })?;
    parse_config(&text)
}

/// Canonical text form; `parse_config(&render_config(d)) == d`.
pub fn render_config(doc: &ConfigDocument) -> String {
    let e = &doc.experiment;
    let mut s = String::new();
    writeln!(s, "model = {}", e.model.name()).unwrap();
    if let Model::Polya(schedule) = &e.model {
        writeln!(s, "schedule = {schedule}").unwrap();
    }
    writeln!(s, "t = {}", e.horizon).unwrap();
    writeln!(s, "replicates = {}", e.replicates).unwrap();
    writeln!(s, "seed = {}", e.seed).unwrap();
    let outputs: Vec<&str> = e.outputs.iter().map(|o| o.key()).collect();
    writeln!(s, "outputs = {}", outputs.join(",")).unwrap();
    if let Some(c) = e.count_color {
        writeln!(s, "color = {c}").unwrap();
    }
    if let Some(dir) = &doc.out_dir {
        writeln!(s, "out = {}", dir.display()).unwrap();
    }
    s
}

pub fn write_config(doc: &ConfigDocument, path: &Path) -> Result<()> {
    fs::write(path, render_config(doc)).map_err(|source| Error::Unwritable {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let d = parse_config("t = 10\n").unwrap();
        assert_eq!(
            d.experiment.model,
            Model::Polya(ReinforcementSchedule::Constant(1.0))
        );
        assert_eq!(d.experiment.replicates, 250);
        assert_eq!(d.experiment.seed, 0);
        assert_eq!(d.experiment.outputs, ExperimentConfig::default_outputs());
        assert_eq!(d.out_dir, None);
    }

    #[test]
    fn full_document_round_trips() {
        let text = "# comment\nmodel = polya  # trailing\nschedule = paper-g\nt = 5000\n\
                    replicates = 40\nseed = 9\noutputs = degree,count\ncolor = 3\nout = res/g\n";
        let d = parse_config(text).unwrap();
        assert_eq!(
            d.experiment.model,
            Model::Polya(ReinforcementSchedule::preset_g())
        );
        assert_eq!(d.experiment.count_color, Some(3));
        assert_eq!(parse_config(&render_config(&d)).unwrap(), d);

        let ba = parse_config("model = ba\nt = 7\n").unwrap();
        assert_eq!(parse_config(&render_config(&ba)).unwrap(), ba);
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(
            parse_config("t = 5\nwidth = 3\n"),
            Err(Error::UnknownKey { line: 2, .. })
        ));
        assert!(matches!(
            parse_config("t = 5\nseed 3\n"),
            Err(Error::MalformedConfig { line: 2, .. })
        ));
        assert!(matches!(
            parse_config("\n\nt = -5\n"),
            Err(Error::MalformedConfig { line: 3, .. })
        ));
        assert!(matches!(
            parse_config("t = 5\nschedule = const:x\n"),
            Err(Error::MalformedConfig { line: 2, .. })
        ));
        assert!(matches!(
            parse_config("seed = 1\n"),
            Err(Error::MalformedConfig { line: 0, .. })
        ));
        assert!(parse_config("t = 5\nt = 6\n").is_err());
        assert!(parse_config("model = ba\nschedule = ln\nt = 5\n").is_err());
    }

    #[test]
    fn missing_file() {
        let err = load_config(Path::new("/definitely/not/here.cfg")).unwrap_err();
        assert!(matches!(err, Error::MissingFile { .. }));
    }

    #[test]
    fn write_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exp.cfg");
        let d = parse_config("schedule = ln\nt = 100\nseed = 4\n").unwrap();
        write_config(&d, &path).unwrap();
        assert_eq!(load_config(&path).unwrap(), d);
    }
}
