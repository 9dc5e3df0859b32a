//! Result files of an experiment.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::json;

use super::fmt_f64;
use crate::error::{Error, Result};
use crate::exact::Pmf;
use crate::stats::{degree_distribution, ExperimentResults, Model, OutputKind};

const SEEDING_RULE: &str =
    "replicate r uses ChaCha8 seeded with splitmix64(master + (r + 1) * 0x9E3779B97F4A7C15)";

fn unwritable(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Unwritable {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(unwritable(path))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(unwritable(path))
}

/// Writes every requested artifact of `results` into `dir`, creating it if
/// needed, and returns the written paths. Contents depend only on the
/// experiment config, never on timing or thread count.
pub fn write_outputs(results: &ExperimentResults, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(unwritable(dir))?;
    let mut written = Vec::new();
    for &kind in &results.config.outputs {
        let path = dir.join(kind.file_name());
        match kind {
            OutputKind::Degree => write_file(&path, |w| {
                writeln!(w, "k,p")?;
                for (k, p) in degree_distribution(&results.degrees) {
                    writeln!(w, "{k},{}", fmt_f64(p))?;
                }
                Ok(())
            })?,
            OutputKind::BirthTime => write_file(&path, |w| {
                writeln!(w, "k,mean_birth_time,n_samples")?;
                for p in results.birth_times.points() {
                    writeln!(
                        w,
                        "{},{},{}",
                        p.degree,
                        fmt_f64(p.mean_birth_time),
                        p.n_samples
                    )?;
                }
                Ok(())
            })?,
            OutputKind::Replicates => write_file(&path, |w| {
                writeln!(w, "replicate,seed,max_degree,hub")?;
                for r in &results.replicates {
                    writeln!(w, "{},{},{},{}", r.replicate, r.seed, r.max_degree, r.hub)?;
                }
                Ok(())
            })?,
            OutputKind::Count => {
                let Some(h) = &results.counts else { continue };
                write_file(&path, |w| {
                    writeln!(w, "k,count,frequency")?;
                    for (k, (&c, f)) in h.counts.iter().zip(h.frequencies()).enumerate() {
                        writeln!(w, "{k},{c},{}", fmt_f64(f))?;
                    }
                    Ok(())
                })?
            }
            OutputKind::Summary => {
                let text =
                    serde_json::to_string_pretty(&summary(results)).expect("summary is plain JSON");
                write_file(&path, |w| writeln!(w, "{text}"))?
            }
        }
        written.push(path);
    }
    Ok(written)
}

fn summary(results: &ExperimentResults) -> serde_json::Value {
    let c = &results.config;
    let schedule = match &c.model {
        Model::Polya(s) => json!(s.to_string()),
        Model::BarabasiAlbert => serde_json::Value::Null,
    };
    let max_degree = results.replicates.iter().map(|r| r.max_degree).max();
    json!({
        "config": {
            "model": c.model.name(),
            "schedule": schedule,
            "t": c.horizon,
            "replicates": c.replicates,
            "seed": c.seed,
            "outputs": c.outputs.iter().map(|o| o.key()).collect::<Vec<_>>(),
            "color": c.count_color,
        },
        "seeding": SEEDING_RULE,
        "totals": {
            "replicates": results.degrees.replicates(),
            "vertices": results.degrees.total(),
            "edges": results.degrees.replicates() * (c.horizon as u64 + 1),
            "max_degree": max_degree,
            "distinct_degrees": degree_distribution(&results.degrees).len(),
        },
    })
}

/// Writes a `k,prob` table for one exact distribution.
pub fn write_count_pmf_csv(pmf: &Pmf, path: &Path) -> Result<()> {
    write_file(path, |w| pmf.write_csv(w))
}
