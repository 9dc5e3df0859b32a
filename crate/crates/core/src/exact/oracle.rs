use super::{check_color, Pmf};
use crate::error::{Error, Result};
use crate::schedule::ReinforcementSchedule;

/// Largest horizon the path enumeration accepts (`9! = 362880` paths).
pub const ORACLE_CAP: usize = 9;

/// Visits every draw path `(j_1, …, j_t)` with its probability.
///
/// The urn masses are tracked here directly, not through
/// [`UrnState`](crate::urn::UrnState), so this stays an independent check
/// of the rest of the crate.
pub fn for_each_path<F>(t: usize, schedule: &ReinforcementSchedule, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], f64),
{
    if t > ORACLE_CAP {
        return Err(Error::CapExceeded {
            span: t,
            cap: ORACLE_CAP,
        });
    }
    let deltas: Vec<f64> = (1..=t as u64).map(|n| schedule.evaluate(n)).collect();
    let mut masses = vec![1.0];
    let mut path = Vec::with_capacity(t);
    walk(&deltas, &mut masses, 1.0, 1.0, &mut path, &mut visit);
    Ok(())
}

fn walk<F: FnMut(&[usize], f64)>(
    deltas: &[f64],
    masses: &mut Vec<f64>,
    total: f64,
    prob: f64,
    path: &mut Vec<usize>,
    visit: &mut F,
) {
    let n = path.len();
    if n == deltas.len() {
        visit(path, prob);
        return;
    }
    let delta = deltas[n];
    masses.push(1.0);
    for c in 0..=n {
        let p = masses[c] / total;
        if p == 0.0 {
            continue;
        }
        masses[c] += delta;
        path.push(c + 1);
        walk(deltas, masses, total + delta + 1.0, prob * p, path, visit);
        path.pop();
        masses[c] -= delta;
    }
    masses.pop();
}

/// Law of `N_{j,t}` by summing path probabilities over all `t!` paths.
pub fn brute_force_pmf(j: usize, t: usize, schedule: &ReinforcementSchedule) -> Result<Pmf> {
    check_color(j, t)?;
    let mut probs = vec![0.0; t - j + 2];
    for_each_path(t, schedule, |path, p| {
        let k = path.iter().filter(|&&c| c == j).count();
        probs[k] += p;
    })?;
    Pmf::from_probs(j, t, probs)
}
