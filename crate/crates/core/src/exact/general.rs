use super::{check_cap, IndexTupleEnumerator, Pmf, Product, LOG_SPACE_THRESHOLD};
use crate::error::Result;
use crate::schedule::{DeltaTable, ReinforcementSchedule};

/// Exact law of `N_{j,t}` for an arbitrary schedule.
///
/// For `k ≥ 1`, `P(N_{j,t} = k)` sums over every draw-time tuple
/// `(i_1, …, i_k)` the product of
///
/// * `1 + Σ_{b<a} Δ_{i_b}` for each drawn time `i_a`, and
/// * `(p − 1) + Σ_{l<p, l∉{i}} Δ_l` for each other time `p ∈ [j, t]`,
///
/// divided by `Π_{n=j−1}^{t−1} ((n + 1) + Σ_{m≤n} Δ_m)`. The `k = 0` entry
/// is the closed product over all `p ∈ [j, t]` with no exclusions.
pub fn pmf_general(j: usize, t: usize, schedule: &ReinforcementSchedule) -> Result<Pmf> {
    let span = check_cap(j, t)?;
    let table = schedule.table(t);
    let log_space = span > LOG_SPACE_THRESHOLD;

    let mut denom = Product::new(log_space);
    for n in j - 1..t {
        denom.mul((n + 1) as f64 + table.sum_through(n));
    }

    let mut probs = Vec::with_capacity(span + 1);
    let mut none = Product::new(log_space);
    for p in j..=t {
        none.mul((p - 1) as f64 + table.sum_through(p - 1));
    }
    probs.push(none.ratio(denom));

    for k in 1..=span {
        let mut total = 0.0;
        let mut tuples = IndexTupleEnumerator::new(j, k, t);
        while let Some(tuple) = tuples.advance() {
            total += summand(j, t, tuple, &table, log_space).ratio(denom);
        }
        probs.push(total);
    }
    Pmf::from_probs(j, t, probs)
}

fn summand(j: usize, t: usize, drawn: &[usize], table: &DeltaTable, log_space: bool) -> Product {
    let mut num = Product::new(log_space);
    // Reinforcement received by color j so far.
    let mut own = 0.0;
    // Reinforcement received by every other color, over times < p.
    let mut others = table.sum_through(j - 1);
    let mut next = 0;
    for p in j..=t {
        if next < drawn.len() && drawn[next] == p {
            num.mul(1.0 + own);
            own += table.delta(p);
            next += 1;
        } else {
            num.mul((p - 1) as f64 + others);
            others += table.delta(p);
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn two_step_constant_one() {
        let pmf = pmf_general(2, 2, &ReinforcementSchedule::Constant(1.0)).unwrap();
        assert!((pmf.prob(0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((pmf.prob(1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn first_color_is_always_drawn() {
        for t in 1..8 {
            let pmf = pmf_general(1, t, &ReinforcementSchedule::LogNatural).unwrap();
            assert_eq!(pmf.prob(0), 0.0);
        }
        let pmf = pmf_general(1, 1, &ReinforcementSchedule::Constant(4.0)).unwrap();
        assert_eq!(pmf.probs(), &[0.0, 1.0]);
    }

    #[test]
    fn newest_color_zero_draws() {
        let s = ReinforcementSchedule::preset_g();
        for t in 1..10 {
            let prior: f64 = (1..t as u64).map(|l| s.evaluate(l)).sum();
            let expect = (t as f64 - 1.0 + prior) / (t as f64 + prior);
            let pmf = pmf_general(t, t, &s).unwrap();
            assert!((pmf.prob(0) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn cap_and_range_errors() {
        let s = ReinforcementSchedule::Constant(1.0);
        assert!(matches!(
            pmf_general(1, 26, &s),
            Err(Error::CapExceeded { span: 26, cap: 25 })
        ));
        assert!(pmf_general(5, 3, &s).is_err());
        assert!(pmf_general(0, 3, &s).is_err());
    }

    #[test]
    fn log_space_path_is_normalized() {
        let pmf = pmf_general(3, 20, &ReinforcementSchedule::LogNatural).unwrap();
        assert!((pmf.probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
