//! Reinforcement schedules `t ↦ Δ_t`.

use std::fmt;

use crate::error::{Error, Result};

/// One piece of a [`ReinforcementSchedule::PiecewiseRational`] schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentForm {
    /// `Δ_t = c`
    Constant(f64),
    /// `Δ_t = a / t`
    Reciprocal(f64),
}

impl SegmentForm {
    fn at(self, t: u64) -> f64 {
        match self {
            SegmentForm::Constant(c) => c,
            SegmentForm::Reciprocal(a) => {
                if t == 0 {
                    // a/0 is never consumed; keep evaluate() finite.
                    0.0
                } else {
                    a / t as f64
                }
            }
        }
    }

    fn coefficient(self) -> f64 {
        match self {
            SegmentForm::Constant(c) | SegmentForm::Reciprocal(c) => c,
        }
    }
}

/// A segment covering `(previous end, end]`; the last segment extends to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalSegment {
    pub end: u64,
    pub form: SegmentForm,
}

/// The reinforcement mass `Δ_t ≥ 0` added to the drawn color at step `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReinforcementSchedule {
    Constant(f64),
    /// `Δ_t = ln t`, so `Δ_1 = 0`.
    LogNatural,
    /// `values[i]` applies on `[breakpoints[i-1], breakpoints[i])` with an
    /// implicit leading breakpoint of 0. The last value also covers every
    /// time past the final breakpoint.
    PiecewiseConstant {
        breakpoints: Vec<u64>,
        values: Vec<f64>,
    },
    /// Segments with inclusive upper ends; a shared endpoint belongs to the
    /// earlier segment.
    PiecewiseRational {
        segments: Vec<RationalSegment>,
    },
    /// `values[n - 1] = Δ_n`. Times past the table reuse the last entry.
    TableLookup {
        values: Vec<f64>,
        source: Option<String>,
    },
}

impl ReinforcementSchedule {
    pub fn constant(delta: f64) -> Result<Self> {
        let s = ReinforcementSchedule::Constant(delta);
        s.validate()?;
        Ok(s)
    }

    /// Increasing step function: 1 below t = 1000, 10 up to 2500, then 100.
    pub fn preset_f() -> Self {
        ReinforcementSchedule::PiecewiseConstant {
            breakpoints: vec![1000, 2500, 5000],
            values: vec![1.0, 10.0, 100.0],
        }
    }

    /// Decreasing schedule: 10, then 10⁴/t, 5, 15·10³/t and finally 3.75,
    /// switching at t = 1000, 2000, 3000 and 4000.
    pub fn preset_g() -> Self {
        use SegmentForm::*;
        let seg = |end, form| RationalSegment { end, form };
        ReinforcementSchedule::PiecewiseRational {
            segments: vec![
                seg(1000, Constant(10.0)),
                seg(2000, Reciprocal(1.0e4)),
                seg(3000, Constant(5.0)),
                seg(4000, Reciprocal(15.0e3)),
                seg(5000, Constant(3.75)),
            ],
        }
    }

    /// `Δ_t`. Defined for every `t`; `t = 0` is accepted but never consumed
    /// by the urn.
    pub fn evaluate(&self, t: u64) -> f64 {
        match self {
            ReinforcementSchedule::Constant(d) => *d,
            ReinforcementSchedule::LogNatural => {
                if t == 0 {
                    0.0
                } else {
                    (t as f64).ln()
                }
            }
            ReinforcementSchedule::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let idx = breakpoints.partition_point(|&b| b <= t);
                values[idx.min(values.len() - 1)]
            }
            ReinforcementSchedule::PiecewiseRational { segments } => {
                let idx = segments.partition_point(|s| s.end < t);
                segments[idx.min(segments.len() - 1)].form.at(t)
            }
            ReinforcementSchedule::TableLookup { values, .. } => {
                let idx = (t.max(1) - 1) as usize;
                values[idx.min(values.len() - 1)]
            }
        }
    }

    /// The constant `Δ` when the schedule is constant.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            ReinforcementSchedule::Constant(d) => Some(*d),
            _ => None,
        }
    }

    /// Checks that every value is finite and non-negative and that
    /// breakpoints ascend.
    pub fn validate(&self) -> Result<()> {
        fn check(v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::Range {
                    value: v,
                    reason: "reinforcement must be finite and >= 0".into(),
                })
            }
        }
        match self {
            ReinforcementSchedule::Constant(d) => check(*d),
            ReinforcementSchedule::LogNatural => Ok(()),
            ReinforcementSchedule::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                if values.is_empty() || values.len() != breakpoints.len() {
                    return Err(Error::Invariant(
                        "piecewise schedule needs one value per breakpoint".into(),
                    ));
                }
                if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Invariant("breakpoints must ascend".into()));
                }
                values.iter().try_for_each(|&v| check(v))
            }
            ReinforcementSchedule::PiecewiseRational { segments } => {
                if segments.is_empty() {
                    return Err(Error::Invariant("rational schedule has no segments".into()));
                }
                if segments.windows(2).any(|w| w[0].end >= w[1].end) {
                    return Err(Error::Invariant("segment ends must ascend".into()));
                }
                segments
                    .iter()
                    .try_for_each(|s| check(s.form.coefficient()))
            }
            ReinforcementSchedule::TableLookup { values, .. } => {
                if values.is_empty() {
                    return Err(Error::Invariant("table schedule is empty".into()));
                }
                values.iter().try_for_each(|&v| check(v))
            }
        }
    }

    /// Tabulates `Δ_1..=Δ_horizon` and their running sums.
    pub fn table(&self, horizon: usize) -> DeltaTable {
        DeltaTable::new(self, horizon)
    }
}

impl fmt::Display for ReinforcementSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::preset_f() {
            return f.write_str("paper-f");
        }
        if *self == Self::preset_g() {
            return f.write_str("paper-g");
        }
        match self {
            ReinforcementSchedule::Constant(d) => write!(f, "const:{d}"),
            ReinforcementSchedule::LogNatural => f.write_str("ln"),
            ReinforcementSchedule::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                f.write_str("step:")?;
                for (i, (b, v)) in breakpoints.iter().zip(values).enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{b}={v}")?;
                }
                Ok(())
            }
            ReinforcementSchedule::PiecewiseRational { segments } => {
                f.write_str("rational:")?;
                for (i, s) in segments.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    match s.form {
                        SegmentForm::Constant(c) => write!(f, "{}={c}", s.end)?,
                        SegmentForm::Reciprocal(a) => write!(f, "{}={a}/t", s.end)?,
                    }
                }
                Ok(())
            }
            ReinforcementSchedule::TableLookup { source, values } => match source {
                Some(path) => write!(f, "table:{path}"),
                None => write!(f, "table:<{} inline values>", values.len()),
            },
        }
    }
}

/// `Δ_n` and `S_n = Σ_{m ≤ n} Δ_m` for `n = 0..=horizon`, with `Δ_0 = S_0 = 0`.
#[derive(Debug, Clone)]
pub struct DeltaTable {
    delta: Vec<f64>,
    cumsum: Vec<f64>,
}

impl DeltaTable {
    pub fn new(schedule: &ReinforcementSchedule, horizon: usize) -> Self {
        let mut delta = Vec::with_capacity(horizon + 1);
        let mut cumsum = Vec::with_capacity(horizon + 1);
        delta.push(0.0);
        cumsum.push(0.0);
        let mut acc = 0.0;
        for n in 1..=horizon {
            let d = schedule.evaluate(n as u64);
            acc += d;
            delta.push(d);
            cumsum.push(acc);
        }
        DeltaTable { delta, cumsum }
    }

    pub fn horizon(&self) -> usize {
        self.delta.len() - 1
    }

    /// `Δ_n`.
    pub fn delta(&self, n: usize) -> f64 {
        self.delta[n]
    }

    /// `Σ_{m=1}^{n} Δ_m`.
    pub fn sum_through(&self, n: usize) -> f64 {
        self.cumsum[n]
    }

    /// Total urn mass after `n` steps: `1 + n + S_n`.
    pub fn total_mass(&self, n: usize) -> f64 {
        1.0 + n as f64 + self.cumsum[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_constant() {
        let s = ReinforcementSchedule::constant(2.5).unwrap();
        for t in [0, 1, 7, 10_000] {
            assert_eq!(s.evaluate(t), 2.5);
        }
    }

    #[test]
    fn log_natural_starts_at_zero() {
        let s = ReinforcementSchedule::LogNatural;
        assert_eq!(s.evaluate(1), 0.0);
        assert!((s.evaluate(3) - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn preset_f_steps() {
        let f = ReinforcementSchedule::preset_f();
        assert_eq!(f.evaluate(0), 1.0);
        assert_eq!(f.evaluate(999), 1.0);
        assert_eq!(f.evaluate(1000), 10.0);
        assert_eq!(f.evaluate(1500), 10.0);
        assert_eq!(f.evaluate(2499), 10.0);
        assert_eq!(f.evaluate(2500), 100.0);
        assert_eq!(f.evaluate(5000), 100.0);
        assert_eq!(f.evaluate(9000), 100.0);
    }

    #[test]
    fn preset_g_pieces() {
        let g = ReinforcementSchedule::preset_g();
        assert_eq!(g.evaluate(1), 10.0);
        assert_eq!(g.evaluate(1000), 10.0);
        assert_eq!(g.evaluate(1600), 6.25);
        assert_eq!(g.evaluate(2000), 5.0);
        assert_eq!(g.evaluate(2500), 5.0);
        assert_eq!(g.evaluate(3000), 5.0);
        assert_eq!(g.evaluate(3200), 15.0e3 / 3200.0);
        assert_eq!(g.evaluate(4000), 3.75);
        assert_eq!(g.evaluate(4500), 3.75);
        assert_eq!(g.evaluate(7000), 3.75);
    }

    #[test]
    fn negative_constant_rejected() {
        assert!(matches!(
            ReinforcementSchedule::constant(-1.0),
            Err(Error::Range { .. })
        ));
        assert!(ReinforcementSchedule::constant(f64::NAN).is_err());
    }

    #[test]
    fn table_extends_last_value() {
        let s = ReinforcementSchedule::TableLookup {
            values: vec![0.5, 1.5],
            source: None,
        };
        assert_eq!(s.evaluate(1), 0.5);
        assert_eq!(s.evaluate(2), 1.5);
        assert_eq!(s.evaluate(3), 1.5);
    }

    #[test]
    fn delta_table_sums() {
        let t = ReinforcementSchedule::Constant(2.0).table(4);
        assert_eq!(t.horizon(), 4);
        assert_eq!(t.delta(0), 0.0);
        assert_eq!(t.sum_through(3), 6.0);
        assert_eq!(t.total_mass(3), 10.0);
    }
}
