use std::fs;

use crate::error::{Error, Result};
use crate::schedule::{RationalSegment, ReinforcementSchedule, SegmentForm};

/// Parses a schedule specification.
///
/// | spec | meaning |
/// |------|---------|
/// | `const:<x>` | `Δ_t = x` |
/// | `ln` | `Δ_t = ln t` |
/// | `step:t1=v1,t2=v2,…` | `v_i` on `[t_{i−1}, t_i)`, last value continues |
/// | `rational:e1=v1,e2=a/t,…` | pieces on `(e_{i−1}, e_i]`, constant or `a/t` |
/// | `table:<path>` | one float per line, line `n` is `Δ_n` |
/// | `paper-f`, `paper-g` | the two preset piecewise schedules |
pub fn parse_schedule(spec: &str) -> Result<ReinforcementSchedule> {
    let lead = spec.len() - spec.trim_start().len();
    let spec = spec.trim();
    let schedule = match spec {
        "ln" => ReinforcementSchedule::LogNatural,
        "paper-f" => ReinforcementSchedule::preset_f(),
        "paper-g" => ReinforcementSchedule::preset_g(),
        _ => {
            let Some((kind, body)) = spec.split_once(':') else {
                return Err(parse_err(lead, format!("unrecognised schedule `{spec}`")));
            };
            let offset = lead + kind.len() + 1;
            match kind {
                "const" => ReinforcementSchedule::Constant(parse_value(body, offset)?),
                "step" => parse_step(body, offset)?,
                "rational" => parse_rational(body, offset)?,
                "table" => parse_table(body, offset)?,
                _ => {
                    return Err(parse_err(lead, format!("unknown schedule kind `{kind}`")));
                }
            }
        }
    };
    schedule.validate().map_err(|e| match e {
        Error::Invariant(msg) => parse_err(lead, msg),
        other => other,
    })?;
    Ok(schedule)
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_value(text: &str, position: usize) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| parse_err(position, format!("expected a number, found `{text}`")))?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Range {
            value: v,
            reason: "reinforcement must be finite and >= 0".into(),
        });
    }
    Ok(v)
}

fn parse_time(text: &str, position: usize) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| parse_err(position, format!("expected a time, found `{text}`")))
}

/// Splits `a=b,c=d` into `(key, value, key_offset, value_offset)`.
fn pairs(body: &str, offset: usize) -> Result<Vec<(&str, &str, usize, usize)>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in body.split(',') {
        let Some((k, v)) = item.split_once('=') else {
            return Err(parse_err(
                pos,
                format!("expected `time=value`, found `{item}`"),
            ));
        };
        out.push((k, v, pos, pos + k.len() + 1));
        pos += item.len() + 1;
    }
    Ok(out)
}

fn parse_step(body: &str, offset: usize) -> Result<ReinforcementSchedule> {
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    for (k, v, kp, vp) in pairs(body, offset)? {
        let t = parse_time(k, kp)?;
        if breakpoints.last().is_some_and(|&prev| prev >= t) {
            return Err(parse_err(kp, "breakpoints must ascend"));
        }
        breakpoints.push(t);
        values.push(parse_value(v, vp)?);
    }
    Ok(ReinforcementSchedule::PiecewiseConstant {
        breakpoints,
        values,
    })
}

fn parse_rational(body: &str, offset: usize) -> Result<ReinforcementSchedule> {
    let mut segments: Vec<RationalSegment> = Vec::new();
    for (k, v, kp, vp) in pairs(body, offset)? {
        let end = parse_time(k, kp)?;
        if segments.last().is_some_and(|prev| prev.end >= end) {
            return Err(parse_err(kp, "segment ends must ascend"));
        }
        let form = match v.trim().strip_suffix("/t") {
            Some(a) => SegmentForm::Reciprocal(parse_value(a, vp)?),
            None => SegmentForm::Constant(parse_value(v, vp)?),
        };
        segments.push(RationalSegment { end, form });
    }
    Ok(ReinforcementSchedule::PiecewiseRational { segments })
}

fn parse_table(path: &str, offset: usize) -> Result<ReinforcementSchedule> {
    let path = path.trim();
    if path.is_empty() {
        return Err(parse_err(offset, "table needs a file path"));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            parse_err(
                i + 1,
                format!("{path}: line {} is not a number: `{line}`", i + 1),
            )
        })?;
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Range {
                value: v,
                reason: format!("{path}: line {}", i + 1),
            });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(parse_err(offset, format!("{path} holds no values")));
    }
    Ok(ReinforcementSchedule::TableLookup {
        values,
        source: Some(path.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn presets_and_simple_forms() {
        assert_eq!(parse_schedule("paper-f").unwrap().evaluate(1500), 10.0);
        assert_eq!(parse_schedule("paper-g").unwrap().evaluate(1600), 6.25);
        assert_eq!(parse_schedule("const:1").unwrap().evaluate(77), 1.0);
        assert_eq!(
            parse_schedule(" ln ").unwrap(),
            ReinforcementSchedule::LogNatural
        );
    }

    #[test]
    fn step_matches_preset_f() {
        let s = parse_schedule("step:1000=1,2500=10,5000=100").unwrap();
        assert_eq!(s, ReinforcementSchedule::preset_f());
    }

    #[test]
    fn rational_matches_preset_g() {
        let s =
            parse_schedule("rational:1000=10,2000=10000/t,3000=5,4000=15000/t,5000=3.75").unwrap();
        assert_eq!(s, ReinforcementSchedule::preset_g());
    }

    #[test]
    fn display_round_trips() {
        for spec in [
            "const:0.5",
            "ln",
            "paper-f",
            "paper-g",
            "step:3=1,9=2.5",
            "rational:4=2,8=16/t",
        ] {
            let s = parse_schedule(spec).unwrap();
            assert_eq!(parse_schedule(&s.to_string()).unwrap(), s, "{spec}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_schedule("const:abc") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        match parse_schedule("step:10=1,x=2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_schedule("bogus"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_schedule("step:10=1,5=2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_schedule("const:-1"),
            Err(Error::Range { .. })
        ));
        assert!(matches!(
            parse_schedule("step:10=-2"),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn table_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "0.5\n1.5\n\n2").unwrap();
        let spec = format!("table:{}", f.path().display());
        let s = parse_schedule(&spec).unwrap();
        assert_eq!(s.evaluate(1), 0.5);
        assert_eq!(s.evaluate(3), 2.0);
        assert_eq!(s.to_string(), spec);

        let mut bad = tempfile::NamedTempFile::new().unwrap();
        writeln!(bad, "1\n-3").unwrap();
        assert!(parse_schedule(&format!("table:{}", bad.path().display())).is_err());
        assert!(matches!(
            parse_schedule("table:/definitely/not/here"),
            Err(Error::Io { .. })
        ));
    }
}
