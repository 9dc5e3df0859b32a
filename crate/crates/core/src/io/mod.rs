//! Schedule grammar, config documents and result files.

mod config;
mod output;
mod schedule_spec;

pub use config::{load_config, parse_config, render_config, write_config, ConfigDocument};
pub use output::{write_count_pmf_csv, write_outputs};
pub use schedule_spec::parse_schedule;

/// A float with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::fmt_f64;

    #[test]
    fn round_trips() {
        for x in [1.0 / 3.0, 0.1, 1e-300, 123456.789, 1.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(0.0), "0");
    }
}
