//! Frozen experiment configurations for the reference figures.
//!
//! The config files live in `crates/core/figures/` and are compiled in, so
//! a figure name always maps to the same runs.

use crate::error::Result;
use crate::io::{parse_config, ConfigDocument};

/// One Monte Carlo run of a figure, written to its own subdirectory.
#[derive(Debug, Clone, Copy)]
pub struct FigureRun {
    pub label: &'static str,
    pub config: &'static str,
}

impl FigureRun {
    pub fn document(&self) -> Result<ConfigDocument> {
        parse_config(self.config)
    }
}

/// Exact law of `N_{color,horizon}` under constant `delta`, drawn next to
/// the empirical histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOverlay {
    pub color: usize,
    pub horizon: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Figure {
    pub name: &'static str,
    pub description: &'static str,
    pub runs: &'static [FigureRun],
    pub exact: Option<ExactOverlay>,
}

const FIG3: &str = include_str!("../figures/fig3.cfg");
const BA: &str = include_str!("../figures/ba.cfg");
const ONE: &str = include_str!("../figures/polya-one.cfg");
const LN: &str = include_str!("../figures/polya-ln.cfg");
const F: &str = include_str!("../figures/polya-f.cfg");
const G: &str = include_str!("../figures/polya-g.cfg");

const fn run(label: &'static str, config: &'static str) -> FigureRun {
    FigureRun { label, config }
}

pub const FIGURES: &[Figure] = &[
    Figure {
        name: "fig3",
        description: "law of N_{2,12} at unit reinforcement: exact pmf and 1000-run histogram",
        runs: &[run("empirical", FIG3)],
        exact: Some(ExactOverlay {
            color: 2,
            horizon: 12,
            delta: 1.0,
        }),
    },
    Figure {
        name: "degree-one",
        description: "degree distribution, constant unit reinforcement vs preferential attachment",
        runs: &[run("polya", ONE), run("ba", BA)],
        exact: None,
    },
    Figure {
        name: "degree-ln",
        description: "degree distribution, logarithmic reinforcement vs preferential attachment",
        runs: &[run("polya", LN), run("ba", BA)],
        exact: None,
    },
    Figure {
        name: "degree-f",
        description:
            "degree distribution, increasing step reinforcement vs preferential attachment",
        runs: &[run("polya", F), run("ba", BA)],
        exact: None,
    },
    Figure {
        name: "degree-g",
        description: "degree distribution, decreasing reinforcement vs preferential attachment",
        runs: &[run("polya", G), run("ba", BA)],
        exact: None,
    },
    Figure {
        name: "birthtime-all",
        description: "average birth time by degree for every schedule and the baseline",
        runs: &[
            run("one", ONE),
            run("ln", LN),
            run("f", F),
            run("g", G),
            run("ba", BA),
        ],
        exact: None,
    },
];

pub fn figure(name: &str) -> Option<&'static Figure> {
    FIGURES.iter().find(|f| f.name == name)
}

pub fn figure_names() -> impl Iterator<Item = &'static str> {
    FIGURES.iter().map(|f| f.name)
}
