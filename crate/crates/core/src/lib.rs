//! Preferential-attachment graphs grown by an expanding-color Pólya urn.
//!
//! At every step one ball is drawn from the urn, returned together with
//! `Δ_t` reinforcing balls of its color, and a single ball of a brand-new
//! color is added. Each color is a vertex; the draw at step `t` attaches
//! vertex `t + 1` to the drawn vertex. With `Δ_t = 1` the urn composition
//! is exactly the degree-proportional attachment law of the
//! Barabási-Albert model.
//!
//! The crate provides
//!
//! * [`urn`] and [`history`]: the urn process, its composition and draw laws;
//! * [`graph`]: graph reconstruction, sampling, and a Barabási-Albert baseline;
//! * [`exact`]: exact distributions of the per-color draw count `N_{j,t}`;
//! * [`stats`]: replicated Monte Carlo experiments and their summaries;
//! * [`io`]: schedule and config parsing plus result writers.

pub mod error;
pub mod exact;
pub mod fenwick;
pub mod figures;
pub mod graph;
pub mod history;
pub mod io;
pub mod sampler;
pub mod schedule;
pub mod stats;
pub mod urn;

pub use error::{Error, Result};
pub use exact::Pmf;
pub use graph::EvolvingGraph;
pub use history::DrawHistory;
pub use schedule::ReinforcementSchedule;
pub use urn::UrnState;
