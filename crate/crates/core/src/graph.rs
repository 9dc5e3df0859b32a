//! Graphs grown from draw histories, and the Barabási-Albert baseline.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::history::DrawHistory;
use crate::sampler::{SamplerKind, UrnProcess};
use crate::schedule::ReinforcementSchedule;

/// `G_t`: vertices `1..=t+1`, the self-loop `(1, 1)` and one edge per step.
///
/// The self-loop adds 1 (not 2) to the degree of vertex 1, so that every
/// vertex satisfies `degree = 1 + number of times its color was drawn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolvingGraph {
    // (parent, child) in birth order; edges[0] is the self-loop.
    edges: Vec<(usize, usize)>,
    degrees: Vec<u64>,
}

impl Default for EvolvingGraph {
    fn default() -> Self {
        Self::initial()
    }
}

impl EvolvingGraph {
    /// `G_0`: a single vertex carrying a self-loop.
    pub fn initial() -> Self {
        EvolvingGraph {
            edges: vec![(1, 1)],
            degrees: vec![1],
        }
    }

    fn with_capacity(t: usize) -> Self {
        let mut edges = Vec::with_capacity(t + 1);
        let mut degrees = Vec::with_capacity(t + 1);
        edges.push((1, 1));
        degrees.push(1);
        EvolvingGraph { edges, degrees }
    }

    /// Adds a new vertex attached to `parent`; returns the new vertex.
    pub fn attach(&mut self, parent: usize) -> Result<usize> {
        let n = self.degrees.len();
        if parent == 0 || parent > n {
            return Err(Error::InvalidColor {
                color: parent,
                max: n,
            });
        }
        let child = n + 1;
        self.edges.push((parent, child));
        self.degrees[parent - 1] += 1;
        self.degrees.push(1);
        Ok(child)
    }

    /// Number of attachment steps `t`.
    pub fn time(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.degrees.len()
    }

    /// Edges in birth order, self-loop first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `degrees()[v - 1]` is the degree of vertex `v`.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, vertex: usize) -> Option<u64> {
        vertex
            .checked_sub(1)
            .and_then(|i| self.degrees.get(i).copied())
    }

    /// Vertex `v` enters the graph at time `v - 1`.
    pub fn birth_time(vertex: usize) -> usize {
        vertex - 1
    }

    /// The attachment target of each step, i.e. the draw sequence.
    pub fn parents(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges[1..].iter().map(|&(p, _)| p)
    }

    /// True when the edges other than the self-loop form a spanning tree.
    pub fn is_rooted_tree(&self) -> bool {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut joined = 0;
        for &(u, v) in &self.edges[1..] {
            let (a, b) = (find(&mut parent, u - 1), find(&mut parent, v - 1));
            if a == b {
                return false;
            }
            parent[a] = b;
            joined += 1;
        }
        joined + 1 == n
    }

    pub fn check_invariants(&self) -> Result<()> {
        let t = self.time();
        if self.edges.len() != t + 1 {
            return Err(Error::Invariant(format!(
                "{} edges at time {t}",
                self.edges.len()
            )));
        }
        let total: u64 = self.degrees.iter().sum();
        if total != 2 * t as u64 + 1 {
            return Err(Error::Invariant(format!(
                "degree sum {total} != 2t + 1 = {}",
                2 * t + 1
            )));
        }
        if self.degrees.last() != Some(&1) {
            return Err(Error::Invariant("newest vertex must have degree 1".into()));
        }
        if !self.is_rooted_tree() {
            return Err(Error::Invariant(
                "graph minus the self-loop is not a tree".into(),
            ));
        }
        Ok(())
    }

    /// One `u v` pair per line, 1-indexed, self-loop first.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for &(u, v) in &self.edges {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    /// CSV with header `vertex,degree,birth_time`.
    pub fn write_degree_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "vertex,degree,birth_time")?;
        for (i, d) in self.degrees.iter().enumerate() {
            writeln!(w, "{},{},{}", i + 1, d, i)?;
        }
        Ok(())
    }
}

/// Builds `G_t` from a draw history: the draw at time `n` links vertex
/// `n + 1` to the drawn color's vertex.
pub fn reconstruct_graph(history: &DrawHistory) -> EvolvingGraph {
    let mut g = EvolvingGraph::with_capacity(history.len());
    for &c in history.draws() {
        g.attach(c)
            .expect("validated history only holds in-range colors");
    }
    g
}

/// Samples `t` urn steps from a generator seeded with `seed`.
pub fn generate(
    t: usize,
    schedule: &ReinforcementSchedule,
    seed: u64,
) -> (DrawHistory, EvolvingGraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_with_rng(t, schedule, &mut rng)
}

pub fn generate_with_rng<R: Rng + ?Sized>(
    t: usize,
    schedule: &ReinforcementSchedule,
    rng: &mut R,
) -> (DrawHistory, EvolvingGraph) {
    let mut process = UrnProcess::new(schedule.clone(), SamplerKind::for_horizon(t), t);
    let mut draws = Vec::with_capacity(t);
    let mut graph = EvolvingGraph::with_capacity(t);
    for _ in 0..t {
        let c = process.step(rng);
        draws.push(c);
        graph.attach(c).expect("sampled color is always in range");
    }
    (DrawHistory::from_trusted(schedule.clone(), draws), graph)
}

/// Barabási-Albert growth with one edge per arrival, started from the same
/// single self-looped vertex as the urn model.
///
/// Attachment is sampled by picking a uniformly random edge endpoint. The
/// self-loop contributes a single endpoint, matching its degree convention.
#[derive(Debug, Clone)]
pub struct BarabasiAlbert {
    graph: EvolvingGraph,
    endpoints: Vec<usize>,
}

impl Default for BarabasiAlbert {
    fn default() -> Self {
        Self::new()
    }
}

impl BarabasiAlbert {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(t: usize) -> Self {
        let mut endpoints = Vec::with_capacity(2 * t + 1);
        endpoints.push(1);
        BarabasiAlbert {
            graph: EvolvingGraph::with_capacity(t),
            endpoints,
        }
    }

    pub fn graph(&self) -> &EvolvingGraph {
        &self.graph
    }

    pub fn into_graph(self) -> EvolvingGraph {
        self.graph
    }

    /// Probability of attaching to each vertex at the next step:
    /// `degree_j / (2t + 1)`.
    pub fn attachment_pmf(&self) -> Vec<f64> {
        let total = self.endpoints.len() as f64;
        self.graph
            .degrees()
            .iter()
            .map(|&d| d as f64 / total)
            .collect()
    }

    /// Adds one vertex; returns the vertex it attached to.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let target = self.endpoints[rng.random_range(0..self.endpoints.len())];
        let child = self.graph.attach(target).expect("endpoint is a vertex");
        self.endpoints.push(target);
        self.endpoints.push(child);
        target
    }
}

/// A Barabási-Albert graph after `t` arrivals.
pub fn ba_generate(t: usize, seed: u64) -> EvolvingGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ba_generate_with_rng(t, &mut rng)
}

pub fn ba_generate_with_rng<R: Rng + ?Sized>(t: usize, rng: &mut R) -> EvolvingGraph {
    let mut ba = BarabasiAlbert::with_capacity(t);
    for _ in 0..t {
        ba.step(rng);
    }
    ba.into_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn history(draws: &[usize]) -> DrawHistory {
        DrawHistory::new(ReinforcementSchedule::Constant(1.0), draws.to_vec()).unwrap()
    }

    #[test]
    fn example_graph_from_draws() {
        let g = reconstruct_graph(&history(&[1, 1, 2, 2]));
        assert_eq!(g.edges(), &[(1, 1), (1, 2), (1, 3), (2, 4), (2, 5)]);
        assert_eq!(g.degrees(), &[3, 3, 1, 1, 1]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn empty_history_is_initial_graph() {
        let g = reconstruct_graph(&history(&[]));
        assert_eq!(g, EvolvingGraph::initial());
        assert_eq!(g.degrees(), &[1]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn degrees_are_one_plus_draw_counts() {
        let (h, g) = generate(400, &ReinforcementSchedule::LogNatural, 5);
        let t = h.len();
        for j in 1..=t + 1 {
            let n = h.count_draws(j, t).unwrap() as u64;
            assert_eq!(g.degree(j), Some(1 + n));
        }
        g.check_invariants().unwrap();
    }

    #[test]
    fn generation_is_seeded() {
        let s = ReinforcementSchedule::Constant(1.0);
        let (h1, g1) = generate(250, &s, 17);
        let (h2, g2) = generate(250, &s, 17);
        let (h3, _) = generate(250, &s, 18);
        assert_eq!(h1, h2);
        assert_eq!(g1, g2);
        assert_ne!(h1, h3);
        assert_eq!(reconstruct_graph(&h1), g1);
    }

    #[test]
    fn first_step_always_links_to_vertex_one() {
        for seed in 0..20 {
            let (_, g) = generate(1, &ReinforcementSchedule::Constant(3.0), seed);
            assert_eq!(g.edges(), &[(1, 1), (1, 2)]);
            assert_eq!(ba_generate(1, seed).edges(), &[(1, 1), (1, 2)]);
        }
    }

    #[test]
    fn ba_pmf_is_degree_proportional() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut ba = BarabasiAlbert::new();
        for n in 0..200 {
            let pmf = ba.attachment_pmf();
            let denom = (2 * n + 1) as f64;
            for (p, &d) in pmf.iter().zip(ba.graph().degrees()) {
                assert_eq!(*p, d as f64 / denom);
            }
            ba.step(&mut rng);
        }
        ba.graph().check_invariants().unwrap();
    }

    #[test]
    fn cycle_is_not_a_tree() {
        let g = EvolvingGraph {
            edges: vec![(1, 1), (1, 2), (2, 1)],
            degrees: vec![2, 2],
        };
        assert!(!g.is_rooted_tree());
    }

    #[test]
    fn export_formats() {
        let g = reconstruct_graph(&history(&[1, 1]));
        let mut edges = Vec::new();
        g.write_edge_list(&mut edges).unwrap();
        assert_eq!(String::from_utf8(edges).unwrap(), "1 1\n1 2\n1 3\n");
        let mut csv = Vec::new();
        g.write_degree_csv(&mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "vertex,degree,birth_time\n1,3,0\n2,1,1\n3,1,2\n"
        );
    }
}
