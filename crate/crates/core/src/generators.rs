//! Preferential-attachment growth: Barabási–Albert (low clustering) and
//! Holme–Kim triad formation (clustered scale-free).
//!
//! Growth starts from a complete seed graph on `max(m, 2) + 1` nodes. Every new
//! node then adds exactly `m` distinct links: `m0_pa` by degree-proportional
//! attachment and `m - m0_pa` triad links to neighbors of those targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ba,
    Hk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSpec {
    pub n: usize,
    pub m: usize,
    pub m0_pa: usize,
    pub seed: u64,
}

impl GrowthSpec {
    pub fn ba(n: usize, m: usize, seed: u64) -> Self {
        GrowthSpec { n, m, m0_pa: m, seed }
    }

    pub fn hk(n: usize, m: usize, m0_pa: usize, seed: u64) -> Self {
        GrowthSpec { n, m, m0_pa, seed }
    }

    /// Triad links per new node.
    pub fn triad_links(&self) -> usize {
        self.m.saturating_sub(self.m0_pa)
    }

    pub fn model(&self) -> Model {
        if self.m0_pa == self.m {
            Model::Ba
        } else {
            Model::Hk
        }
    }

    /// Size of the complete seed graph growth starts from.
    pub fn seed_nodes(&self) -> usize {
        self.n.min(self.m.max(2) + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidSpec("m must be at least 1".into()));
        }
        if self.n <= self.m {
            return Err(Error::InvalidSpec(format!(
                "n = {} must exceed m = {}",
                self.n, self.m
            )));
        }
        if self.m0_pa == 0 || self.m0_pa > self.m {
            return Err(Error::InvalidSpec(format!(
                "m0_pa = {} must lie in 1..={}",
                self.m0_pa, self.m
            )));
        }
        Ok(())
    }
}

/// Metadata written next to a generated edge list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GrowthMetadata {
    pub model: Model,
    pub spec: GrowthSpec,
    pub seed_graph_nodes: usize,
    pub seed_graph_edges: usize,
    pub nodes: usize,
    pub edges: usize,
}

impl GrowthMetadata {
    pub fn new(spec: &GrowthSpec, g: &Graph) -> Self {
        let s = spec.seed_nodes();
        GrowthMetadata {
            model: spec.model(),
            spec: *spec,
            seed_graph_nodes: s,
            seed_graph_edges: s * (s - 1) / 2,
            nodes: g.node_count(),
            edges: g.edge_count(),
        }
    }
}

pub fn generate_ba(spec: &GrowthSpec) -> Result<Graph> {
    if spec.m0_pa != spec.m {
        return Err(Error::InvalidSpec("BA growth requires m0_pa = m".into()));
    }
    generate(spec)
}

pub fn generate_hk(spec: &GrowthSpec) -> Result<Graph> {
    if spec.m < 2 || spec.m0_pa >= spec.m {
        return Err(Error::InvalidSpec(
            "HK growth requires m >= 2 and 1 <= m0_pa < m".into(),
        ));
    }
    generate(spec)
}

/// Grows a graph with the spec's own seed; BA when `m0_pa == m`, HK otherwise.
pub fn generate(spec: &GrowthSpec) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    generate_with_rng(spec, &mut rng)
}

pub fn generate_with_rng<R: Rng + ?Sized>(spec: &GrowthSpec, rng: &mut R) -> Result<Graph> {
    spec.validate()?;
    let seed_n = spec.seed_nodes();
    let mut g = Graph::new(spec.n);
    // Each node appears once per incident link, so a uniform draw is degree-proportional.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * (seed_n * seed_n + spec.m * spec.n));
    for u in 0..seed_n {
        for v in u + 1..seed_n {
            g.add_edge(u, v);
            endpoints.extend([u, v]);
        }
    }

    let mut linked: Vec<NodeId> = Vec::with_capacity(spec.m);
    let mut eligible: Vec<NodeId> = Vec::new();
    for j in seed_n..spec.n {
        linked.clear();
        while linked.len() < spec.m0_pa {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !linked.contains(&t) {
                linked.push(t);
                g.add_edge(j, t);
            }
        }
        for _ in 0..spec.triad_links() {
            let parent = linked[rng.random_range(0..spec.m0_pa)];
            eligible.clear();
            eligible.extend(
                g.neighbors(parent)
                    .iter()
                    .copied()
                    .filter(|&w| w != j && !linked.contains(&w)),
            );
            let t = if eligible.is_empty() {
                loop {
                    let t = endpoints[rng.random_range(0..endpoints.len())];
                    if !linked.contains(&t) {
                        break t;
                    }
                }
            } else {
                eligible[rng.random_range(0..eligible.len())]
            };
            linked.push(t);
            g.add_edge(j, t);
        }
        for &t in &linked {
            endpoints.extend([j, t]);
        }
    }
    Ok(g)
}
