//! Undirected simple graph with dense node ids and an activity mask.
//!
//! Isolating a node cuts every incident link and marks the node inactive. The
//! node keeps its id, so rankings computed on the intact graph stay aligned
//! with later states of the same graph.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    active: Vec<bool>,
    edges: usize,
}

/// Counts of input pairs discarded while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropStats {
    pub duplicates: usize,
    pub self_loops: usize,
}

/// Hop distances from one source. `None` marks an unreachable (or inactive) node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: NodeId,
    pub dist: Vec<Option<u32>>,
}

impl DistanceVector {
    pub fn reachable(&self) -> usize {
        self.dist.iter().filter(|d| d.is_some()).count()
    }

    pub fn max_finite(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Reusable BFS buffers; avoids reallocating per source in all-pairs passes.
#[derive(Debug, Clone)]
pub(crate) struct BfsScratch {
    pub dist: Vec<u32>,
    queue: Vec<NodeId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Runs BFS from `source` and returns shell sizes indexed by distance.
    /// `skip` is treated as inactive for this pass only.
    pub fn shells(&mut self, g: &Graph, source: NodeId, skip: Option<NodeId>) -> Vec<usize> {
        self.dist.iter_mut().for_each(|d| *d = UNREACHED);
        self.queue.clear();
        let mut shells = vec![1usize];
        self.dist[source] = 0;
        self.queue.push(source);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let next = self.dist[v] + 1;
            for &w in &g.adjacency[v] {
                if self.dist[w] == UNREACHED && Some(w) != skip {
                    self.dist[w] = next;
                    if shells.len() <= next as usize {
                        shells.push(0);
                    }
                    shells[next as usize] += 1;
                    self.queue.push(w);
                }
            }
        }
        shells
    }

    /// Nodes visited by the most recent pass, in BFS order.
    pub fn visited(&self) -> &[NodeId] {
        &self.queue
    }
}

impl Graph {
    /// Graph with `n` active nodes and no links.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            active: vec![true; n],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Star with node 0 as the center and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// Builds a simple undirected graph from node pairs; `n` is the largest id plus one.
    pub fn from_edge_list(pairs: &[(NodeId, NodeId)]) -> Result<(Graph, DropStats)> {
        let n = pairs
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .ok_or(Error::EmptyGraph)?;
        let mut g = Graph::new(n);
        let mut stats = DropStats::default();
        for &(u, v) in pairs {
            if u == v {
                stats.self_loops += 1;
            } else if !g.add_edge(u, v) {
                stats.duplicates += 1;
            }
        }
        Ok((g, stats))
    }

    /// Inserts the link `u`–`v`, keeping neighbor lists sorted. Returns `false`
    /// for self-loops, existing links, or links touching an inactive node.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        if u == v || !self.active[u] || !self.active[v] {
            return false;
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edges += 1;
                true
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn is_active(&self, i: NodeId) -> bool {
        self.active.get(i).copied().unwrap_or(false)
    }

    pub fn active_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).filter(move |&i| self.active[i])
    }

    /// Sorted effective neighbors; empty for inactive nodes.
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each link once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_active(&self, i: NodeId) -> Result<()> {
        if i >= self.node_count() {
            Err(Error::NodeOutOfRange(i))
        } else if !self.active[i] {
            Err(Error::InactiveNode(i))
        } else {
            Ok(())
        }
    }

    pub fn bfs_distances(&self, source: NodeId) -> Result<DistanceVector> {
        self.check_active(source)?;
        let mut scratch = BfsScratch::new(self.node_count());
        scratch.shells(self, source, None);
        let dist = scratch
            .dist
            .iter()
            .map(|&d| (d != UNREACHED).then_some(d))
            .collect();
        Ok(DistanceVector { source, dist })
    }

    /// Cuts every link of `i` and marks it inactive.
    pub fn isolate_node(&mut self, i: NodeId) -> Result<()> {
        if i >= self.node_count() {
            return Err(Error::NodeOutOfRange(i));
        }
        if !self.active[i] {
            return Err(Error::DoubleIsolation(i));
        }
        let neighbors = std::mem::take(&mut self.adjacency[i]);
        for &v in &neighbors {
            let pos = self.adjacency[v]
                .binary_search(&i)
                .expect("adjacency is symmetric");
            self.adjacency[v].remove(pos);
        }
        self.edges -= neighbors.len();
        self.active[i] = false;
        Ok(())
    }

    /// Copy of the graph with `i` isolated.
    pub fn with_isolated(&self, i: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.isolate_node(i)?;
        Ok(g)
    }

    /// Connected components over active nodes, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in self.active_nodes() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// True when all active nodes form one component. A graph with no active
    /// nodes is not connected.
    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Whether the active subgraph stays connected once `i` is isolated.
    pub fn stays_connected_without(&self, i: NodeId) -> bool {
        self.connected_without(Some(i))
    }

    fn connected_without(&self, skip: Option<NodeId>) -> bool {
        let Some(start) = self.active_nodes().find(|&v| Some(v) != skip) else {
            return false;
        };
        let target = self.active_count() - usize::from(skip.is_some_and(|s| self.is_active(s)));
        let mut scratch = BfsScratch::new(self.node_count());
        scratch.shells(self, start, skip);
        scratch.visited().len() == target
    }

    /// Largest hop distance between two active nodes.
    pub fn diameter(&self) -> Result<usize> {
        if self.active_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected {
                components: self.connected_components().len(),
            });
        }
        let sources: Vec<NodeId> = self.active_nodes().collect();
        let ecc = sources
            .par_iter()
            .map_init(
                || BfsScratch::new(self.node_count()),
                |scratch, &s| scratch.shells(self, s, None).len() - 1,
            )
            .max()
            .unwrap_or(0);
        Ok(ecc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dists(g: &Graph, s: NodeId) -> Vec<Option<u32>> {
        g.bfs_distances(s).unwrap().dist
    }

    #[test]
    fn edge_list_builds_path() {
        let (g, stats) = Graph::from_edge_list(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(stats, DropStats::default());
    }

    #[test]
    fn edge_list_drops_duplicates_and_loops() {
        let (g, stats) = Graph::from_edge_list(&[(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(stats.duplicates, 1);
        assert_eq!(stats.self_loops, 1);
    }

    #[test]
    fn empty_edge_list_is_error() {
        assert!(matches!(Graph::from_edge_list(&[]), Err(Error::EmptyGraph)));
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(dists(&Graph::path(3), 0), vec![Some(0), Some(1), Some(2)]);
        let star = dists(&Graph::star(4), 0);
        assert_eq!(star, vec![Some(0), Some(1), Some(1), Some(1), Some(1)]);
        let k4 = dists(&Graph::complete(4), 2);
        assert_eq!(k4.iter().filter(|d| **d == Some(0)).count(), 1);
        assert_eq!(k4.iter().filter(|d| **d == Some(1)).count(), 3);
    }

    #[test]
    fn bfs_from_inactive_source_fails() {
        let mut g = Graph::path(3);
        g.isolate_node(1).unwrap();
        assert!(matches!(g.bfs_distances(1), Err(Error::InactiveNode(1))));
        assert_eq!(dists(&g, 0), vec![Some(0), None, None]);
    }

    #[test]
    fn isolation_examples() {
        let mut star = Graph::star(4);
        star.isolate_node(0).unwrap();
        assert_eq!(star.active_count(), 4);
        assert_eq!(star.edge_count(), 0);
        assert_eq!(star.node_count(), 5);

        let mut k4 = Graph::complete(4);
        k4.isolate_node(3).unwrap();
        assert_eq!(k4.edge_count(), 3);
        for u in 0..3 {
            assert_eq!(k4.degree(u), 2);
        }

        let mut p3 = Graph::path(3);
        p3.isolate_node(1).unwrap();
        assert!(p3.is_active(0) && p3.is_active(2));
        assert!(!p3.is_connected());
        assert!(matches!(p3.isolate_node(1), Err(Error::DoubleIsolation(1))));
    }

    #[test]
    fn connectivity_examples() {
        let p3 = Graph::path(3);
        assert!(p3.is_connected());
        assert_eq!(p3.connected_components(), vec![vec![0, 1, 2]]);
        let cut = p3.with_isolated(1).unwrap();
        assert_eq!(cut.connected_components(), vec![vec![0], vec![2]]);
        assert!(!p3.stays_connected_without(1));
        assert!(p3.stays_connected_without(0));

        let (two, _) =
            Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.connected_components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(Graph::complete(4).diameter().unwrap(), 1);
        assert_eq!(Graph::path(3).diameter().unwrap(), 2);
        assert_eq!(Graph::cycle(6).diameter().unwrap(), 3);
        let cut = Graph::path(3).with_isolated(1).unwrap();
        assert!(matches!(cut.diameter(), Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn edge_count_matches_degree_sum() {
        let mut g = Graph::complete(6);
        g.isolate_node(2).unwrap();
        let degree_sum: usize = (0..6).map(|i| g.degree(i)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
        assert_eq!(g.edges().count(), g.edge_count());
    }
}
