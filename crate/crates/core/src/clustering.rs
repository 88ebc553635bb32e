//! Local clustering, average clustering (GCC1) and transitivity (GCC2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport<T> {
    pub local: Vec<T>,
    pub gcc1: T,
    pub gcc2: T,
    pub triads: usize,
    pub triplets: usize,
    /// False when the graph has no connected triple and `gcc2` was set to 0.
    pub gcc2_defined: bool,
}

/// Transitivity together with whether it was defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transitivity<T> {
    pub value: T,
    pub defined: bool,
}

fn count_common_above(a: &[NodeId], b: &[NodeId], floor: NodeId, mut hit: impl FnMut(NodeId)) {
    let (mut i, mut j) = (a.partition_point(|&x| x <= floor), b.partition_point(|&x| x <= floor));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                hit(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Triangles through each node, found by sorted-adjacency intersection.
pub fn node_triangles(g: &Graph) -> Vec<usize> {
    let mut per_node = vec![0usize; g.node_count()];
    for u in 0..g.node_count() {
        let nu = g.neighbors(u);
        for &v in nu.iter().filter(|&&v| v > u) {
            count_common_above(nu, g.neighbors(v), v, |w| {
                per_node[u] += 1;
                per_node[v] += 1;
                per_node[w] += 1;
            });
        }
    }
    per_node
}

pub fn triangle_count(g: &Graph) -> usize {
    node_triangles(g).iter().sum::<usize>() / 3
}

/// Connected triples: sum over nodes of C(k, 2).
pub fn triplet_count(g: &Graph) -> usize {
    (0..g.node_count())
        .map(|i| {
            let k = g.degree(i);
            k * k.saturating_sub(1) / 2
        })
        .sum()
}

fn local_from<T: Scalar>(triangles: usize, degree: usize) -> T {
    if degree <= 1 {
        return T::zero();
    }
    T::of_usize(2 * triangles) / T::of_usize(degree * (degree - 1))
}

/// Fraction of realized links among the neighbors of `i`; 0 for degree ≤ 1.
pub fn local_clustering<T: Scalar>(g: &Graph, i: NodeId) -> Result<T> {
    g.check_active(i)?;
    let ns = g.neighbors(i);
    let mut links = 0usize;
    for (a, &u) in ns.iter().enumerate() {
        let nu = g.neighbors(u);
        links += ns[a + 1..]
            .iter()
            .filter(|&&w| nu.binary_search(&w).is_ok())
            .count();
    }
    Ok(local_from(links, ns.len()))
}

/// Mean local clustering over active nodes.
pub fn gcc1<T: Scalar>(g: &Graph) -> Result<T> {
    let active = g.active_count();
    if active == 0 {
        return Err(Error::EmptyGraph);
    }
    let tri = node_triangles(g);
    let sum: T = g.active_nodes().map(|i| local_from::<T>(tri[i], g.degree(i))).sum();
    Ok(sum / T::of_usize(active))
}

/// `3 * triangles / triplets`; zero with `defined = false` when there are no triplets.
pub fn gcc2<T: Scalar>(g: &Graph) -> Transitivity<T> {
    transitivity_from(triangle_count(g), triplet_count(g))
}

fn transitivity_from<T: Scalar>(triads: usize, triplets: usize) -> Transitivity<T> {
    if triplets == 0 {
        Transitivity {
            value: T::zero(),
            defined: false,
        }
    } else {
        Transitivity {
            value: T::of_usize(3 * triads) / T::of_usize(triplets),
            defined: true,
        }
    }
}

pub fn clustering_report<T: Scalar>(g: &Graph) -> Result<ClusteringReport<T>> {
    let active = g.active_count();
    if active == 0 {
        return Err(Error::EmptyGraph);
    }
    let tri = node_triangles(g);
    let local: Vec<T> = (0..g.node_count())
        .map(|i| local_from(tri[i], g.degree(i)))
        .collect();
    let gcc1 = g.active_nodes().map(|i| local[i]).sum::<T>() / T::of_usize(active);
    let triads = tri.iter().sum::<usize>() / 3;
    let triplets = triplet_count(g);
    let t = transitivity_from::<T>(triads, triplets);
    Ok(ClusteringReport {
        local,
        gcc1,
        gcc2: t.value,
        triads,
        triplets,
        gcc2_defined: t.defined,
    })
}
