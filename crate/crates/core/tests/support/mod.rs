//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use curveflat::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX / 4;

/// Random connected graph: a random recursive tree plus extra random links.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v);
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 50 * (extra + 1) {
        attempts += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if g.add_edge(u, v) {
            added += 1;
        }
    }
    g
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.node_count());
    for (u, v) in g.edges() {
        h.add_edge(perm[u], perm[v]);
    }
    h
}

pub fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

pub fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Floyd–Warshall over active nodes; `INF` for unreachable or inactive.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        if g.is_active(i) {
            d[i][i] = 0;
        }
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn brute_triangles(g: &Graph) -> usize {
    let a = adjacency_matrix(g);
    let n = g.node_count();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !a[i][j] {
                continue;
            }
            for k in j + 1..n {
                if a[i][k] && a[j][k] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Betweenness by explicit enumeration of every shortest path of every pair.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd_warshall(g);
    let a = adjacency_matrix(g);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == INF || d[s][t] < 2 {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == t {
                    paths.push(path);
                    continue;
                }
                for w in 0..n {
                    if a[last][w] && d[w][t] + 1 == d[last][t] {
                        let mut p = path.clone();
                        p.push(w);
                        stack.push(p);
                    }
                }
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

/// Expected force by enumerating ordered transmission sequences, then
/// collapsing sequences that produce the same transmission tree.
pub fn brute_expected_force(g: &Graph, seed: usize) -> f64 {
    let edges = edge_set(g);
    let norm = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut trees: BTreeSet<BTreeSet<(usize, usize)>> = BTreeSet::new();
    for &(u, v) in &edges {
        let first = if u == seed {
            v
        } else if v == seed {
            u
        } else {
            continue;
        };
        let cluster = [seed, first];
        for &(x, y) in &edges {
            let (inside, outside) = if cluster.contains(&x) && !cluster.contains(&y) {
                (x, y)
            } else if cluster.contains(&y) && !cluster.contains(&x) {
                (y, x)
            } else {
                continue;
            };
            let tree: BTreeSet<_> = [norm(seed, first), norm(inside, outside)].into_iter().collect();
            trees.insert(tree);
        }
    }
    let forces: Vec<usize> = trees
        .iter()
        .map(|tree| {
            let nodes: BTreeSet<usize> = tree.iter().flat_map(|&(a, b)| [a, b]).collect();
            edges
                .iter()
                .filter(|&&(a, b)| nodes.contains(&a) != nodes.contains(&b))
                .count()
        })
        .collect();
    let total: usize = forces.iter().sum();
    if total == 0 {
        return 0.0;
    }
    forces
        .iter()
        .filter(|&&f| f > 0)
        .map(|&f| {
            let p = f as f64 / total as f64;
            -p * p.ln()
        })
        .sum()
}

/// Mean shell sizes over every active source, from the all-pairs matrix.
pub fn brute_exhaustive_curve(g: &Graph) -> Vec<f64> {
    let d = floyd_warshall(g);
    let sources: Vec<usize> = (0..g.node_count()).filter(|&i| g.is_active(i)).collect();
    let mut hist: Vec<f64> = Vec::new();
    for &s in &sources {
        for &t in &sources {
            let dist = d[s][t];
            if dist == INF {
                continue;
            }
            if hist.len() <= dist {
                hist.resize(dist + 1, 0.0);
            }
            hist[dist] += 1.0;
        }
    }
    hist.iter().map(|c| c / sources.len() as f64).collect()
}

pub fn brute_diameter(g: &Graph) -> usize {
    floyd_warshall(g)
        .iter()
        .flatten()
        .copied()
        .filter(|&d| d != INF)
        .max()
        .unwrap_or(0)
}

/// Katz scores from the dense matrix series `sum_{t>=1} kappa^t A^t 1`.
pub fn dense_katz(g: &Graph, kappa: f64) -> Vec<f64> {
    let n = g.node_count();
    let a = adjacency_matrix(g);
    let mut term = vec![1.0; n];
    let mut total = vec![0.0; n];
    for _ in 0..10_000 {
        let next: Vec<f64> = (0..n)
            .map(|i| kappa * (0..n).filter(|&j| a[i][j]).map(|j| term[j]).sum::<f64>())
            .collect();
        let size = next.iter().fold(0.0f64, |m, &x| m.max(x));
        for i in 0..n {
            total[i] += next[i];
        }
        term = next;
        if size < 1e-18 {
            break;
        }
    }
    total
}

/// Adaptive Gauss–Legendre (5-point) quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683,
        0.538_469_310_105_683,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
        0.236_926_885_056_189,
    ];
    fn gl(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        h * X.iter().zip(W).map(|(&x, w)| w * f(c + h * x)).sum::<f64>()
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (l, r) = (gl(f, a, m), gl(f, m, b));
        if depth == 0 || (l + r - whole).abs() <= tol {
            l + r
        } else {
            rec(f, a, m, l, tol / 2.0, depth - 1) + rec(f, m, b, r, tol / 2.0, depth - 1)
        }
    }
    rec(f, a, b, gl(f, a, b), tol, 40)
}
