use crate::graph::{Graph, NodeId, UNREACHED};
use crate::par::chunked_accumulate;
use crate::scalar::Scalar;

use super::{CentralityScores, Measure, MeasureParams};

struct Brandes<T> {
    dist: Vec<u32>,
    sigma: Vec<T>,
    delta: Vec<T>,
    order: Vec<NodeId>,
}

impl<T: Scalar> Brandes<T> {
    fn new(n: usize) -> Self {
        Brandes {
            dist: vec![UNREACHED; n],
            sigma: vec![T::zero(); n],
            delta: vec![T::zero(); n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds the dependencies of source `s` to `acc`.
    fn accumulate(&mut self, g: &Graph, s: NodeId, acc: &mut [T]) {
        for &v in &self.order {
            self.dist[v] = UNREACHED;
            self.sigma[v] = T::zero();
            self.delta[v] = T::zero();
        }
        self.order.clear();
        self.dist[s] = 0;
        self.sigma[s] = T::one();
        self.order.push(s);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if self.dist[w] == UNREACHED {
                    self.dist[w] = self.dist[v] + 1;
                    self.order.push(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    let sv = self.sigma[v];
                    self.sigma[w] = self.sigma[w] + sv;
                }
            }
        }
        // Predecessors are the neighbors one level closer, so no lists are stored.
        for &w in self.order.iter().rev() {
            let coeff = (T::one() + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if self.dist[v] != UNREACHED && self.dist[v] + 1 == self.dist[w] {
                    self.delta[v] = self.delta[v] + self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] = acc[w] + self.delta[w];
            }
        }
    }
}

/// Unnormalized shortest-path betweenness (Brandes accumulation). Each
/// unordered pair counts once; endpoints excluded.
pub fn betweenness<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let n = g.node_count();
    let sources: Vec<NodeId> = g.active_nodes().collect();
    let mut scores = chunked_accumulate(
        &sources,
        || Brandes::<T>::new(n),
        || vec![T::zero(); n],
        |b, acc, &s| b.accumulate(g, s, acc),
        |total, part| total.iter_mut().zip(part).for_each(|(t, p)| *t = *t + p),
    );
    let half = T::of(0.5);
    scores.iter_mut().for_each(|x| *x = *x * half);
    CentralityScores::new(Measure::Betweenness, g, scores, MeasureParams::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_star() {
        assert_eq!(betweenness::<f64>(&Graph::path(3)).scores, vec![0.0, 1.0, 0.0]);
        let s = betweenness::<f64>(&Graph::star(4)).scores;
        assert_eq!(s[0], 6.0);
        assert!(s[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn fractional_credit_on_square() {
        // C4: each node lies on one of two shortest paths between its two neighbors.
        let s = betweenness::<f64>(&Graph::cycle(4)).scores;
        assert!(s.iter().all(|&x| (x - 0.5).abs() < 1e-15));
    }

    #[test]
    fn disconnected_pairs_contribute_nothing() {
        let (g, _) = Graph::from_edge_list(&[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let s = betweenness::<f32>(&g).scores;
        assert_eq!(s, vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0]);
    }
}
