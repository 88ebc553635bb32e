use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph};
use crate::scalar::Scalar;

use super::{CentralityScores, Measure, MeasureParams};

/// `(n_active - 1) / sum of distances`. Requires a connected active subgraph.
pub fn closeness<T: Scalar>(g: &Graph) -> Result<CentralityScores<T>> {
    if g.active_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.connected_components().len(),
        });
    }
    let others = T::of_usize(g.active_count() - 1);
    let scores = (0..g.node_count())
        .into_par_iter()
        .map_init(
            || BfsScratch::new(g.node_count()),
            |scratch, i| {
                if !g.is_active(i) {
                    return T::zero();
                }
                let total: usize = scratch
                    .shells(g, i, None)
                    .iter()
                    .enumerate()
                    .map(|(d, c)| d * c)
                    .sum();
                if total == 0 {
                    T::zero()
                } else {
                    others / T::of_usize(total)
                }
            },
        )
        .collect();
    Ok(CentralityScores::new(Measure::Closeness, g, scores, MeasureParams::default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_path() {
        let s = closeness::<f64>(&Graph::star(4)).unwrap().scores;
        assert_eq!(s[0], 1.0);
        assert!((s[1] - 4.0 / 7.0).abs() < 1e-15);
        let p = closeness::<f64>(&Graph::path(3)).unwrap().scores;
        assert_eq!(p[1], 1.0);
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn disconnected_is_error() {
        let g = Graph::path(3).with_isolated(1).unwrap();
        assert!(matches!(closeness::<f64>(&g), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn inactive_leaf_is_ignored() {
        let g = Graph::star(4).with_isolated(4).unwrap();
        let s = closeness::<f64>(&g).unwrap();
        assert_eq!(s.scores[0], 1.0);
        assert_eq!(s.get(4), None);
    }
}
