mod support;

use curveflat::centrality::{compute, pagerank, CentralityOptions, Measure};
use curveflat::clustering::{gcc1, gcc2, local_clustering};
use curveflat::edgelist::{format_edge_list, parse_edge_list};
use curveflat::Graph;
use proptest::prelude::*;
use support::*;

fn connected_graph() -> impl Strategy<Value = Graph> {
    (3usize..40, 0usize..60, any::<u64>()).prop_map(|(n, extra, seed)| random_connected(n, extra, seed))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scores_follow_relabelling(g in connected_graph(), perm_seed in any::<u64>()) {
        let perm = random_perm(g.node_count(), perm_seed);
        let h = relabel(&g, &perm);
        let opts = CentralityOptions::default();
        for m in Measure::ALL {
            let a = compute::<f64>(&g, m, &opts).unwrap().scores;
            let b = compute::<f64>(&h, m, &opts).unwrap().scores;
            for i in 0..g.node_count() {
                prop_assert!(close(a[i], b[perm[i]]), "{m} node {i}: {} vs {}", a[i], b[perm[i]]);
            }
        }
    }

    #[test]
    fn pagerank_is_a_distribution(g in connected_graph(), damping in 0.05f64..0.95) {
        let s = pagerank::<f64>(&g, damping).unwrap().scores;
        prop_assert!(s.iter().all(|&x| x > 0.0));
        prop_assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn katz_converges_to_series(g in connected_graph(), frac in 0.05f64..0.95) {
        let lambda = curveflat::centrality::spectral_radius::<f64>(&g);
        let got = curveflat::centrality::katz::<f64>(&g, frac / lambda).unwrap();
        let want = dense_katz(&g, frac / lambda);
        let scale = want.iter().fold(1.0f64, |m, &x| m.max(x));
        let tol = got.params.tolerance.unwrap();
        for (a, b) in got.scores.iter().zip(&want) {
            prop_assert!((a - b).abs() <= 100.0 * tol + 1e-9 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn bfs_is_a_metric(g in connected_graph()) {
        let n = g.node_count();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|s| g.bfs_distances(s).unwrap().dist.into_iter().map(Option::unwrap).collect())
            .collect();
        for s in 0..n {
            prop_assert_eq!(rows[s][s], 0);
            for t in 0..n {
                prop_assert_eq!(rows[s][t], rows[t][s]);
            }
            for (u, v) in g.edges() {
                prop_assert!(rows[s][u].abs_diff(rows[s][v]) <= 1);
            }
        }
    }

    #[test]
    fn isolation_never_shortens_paths(g in connected_graph(), pick in any::<usize>()) {
        let candidates: Vec<usize> = (0..g.node_count()).filter(|&i| g.stays_connected_without(i)).collect();
        prop_assume!(!candidates.is_empty());
        let target = candidates[pick % candidates.len()];
        let before = floyd_warshall(&g);
        let h = g.with_isolated(target).unwrap();
        prop_assert!(h.is_connected());
        let after = floyd_warshall(&h);
        for s in h.active_nodes() {
            for t in h.active_nodes() {
                prop_assert!(after[s][t] >= before[s][t]);
            }
        }
    }

    #[test]
    fn clustering_in_unit_interval(g in connected_graph()) {
        for i in 0..g.node_count() {
            let c = local_clustering::<f64>(&g, i).unwrap();
            prop_assert!((0.0..=1.0).contains(&c));
        }
        prop_assert!((0.0..=1.0).contains(&gcc1::<f64>(&g).unwrap()));
        prop_assert!((0.0..=1.0).contains(&gcc2::<f64>(&g).value));
    }

    #[test]
    fn edge_list_round_trip(g in connected_graph()) {
        let pairs = parse_edge_list(&format_edge_list(&g)).unwrap();
        let (h, drops) = Graph::from_edge_list(&pairs).unwrap();
        prop_assert_eq!(drops.duplicates + drops.self_loops, 0);
        prop_assert_eq!(edge_set(&g), edge_set(&h));
    }

    #[test]
    fn cycles_score_uniformly(n in 3usize..40) {
        let g = Graph::cycle(n);
        for m in Measure::ALL {
            let s = compute::<f64>(&g, m, &CentralityOptions::default()).unwrap().scores;
            prop_assert!(s.iter().all(|&x| close(x, s[0])), "{m}: {s:?}");
        }
    }

    #[test]
    fn complete_graphs_score_uniformly(n in 3usize..16) {
        let g = Graph::complete(n);
        let opts = CentralityOptions { kappa: 0.5 / n as f64, ..CentralityOptions::default() };
        for m in Measure::ALL {
            let s = compute::<f64>(&g, m, &opts).unwrap().scores;
            prop_assert!(s.iter().all(|&x| close(x, s[0])), "{m}: {s:?}");
        }
    }
}
