use curveflat::centrality::Measure;
use curveflat::clustering::{gcc1, gcc2};
use curveflat::generators::{generate, GrowthSpec};
use curveflat::isolation::{scenario1, scenario2, IsolationOptions, ThresholdError};
use curveflat::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn ba_degrees_are_heavy_tailed() {
    let heavy = (0..100u64)
        .filter(|&seed| {
            let g = generate(&GrowthSpec::ba(1000, 3, seed)).unwrap();
            let mut deg: Vec<usize> = (0..g.node_count()).map(|i| g.degree(i)).collect();
            deg.sort_unstable();
            let median = (deg[499] + deg[500]) as f64 / 2.0;
            *deg.last().unwrap() as f64 > 10.0 * median
        })
        .count();
    assert!(heavy >= 95, "{heavy}/100");
}

#[test]
fn clustering_rises_with_triad_links() {
    let seeds = 0..20u64;
    let means: Vec<(f64, f64)> = (1..=4)
        .rev()
        .map(|pa| {
            let graphs: Vec<Graph> = seeds
                .clone()
                .map(|s| generate(&GrowthSpec { n: 1000, m: 4, m0_pa: pa, seed: s }).unwrap())
                .collect();
            (
                mean(graphs.iter().map(|g| gcc1::<f64>(g).unwrap())),
                mean(graphs.iter().map(|g| gcc2::<f64>(g).value)),
            )
        })
        .collect();
    for w in means.windows(2) {
        assert!(w[1].0 > w[0].0, "gcc1 {means:?}");
        assert!(w[1].1 > w[0].1, "gcc2 {means:?}");
    }
}

#[test]
fn every_model_keeps_link_budget() {
    for pa in 1..=4 {
        let g = generate(&GrowthSpec { n: 500, m: 4, m0_pa: pa, seed: 3 }).unwrap();
        assert_eq!(g.edge_count(), 10 + 4 * 495);
        assert!(g.is_connected());
    }
}

#[test]
fn scenario1_isolates_five_percent() {
    let g = generate(&GrowthSpec::hk(1000, 4, 1, 5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let out = scenario1::<f64, _>(&g, Measure::Degree, 0.05, 100, &mut rng, &IsolationOptions::default()).unwrap();
    assert_eq!(out.isolated_count, 50);
    assert_eq!(out.plan.targets.len(), 50);
    let after = out.plan.execute(&g).unwrap();
    assert_eq!(after.active_count(), 950);
    assert!(after.is_connected());
    assert!(out.report.mean_distance_after > out.report.mean_distance_before);
}

#[test]
fn threshold_count_is_monotone() {
    let g = generate(&GrowthSpec::hk(300, 4, 2, 9)).unwrap();
    let mut last = 0;
    for threshold in [1.0, 0.9, 0.8, 0.7, 0.6, 0.5] {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let count = match scenario2::<f64, _>(&g, Measure::Degree, threshold, 60, &mut rng, &IsolationOptions::default()) {
            Ok(out) => out.isolated_count,
            Err(ThresholdError::Unreachable(out)) => out.isolated_count + 1,
            Err(ThresholdError::Failed(e)) => panic!("{e}"),
        };
        assert!(count >= last, "threshold {threshold}: {count} < {last}");
        last = count;
    }
}

#[test]
fn recompute_still_respects_guard() {
    let g = generate(&GrowthSpec::ba(300, 2, 2)).unwrap();
    let opts = IsolationOptions { recompute: true, ..IsolationOptions::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let out = scenario1::<f64, _>(&g, Measure::Betweenness, 0.1, 50, &mut rng, &opts).unwrap();
    assert_eq!(out.plan.targets.len(), 30);
    assert!(out.plan.execute(&g).unwrap().is_connected());
}
