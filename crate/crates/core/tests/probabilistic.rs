use bicolor::constructions::ramsey_blowup;
use bicolor::probabilistic::*;
use bicolor::{BicoloredGraph, Color};
use num_rational::Ratio;

/// K6 with 7 red and 8 blue edges: red 01 02 03 12 14 35 45.
fn k6_coloring() -> BicoloredGraph {
    let red = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 5), (4, 5)];
    BicoloredGraph::complete_with(6, |u, v| if red.contains(&(u, v)) { Color::Red } else { Color::Blue })
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let g = ramsey_blowup(&k6_coloring(), 20).unwrap();
    let cfg = SamplerConfig { epsilon_prime: Ratio::new(1, 4), k: 12, c: 8.0, seed: 42, trials: 200 };
    let a = pool(1).install(|| balanced_clique_sample(&g, &cfg).unwrap().1);
    let b = pool(4).install(|| balanced_clique_sample(&g, &cfg).unwrap().1);
    assert_eq!(a.outcomes, b.outcomes);
    let h = BicoloredGraph::complete_with(8, |u, v| if (u + 2 * v) % 3 == 0 { Color::Red } else { Color::Blue });
    let a = pool(1).install(|| permutation_clique_trials(&h, 9, 100).unwrap().1);
    let b = pool(3).install(|| permutation_clique_trials(&h, 9, 100).unwrap().1);
    assert_eq!(a.outcomes, b.outcomes);
}

#[test]
fn sampled_sets_are_cliques() {
    let g = ramsey_blowup(&k6_coloring(), 30).unwrap();
    let cfg = SamplerConfig { epsilon_prime: Ratio::new(1, 4), k: 12, c: 8.0, seed: 1, trials: 300 };
    let (first, report) = balanced_clique_sample(&g, &cfg).unwrap();
    let t = first.expect("some trial succeeds");
    assert!(g.is_clique(&t, None));
    assert!(report.success_rate > 0.0);
    for o in &report.outcomes {
        // a blow-up clique has at most one vertex per part
        assert!(o.size <= 6);
        assert_eq!(o.e_red + o.e_blue, (o.size * o.size.saturating_sub(1) / 2) as u64);
    }
}

#[test]
fn permutation_clique_mean_matches_expectation() {
    let g = BicoloredGraph::complete_with(9, |u, v| if (u * v) % 4 == 1 { Color::Red } else { Color::Blue });
    let mut g = g;
    for (u, v) in [(0, 1), (2, 5), (3, 7), (4, 8), (1, 6)] {
        g.remove_edge(u, v);
    }
    let (runs, r) = permutation_clique_trials(&g, 17, 5000).unwrap();
    assert_eq!(r.successes, 5000);
    assert!(runs.iter().all(|x| g.is_clique(&x.s, None)));
    assert!(r.stats["z_s"].abs() < 3.0, "{:?}", r.stats);
}

#[test]
fn cluster_coloring_deviation() {
    let spec = ClusterColoringSpec::random_admissible(100, 0.1, 0.01, 3);
    let (_, r) = random_cluster_coloring_trials(&spec, 3, 300).unwrap();
    assert!(r.success_rate >= 3.0 / 7.0);
    for g in ["0.05", "0.1"] {
        let tail = r.stats[&format!("tail_{g}")];
        let bound = r.stats[&format!("chernoff_{g}")];
        assert!(tail <= bound + 0.05, "gamma {g}: {tail} > {bound}");
    }
}

#[test]
fn cluster_hypothesis_is_checked() {
    let spec = ClusterColoringSpec { k: 10, epsilon: 0.3, epsilon0: 0.1, densities: vec![(0.4, 0.2); 45] };
    assert!(matches!(random_cluster_coloring(&spec, 0), Err(bicolor::Error::HypothesisViolated(_))));
    let spec = ClusterColoringSpec { k: 5, epsilon: 0.1, epsilon0: 0.1, densities: vec![(0.5, 0.5); 10] };
    assert!(random_cluster_coloring(&spec, 0).is_err());
}

#[test]
fn zero_density_pairs_are_skipped() {
    let mut densities = vec![(0.5, 0.25); 45];
    densities[0] = (0.0, 0.0);
    let spec = ClusterColoringSpec { k: 10, epsilon: 0.1, epsilon0: 0.1, densities };
    let (g, _) = random_cluster_coloring(&spec, 4).unwrap();
    assert!(!g.has_edge(0, 1));
    assert_eq!(g.edge_count(), 44);
}

#[test]
fn subsample_of_blowup() {
    let base = BicoloredGraph::complete_with(5, |u, v| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { Color::Red } else { Color::Blue });
    let g = ramsey_blowup(&base, 40).unwrap();
    let r = subsample_density(&g, 60, 400, 8, 0.05).unwrap();
    assert!(r.success_rate > 0.5);
    let mono = BicoloredGraph::complete_with(30, |_, _| Color::Red);
    let r = subsample_density(&mono, 10, 50, 0, 0.0).unwrap();
    assert!(r.outcomes.iter().all(|o| o.e_blue == 0));
}

#[test]
fn subsample_variance_matches_empirical() {
    let g = ramsey_blowup(&k6_coloring(), 8).unwrap();
    let r = subsample_density(&g, 20, 4000, 5, 0.05).unwrap();
    let xs: Vec<f64> = r.outcomes.iter().map(|o| o.e_blue as f64).collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let (em, ev) = (r.stats["expected_e_blue"], r.stats["var_e_blue"]);
    assert!((mean - em).abs() < 4.0 * (ev / xs.len() as f64).sqrt(), "{mean} vs {em}");
    assert!((var / ev - 1.0).abs() < 0.1, "{var} vs {ev}");
}
