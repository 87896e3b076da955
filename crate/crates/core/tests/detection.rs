use bicolor::canon::canonical_certificate;
use bicolor::oracle::naive_contains;
use bicolor::patterns::{
    contains_family, detect_handle, detect_nonmono_triangle, triangle_census, triangle_lower_bound, triangles_and_handles,
    FamilyChecker, PatternFamily,
};
use bicolor::{parse_bcg, to_bcg, BicoloredGraph, Color};
use proptest::prelude::*;

/// Graphs on `n` vertices with every pair absent, red or blue.
fn graph(max_n: usize) -> impl Strategy<Value = BicoloredGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |states| {
            let mut g = BicoloredGraph::empty(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match states[i] {
                        1 => g.add_edge(u, v, Color::Red),
                        2 => g.add_edge(u, v, Color::Blue),
                        _ => {}
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn complete(max_n: usize) -> impl Strategy<Value = BicoloredGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            BicoloredGraph::complete_with(n, |_, _| if it.next().unwrap() { Color::Blue } else { Color::Red })
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn naive_family(g: &BicoloredGraph, f: &PatternFamily) -> bool {
    f.members().iter().any(|p| naive_contains(g, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bcg_round_trip(g in graph(9)) {
        let back = parse_bcg(&to_bcg(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(canonical_certificate(&back), canonical_certificate(&g));
    }

    #[test]
    fn certificate_ignores_labels((g, p) in graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        prop_assert_eq!(canonical_certificate(&g.relabel(&p)), canonical_certificate(&g));
    }

    #[test]
    fn swapping_colors_changes_certificate_only_when_asymmetric(g in graph(7)) {
        let s = g.swap_colors();
        let same = canonical_certificate(&s) == canonical_certificate(&g);
        let (r, b) = g.edge_counts();
        if r != b {
            prop_assert!(!same);
        }
    }

    #[test]
    fn triangle_detector_matches_naive(g in graph(7)) {
        let fast = detect_nonmono_triangle(&g);
        prop_assert_eq!(fast.is_some(), naive_family(&g, &PatternFamily::NonMonoTriangles));
        if let Some(w) = fast {
            prop_assert!(w.is_valid_in(&g));
        }
    }

    #[test]
    fn handle_detector_matches_naive(g in graph(7)) {
        let fast = detect_handle(&g);
        let naive = [bicolor::patterns::h1(), bicolor::patterns::h2()].iter().any(|p| naive_contains(&g, p));
        prop_assert_eq!(fast.is_some(), naive);
        if let Some(w) = fast {
            prop_assert!(w.is_valid_in(&g));
        }
    }

    #[test]
    fn families_match_naive(g in graph(6)) {
        for f in [
            PatternFamily::Explicit(triangles_and_handles()),
            PatternFamily::NonMonoClique(4),
            PatternFamily::NonMonoCycle(4),
        ] {
            let w = contains_family(&g, &f);
            prop_assert_eq!(w.is_some(), naive_family(&g, &f), "family {}", f);
            if let Some(w) = w {
                prop_assert!(w.is_valid_in(&g));
            }
        }
    }

    #[test]
    fn unavoidable_detector_matches_naive(g in complete(7), t in 1usize..=2) {
        let f = PatternFamily::Unavoidable(t);
        let w = contains_family(&g, &f);
        prop_assert_eq!(w.is_some(), naive_family(&g, &f));
        if let Some(w) = w {
            prop_assert!(w.is_valid_in(&g));
        }
    }

    #[test]
    fn anchored_search_agrees_with_global(g in graph(7)) {
        let checker = FamilyChecker::new(&PatternFamily::Explicit(triangles_and_handles()));
        let global = checker.find(&g).is_some();
        let through_some_vertex = (0..g.n()).any(|v| checker.find_through_vertex(&g, v).is_some());
        prop_assert_eq!(global, through_some_vertex);
        let through_some_edge = g.edges().iter().any(|&(u, v, _)| checker.find_through_edge(&g, u, v).is_some());
        prop_assert_eq!(global, through_some_edge);
    }

    #[test]
    fn census_bounds(g in graph(12)) {
        let c = triangle_census(&g);
        let n = g.n() as u64;
        let e = g.edge_count();
        prop_assert!(num_rational::Ratio::from_integer(c.total() as i128) >= triangle_lower_bound(n, e));
    }
}

#[test]
fn witness_points_at_pattern_edges() {
    let g = BicoloredGraph::from_edges(5, [(0, 1, Color::Red), (1, 2, Color::Red), (0, 2, Color::Blue), (3, 4, Color::Blue)]).unwrap();
    let w = detect_nonmono_triangle(&g).unwrap();
    assert!(w.is_valid_in(&g));
    let mut image = w.map.clone();
    image.sort_unstable();
    assert_eq!(image, vec![0, 1, 2]);
}

#[test]
fn unavoidable_on_incomplete_host_is_an_error() {
    let g = BicoloredGraph::from_edges(3, [(0, 1, Color::Red)]).unwrap();
    assert!(bicolor::patterns::detect_unavoidable(&g, 1).is_err());
}

#[test]
fn family_names_round_trip() {
    for s in ["nonmono-triangles", "handles", "nonmono-clique:5", "nonmono-cycle:6", "unavoidable:3"] {
        let f: PatternFamily = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
    }
    assert!("nonmono-clique:x".parse::<PatternFamily>().is_err());
}
