use std::collections::BTreeMap;

use bicolor::canon::canonical_certificate;
use bicolor::normalize::*;
use bicolor::patterns::{contains_family, triangles_and_handles, PatternFamily};
use bicolor::probabilistic::random_permutation;
use bicolor::{BicoloredGraph, Color};

fn corpus() -> impl Iterator<Item = (u64, BicoloredGraph)> {
    (0..300u64).map(|seed| {
        let n = 4 + (seed as usize % 9);
        (seed, random_pattern_free(n, n * n, seed))
    })
}

#[test]
fn generator_output_is_pattern_free() {
    let fam = PatternFamily::Explicit(triangles_and_handles());
    for (seed, g) in corpus() {
        assert!(contains_family(&g, &fam).is_none(), "seed {seed}");
    }
}

#[test]
fn m_is_triangle_free_on_the_corpus() {
    for (seed, g) in corpus() {
        let p = partition_rbm(&g);
        let rep = check_m_triangle_free(&g, &p);
        assert!(rep.triangle_free && rep.mantel_ok && rep.common_neighbors_ok, "seed {seed}: {rep:?}");
    }
}

#[test]
fn normalization_postconditions() {
    let fam = PatternFamily::Explicit(triangles_and_handles());
    for (seed, g) in corpus() {
        let out = clone_normalize(&g, &random_permutation(g.n(), seed)).unwrap();
        let h = &out.graph;
        assert!(out.steps.len() <= g.n() * g.n());
        for s in &out.steps {
            assert!(s.e_red_after >= s.e_red_before && s.e_blue_after >= s.e_blue_before, "seed {seed}");
        }
        let (r0, b0) = g.edge_counts();
        let (r1, b1) = h.edge_counts();
        assert!(r1 >= r0 && b1 >= b0);
        assert!(contains_family(h, &fam).is_none(), "seed {seed}");
        let p = partition_rbm(h);
        for side in [&p.r, &p.b] {
            for (i, &u) in side.iter().enumerate() {
                for &v in &side[i + 1..] {
                    if !h.has_edge(u, v) {
                        assert_eq!(h.neighbors(u), h.neighbors(v), "seed {seed}");
                    }
                }
            }
        }
        let a = analyze(h).unwrap();
        assert!(a.bounds.hold(), "seed {seed}: {:?}", a.bounds);
        assert!(g.edge_count() <= h.edge_count() && h.edge_count() <= a.params.edge_formula(), "seed {seed}");
    }
}

#[test]
fn final_part_sizes_across_orders() {
    // the order of the scan may change the result; record how often it does
    let mut differing = 0;
    for (seed, g) in corpus().take(100) {
        let sizes = |perm: &[usize]| {
            let a = analyze(&clone_normalize(&g, perm).unwrap().graph).unwrap();
            (a.red_parts.parts.iter().map(Vec::len).collect::<Vec<_>>(), a.blue_parts.parts.iter().map(Vec::len).collect::<Vec<_>>())
        };
        if sizes(&identity_permutation(g.n())) != sizes(&random_permutation(g.n(), seed + 1000)) {
            differing += 1;
        }
    }
    println!("part structure differs between two orders on {differing} of 100 graphs");
}

#[test]
fn clone_vertex_preserves_freeness() {
    let fam = PatternFamily::Explicit(triangles_and_handles());
    for (seed, g) in corpus() {
        for v in 0..g.n() {
            let c = g.clone_vertex(v).unwrap();
            assert!(contains_family(&c, &fam).is_none(), "seed {seed}, vertex {v}");
        }
    }
}

#[test]
fn bad_permutation_is_rejected() {
    let g = BicoloredGraph::from_edges(3, [(0, 1, Color::Red)]).unwrap();
    assert!(clone_normalize(&g, &[0, 0, 1]).is_err());
    assert!(clone_normalize(&g, &[0, 1]).is_err());
}

fn independence_number(g: &BicoloredGraph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || !g.has_edge(u, v))))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Triangle-free graphs on `m` vertices up to isomorphism: every such graph
/// arises from one on `m - 1` vertices by adding a vertex whose
/// neighborhood is independent.
fn triangle_free_graphs(max_m: usize) -> Vec<Vec<BicoloredGraph>> {
    let mut levels = vec![vec![BicoloredGraph::empty(1)]];
    for m in 2..=max_m {
        let mut next = BTreeMap::new();
        for g in &levels[m - 2] {
            for s in 0u32..1 << (m - 1) {
                let set: Vec<usize> = (0..m - 1).filter(|&v| s >> v & 1 == 1).collect();
                if set.iter().enumerate().any(|(i, &u)| set[i + 1..].iter().any(|&v| g.has_edge(u, v))) {
                    continue;
                }
                let mut h = BicoloredGraph::empty(m);
                for (u, v, c) in g.edges() {
                    h.add_edge(u, v, c);
                }
                for &u in &set {
                    h.add_edge(u, m - 1, Color::Red);
                }
                next.entry(canonical_certificate(&h)).or_insert(h);
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}

#[test]
fn independent_set_bound_on_all_small_triangle_free_graphs() {
    let levels = triangle_free_graphs(8);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    // unlabeled triangle-free graphs on 1..=8 vertices
    assert_eq!(counts, vec![1, 2, 3, 7, 14, 38, 107, 410]);
    for (i, level) in levels.iter().enumerate() {
        let m = (i + 1) as u64;
        for g in level {
            let alpha = independence_number(g) as u64;
            if 2 * alpha >= m {
                assert!(g.edge_count() <= independent_set_bound(m, alpha).unwrap());
            }
            assert!(g.edge_count() <= m * m / 4);
        }
    }
}
