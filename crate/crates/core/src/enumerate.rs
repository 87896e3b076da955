//! Isomorph-free level-by-level generation.
//!
//! A level is a set of canonical forms. Expanding a level generates every
//! child of every member in parallel, canonicalizes, and keeps one
//! representative per certificate. The merged level is sorted by
//! certificate, so its contents do not depend on the thread count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::canon::{canonical_form, swap_invariant_form, Certificate};
use crate::graph::{BicoloredGraph, Color};

pub(crate) type Level = Vec<(Certificate, BicoloredGraph)>;

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct ExpandStats {
    pub generated: u64,
    pub dedup_hits: u64,
}

pub(crate) fn canonize(g: &BicoloredGraph, swap_invariant: bool) -> (Certificate, BicoloredGraph) {
    if swap_invariant {
        swap_invariant_form(g)
    } else {
        canonical_form(g)
    }
}

/// Children of every member, deduplicated by certificate.
pub(crate) fn expand<F>(level: &Level, swap_invariant: bool, children: F) -> (Level, ExpandStats)
where
    F: Fn(&BicoloredGraph, &mut dyn FnMut(BicoloredGraph)) + Sync,
{
    let (map, generated) = level
        .par_iter()
        .fold(
            || (HashMap::new(), 0u64),
            |(mut map, mut count), (_, g)| {
                children(g, &mut |child| {
                    count += 1;
                    let (cert, form) = canonize(&child, swap_invariant);
                    map.entry(cert).or_insert(form);
                });
                (map, count)
            },
        )
        .reduce(
            || (HashMap::new(), 0u64),
            |(a, ca), (b, cb)| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                for (k, v) in small {
                    big.entry(k).or_insert(v);
                }
                (big, ca + cb)
            },
        );
    let mut next: Level = map.into_iter().collect();
    next.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let stats = ExpandStats { generated, dedup_hits: generated - next.len() as u64 };
    (next, stats)
}

/// Every bicolored graph on `n` vertices, one canonical form per
/// color-preserving isomorphism class, grouped by edge count.
pub fn graphs_up_to_iso(n: usize) -> Vec<BicoloredGraph> {
    let start = canonize(&BicoloredGraph::empty(n), false);
    let mut level: Level = vec![start];
    let mut out: Vec<BicoloredGraph> = Vec::new();
    loop {
        out.extend(level.iter().map(|(_, g)| g.clone()));
        let (next, _) = expand(&level, false, |g, emit| {
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        for c in Color::BOTH {
                            let mut child = g.clone();
                            child.add_edge(u, v, c);
                            emit(child);
                        }
                    }
                }
            }
        });
        if next.is_empty() {
            return out;
        }
        level = next;
    }
}
