//! Backtracking colored subgraph matcher.
//!
//! Pattern vertices are visited in a fixed order (most already-ordered
//! neighbors first, then highest degree, then lowest index); host candidates
//! come from intersecting the colored neighbor bitsets of already-mapped
//! pattern neighbors and are tried in ascending order, so the first match is
//! the lexicographically least mapping in that visiting order. Host vertices
//! that are twins of an already-tried candidate are skipped: swapping two
//! unused twins is an automorphism fixing the partial map.

use crate::bits;
use crate::graph::{BicoloredGraph, Color};

use super::Witness;

/// Pre-assigned pattern vertex -> host vertex pairs.
pub(crate) type Anchor = [(usize, usize)];

pub fn find_colored_subgraph(host: &BicoloredGraph, pattern: &BicoloredGraph) -> Option<Witness> {
    find_anchored(host, pattern, &[])
}

/// Some match of `pattern` that uses host vertex `v`.
pub(crate) fn find_through_vertex(host: &BicoloredGraph, pattern: &BicoloredGraph, v: usize) -> Option<Witness> {
    (0..pattern.n()).find_map(|p| find_anchored(host, pattern, &[(p, v)]))
}

/// Some match of `pattern` that maps a pattern edge onto the host edge `{u, v}`.
pub(crate) fn find_through_edge(host: &BicoloredGraph, pattern: &BicoloredGraph, u: usize, v: usize) -> Option<Witness> {
    let c = host.color(u, v)?;
    pattern
        .edges()
        .into_iter()
        .filter(|&(_, _, pc)| pc == c)
        .find_map(|(a, b, _)| find_anchored(host, pattern, &[(a, u), (b, v)]).or_else(|| find_anchored(host, pattern, &[(a, v), (b, u)])))
}

pub(crate) fn find_anchored(host: &BicoloredGraph, pattern: &BicoloredGraph, anchor: &Anchor) -> Option<Witness> {
    let pn = pattern.n();
    if pn > host.n() {
        return None;
    }
    let mut m = Matcher::new(host, pattern);
    for &(p, h) in anchor {
        if p >= pn || h >= host.n() || m.map[p] != usize::MAX || bits::test(&m.used, h) {
            return None;
        }
        if !bits::test(&m.domain[p], h) {
            return None;
        }
        m.map[p] = h;
        bits::set(&mut m.used, h);
    }
    // anchored pairs must agree among themselves
    for &(p, h) in anchor {
        for &(q, k) in anchor {
            if p < q {
                if let Some(c) = pattern.color(p, q) {
                    if host.color(h, k) != Some(c) {
                        return None;
                    }
                }
            }
        }
    }
    let order = m.visit_order(anchor);
    if m.extend(&order, 0) {
        Some(Witness::new(pattern.clone(), m.map))
    } else {
        None
    }
}

struct Matcher<'a> {
    host: &'a BicoloredGraph,
    pattern: &'a BicoloredGraph,
    map: Vec<usize>,
    used: Vec<u64>,
    domain: Vec<Vec<u64>>,
    twins: Vec<Vec<u64>>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a BicoloredGraph, pattern: &'a BicoloredGraph) -> Self {
        let hn = host.n();
        let w = host.words();
        let host_deg: Vec<(usize, usize)> = (0..hn)
            .map(|h| (host.color_degree(h, Color::Red), host.color_degree(h, Color::Blue)))
            .collect();
        let domain = (0..pattern.n())
            .map(|p| {
                let need = (pattern.color_degree(p, Color::Red), pattern.color_degree(p, Color::Blue));
                let mut d = vec![0u64; w];
                for (h, &(r, b)) in host_deg.iter().enumerate() {
                    if r >= need.0 && b >= need.1 {
                        bits::set(&mut d, h);
                    }
                }
                d
            })
            .collect();
        Matcher {
            host,
            pattern,
            map: vec![usize::MAX; pattern.n()],
            used: vec![0; w],
            domain,
            twins: host_twins(host),
        }
    }

    fn visit_order(&self, anchor: &Anchor) -> Vec<usize> {
        let pn = self.pattern.n();
        let mut placed = vec![false; pn];
        for &(p, _) in anchor {
            placed[p] = true;
        }
        let mut order = Vec::with_capacity(pn);
        while order.len() + anchor.len() < pn {
            let next = (0..pn)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let linked = (0..pn).filter(|&q| placed[q] && self.pattern.has_edge(p, q)).count();
                    (linked, self.pattern.degree(p), std::cmp::Reverse(p))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        order
    }

    fn extend(&mut self, order: &[usize], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let mut cand = self.domain[p].clone();
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        for (q, color) in self.pattern.colored_neighbors(p) {
            let h = self.map[q];
            if h == usize::MAX {
                continue;
            }
            for (c, r) in cand.iter_mut().zip(self.host.row(color, h)) {
                *c &= r;
            }
        }
        let mut tried = vec![0u64; cand.len()];
        let cands: Vec<usize> = bits::ones(&cand).collect();
        for h in cands {
            if self.twins[h].iter().zip(&tried).any(|(a, b)| a & b != 0) {
                continue;
            }
            bits::set(&mut tried, h);
            self.map[p] = h;
            bits::set(&mut self.used, h);
            if self.extend(order, depth + 1) {
                return true;
            }
            bits::clear(&mut self.used, h);
            self.map[p] = usize::MAX;
        }
        false
    }
}

/// `twins[h]` holds the vertices `k != h` with the same colored adjacency as
/// `h` to every third vertex.
fn host_twins(host: &BicoloredGraph) -> Vec<Vec<u64>> {
    let n = host.n();
    let w = host.words();
    let mut out = vec![vec![0u64; w]; n];
    for a in 0..n {
        for b in a + 1..n {
            if same_outside(host, a, b) {
                bits::set(&mut out[a], b);
                bits::set(&mut out[b], a);
            }
        }
    }
    out
}

fn same_outside(host: &BicoloredGraph, a: usize, b: usize) -> bool {
    for c in Color::BOTH {
        let ra = host.row(c, a);
        let rb = host.row(c, b);
        for (i, (&x, &y)) in ra.iter().zip(rb).enumerate() {
            let mut diff = x ^ y;
            // ignore the bits for a and b themselves
            for s in [a, b] {
                if s >> 6 == i {
                    diff &= !(1u64 << (s & 63));
                }
            }
            if diff != 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn red_edge() -> BicoloredGraph {
        BicoloredGraph::from_edges(2, [(0, 1, Color::Red)]).unwrap()
    }

    #[test]
    fn red_edge_in_red_triangle() {
        let host = BicoloredGraph::complete_with(3, |_, _| Color::Red);
        let w = find_colored_subgraph(&host, &red_edge()).unwrap();
        assert_eq!(w.map, vec![0, 1]);
        assert!(w.is_valid_in(&host));
    }

    #[test]
    fn colors_must_match() {
        let host = BicoloredGraph::complete_with(4, |_, _| Color::Blue);
        assert!(find_colored_subgraph(&host, &red_edge()).is_none());
    }

    #[test]
    fn empty_pattern_always_matches() {
        let host = BicoloredGraph::empty(2);
        assert!(find_colored_subgraph(&host, &BicoloredGraph::empty(2)).is_some());
        assert!(find_colored_subgraph(&host, &BicoloredGraph::empty(3)).is_none());
    }

    #[test]
    fn edge_anchor_requires_that_edge() {
        // red path 0-1-2 plus blue 2-3
        let host = BicoloredGraph::from_edges(4, [(0, 1, Color::Red), (1, 2, Color::Red), (2, 3, Color::Blue)]).unwrap();
        let w = find_through_edge(&host, &red_edge(), 1, 2).unwrap();
        let mut m = w.map.clone();
        m.sort();
        assert_eq!(m, vec![1, 2]);
        assert!(find_through_edge(&host, &red_edge(), 2, 3).is_none());
        assert!(find_through_vertex(&host, &red_edge(), 3).is_none());
        assert!(find_through_vertex(&host, &red_edge(), 0).is_some());
    }

    #[test]
    fn twin_pruning_keeps_lex_least() {
        // host: blue K_{3,3} with parts {0,1,2}, {3,4,5}; pattern: blue path on 3 vertices
        let host = BicoloredGraph::from_edges(
            6,
            (0..3).flat_map(|a| (3..6).map(move |b| (a, b, Color::Blue))),
        )
        .unwrap();
        let path = BicoloredGraph::from_edges(3, [(0, 1, Color::Blue), (1, 2, Color::Blue)]).unwrap();
        let w = find_colored_subgraph(&host, &path).unwrap();
        assert!(w.is_valid_in(&host));
        // visiting order starts at the center vertex 1
        assert_eq!(w.map[1], 0);
    }
}
