//! Canonical certificates for color-preserving isomorphism.
//!
//! Individualization-refinement: the initial partition groups vertices by
//! `(d_R, d_B)`, refinement splits cells by per-cell red/blue neighbor
//! counts until equitable, and the search branches over the first
//! non-singleton cell. Each discrete leaf yields a vertex order; the
//! certificate is the lexicographically least upper-triangle state string
//! over all leaves. Branches on two vertices that are twins (swapping them
//! is an automorphism fixing the current prefix) produce identical leaf
//! codes, so only one of them is explored.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{BicoloredGraph, Color};

/// Bytes equal exactly for color-isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

/// Pair state: 0 = non-edge, 1 = red, 2 = blue.
fn state_matrix(g: &BicoloredGraph) -> Vec<u8> {
    let n = g.n();
    let mut st = vec![0u8; n * n];
    for (u, v, c) in g.edges() {
        let s = match c {
            Color::Red => 1,
            Color::Blue => 2,
        };
        st[u * n + v] = s;
        st[v * n + u] = s;
    }
    st
}

struct Search {
    n: usize,
    st: Vec<u8>,
    best_code: Vec<u8>,
    best_order: Vec<usize>,
    have_best: bool,
}

impl Search {
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            let k = cells.len();
            if k == n {
                return;
            }
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let width = 2 * k;
            let mut sig = vec![0u16; n * width];
            for u in 0..n {
                let row = &self.st[u * n..(u + 1) * n];
                for (w, &s) in row.iter().enumerate() {
                    if s != 0 {
                        sig[u * width + 2 * cell_of[w] + (s as usize - 1)] += 1;
                    }
                }
            }
            let key = |v: usize| &sig[v * width..(v + 1) * width];
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut members = cell.clone();
                members.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
                let mut start = 0;
                for i in 1..=members.len() {
                    if i == members.len() || key(members[i]) != key(members[start]) {
                        next.push(members[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() == k {
                return;
            }
            *cells = next;
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let n = self.n;
        (0..n).all(|w| w == u || w == v || self.st[u * n + w] == self.st[v * n + w])
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = self.n;
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut better = !self.have_best;
        let mut decided = better;
        for i in 0..n {
            for j in i + 1..n {
                let s = self.st[order[i] * n + order[j]];
                if !decided {
                    match s.cmp(&self.best_code[code.len()]) {
                        Ordering::Less => {
                            better = true;
                            decided = true;
                        }
                        Ordering::Greater => return,
                        Ordering::Equal => {}
                    }
                }
                code.push(s);
            }
        }
        if better {
            self.best_code = code;
            self.best_order = order;
            self.have_best = true;
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        if cells.len() == self.n {
            let order = cells.iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        }
        let ti = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let target = cells[ti].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &target {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            next[ti] = vec![v];
            next.insert(ti + 1, target.iter().copied().filter(|&x| x != v).collect());
            self.refine(&mut next);
            self.descend(next);
        }
    }
}

/// Canonical vertex order: position `i` of the canonical form holds vertex
/// `order[i]` of `g`.
pub fn canonical_labeling(g: &BicoloredGraph) -> Vec<usize> {
    run(g).1
}

fn run(g: &BicoloredGraph) -> (Vec<u8>, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut s = Search {
        n,
        st: state_matrix(g),
        best_code: Vec::new(),
        best_order: Vec::new(),
        have_best: false,
    };
    let mut by_degree: Vec<(usize, usize, usize)> = (0..n)
        .map(|v| (g.color_degree(v, Color::Red), g.color_degree(v, Color::Blue), v))
        .collect();
    by_degree.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(r, b, v)) in by_degree.iter().enumerate() {
        if i > 0 && (by_degree[i - 1].0, by_degree[i - 1].1) == (r, b) {
            cells.last_mut().unwrap().push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    s.refine(&mut cells);
    s.descend(cells);
    (s.best_code, s.best_order)
}

fn pack(n: usize, code: &[u8]) -> Certificate {
    let mut bytes = Vec::with_capacity(4 + code.len().div_ceil(4));
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for chunk in code.chunks(4) {
        let mut b = 0u8;
        for (i, &s) in chunk.iter().enumerate() {
            b |= s << (6 - 2 * i);
        }
        bytes.push(b);
    }
    Certificate(bytes)
}

pub fn canonical_certificate(g: &BicoloredGraph) -> Certificate {
    let (code, _) = run(g);
    pack(g.n(), &code)
}

/// Certificate together with the relabeled canonical representative.
pub fn canonical_form(g: &BicoloredGraph) -> (Certificate, BicoloredGraph) {
    let (code, order) = run(g);
    (pack(g.n(), &code), g.relabel(&order))
}

/// Canonical form up to color-preserving isomorphism and color swap: the
/// lesser of the forms of `g` and `swap(g)`.
pub fn swap_invariant_form(g: &BicoloredGraph) -> (Certificate, BicoloredGraph) {
    let a = canonical_form(g);
    let b = canonical_form(&g.swap_colors());
    if b.0 < a.0 {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn red_and_blue_edge_differ() {
        let r = BicoloredGraph::from_edges(2, [(0, 1, Color::Red)]).unwrap();
        let b = BicoloredGraph::from_edges(2, [(0, 1, Color::Blue)]).unwrap();
        assert_ne!(canonical_certificate(&r), canonical_certificate(&b));
        assert_eq!(swap_invariant_form(&r).0, swap_invariant_form(&b).0);
    }

    #[test]
    fn relabeling_preserves_certificate() {
        let g = BicoloredGraph::from_edges(
            5,
            [(0, 1, Color::Red), (1, 2, Color::Blue), (2, 3, Color::Red), (3, 4, Color::Blue), (0, 4, Color::Blue)],
        )
        .unwrap();
        let h = g.relabel(&[3, 0, 4, 2, 1]);
        assert_eq!(canonical_certificate(&g), canonical_certificate(&h));
        let (_, fg) = canonical_form(&g);
        let (_, fh) = canonical_form(&h);
        assert_eq!(fg, fh);
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(
            canonical_certificate(&BicoloredGraph::empty(0)),
            canonical_certificate(&BicoloredGraph::empty(0))
        );
        assert_ne!(
            canonical_certificate(&BicoloredGraph::empty(3)),
            canonical_certificate(&BicoloredGraph::empty(4))
        );
    }

    #[test]
    fn vertex_transitive_coloring() {
        // red C5 + blue C5 on K5: relabel by a non-automorphism
        let g = BicoloredGraph::complete_with(5, |u, v| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { Color::Red } else { Color::Blue });
        let h = g.relabel(&[0, 2, 4, 1, 3]);
        assert_ne!(g, h);
        assert_eq!(canonical_certificate(&g), canonical_certificate(&h));
        // the relabeling swaps the two cycles, so h is g with colors swapped
        assert_eq!(h, g.swap_colors());
    }
}
