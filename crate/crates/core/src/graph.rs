//! The red-blue edge-colored graph carrier and its structural transformations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

/// One of the two edge colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    #[inline]
    pub fn swap(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: &str) -> Option<Color> {
        match c {
            "R" => Some(Color::Red),
            "B" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple graph whose edges are colored red or blue.
///
/// Stored as two adjacency bitset matrices, one per color, each row padded to
/// whole 64-bit words. Vertices are dense indices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BicoloredGraph {
    n: usize,
    words: usize,
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl BicoloredGraph {
    pub fn empty(n: usize) -> Self {
        let words = bits::words_for(n);
        BicoloredGraph {
            n,
            words,
            red: vec![0; n * words],
            blue: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Color)>,
    {
        let mut g = Self::empty(n);
        for (u, v, c) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParams(format!("duplicate edge {u}-{v}")));
            }
            g.add_edge(u, v, c);
        }
        Ok(g)
    }

    /// Complete graph with every edge colored by `color_of(u, v)` for `u < v`.
    pub fn complete_with(n: usize, mut color_of: impl FnMut(usize, usize) -> Color) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, color_of(u, v));
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Neighbor bitset of `v` in color `c`.
    #[inline]
    pub fn row(&self, c: Color, v: usize) -> &[u64] {
        let start = v * self.words;
        match c {
            Color::Red => &self.red[start..start + self.words],
            Color::Blue => &self.blue[start..start + self.words],
        }
    }

    /// Neighbor bitset of `v` ignoring colors.
    pub fn neighbors(&self, v: usize) -> Vec<u64> {
        let r = self.row(Color::Red, v);
        let b = self.row(Color::Blue, v);
        r.iter().zip(b).map(|(x, y)| x | y).collect()
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        if bits::test(self.row(Color::Red, u), v) {
            Some(Color::Red)
        } else if bits::test(self.row(Color::Blue, u), v) {
            Some(Color::Blue)
        } else {
            None
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.color(u, v).is_some()
    }

    /// Sets the pair `{u, v}` to color `c`, replacing any previous color.
    pub fn add_edge(&mut self, u: usize, v: usize, c: Color) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.remove_edge(u, v);
        let w = self.words;
        let m = match c {
            Color::Red => &mut self.red,
            Color::Blue => &mut self.blue,
        };
        bits::set(&mut m[u * w..(u + 1) * w], v);
        bits::set(&mut m[v * w..(v + 1) * w], u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        for m in [&mut self.red, &mut self.blue] {
            bits::clear(&mut m[u * w..(u + 1) * w], v);
            bits::clear(&mut m[v * w..(v + 1) * w], u);
        }
    }

    #[inline]
    pub fn color_degree(&self, v: usize, c: Color) -> usize {
        bits::count(self.row(c, v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.color_degree(v, Color::Red) + self.color_degree(v, Color::Blue)
    }

    /// All edges `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if let Some(c) = self.color(u, v) {
                    out.push((u, v, c));
                }
            }
        }
        out
    }

    /// `(e_R, e_B)`.
    pub fn edge_counts(&self) -> (u64, u64) {
        let r: usize = (0..self.n).map(|v| self.color_degree(v, Color::Red)).sum();
        let b: usize = (0..self.n).map(|v| self.color_degree(v, Color::Blue)).sum();
        ((r / 2) as u64, (b / 2) as u64)
    }

    pub fn edge_count(&self) -> u64 {
        let (r, b) = self.edge_counts();
        r + b
    }

    pub fn swap_colors(&self) -> Self {
        BicoloredGraph {
            n: self.n,
            words: self.words,
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    /// True when every pair of distinct vertices in `set` is adjacent (in
    /// color `c` if given).
    pub fn is_clique(&self, set: &[usize], c: Option<Color>) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..].iter().all(|&v| match (self.color(u, v), c) {
                (Some(_), None) => true,
                (Some(x), Some(y)) => x == y,
                (None, _) => false,
            })
        })
    }

    /// Replaces each vertex by an independent set of `t` copies and each
    /// edge by a complete bipartite graph of the same color. Copy `i` of
    /// vertex `v` is vertex `v * t + i`.
    pub fn blow_up(&self, t: usize) -> Self {
        assert!(t >= 1, "blow-up factor must be positive");
        let mut g = Self::empty(self.n * t);
        for (u, v, c) in self.edges() {
            for i in 0..t {
                for j in 0..t {
                    g.add_edge(u * t + i, v * t + j, c);
                }
            }
        }
        g
    }

    /// Adds a twin `v'` (index `n`) with the same colored neighborhood as `v`;
    /// `v` and `v'` are not adjacent.
    pub fn clone_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let order: Vec<usize> = (0..self.n).collect();
        let mut g = self.relabel_into(&order, self.n + 1);
        for (x, c) in self.colored_neighbors(v) {
            g.add_edge(self.n, x, c);
        }
        Ok(g)
    }

    /// Subgraph induced on `set`; new vertex `i` is the `i`-th smallest member.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Self> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&x| x >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok(self.relabel_into(&sorted, sorted.len()))
    }

    /// New graph whose vertex `i` is old vertex `order[i]`. `order` must be
    /// injective; vertices not listed are dropped.
    pub fn relabel(&self, order: &[usize]) -> Self {
        self.relabel_into(order, order.len())
    }

    fn relabel_into(&self, order: &[usize], n: usize) -> Self {
        let mut g = Self::empty(n);
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate().skip(i + 1) {
                if let Some(c) = self.color(a, b) {
                    g.add_edge(i, j, c);
                }
            }
        }
        g
    }

    /// `(neighbor, color)` pairs of `v`, ascending by neighbor.
    pub fn colored_neighbors(&self, v: usize) -> Vec<(usize, Color)> {
        let mut out: Vec<(usize, Color)> = bits::ones(self.row(Color::Red, v))
            .map(|x| (x, Color::Red))
            .chain(bits::ones(self.row(Color::Blue, v)).map(|x| (x, Color::Blue)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Removes vertex `v`, shifting higher indices down by one.
    pub fn delete_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != v).collect();
        self.relabel(&keep)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = self.relabel_into(&(0..self.n).collect::<Vec<_>>(), self.n + other.n);
        for (u, v, c) in other.edges() {
            g.add_edge(u + self.n, v + self.n, c);
        }
        g
    }

    /// True if no edge of `other` disagrees with `self` for the listed
    /// vertex mapping (pattern vertex `i` -> host vertex `map[i]`).
    pub(crate) fn maps_into(&self, host: &Self, map: &[usize]) -> bool {
        if map.len() != self.n {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !map.iter().all(|&h| h < host.n && seen.insert(h)) {
            return false;
        }
        self.edges()
            .into_iter()
            .all(|(u, v, c)| host.color(map[u], map[v]) == Some(c))
    }
}

impl fmt::Debug for BicoloredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BicoloredGraph(n={}; ", self.n)?;
        let edges = self.edges();
        for (i, (u, v, c)) in edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}{c}{v}")?;
        }
        write!(f, ")")
    }
}

pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}
