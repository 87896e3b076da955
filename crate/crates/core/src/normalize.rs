//! Red/blue/mixed vertex partition and the cloning procedure that makes the
//! red-only and blue-only sides complete multipartite.

use serde::Serialize;

use crate::bits;
use crate::constructions::GDoublePrimeParams;
use crate::error::{Error, Result};
use crate::graph::{choose2, BicoloredGraph, Color};
use crate::patterns::{triangles_and_handles, FamilyChecker, PatternFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    R,
    B,
}

impl Side {
    pub fn color(self) -> Color {
        match self {
            Side::R => Color::Red,
            Side::B => Color::Blue,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RbmPartition {
    /// Vertices incident only to red edges.
    pub r: Vec<usize>,
    /// Vertices incident only to blue edges.
    pub b: Vec<usize>,
    /// Vertices incident to both colors.
    pub m: Vec<usize>,
    pub isolated: Vec<usize>,
}

impl RbmPartition {
    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::R => &self.r,
            Side::B => &self.b,
        }
    }

    fn mask(&self, set: &[usize], n: usize) -> Vec<u64> {
        let mut m = vec![0u64; bits::words_for(n)];
        for &v in set {
            bits::set(&mut m, v);
        }
        m
    }
}

pub fn partition_rbm(g: &BicoloredGraph) -> RbmPartition {
    let mut p = RbmPartition::default();
    for v in 0..g.n() {
        match (g.color_degree(v, Color::Red) > 0, g.color_degree(v, Color::Blue) > 0) {
            (true, true) => p.m.push(v),
            (true, false) => p.r.push(v),
            (false, true) => p.b.push(v),
            (false, false) => p.isolated.push(v),
        }
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct MTriangleReport {
    pub triangle_free: bool,
    /// A triangle meeting `M`.
    pub counterexample: Option<[usize; 3]>,
    pub m_edges: u64,
    /// `e(G[M]) <= floor(m^2 / 4)`.
    pub mantel_ok: bool,
    /// No edge inside `R` or `B` has a common neighbor in `M`.
    pub common_neighbors_ok: bool,
}

/// Checks that no triangle meets `M`, together with the two consequences
/// used downstream.
pub fn check_m_triangle_free(g: &BicoloredGraph, part: &RbmPartition) -> MTriangleReport {
    let n = g.n();
    let m_mask = part.mask(&part.m, n);
    let mut counterexample = None;
    'outer: for &x in &part.m {
        let nx = g.neighbors(x);
        for y in bits::ones(&nx) {
            let ny = g.neighbors(y);
            for z in bits::ones(&ny) {
                if z != x && bits::test(&nx, z) {
                    let mut t = [x, y, z];
                    t.sort_unstable();
                    counterexample = Some(t);
                    break 'outer;
                }
            }
        }
    }
    let m_edges: u64 = part.m.iter().map(|&v| bits::and_count(&g.neighbors(v), &m_mask) as u64).sum::<u64>() / 2;
    let m = part.m.len() as u64;
    let mut common_neighbors_ok = true;
    for side in [&part.r, &part.b] {
        for &u in side {
            let nu = g.neighbors(u);
            for v in bits::ones(&nu) {
                if v > u && side.contains(&v) {
                    let nv = g.neighbors(v);
                    if nu.iter().zip(&nv).zip(&m_mask).any(|((a, b), c)| a & b & c != 0) {
                        common_neighbors_ok = false;
                    }
                }
            }
        }
    }
    MTriangleReport { triangle_free: counterexample.is_none(), counterexample, m_edges, mantel_ok: m_edges <= m * m / 4, common_neighbors_ok }
}

/// `d(m - d)`, the edge bound for a triangle-free graph on `m` vertices with
/// an independent set of size `d >= m/2`.
pub fn independent_set_bound(m: u64, d: u64) -> Result<u64> {
    if 2 * d < m || d > m {
        return Err(Error::PreconditionViolated(format!("need m/2 <= d <= m, got m = {m}, d = {d}")));
    }
    Ok(d * (m - d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CloneStep {
    pub step: usize,
    pub pair: (usize, usize),
    pub survivor: usize,
    /// The deleted vertex; its index now holds the clone of `survivor`.
    pub replaced: usize,
    pub side: Side,
    pub e_red_before: u64,
    pub e_blue_before: u64,
    pub e_red_after: u64,
    pub e_blue_after: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Normalized {
    #[serde(serialize_with = "crate::bcg::ser_bcg")]
    pub graph: BicoloredGraph,
    pub steps: Vec<CloneStep>,
}

/// The identity order on `0..n`.
pub fn identity_permutation(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn ranks(perm: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut rank = vec![usize::MAX; n];
    if perm.len() != n {
        return Err(Error::InvalidParams(format!("permutation has {} entries, graph has {n} vertices", perm.len())));
    }
    for (i, &v) in perm.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(Error::InvalidParams("not a permutation of the vertex set".into()));
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// First non-edge `{u, v}` inside `R` or `B` with `N(u) != N(v)`, scanning
/// pairs lexicographically by rank.
fn next_pair(g: &BicoloredGraph, part: &RbmPartition, perm: &[usize]) -> Option<(usize, usize, Side)> {
    let mut side_of = vec![None; g.n()];
    for s in [Side::R, Side::B] {
        for &v in part.side(s) {
            side_of[v] = Some(s);
        }
    }
    for (i, &u) in perm.iter().enumerate() {
        let Some(s) = side_of[u] else { continue };
        for &v in &perm[i + 1..] {
            if side_of[v] == Some(s) && !g.has_edge(u, v) && g.neighbors(u) != g.neighbors(v) {
                return Some((u, v, s));
            }
        }
    }
    None
}

/// Replaces `y` by a clone of `x` in place: `y` keeps its index and rank and
/// takes `x`'s colored neighborhood.
fn replace_with_clone(g: &mut BicoloredGraph, x: usize, y: usize) {
    for (w, _) in g.colored_neighbors(y) {
        g.remove_edge(y, w);
    }
    for (w, c) in g.colored_neighbors(x) {
        g.add_edge(y, w, c);
    }
}

/// Repeatedly picks the first non-edge `{u, v}` inside `R` or `B` whose
/// endpoints have different neighborhoods, deletes the endpoint of smaller
/// degree (ties: the later one in `perm`) and clones the other into its
/// slot. `R`, `B`, `M` are recomputed after each step. Fails with
/// `ForbiddenPatternPresent` if `g` contains a non-monochromatic triangle or
/// a handle, and with `NonTermination` past `n^2` steps.
pub fn clone_normalize(g: &BicoloredGraph, perm: &[usize]) -> Result<Normalized> {
    let n = g.n();
    let rank = ranks(perm, n)?;
    if let Some(w) = FamilyChecker::new(&PatternFamily::Explicit(triangles_and_handles())).find(g) {
        return Err(Error::ForbiddenPatternPresent(format!("{:?}", w.map)));
    }
    let mut g = g.clone();
    let mut steps = Vec::new();
    let budget = n * n;
    loop {
        let part = partition_rbm(&g);
        let Some((u, v, side)) = next_pair(&g, &part, perm) else { break };
        if steps.len() >= budget {
            return Err(Error::NonTermination(budget));
        }
        let (du, dv) = (g.degree(u), g.degree(v));
        let (x, y) = if du > dv || (du == dv && rank[u] < rank[v]) { (u, v) } else { (v, u) };
        let (e_red_before, e_blue_before) = g.edge_counts();
        replace_with_clone(&mut g, x, y);
        let (e_red_after, e_blue_after) = g.edge_counts();
        steps.push(CloneStep {
            step: steps.len(),
            pair: (u, v),
            survivor: x,
            replaced: y,
            side,
            e_red_before,
            e_blue_before,
            e_red_after,
            e_blue_after,
        });
    }
    Ok(Normalized { graph: g, steps })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipartiteDecomposition {
    pub side: Side,
    /// Non-adjacency classes, by non-increasing size then least member.
    pub parts: Vec<Vec<usize>>,
    /// `|N(P) ∩ M|` for each part `P`.
    pub m_neighbors: Vec<usize>,
}

impl MultipartiteDecomposition {
    pub fn size(&self, i: usize) -> usize {
        self.parts.get(i).map_or(0, Vec::len)
    }

    pub fn max_m_neighbors(&self) -> usize {
        self.m_neighbors.iter().copied().max().unwrap_or(0)
    }
}

/// Splits one side of a normalized graph into its non-adjacency classes and
/// checks the structure the cloning guarantees: each class is independent,
/// its members share one neighborhood, distinct classes are completely
/// joined, no two classes share a neighbor in `M`, and no vertex of `M` sees
/// two classes.
pub fn multipartite_parts(g: &BicoloredGraph, part: &RbmPartition, side: Side) -> Result<MultipartiteDecomposition> {
    let verts = part.side(side);
    let bad = |m: String| Err(Error::NotMultipartite(m));
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &v in verts {
        match parts.iter_mut().find(|p| !g.has_edge(p[0], v)) {
            Some(p) => p.push(v),
            None => parts.push(vec![v]),
        }
    }
    for p in &parts {
        let n0 = g.neighbors(p[0]);
        for &v in &p[1..] {
            if g.neighbors(v) != n0 {
                return bad(format!("{} and {v} are non-adjacent with different neighborhoods", p[0]));
            }
        }
    }
    for (i, p) in parts.iter().enumerate() {
        for q in &parts[i + 1..] {
            if !g.has_edge(p[0], q[0]) {
                return bad(format!("parts of {} and {} are not joined", p[0], q[0]));
            }
        }
    }
    let m_mask = part.mask(&part.m, g.n());
    let hoods: Vec<Vec<u64>> =
        parts.iter().map(|p| g.neighbors(p[0]).iter().zip(&m_mask).map(|(a, b)| a & b).collect()).collect();
    for (i, a) in hoods.iter().enumerate() {
        for b in &hoods[i + 1..] {
            if a.iter().zip(b).any(|(x, y)| x & y != 0) {
                return bad("two parts share a neighbor in M".into());
            }
        }
    }
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(parts[i].len()), parts[i][0]));
    Ok(MultipartiteDecomposition {
        side,
        m_neighbors: order.iter().map(|&i| bits::count(&hoods[i])).collect(),
        parts: order.into_iter().map(|i| parts[i].clone()).collect(),
    })
}

/// `max |N(P) ∩ M|` over the parts of both sides.
pub fn d_parameter(dec_r: &MultipartiteDecomposition, dec_b: &MultipartiteDecomposition) -> usize {
    dec_r.max_m_neighbors().max(dec_b.max_m_neighbors())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBounds {
    pub red_bound: u64,
    pub red_actual: u64,
    pub blue_bound: u64,
    pub blue_actual: u64,
    pub cross_bound: u64,
    pub cross_actual: u64,
}

impl EdgeBounds {
    pub fn hold(&self) -> bool {
        self.red_actual <= self.red_bound && self.blue_actual <= self.blue_bound && self.cross_actual <= self.cross_bound
    }
}

fn edges_between(g: &BicoloredGraph, a: &[usize], b: &[usize]) -> u64 {
    let mask = {
        let mut m = vec![0u64; g.words()];
        for &v in b {
            bits::set(&mut m, v);
        }
        m
    };
    a.iter().map(|&v| bits::and_count(&g.neighbors(v), &mask) as u64).sum()
}

/// The bounds `C(r,2) - C(|R1|,2) - C(|R2|,2)` on `e(R)`, the same for
/// `e(B)`, and `d(|R1|+|B1|) + (m-d)(|R2|+|B2|)` on `e(R,M) + e(B,M)`, next
/// to the actual counts.
pub fn edge_bounds(
    g: &BicoloredGraph,
    dec_r: &MultipartiteDecomposition,
    dec_b: &MultipartiteDecomposition,
    part: &RbmPartition,
    d: usize,
) -> EdgeBounds {
    let c = |x: usize| choose2(x as u64);
    let (r, b, m) = (part.r.len(), part.b.len(), part.m.len() as u64);
    let d = d as u64;
    EdgeBounds {
        red_bound: c(r) - c(dec_r.size(0)) - c(dec_r.size(1)),
        red_actual: edges_between(g, &part.r, &part.r) / 2,
        blue_bound: c(b) - c(dec_b.size(0)) - c(dec_b.size(1)),
        blue_actual: edges_between(g, &part.b, &part.b) / 2,
        cross_bound: d * (dec_r.size(0) + dec_b.size(0)) as u64
            + m.saturating_sub(d) * (dec_r.size(1) + dec_b.size(1)) as u64,
        cross_actual: edges_between(g, &part.r, &part.m) + edges_between(g, &part.b, &part.m),
    }
}

/// Everything derived from a normalized graph.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub partition: RbmPartition,
    pub red_parts: MultipartiteDecomposition,
    pub blue_parts: MultipartiteDecomposition,
    pub d: usize,
    pub bounds: EdgeBounds,
    pub m_report: MTriangleReport,
    pub params: GDoublePrimeParams,
}

/// Decomposes a normalized graph and extracts the matching `G''`
/// parameters (`m1 = max(ceil(m/2), d)`).
pub fn analyze(g: &BicoloredGraph) -> Result<Analysis> {
    let partition = partition_rbm(g);
    let red_parts = multipartite_parts(g, &partition, Side::R)?;
    let blue_parts = multipartite_parts(g, &partition, Side::B)?;
    let d = d_parameter(&red_parts, &blue_parts);
    let bounds = edge_bounds(g, &red_parts, &blue_parts, &partition, d);
    let m_report = check_m_triangle_free(g, &partition);
    let params = GDoublePrimeParams::new(
        partition.r.len(),
        partition.b.len(),
        partition.m.len(),
        red_parts.size(0),
        red_parts.size(1),
        blue_parts.size(0),
        blue_parts.size(1),
        d,
    )?;
    Ok(Analysis { partition, red_parts, blue_parts, d, bounds, m_report, params })
}

/// A random graph free of non-monochromatic triangles and handles on `n`
/// vertices: `attempts` uniformly random (pair, color) proposals, each kept
/// only if the graph stays free. Deterministic in `seed`.
pub fn random_pattern_free(n: usize, attempts: usize, seed: u64) -> BicoloredGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let checker = FamilyChecker::new(&PatternFamily::Explicit(triangles_and_handles()));
    let mut g = BicoloredGraph::empty(n);
    if n < 2 {
        return g;
    }
    for _ in 0..attempts {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || g.has_edge(u, v) {
            continue;
        }
        let c = if rng.random_bool(0.5) { Color::Red } else { Color::Blue };
        g.add_edge(u, v, c);
        if checker.find_through_edge(&g, u, v).is_some() {
            g.remove_edge(u, v);
        }
    }
    g
}
