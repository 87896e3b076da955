//! Inevitable graphs: the partition characterization, an embedding oracle,
//! and explicit cycle embeddings into blow-ups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BicoloredGraph, Color};
use crate::patterns::{find_colored_subgraph, unavoidable_graph, UnavoidableType, Witness};

/// Largest graph handled by the exhaustive bipartition search.
pub const STRUCTURAL_LIMIT: usize = 24;

/// Which forbidden configuration is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InevitabilityCase {
    /// No walk `out, in, out` on three edges.
    NoBRBWalk,
    /// No path `in, out, in` on four distinct vertices.
    NoRBRPath,
}

/// A partition `left ⊔ right` with `inner_color` inside both sides and the
/// other color across, plus the case that holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InevitabilityCertificate {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub case: InevitabilityCase,
    pub inner_color: Color,
}

/// Side assignment respecting "inner inside, outer across", found by
/// backtracking over vertices in index order with vertex 0 on the left.
/// Every edge between assigned vertices is checked as soon as its second
/// endpoint is placed.
fn find_partition(h: &BicoloredGraph, inner: Color) -> Option<Vec<bool>> {
    fn rec(h: &BicoloredGraph, inner: Color, side: &mut Vec<bool>) -> bool {
        let v = side.len();
        if v == h.n() {
            return true;
        }
        let choices: &[bool] = if v == 0 { &[false] } else { &[false, true] };
        for &s in choices {
            let ok = h
                .colored_neighbors(v)
                .into_iter()
                .filter(|&(u, _)| u < v)
                .all(|(u, c)| (side[u] == s) == (c == inner));
            if ok {
                side.push(s);
                if rec(h, inner, side) {
                    return true;
                }
                side.pop();
            }
        }
        false
    }
    let mut side = Vec::with_capacity(h.n());
    rec(h, inner, &mut side).then_some(side)
}

/// Same constraint system solved by propagation over connected components;
/// linear time, used beyond the exhaustive limit.
fn propagate_partition(h: &BicoloredGraph, inner: Color) -> Option<Vec<bool>> {
    let n = h.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for (u, c) in h.colored_neighbors(v) {
                let want = if c == inner { sv } else { !sv };
                match side[u] {
                    None => {
                        side[u] = Some(want);
                        stack.push(u);
                    }
                    Some(x) if x != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

/// `out`-edge, `in`-edge, `out`-edge as a walk (vertices may repeat).
fn has_walk_out_in_out(h: &BicoloredGraph, inner: Color) -> bool {
    let out = inner.swap();
    h.edges().into_iter().any(|(x, y, c)| c == inner && h.color_degree(x, out) > 0 && h.color_degree(y, out) > 0)
}

/// `in`-edge, `out`-edge, `in`-edge as a path on four distinct vertices.
fn has_path_in_out_in(h: &BicoloredGraph, inner: Color) -> bool {
    let out = inner.swap();
    for (b, c, col) in h.edges() {
        if col != out {
            continue;
        }
        for (x, y) in [(b, c), (c, b)] {
            for (a, ca) in h.colored_neighbors(x) {
                if ca != inner || a == y {
                    continue;
                }
                for (d, cd) in h.colored_neighbors(y) {
                    if cd == inner && d != x && d != a {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn certificate_from(side: &[bool], case: InevitabilityCase, inner: Color) -> InevitabilityCertificate {
    let left = (0..side.len()).filter(|&v| !side[v]).collect();
    let right = (0..side.len()).filter(|&v| side[v]).collect();
    InevitabilityCertificate { left, right, case, inner_color: inner }
}

fn structural_with(h: &BicoloredGraph, solve: fn(&BicoloredGraph, Color) -> Option<Vec<bool>>) -> Option<InevitabilityCertificate> {
    for inner in Color::BOTH {
        // Both case conditions only involve edge colors and vertex
        // incidences, so once one valid partition exists the answer does not
        // depend on which partition is taken: the first one decides.
        let Some(side) = solve(h, inner) else { continue };
        if !has_walk_out_in_out(h, inner) {
            return Some(certificate_from(&side, InevitabilityCase::NoBRBWalk, inner));
        }
        if !has_path_in_out_in(h, inner) {
            return Some(certificate_from(&side, InevitabilityCase::NoRBRPath, inner));
        }
    }
    None
}

/// A partition certificate of inevitability, or `None` if `h` is not
/// inevitable. Orientations are tried red-inside first, and Case 1 before
/// Case 2.
pub fn is_inevitable_structural(h: &BicoloredGraph) -> Result<Option<InevitabilityCertificate>> {
    if h.n() <= STRUCTURAL_LIMIT {
        return Ok(structural_with(h, find_partition));
    }
    match structural_with(h, propagate_partition) {
        Some(cert) => Ok(Some(cert)),
        None => Err(Error::TooLarge { n: h.n(), limit: STRUCTURAL_LIMIT }),
    }
}

/// Re-checks a certificate from scratch: the partition covers `V(h)`, the
/// edge colors match, and the stated configuration is absent, by
/// enumerating every three-edge walk.
pub fn verify_certificate(h: &BicoloredGraph, cert: &InevitabilityCertificate) -> bool {
    let n = h.n();
    let mut side = vec![None; n];
    let sides = cert.left.iter().map(|&v| (v, false)).chain(cert.right.iter().map(|&v| (v, true)));
    for (v, s) in sides {
        if v >= n || side[v].is_some() {
            return false;
        }
        side[v] = Some(s);
    }
    if side.iter().any(|s| s.is_none()) {
        return false;
    }
    let inner = cert.inner_color;
    let out = inner.swap();
    let edges_ok = h.edges().into_iter().all(|(u, v, c)| (side[u] == side[v]) == (c == inner));
    if !edges_ok {
        return false;
    }
    let pattern = match cert.case {
        InevitabilityCase::NoBRBWalk => [out, inner, out],
        InevitabilityCase::NoRBRPath => [inner, out, inner],
    };
    let need_distinct = cert.case == InevitabilityCase::NoRBRPath;
    for a in 0..n {
        for (b, c1) in h.colored_neighbors(a) {
            if c1 != pattern[0] {
                continue;
            }
            for (c, c2) in h.colored_neighbors(b) {
                if c2 != pattern[1] {
                    continue;
                }
                for (d, c3) in h.colored_neighbors(c) {
                    if c3 != pattern[2] {
                        continue;
                    }
                    let distinct = a != c && a != d && b != d;
                    if !need_distinct || distinct {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Second validator for Case 1: the left and right endpoints of crossing
/// edges each form an independent set.
pub fn verify_case1_independent_sets(h: &BicoloredGraph, cert: &InevitabilityCertificate) -> bool {
    let out = cert.inner_color.swap();
    let crossing = |v: usize| h.color_degree(v, out) > 0;
    let x: Vec<usize> = cert.left.iter().copied().filter(|&v| crossing(v)).collect();
    let y: Vec<usize> = cert.right.iter().copied().filter(|&v| crossing(v)).collect();
    let independent = |s: &[usize]| s.iter().all(|&u| s.iter().all(|&v| !h.has_edge(u, v)));
    independent(&x) && independent(&y)
}

/// An embedding of `h` into the Type-`kind` t-graph, trying red then blue as
/// the minority color.
pub fn embeds_in_unavoidable(h: &BicoloredGraph, kind: UnavoidableType, t: usize) -> Option<(Color, Witness)> {
    Color::BOTH
        .into_iter()
        .find_map(|minority| find_colored_subgraph(&unavoidable_graph(t, kind, minority), h).map(|w| (minority, w)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeEmbeddability {
    pub t: usize,
    pub type1: Option<(Color, Witness)>,
    pub type2: Option<(Color, Witness)>,
}

impl TypeEmbeddability {
    pub fn inevitable(&self) -> bool {
        self.type1.is_some() && self.type2.is_some()
    }
}

/// Embeddability into both unavoidable types at `t = v(h)`. Larger `t` adds
/// nothing: an embedding uses at most `v(h)` vertices of each side, and the
/// t-graphs are nested in `t`.
pub fn type_embeddability(h: &BicoloredGraph) -> TypeEmbeddability {
    let t = h.n().max(1);
    TypeEmbeddability {
        t,
        type1: embeds_in_unavoidable(h, UnavoidableType::One, t),
        type2: embeds_in_unavoidable(h, UnavoidableType::Two, t),
    }
}

pub fn is_inevitable_oracle(h: &BicoloredGraph) -> bool {
    type_embeddability(h).inevitable()
}

/// Cyclic vertex order and edge colors of a cycle graph.
fn cycle_sequence(c: &BicoloredGraph) -> Result<(Vec<usize>, Vec<Color>)> {
    let n = c.n();
    let bad = |m: &str| Error::PreconditionViolated(format!("not a cycle: {m}"));
    if n < 3 || c.edge_count() != n as u64 || (0..n).any(|v| c.degree(v) != 2) {
        return Err(bad("need n >= 3 and every degree 2"));
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = c.colored_neighbors(cur).into_iter().map(|(u, _)| u).find(|&u| u != prev).unwrap();
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(bad("disconnected"));
    }
    let colors = (0..n).map(|i| c.color(order[i], order[(i + 1) % n]).unwrap()).collect();
    Ok((order, colors))
}

/// Maximal monochromatic runs `(color, length)` starting at the first color
/// change, so that run boundaries align with the rotated sequence.
fn runs(colors: &[Color]) -> (usize, Vec<(Color, usize)>) {
    let n = colors.len();
    let start = (0..n).find(|&i| colors[i] != colors[(i + n - 1) % n]).unwrap_or(0);
    let mut out: Vec<(Color, usize)> = Vec::new();
    for k in 0..n {
        let c = colors[(start + k) % n];
        match out.last_mut() {
            Some((lc, len)) if *lc == c => *len += 1,
            _ => out.push((c, 1)),
        }
    }
    (start, out)
}

enum Base {
    /// Apex `x` meets `y` and `z` in the double color.
    Triangle { x: usize, y: usize, z: usize, double: Color },
    /// Monochromatic triangle `x y z` with pendant `z w`.
    Handle { x: usize, y: usize, z: usize, w: usize, tri: Color },
}

fn classify_base(base: &BicoloredGraph) -> Result<Base> {
    let bad = || Error::InvalidParams("base must be a non-monochromatic triangle or a handle".into());
    let edges = base.edges();
    if base.n() == 3 && edges.len() == 3 {
        for x in 0..3 {
            let (y, z) = ((x + 1) % 3, (x + 2) % 3);
            let (cy, cz) = (base.color(x, y).unwrap(), base.color(x, z).unwrap());
            if cy == cz && base.color(y, z).unwrap() != cy {
                return Ok(Base::Triangle { x, y: y.min(z), z: y.max(z), double: cy });
            }
        }
        return Err(bad());
    }
    if base.n() == 4 && edges.len() == 4 {
        let w = (0..4).find(|&v| base.degree(v) == 1).ok_or_else(bad)?;
        let (z, pc) = base.colored_neighbors(w)[0];
        let rest: Vec<usize> = (0..4).filter(|&v| v != w && v != z).collect();
        let (x, y) = (rest[0], rest[1]);
        let tri = base.color(x, y).ok_or_else(bad)?;
        if base.color(x, z) == Some(tri) && base.color(y, z) == Some(tri) && pc != tri {
            return Ok(Base::Handle { x, y, z, w, tri });
        }
    }
    Err(bad())
}

/// Part sequence for a cycle into a nonmono-triangle base; `None` if the
/// double-colored runs are not all even.
fn route_triangle(colors: &[Color], x: usize, y: usize, z: usize, double: Color) -> Result<Vec<usize>> {
    let single = double.swap();
    let n = colors.len();
    if colors.iter().all(|&c| c == colors[0]) {
        if n % 2 == 1 {
            return Err(Error::PreconditionViolated("odd monochromatic cycle has no bipartite route".into()));
        }
        let (a, b) = if colors[0] == double { (y, x) } else { (y, z) };
        return Ok((0..n).map(|i| if i % 2 == 0 { a } else { b }).collect());
    }
    let (_, rs) = runs(colors);
    if rs.iter().any(|&(c, l)| c == double && l % 2 == 1) {
        return Err(Error::PreconditionViolated(format!("a maximal {double}-path has odd length")));
    }
    // rotate so the sequence starts with a double-colored run
    let first = rs.iter().position(|&(c, _)| c == double).unwrap();
    let rs: Vec<(Color, usize)> = rs[first..].iter().chain(&rs[..first]).copied().collect();
    let mut parts = Vec::with_capacity(n + 1);
    parts.push(y);
    let mut i = 0;
    while i < rs.len() {
        let (c, len) = rs[i];
        debug_assert_eq!(c, double);
        let s_len = rs.get(i + 1).filter(|&&(c, _)| c == single).map(|&(_, l)| l).unwrap_or(0);
        // double run of even length from y: y x y x ... and land on y or z
        for step in 1..=len {
            let last = step == len;
            parts.push(if step % 2 == 1 { x } else if last && s_len % 2 == 1 { z } else { y });
        }
        // single run alternates y and z, ending at y
        for _ in 0..s_len {
            let cur = *parts.last().unwrap();
            parts.push(if cur == y { z } else { y });
        }
        i += if s_len > 0 { 2 } else { 1 };
    }
    debug_assert_eq!(parts.last(), Some(&y));
    parts.pop();
    Ok(parts)
}

fn route_handle(colors: &[Color], x: usize, y: usize, z: usize, w: usize, tri: Color) -> Result<Vec<usize>> {
    let n = colors.len();
    let tri_walk = |len: usize, out: &mut Vec<usize>| {
        // closed walk of length len >= 2 from z inside the triangle
        if len.is_multiple_of(2) {
            for s in 1..=len {
                out.push(if s % 2 == 1 { x } else { z });
            }
        } else {
            for s in 1..=len - 3 {
                out.push(if s % 2 == 1 { x } else { z });
            }
            out.extend([x, y, z]);
        }
    };
    if colors.iter().all(|&c| c == colors[0]) {
        let mut parts = vec![z];
        if colors[0] == tri {
            tri_walk(n, &mut parts);
        } else {
            if n % 2 == 1 {
                return Err(Error::PreconditionViolated("odd monochromatic cycle in the pendant color".into()));
            }
            for s in 1..=n {
                parts.push(if s % 2 == 1 { w } else { z });
            }
        }
        parts.pop();
        return Ok(parts);
    }
    let (_, rs) = runs(colors);
    for &(c, l) in &rs {
        if c != tri && l % 2 == 1 {
            return Err(Error::PreconditionViolated(format!("a maximal {c}-path has odd length")));
        }
        if c == tri && l < 2 {
            return Err(Error::PreconditionViolated(format!("a maximal {c}-path has length 1")));
        }
    }
    let mut parts = vec![z];
    for &(c, l) in &rs {
        if c == tri {
            tri_walk(l, &mut parts);
        } else {
            for s in 1..=l {
                parts.push(if s % 2 == 1 { w } else { z });
            }
        }
    }
    parts.pop();
    Ok(parts)
}

/// Embeds the cycle `c` into `blow_up(base, t)`, routing each maximal
/// even-length path of the base's bipartite color together with the run
/// after it so that the walk returns to its home part. Copy `i` of base
/// vertex `v` is blow-up vertex `v * t + i`.
pub fn embed_cycle_into_blowup(c: &BicoloredGraph, base: &BicoloredGraph, t: usize) -> Result<Witness> {
    let (order, colors) = cycle_sequence(c)?;
    if is_inevitable_structural(c)?.is_none() {
        return Err(Error::PreconditionViolated("cycle is not inevitable".into()));
    }
    let (rot, _) = runs(&colors);
    // rotate the cycle so that index 0 starts a run
    let n = order.len();
    let order: Vec<usize> = (0..n).map(|i| order[(rot + i) % n]).collect();
    let colors: Vec<Color> = (0..n).map(|i| colors[(rot + i) % n]).collect();
    let parts = match classify_base(base)? {
        Base::Triangle { x, y, z, double } => {
            // start at a double-colored run
            let (order, colors) = rotate_to(&order, &colors, double);
            (route_triangle(&colors, x, y, z, double)?, order)
        }
        Base::Handle { x, y, z, w, tri } => (route_handle(&colors, x, y, z, w, tri)?, order),
    };
    let (parts, order) = parts;
    let mut used = vec![0usize; base.n()];
    let mut map = vec![0usize; n];
    for (i, &p) in parts.iter().enumerate() {
        if used[p] >= t {
            let needed = parts.iter().filter(|&&q| q == p).count();
            return Err(Error::BaseTooSmall { t, needed });
        }
        map[order[i]] = p * t + used[p];
        used[p] += 1;
    }
    let witness = Witness::new(c.clone(), map);
    debug_assert!(witness.is_valid_in(&base.blow_up(t)));
    Ok(witness)
}

/// Rotates so that position 0 starts a maximal run of color `first`, when
/// the cycle uses both colors.
fn rotate_to(order: &[usize], colors: &[Color], first: Color) -> (Vec<usize>, Vec<Color>) {
    let n = colors.len();
    let start = (0..n)
        .find(|&i| colors[i] == first && colors[(i + n - 1) % n] != first)
        .unwrap_or(0);
    ((0..n).map(|i| order[(start + i) % n]).collect(), (0..n).map(|i| colors[(start + i) % n]).collect())
}
