//! Explicit extremal constructions and their claimed properties.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::balance::{density, is_balanced, BalanceSpec, Density};
use crate::error::{Error, Result};
use crate::graph::{choose2, BicoloredGraph, Color};
use crate::patterns::{contains_family, triangles_and_handles, PatternFamily};

/// Red clique on the first `ceil(n/2)` vertices, blue clique on the rest.
pub fn disjoint_mono_cliques(n: usize) -> Result<BicoloredGraph> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let h = n.div_ceil(2);
    let mut g = BicoloredGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if v < h {
                g.add_edge(u, v, Color::Red);
            } else if u >= h {
                g.add_edge(u, v, Color::Blue);
            }
        }
    }
    Ok(g)
}

/// Complete bipartite graph between `0..floor(n/2)` and the rest; the first
/// half of the edges in lexicographic order is red (the larger half when the
/// edge count is odd), the remainder blue.
pub fn half_half_bipartite(n: usize) -> Result<BicoloredGraph> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let a = n / 2;
    let total = a * (n - a);
    let red = total.div_ceil(2);
    let mut g = BicoloredGraph::empty(n);
    let mut i = 0;
    for u in 0..a {
        for v in a..n {
            g.add_edge(u, v, if i < red { Color::Red } else { Color::Blue });
            i += 1;
        }
    }
    Ok(g)
}

/// Parts `A = 0..s`, `B = s..2s`, `C = 2s..3s`: `B` a red clique joined in red
/// to the independent set `A`, `C` a blue clique joined in blue to `A`, and
/// no `B`-`C` edges.
pub fn dmm_tripartite(s: usize) -> Result<BicoloredGraph> {
    if s == 0 {
        return Err(Error::InvalidParams("s must be at least 1".into()));
    }
    let part = |v: usize| v / s;
    let mut g = BicoloredGraph::empty(3 * s);
    for u in 0..3 * s {
        for v in u + 1..3 * s {
            match (part(u), part(v)) {
                (0, 1) | (1, 1) => g.add_edge(u, v, Color::Red),
                (0, 2) | (2, 2) => g.add_edge(u, v, Color::Blue),
                _ => {}
            }
        }
    }
    Ok(g)
}

/// Edge counts of the Urschel graph: `(forced blue, mixed capacity)`.
fn urschel_counts(a: u64, b: u64, c: u64, d: u64) -> (u64, u64) {
    (choose2(a) + a * (c + d) + c * d, b * (c + d))
}

/// Red share of the mixed `B`-(`C ∪ D`) edges needed for exact 1/2-balance,
/// or `None` when no split balances.
fn urschel_split(a: u64, b: u64, c: u64, d: u64) -> Option<u64> {
    let (blue, mixed) = urschel_counts(a, b, c, d);
    let total = blue + mixed;
    if total % 2 == 1 || blue > total / 2 {
        None
    } else {
        Some(total / 2)
    }
}

/// `A` a blue clique joined in blue to `C ∪ D`; `B`, `C`, `D` the parts of a
/// complete 3-partite graph with `C`-`D` blue. The `B`-`C` then `B`-`D`
/// edges are colored red in lexicographic order until the two classes are
/// equal, the rest blue. Vertex order: `A`, `B`, `C`, `D`.
pub fn urschel(a: usize, b: usize, c: usize, d: usize) -> Result<BicoloredGraph> {
    let red = urschel_split(a as u64, b as u64, c as u64, d as u64).ok_or_else(|| {
        let (blue, mixed) = urschel_counts(a as u64, b as u64, c as u64, d as u64);
        Error::UnbalanceableSizes(format!("({a},{b},{c},{d}): {blue} forced blue edges, {mixed} mixed edges"))
    })?;
    let n = a + b + c + d;
    let (sa, sb, sc) = (0, a, a + b);
    let sd = a + b + c;
    let mut g = BicoloredGraph::empty(n);
    for u in sa..sb {
        for v in u + 1..sb {
            g.add_edge(u, v, Color::Blue);
        }
        for v in sc..n {
            g.add_edge(u, v, Color::Blue);
        }
    }
    for u in sc..sd {
        for v in sd..n {
            g.add_edge(u, v, Color::Blue);
        }
    }
    let mut placed = 0u64;
    for v in sc..n {
        for u in sb..sc {
            g.add_edge(u, v, if placed < red { Color::Red } else { Color::Blue });
            placed += 1;
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UrschelSizes {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UrschelGridResult {
    pub sizes: UrschelSizes,
    #[serde(serialize_with = "crate::balance::ser_ratio")]
    pub density: Ratio<u64>,
    pub density_f64: f64,
    pub candidates_checked: u64,
}

/// Best density and sizes for one value of `a`.
type Candidate = (Ratio<u64>, [u64; 4]);

/// Best density over all balanceable size vectors with `a + b + c + d = n`,
/// from the closed-form edge count. Ties go to the lexicographically least
/// `(a, b, c, d)`.
pub fn urschel_grid_search(n: usize) -> Result<UrschelGridResult> {
    if n < 2 {
        return Err(Error::InvalidParams("need at least 2 vertices".into()));
    }
    let n = n as u64;
    let pairs = choose2(n);
    let per_a: Vec<(Option<Candidate>, u64)> = (0..=n)
        .into_par_iter()
        .map(|a| {
            let mut best: Option<(Ratio<u64>, [u64; 4])> = None;
            let mut checked = 0;
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    let d = n - a - b - c;
                    checked += 1;
                    if urschel_split(a, b, c, d).is_none() {
                        continue;
                    }
                    let (blue, mixed) = urschel_counts(a, b, c, d);
                    let r = Ratio::new(blue + mixed, pairs);
                    if best.as_ref().is_none_or(|(br, _)| r > *br) {
                        best = Some((r, [a, b, c, d]));
                    }
                }
            }
            (best, checked)
        })
        .collect();
    let candidates_checked = per_a.iter().map(|(_, c)| c).sum();
    let mut top: Option<(Ratio<u64>, [u64; 4])> = None;
    for cand in per_a.into_iter().filter_map(|(b, _)| b) {
        if top.as_ref().is_none_or(|(tr, _)| cand.0 > *tr) {
            top = Some(cand);
        }
    }
    let (density, [a, b, c, d]) =
        top.ok_or_else(|| Error::UnbalanceableSizes(format!("no size vector with total {n} balances")))?;
    Ok(UrschelGridResult {
        sizes: UrschelSizes { a: a as usize, b: b as usize, c: c as usize, d: d as usize },
        density,
        density_f64: *density.numer() as f64 / *density.denom() as f64,
        candidates_checked,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuousOptimum {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub density: f64,
}

/// Best limit density for `A` of fraction `a` and `C ∪ D` of fraction `s`,
/// with `b = 1 - a - s`: the product `cd` is pushed to `s^2/4` or until the
/// balance constraint `a^2/2 + as + cd <= bs` binds. Returns the density and
/// `cd`, or `None` when even `cd = 0` is unbalanced.
fn urschel_limit(a: f64, s: f64) -> Option<(f64, f64)> {
    let b = 1.0 - a - s;
    if a < 0.0 || s < 0.0 || b < 0.0 {
        return None;
    }
    let room = b * s - a * a / 2.0 - a * s;
    if room < 0.0 {
        return None;
    }
    let cd = room.min(s * s / 4.0);
    Some((2.0 * (a * a / 2.0 + a * s + b * s + cd), cd))
}

/// On the curve where both `cd = s^2/4` and the balance constraint bind:
/// `a^2/2 + 2as = s - 5s^2/4`.
fn urschel_curve_a(s: f64) -> Option<f64> {
    let rhs = s - 1.25 * s * s;
    (rhs >= 0.0).then(|| -2.0 * s + (4.0 * s * s + 2.0 * rhs).sqrt())
}

/// Maximizes the limit density of the balanced Urschel graph over part
/// fractions. Where `cd < s^2/4` the density is `4bs`, which falls with `a`;
/// elsewhere it is `a^2 + 2s - 3s^2/2`, which rises with `a` up to the
/// balance constraint. So the optimum lies on the curve where both bind, or
/// at `a = 0`; the curve is scanned and refined by golden-section search.
pub fn urschel_continuous_optimum() -> ContinuousOptimum {
    let on_curve = |s: f64| urschel_curve_a(s).and_then(|a| urschel_limit(a, s).map(|(f, _)| (a, f)));
    let score = |s: f64| on_curve(s).map_or(f64::NEG_INFINITY, |(_, f)| f);
    let steps = 10_000;
    let best_i = (0..=steps).max_by(|&i, &j| score(0.8 * i as f64 / steps as f64).total_cmp(&score(0.8 * j as f64 / steps as f64))).unwrap();
    let h = 0.8 / steps as f64;
    let (mut lo, mut hi) = ((best_i as f64 - 1.0) * h, (best_i as f64 + 1.0) * h);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-15 {
        let (x1, x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        if score(x1) < score(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    let s = (lo + hi) / 2.0;
    let (a, density) = on_curve(s).unwrap();
    // the a = 0 boundary peaks at s = 2/3 with density 2/3
    let (a, s, density) = if density >= 2.0 / 3.0 { (a, s, density) } else { (0.0, 2.0 / 3.0, 2.0 / 3.0) };
    let (_, cd) = urschel_limit(a, s).unwrap();
    let spread = (s * s / 4.0 - cd).max(0.0).sqrt();
    ContinuousOptimum { alpha: a, beta: 1.0 - a - s, gamma: s / 2.0 - spread, delta: s / 2.0 + spread, density }
}

/// `blow_up(base, m)` for a colored complete `base`.
pub fn ramsey_blowup(base: &BicoloredGraph, m: usize) -> Result<BicoloredGraph> {
    if !base.is_complete() {
        return Err(Error::HostNotComplete);
    }
    if m == 0 {
        return Err(Error::InvalidParams("blow-up factor must be positive".into()));
    }
    Ok(base.blow_up(m))
}

/// Exact density `m(v-1)/(vm-1)` of an `m`-blow-up of a complete graph on
/// `v >= 1` vertices.
pub fn ramsey_blowup_density(v: u64, m: u64) -> Ratio<u64> {
    if v * m <= 1 {
        return Ratio::from_integer(0);
    }
    Ratio::new(m * (v - 1), v * m - 1)
}

/// How the `M1`-`M2` edges of `G''` are colored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum MiddleColoring {
    #[default]
    Red,
    Blue,
    /// Red when the two endpoint indices have even sum.
    Alternating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GDoublePrimeParams {
    pub r: usize,
    pub b: usize,
    pub m: usize,
    pub r1: usize,
    pub r2: usize,
    pub b1: usize,
    pub b2: usize,
    pub m1: usize,
    pub m2: usize,
    pub d: usize,
    pub middle: MiddleColoring,
}

impl GDoublePrimeParams {
    /// Sets `m1 = max(ceil(m/2), d)` and `m2 = m - m1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(r: usize, b: usize, m: usize, r1: usize, r2: usize, b1: usize, b2: usize, d: usize) -> Result<Self> {
        let m1 = m.div_ceil(2).max(d);
        let p = GDoublePrimeParams { r, b, m, r1, r2, b1, b2, m1, m2: m.saturating_sub(m1), d, middle: MiddleColoring::Red };
        p.validate()?;
        Ok(p)
    }

    pub fn with_middle(mut self, middle: MiddleColoring) -> Self {
        self.middle = middle;
        self
    }

    pub fn n(&self) -> usize {
        self.r + self.b + self.m
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.r1 + self.r2 > self.r {
            return bad(format!("r1 + r2 = {} exceeds r = {}", self.r1 + self.r2, self.r));
        }
        if self.b1 + self.b2 > self.b {
            return bad(format!("b1 + b2 = {} exceeds b = {}", self.b1 + self.b2, self.b));
        }
        if self.r1 < self.r2 || self.b1 < self.b2 {
            return bad("parts must be non-increasing (r1 >= r2, b1 >= b2)".into());
        }
        if self.d > self.m {
            return bad(format!("d = {} exceeds m = {}", self.d, self.m));
        }
        if self.m1 + self.m2 != self.m || self.m1 != self.m.div_ceil(2).max(self.d) {
            return bad(format!("need m1 = max(ceil(m/2), d) and m1 + m2 = m, got m1 = {}, m2 = {}", self.m1, self.m2));
        }
        Ok(())
    }

    /// `C(r,2) - C(r1,2) - C(r2,2)` plus the same for `B'`, the four
    /// complete bipartite joins to `M1`, `M2`, and `m1 * m2`.
    pub fn edge_formula(&self) -> u64 {
        let c = |x: usize| choose2(x as u64);
        let (r1, r2, b1, b2, m1, m2) = (self.r1 as u64, self.r2 as u64, self.b1 as u64, self.b2 as u64, self.m1 as u64, self.m2 as u64);
        c(self.r) - c(self.r1) - c(self.r2) + c(self.b) - c(self.b1) - c(self.b2) + (r1 + b1) * m1 + (r2 + b2) * m2 + m1 * m2
    }
}

/// Vertex blocks of `G''` in order: `R1, R2, R-singletons, M1, M2, B1, B2,
/// B-singletons`.
pub fn g_double_prime_blocks(p: &GDoublePrimeParams) -> [std::ops::Range<usize>; 8] {
    let sizes = [p.r1, p.r2, p.r - p.r1 - p.r2, p.m1, p.m2, p.b1, p.b2, p.b - p.b1 - p.b2];
    let mut start = 0;
    sizes.map(|s| {
        let r = start..start + s;
        start += s;
        r
    })
}

pub fn g_double_prime(p: &GDoublePrimeParams) -> Result<BicoloredGraph> {
    p.validate()?;
    let blocks = g_double_prime_blocks(p);
    let block_of = |v: usize| blocks.iter().position(|r| r.contains(&v)).unwrap();
    let n = p.n();
    let mut g = BicoloredGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (x, y) = (block_of(u), block_of(v));
            let color = match (x, y) {
                // R' complete multipartite: R1, R2 independent, singletons a clique
                (0..=2, 0..=2) if x != y || x == 2 => Some(Color::Red),
                (5..=7, 5..=7) if x != y || x == 7 => Some(Color::Blue),
                (0, 3) | (1, 4) => Some(Color::Red),
                (3, 5) | (4, 6) => Some(Color::Blue),
                (3, 4) => Some(match p.middle {
                    MiddleColoring::Red => Color::Red,
                    MiddleColoring::Blue => Color::Blue,
                    MiddleColoring::Alternating if (u + v) % 2 == 0 => Color::Red,
                    MiddleColoring::Alternating => Color::Blue,
                }),
                _ => None,
            };
            if let Some(c) = color {
                g.add_edge(u, v, c);
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub avoided: bool,
}

/// Claimed-property report for a generated graph.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub n: usize,
    pub e_red: u64,
    pub e_blue: u64,
    /// Total density as an exact `p/q` string.
    pub density: String,
    pub densities: Density,
    pub balanced: bool,
    pub families: Vec<FamilyCheck>,
    /// Exact density the construction is claimed to have, when one is.
    pub expected_density: Option<String>,
    pub ok: bool,
}

fn report(name: &str, g: &BicoloredGraph, families: &[PatternFamily], expected: Option<Ratio<u64>>, need_balance: bool) -> ConstructionReport {
    let (e_red, e_blue) = g.edge_counts();
    let dens = density(g);
    let balanced = is_balanced(g, &BalanceSpec::half());
    let families: Vec<FamilyCheck> = families
        .iter()
        .map(|f| FamilyCheck { family: f.to_string(), avoided: contains_family(g, f).is_none() })
        .collect();
    let ok = families.iter().all(|f| f.avoided) && (!need_balance || balanced) && expected.is_none_or(|e| dens.total == e);
    let density = crate::balance::ratio_string(&dens.total);
    ConstructionReport {
        construction: name.to_string(),
        n: g.n(),
        e_red,
        e_blue,
        density,
        densities: dens,
        balanced,
        families,
        expected_density: expected.map(|e| crate::balance::ratio_string(&e)),
        ok,
    }
}

pub fn verify_dmm(s: usize) -> Result<ConstructionReport> {
    let g = dmm_tripartite(s)?;
    Ok(report("dmm", &g, &[PatternFamily::NonMonoTriangles], Some(Ratio::new(2, 3)), true))
}

pub fn verify_half_half(n: usize) -> Result<ConstructionReport> {
    let g = half_half_bipartite(n)?;
    let a = (n / 2) as u64;
    let expected = Ratio::new(a * (n as u64 - a), choose2(n as u64));
    let need_balance = (a * (n as u64 - a)).is_multiple_of(2);
    Ok(report("half-half", &g, &[PatternFamily::Explicit(triangles_and_handles())], Some(expected), need_balance))
}

pub fn verify_disjoint_cliques(n: usize) -> Result<ConstructionReport> {
    let g = disjoint_mono_cliques(n)?;
    let h = n.div_ceil(2) as u64;
    let expected = Ratio::new(choose2(h) + choose2(n as u64 - h), choose2(n as u64));
    let mut r = report("disjoint-cliques", &g, &[PatternFamily::NonMonoTriangles], Some(expected), false);
    // every component is monochromatic, so no connected nonmono subgraph exists
    r.ok &= (0..g.n()).all(|v| g.color_degree(v, Color::Red) == 0 || g.color_degree(v, Color::Blue) == 0);
    Ok(r)
}

pub fn verify_urschel(a: usize, b: usize, c: usize, d: usize) -> Result<ConstructionReport> {
    let g = urschel(a, b, c, d)?;
    Ok(report("urschel", &g, &[PatternFamily::NonMonoClique(4)], None, true))
}

pub fn verify_ramsey_blowup(base: &BicoloredGraph, m: usize, t: usize) -> Result<ConstructionReport> {
    let g = ramsey_blowup(base, m)?;
    let expected = ramsey_blowup_density(base.n() as u64, m as u64);
    let mut r = report("ramsey-blowup", &g, &[PatternFamily::Unavoidable(t)], Some(expected), false);
    r.ok &= g.edge_count() == (m * m) as u64 * base.edge_count();
    Ok(r)
}

pub fn verify_g_double_prime(p: &GDoublePrimeParams) -> Result<ConstructionReport> {
    let g = g_double_prime(p)?;
    let mut r = report("g-double-prime", &g, &[], None, false);
    r.ok &= g.edge_count() == p.edge_formula();
    Ok(r)
}
