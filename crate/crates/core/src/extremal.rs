//! Exact small-case values of `ex(eps, n, F)` and `R(eps, F)`.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::balance::{counts_balanced, ratio_string, BalanceSpec};
use crate::bcg::to_bcg;
use crate::enumerate::{canonize, expand, Level};
use crate::error::{Error, Result};
use crate::graph::{choose2, BicoloredGraph, Color};
use crate::inevitability::type_embeddability;
use crate::patterns::{FamilyChecker, PatternFamily};

pub const DEFAULT_EX_LIMIT: usize = 10;
pub const DEFAULT_RAMSEY_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub dedup_hits: u64,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Maximum edge count (ex) or threshold vertex count (Ramsey).
    pub value: u64,
    pub witness: BicoloredGraph,
    pub stats: SearchStats,
    /// Sizes of the isomorph-free levels, in generation order.
    pub level_sizes: Vec<usize>,
}

impl Serialize for SearchOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SearchOutcome", 4)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("witness", &to_bcg(&self.witness))?;
        st.serialize_field("stats", &self.stats)?;
        st.serialize_field("level_sizes", &self.level_sizes)?;
        st.end()
    }
}

/// Some final edge count `e` in `[r + b, r + b + free]` admits color counts
/// `R >= r`, `B >= b` with `R + B = e` and both at least `eps * e`.
///
/// Admissible: every completion of the node adds only edges, so its final
/// counts satisfy exactly these constraints; a node failing the test has no
/// balanced descendant.
fn balance_reachable(r: u64, b: u64, free: u64, spec: &BalanceSpec) -> bool {
    (r + b..=r + b + free).any(|e| {
        let m = spec.min_count(e);
        r.max(m) + b.max(m) <= e
    })
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::LimitExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// `ex(eps, n, F)` with the default size limit.
pub fn ex_exact(spec: &BalanceSpec, n: usize, family: &PatternFamily) -> Result<SearchOutcome> {
    ex_exact_with_limit(spec, n, family, DEFAULT_EX_LIMIT)
}

/// Exact maximum edge count of an `eps`-balanced `n`-vertex graph avoiding
/// `family`, by breadth-first generation over edge counts. Every F-free graph
/// arises from an F-free parent one edge smaller, so each level holds all
/// F-free graphs with that many edges (up to isomorphism) that can still
/// reach a balanced completion. The witness is the balanced graph with the
/// least certificate on the top balanced level.
pub fn ex_exact_with_limit(spec: &BalanceSpec, n: usize, family: &PatternFamily, limit: usize) -> Result<SearchOutcome> {
    check_limit(n, limit)?;
    family.validate()?;
    let started = Instant::now();
    let checker = FamilyChecker::new(family);
    // swapping colors preserves balance, so a swap-closed family lets the
    // search merge each graph with its swap
    let swap_inv = family.is_color_consistent();
    let pairs = choose2(n as u64);

    let mut level: Level = vec![canonize(&BicoloredGraph::empty(n), swap_inv)];
    let mut stats = SearchStats { nodes_explored: 1, ..Default::default() };
    let mut best = (0u64, level[0].1.clone());
    let mut sizes = vec![1usize];
    for e in 1..=pairs {
        let (next, s) = expand(&level, swap_inv, |g, emit| {
            let (r, b) = g.edge_counts();
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    for c in Color::BOTH {
                        let (nr, nb) = if c == Color::Red { (r + 1, b) } else { (r, b + 1) };
                        if !balance_reachable(nr, nb, pairs - e, spec) {
                            continue;
                        }
                        let mut child = g.clone();
                        child.add_edge(u, v, c);
                        if checker.find_through_edge(&child, u, v).is_none() {
                            emit(child);
                        }
                    }
                }
            }
        });
        stats.nodes_explored += s.generated;
        stats.dedup_hits += s.dedup_hits;
        if next.is_empty() {
            break;
        }
        sizes.push(next.len());
        if let Some((_, g)) = next.iter().find(|(_, g)| {
            let (r, b) = g.edge_counts();
            counts_balanced(r, b, spec)
        }) {
            best = (e, g.clone());
        }
        level = next;
    }
    stats.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(SearchOutcome { value: best.0, witness: best.1, stats, level_sizes: sizes })
}

/// TFAE check: some member embeds in a Type 1 graph and some member in a
/// Type 2 graph.
fn ramsey_finite(family: &PatternFamily) -> Result<()> {
    let members = family.members();
    let emb: Vec<_> = members.iter().map(type_embeddability).collect();
    let t1 = emb.iter().any(|e| e.type1.is_some());
    let t2 = emb.iter().any(|e| e.type2.is_some());
    if t1 && t2 {
        Ok(())
    } else {
        Err(Error::Infinite(format!(
            "{family}: no member embeds in a Type {} unavoidable graph",
            if t1 { 2 } else { 1 }
        )))
    }
}

/// `R(eps, F)` with threshold semantics: one more than the largest
/// `n <= n_max` admitting an `eps`-balanced F-free coloring of `K_n`. The
/// search extends F-free colorings one vertex at a time; when a level dies
/// out no larger coloring is F-free either. If a balanced counterexample
/// still exists at `n_max`, the threshold lies beyond the search range.
/// The witness is the least-certificate balanced coloring at `value - 1`.
pub fn ramsey_exact(spec: &BalanceSpec, family: &PatternFamily, n_max: usize) -> Result<SearchOutcome> {
    ramsey_exact_with_limit(spec, family, n_max, DEFAULT_RAMSEY_LIMIT)
}

pub fn ramsey_exact_with_limit(spec: &BalanceSpec, family: &PatternFamily, n_max: usize, limit: usize) -> Result<SearchOutcome> {
    check_limit(n_max, limit)?;
    family.validate()?;
    ramsey_finite(family)?;
    let started = Instant::now();
    let checker = FamilyChecker::new(family);
    let swap_inv = family.is_color_consistent();

    let mut level: Level = vec![canonize(&BicoloredGraph::empty(1), swap_inv)];
    let mut stats = SearchStats { nodes_explored: 1, ..Default::default() };
    // K_1 has no edges and is balanced
    let mut last = (1u64, level[0].1.clone());
    let mut sizes = vec![1usize];
    for n in 2..=n_max {
        let (next, s) = expand(&level, swap_inv, |g, emit| {
            let k = g.n();
            for mask in 0u64..(1u64 << k) {
                let mut child = grow(g);
                for u in 0..k {
                    child.add_edge(u, k, if mask >> u & 1 == 1 { Color::Blue } else { Color::Red });
                }
                if checker.find_through_vertex(&child, k).is_none() {
                    emit(child);
                }
            }
        });
        stats.nodes_explored += s.generated;
        stats.dedup_hits += s.dedup_hits;
        if next.is_empty() {
            break;
        }
        sizes.push(next.len());
        if let Some((_, g)) = next.iter().find(|(_, g)| {
            let (r, b) = g.edge_counts();
            counts_balanced(r, b, spec)
        }) {
            last = (n as u64, g.clone());
            if n == n_max {
                return Err(Error::NotFoundUpTo(n_max));
            }
        }
        level = next;
    }
    stats.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(SearchOutcome { value: last.0 + 1, witness: last.1, stats, level_sizes: sizes })
}

pub fn ramsey_unavoidable(spec: &BalanceSpec, t: usize, n_max: usize) -> Result<SearchOutcome> {
    ramsey_exact(spec, &PatternFamily::Unavoidable(t), n_max)
}

/// `g` plus one isolated vertex.
fn grow(g: &BicoloredGraph) -> BicoloredGraph {
    let mut h = BicoloredGraph::empty(g.n() + 1);
    for (u, v, c) in g.edges() {
        h.add_edge(u, v, c);
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagnosticRow {
    pub n: usize,
    pub value: u64,
    #[serde(serialize_with = "crate::balance::ser_ratio")]
    pub density: Ratio<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonColumn {
    pub epsilon: String,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitDiagnostic {
    pub epsilon: String,
    pub family: String,
    pub rows: Vec<DiagnosticRow>,
    /// Values across the supplied epsilon grid, one column per epsilon.
    pub epsilon_grid: Vec<EpsilonColumn>,
    /// For every `n`, the values do not decrease as epsilon decreases.
    pub monotone_in_epsilon: bool,
    /// For `NonMonoClique(k)`: the conjectured limit `1 - 1/(k-1)`, listed
    /// for comparison only.
    pub conjectured_limit: Option<String>,
}

impl LimitDiagnostic {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,value,density\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.n, r.value, ratio_string(&r.density)));
        }
        s
    }
}

pub fn ex_limit_diagnostic(
    spec: &BalanceSpec,
    family: &PatternFamily,
    n_list: &[usize],
    eps_grid: &[BalanceSpec],
) -> Result<LimitDiagnostic> {
    let mut rows = Vec::new();
    for &n in n_list {
        let out = ex_exact(spec, n, family)?;
        let pairs = choose2(n as u64);
        let density = if pairs == 0 { Ratio::from_integer(0) } else { Ratio::new(out.value, pairs) };
        rows.push(DiagnosticRow { n, value: out.value, density });
    }
    let mut grid: Vec<BalanceSpec> = eps_grid.to_vec();
    grid.sort_by_key(|s| std::cmp::Reverse(s.epsilon()));
    let mut columns = Vec::new();
    for eps in &grid {
        let values = n_list.iter().map(|&n| ex_exact(eps, n, family).map(|o| o.value)).collect::<Result<Vec<_>>>()?;
        columns.push(EpsilonColumn { epsilon: eps.to_string(), values });
    }
    let monotone = columns.windows(2).all(|w| w[0].values.iter().zip(&w[1].values).all(|(a, b)| a <= b));
    let conjectured_limit = match family {
        PatternFamily::NonMonoClique(k) => Some(ratio_string(&(Ratio::from_integer(1) - Ratio::new(1, *k as u64 - 1)))),
        _ => None,
    };
    Ok(LimitDiagnostic {
        epsilon: spec.to_string(),
        family: family.to_string(),
        rows,
        epsilon_grid: columns,
        monotone_in_epsilon: monotone,
        conjectured_limit,
    })
}
