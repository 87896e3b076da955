//! Naive reference computations with no pruning and no isomorph rejection.
//! Slow by design; used to freeze and re-check golden values.

use crate::balance::{is_balanced, BalanceSpec};
use crate::error::{Error, Result};
use crate::graph::{BicoloredGraph, Color};
use crate::patterns::PatternFamily;

pub const EX_ORACLE_LIMIT: usize = 5;
pub const RAMSEY_ORACLE_LIMIT: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// True iff some injective map sends every edge of `pattern` to a host
/// edge of the same color; tries every injection.
pub fn naive_contains(host: &BicoloredGraph, pattern: &BicoloredGraph) -> bool {
    fn rec(host: &BicoloredGraph, pattern: &BicoloredGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if map.len() == pattern.n() {
            return pattern.edges().into_iter().all(|(u, v, c)| host.color(map[u], map[v]) == Some(c));
        }
        for h in 0..host.n() {
            if used[h] {
                continue;
            }
            used[h] = true;
            map.push(h);
            let found = rec(host, pattern, map, used);
            map.pop();
            used[h] = false;
            if found {
                return true;
            }
        }
        false
    }
    if pattern.n() > host.n() {
        return false;
    }
    rec(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

fn naive_avoids(host: &BicoloredGraph, members: &[BicoloredGraph]) -> bool {
    members.iter().all(|p| !naive_contains(host, p))
}

/// Maximum edge count over all `3^C(n,2)` labeled graphs that are balanced
/// and avoid the family, with the first maximizer in enumeration order.
pub fn ex_bruteforce(spec: &BalanceSpec, n: usize, family: &PatternFamily) -> Result<(u64, BicoloredGraph)> {
    if n > EX_ORACLE_LIMIT {
        return Err(Error::LimitExceeded { n, limit: EX_ORACLE_LIMIT });
    }
    let ps = pairs(n);
    let members = family.members();
    let total = 3u64.pow(ps.len() as u32);
    let mut best = (0u64, BicoloredGraph::empty(n));
    for code in 0..total {
        let mut g = BicoloredGraph::empty(n);
        let mut x = code;
        for &(u, v) in &ps {
            match x % 3 {
                1 => g.add_edge(u, v, Color::Red),
                2 => g.add_edge(u, v, Color::Blue),
                _ => {}
            }
            x /= 3;
        }
        let e = g.edge_count();
        if e > best.0 && is_balanced(&g, spec) && naive_avoids(&g, &members) {
            best = (e, g);
        }
    }
    Ok(best)
}

/// Threshold `R`: one more than the largest `n <= n_max` with a balanced
/// family-free coloring of `K_n`, scanning all `2^C(n,2)` colorings.
/// `None` when a counterexample exists at `n_max`.
pub fn ramsey_bruteforce(spec: &BalanceSpec, family: &PatternFamily, n_max: usize) -> Result<Option<u64>> {
    if n_max > RAMSEY_ORACLE_LIMIT {
        return Err(Error::LimitExceeded { n: n_max, limit: RAMSEY_ORACLE_LIMIT });
    }
    let members = family.members();
    let mut last = 0u64;
    for n in 1..=n_max {
        let ps = pairs(n);
        let found = (0u64..1 << ps.len()).any(|mask| {
            let g = BicoloredGraph::complete_with(n, |u, v| {
                let i = ps.iter().position(|&p| p == (u, v)).unwrap();
                if mask >> i & 1 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                }
            });
            is_balanced(&g, spec) && naive_avoids(&g, &members)
        });
        if found {
            last = n as u64;
        }
    }
    Ok(if last == n_max as u64 { None } else { Some(last + 1) })
}

/// Number of orbits of `S_n` acting on the 2-colorings of `K_n`, by taking
/// the least image of each coloring over all vertex permutations.
pub fn orbit_count_complete(n: usize) -> usize {
    let ps = pairs(n);
    let perms = permutations(n);
    let mut reps = std::collections::BTreeSet::new();
    for mask in 0u64..1 << ps.len() {
        let color = |u: usize, v: usize| {
            let (a, b) = (u.min(v), u.max(v));
            let i = ps.iter().position(|&p| p == (a, b)).unwrap();
            mask >> i & 1
        };
        let least = perms
            .iter()
            .map(|p| ps.iter().enumerate().fold(0u64, |acc, (i, &(u, v))| acc | color(p[u], p[v]) << i))
            .min()
            .unwrap();
        reps.insert(least);
    }
    reps.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
