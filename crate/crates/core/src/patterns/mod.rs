//! Forbidden pattern families, colored subgraph containment, and triangle counts.

mod census;
mod detectors;
mod matcher;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bcg::to_bcg;
use crate::canon::canonical_certificate;
use crate::error::{Error, Result};
use crate::graph::{BicoloredGraph, Color};

pub use census::{mono_triangle_upper_bound, triangle_census, triangle_lower_bound, TriangleCensus};
pub use detectors::{detect_handle, detect_nonmono_triangle, detect_unavoidable};
pub use matcher::find_colored_subgraph;
pub(crate) use matcher::{find_through_edge, find_through_vertex};

/// An injective, color-preserving map from `pattern` into some host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pattern: BicoloredGraph,
    /// `map[i]` is the host vertex hit by pattern vertex `i`.
    pub map: Vec<usize>,
}

impl Witness {
    pub fn new(pattern: BicoloredGraph, map: Vec<usize>) -> Self {
        Witness { pattern, map }
    }

    pub fn is_valid_in(&self, host: &BicoloredGraph) -> bool {
        self.pattern.maps_into(host, &self.map)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("pattern", &to_bcg(&self.pattern))?;
        st.serialize_field("map", &self.map)?;
        st.end()
    }
}

/// Which unavoidable t-graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnavoidableType {
    /// The minority class is one `K_t`.
    One,
    /// The minority class is two disjoint `K_t`'s.
    Two,
}

/// The unavoidable t-graph on `2t` vertices: `X = 0..t`, `Y = t..2t`.
/// Type 1 colors `X` with `minority` and everything else with the other
/// color; Type 2 colors both `X` and `Y` with `minority` and `X`-`Y` with
/// the other color.
pub fn unavoidable_graph(t: usize, kind: UnavoidableType, minority: Color) -> BicoloredGraph {
    let major = minority.swap();
    BicoloredGraph::complete_with(2 * t, |u, v| {
        let (ux, vx) = (u < t, v < t);
        match (ux, vx, kind) {
            (true, true, _) => minority,
            (false, false, UnavoidableType::One) => major,
            (false, false, UnavoidableType::Two) => minority,
            _ => major,
        }
    })
}

/// Non-monochromatic triangle with two red edges at vertex 0.
pub fn t1() -> BicoloredGraph {
    BicoloredGraph::from_edges(3, [(0, 1, Color::Red), (0, 2, Color::Red), (1, 2, Color::Blue)]).unwrap()
}

/// Non-monochromatic triangle with two blue edges at vertex 0.
pub fn t2() -> BicoloredGraph {
    t1().swap_colors()
}

/// Red triangle `0 1 2` with a blue pendant edge `2 3`.
pub fn h1() -> BicoloredGraph {
    BicoloredGraph::from_edges(
        4,
        [(0, 1, Color::Red), (0, 2, Color::Red), (1, 2, Color::Red), (2, 3, Color::Blue)],
    )
    .unwrap()
}

/// Blue triangle with a red pendant edge.
pub fn h2() -> BicoloredGraph {
    h1().swap_colors()
}

pub fn triangles_and_handles() -> Vec<BicoloredGraph> {
    vec![t1(), t2(), h1(), h2()]
}

/// A family of forbidden bicolored graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternFamily {
    /// 2-colorings of `K_k` that use both colors.
    NonMonoClique(usize),
    /// 2-colorings of `C_k` that use both colors.
    NonMonoCycle(usize),
    /// `H1` and `H2`.
    Handles,
    /// `T1` and `T2`.
    NonMonoTriangles,
    /// Unavoidable t-graphs of both types and both minority colors.
    Unavoidable(usize),
    Explicit(Vec<BicoloredGraph>),
}

impl PatternFamily {
    /// Concrete members, one per color-isomorphism class.
    pub fn members(&self) -> Vec<BicoloredGraph> {
        match self {
            PatternFamily::NonMonoClique(k) => {
                let pairs: Vec<(usize, usize)> = (0..*k).flat_map(|u| (u + 1..*k).map(move |v| (u, v))).collect();
                dedup(colorings(*k, &pairs))
            }
            PatternFamily::NonMonoCycle(k) => {
                let pairs: Vec<(usize, usize)> = (0..*k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
                dedup(colorings(*k, &pairs))
            }
            PatternFamily::Handles => vec![h1(), h2()],
            PatternFamily::NonMonoTriangles => vec![t1(), t2()],
            PatternFamily::Unavoidable(t) => {
                let mut out = Vec::new();
                for kind in [UnavoidableType::One, UnavoidableType::Two] {
                    for c in Color::BOTH {
                        out.push(unavoidable_graph(*t, kind, c));
                    }
                }
                dedup(out)
            }
            PatternFamily::Explicit(list) => list.clone(),
        }
    }

    /// True when the member set is closed under color swap (up to isomorphism).
    pub fn is_color_consistent(&self) -> bool {
        match self {
            PatternFamily::Explicit(list) => {
                let certs: BTreeSet<_> = list.iter().map(canonical_certificate).collect();
                list.iter().all(|g| certs.contains(&canonical_certificate(&g.swap_colors())))
            }
            _ => true,
        }
    }

    /// Rejects parameters outside `k >= 3`, `t >= 1`.
    pub fn validate(&self) -> Result<()> {
        match self {
            PatternFamily::NonMonoClique(k) | PatternFamily::NonMonoCycle(k) if *k < 3 => {
                Err(Error::InvalidParams(format!("k must be at least 3, got {k}")))
            }
            PatternFamily::Unavoidable(0) => Err(Error::InvalidParams("t must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternFamily::NonMonoClique(k) => write!(f, "nonmono-clique:{k}"),
            PatternFamily::NonMonoCycle(k) => write!(f, "nonmono-cycle:{k}"),
            PatternFamily::Handles => write!(f, "handles"),
            PatternFamily::NonMonoTriangles => write!(f, "nonmono-triangles"),
            PatternFamily::Unavoidable(t) => write!(f, "unavoidable:{t}"),
            PatternFamily::Explicit(list) => write!(f, "explicit[{}]", list.len()),
        }
    }
}

impl FromStr for PatternFamily {
    type Err = Error;

    /// Parses `nonmono-triangles`, `handles`, `triangles-handles`, `none`,
    /// `nonmono-clique:K`, `nonmono-cycle:K` and `unavoidable:T`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("unknown family `{s}`"));
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let fam = match (name, arg) {
            ("nonmono-triangles", None) => PatternFamily::NonMonoTriangles,
            ("handles", None) => PatternFamily::Handles,
            ("triangles-handles", None) => PatternFamily::Explicit(triangles_and_handles()),
            ("none", None) => PatternFamily::Explicit(Vec::new()),
            ("nonmono-clique", Some(k)) => PatternFamily::NonMonoClique(k),
            ("nonmono-cycle", Some(k)) => PatternFamily::NonMonoCycle(k),
            ("unavoidable", Some(t)) => PatternFamily::Unavoidable(t),
            _ => return Err(bad()),
        };
        fam.validate()?;
        Ok(fam)
    }
}

fn colorings(n: usize, pairs: &[(usize, usize)]) -> Vec<BicoloredGraph> {
    let m = pairs.len();
    (1..(1u64 << m) - 1)
        .map(|mask| {
            let mut g = BicoloredGraph::empty(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                g.add_edge(u, v, if mask >> i & 1 == 1 { Color::Blue } else { Color::Red });
            }
            g
        })
        .collect()
}

fn dedup(graphs: Vec<BicoloredGraph>) -> Vec<BicoloredGraph> {
    let mut seen = BTreeSet::new();
    graphs.into_iter().filter(|g| seen.insert(canonical_certificate(g))).collect()
}

/// A witness for some member of `family` in `host`, or `None`.
pub fn contains_family(host: &BicoloredGraph, family: &PatternFamily) -> Option<Witness> {
    match family {
        PatternFamily::NonMonoTriangles => detect_nonmono_triangle(host),
        PatternFamily::Handles => detect_handle(host),
        PatternFamily::Unavoidable(t) if host.is_complete() => detect_unavoidable(host, *t).ok().flatten(),
        _ => family.members().iter().find_map(|p| find_colored_subgraph(host, p)),
    }
}

/// Precomputed members for repeated containment checks.
#[derive(Clone, Debug)]
pub struct FamilyChecker {
    family: PatternFamily,
    members: Vec<BicoloredGraph>,
}

impl FamilyChecker {
    pub fn new(family: &PatternFamily) -> Self {
        FamilyChecker { family: family.clone(), members: family.members() }
    }

    pub fn family(&self) -> &PatternFamily {
        &self.family
    }

    pub fn members(&self) -> &[BicoloredGraph] {
        &self.members
    }

    pub fn find(&self, host: &BicoloredGraph) -> Option<Witness> {
        match self.family {
            PatternFamily::NonMonoTriangles | PatternFamily::Handles => contains_family(host, &self.family),
            _ => self.members.iter().find_map(|p| find_colored_subgraph(host, p)),
        }
    }

    /// Some copy of a member that uses the host edge `{u, v}`.
    pub fn find_through_edge(&self, host: &BicoloredGraph, u: usize, v: usize) -> Option<Witness> {
        if let PatternFamily::NonMonoTriangles = self.family {
            return detectors::nonmono_triangle_through_edge(host, u, v);
        }
        self.members.iter().find_map(|p| find_through_edge(host, p, u, v))
    }

    /// Some copy of a member that uses host vertex `v`.
    pub fn find_through_vertex(&self, host: &BicoloredGraph, v: usize) -> Option<Witness> {
        if let PatternFamily::NonMonoTriangles = self.family {
            return detectors::nonmono_triangle_through_vertex(host, v);
        }
        self.members.iter().find_map(|p| find_through_vertex(host, p, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_counts() {
        assert_eq!(PatternFamily::NonMonoTriangles.members().len(), 2);
        assert_eq!(PatternFamily::Unavoidable(1).members().len(), 2);
        assert_eq!(PatternFamily::Unavoidable(2).members().len(), 4);
        // K4 colorings using both colors, up to isomorphism: 11 - 2
        assert_eq!(PatternFamily::NonMonoClique(4).members().len(), 9);
        // C4 colorings using both colors: RBBB, RRBB, RBRB, RRRB
        assert_eq!(PatternFamily::NonMonoCycle(4).members().len(), 4);
    }

    #[test]
    fn builtins_are_color_consistent() {
        for fam in [
            PatternFamily::NonMonoClique(4),
            PatternFamily::NonMonoCycle(5),
            PatternFamily::Unavoidable(2),
            PatternFamily::Explicit(triangles_and_handles()),
        ] {
            assert!(PatternFamily::Explicit(fam.members()).is_color_consistent(), "{fam}");
        }
        assert!(!PatternFamily::Explicit(vec![t1()]).is_color_consistent());
    }

    #[test]
    fn family_names_round_trip() {
        for s in ["nonmono-triangles", "handles", "nonmono-clique:4", "nonmono-cycle:6", "unavoidable:2"] {
            assert_eq!(s.parse::<PatternFamily>().unwrap().to_string(), s);
        }
        assert!("nonmono-clique:2".parse::<PatternFamily>().is_err());
        assert!("unavoidable:0".parse::<PatternFamily>().is_err());
        assert!("cliques".parse::<PatternFamily>().is_err());
    }

    #[test]
    fn unavoidable_graph_minority_counts() {
        let g = unavoidable_graph(3, UnavoidableType::One, Color::Red);
        assert_eq!(g.edge_counts(), (3, 12));
        let g = unavoidable_graph(3, UnavoidableType::Two, Color::Blue);
        assert_eq!(g.edge_counts(), (9, 6));
    }

    #[test]
    fn witness_json_shape() {
        let w = Witness::new(t1(), vec![2, 0, 1]);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["map"], serde_json::json!([2, 0, 1]));
        assert!(v["pattern"].as_str().unwrap().starts_with("bcg 1\nn 3\n"));
    }
}
