//! Specialized detectors for the built-in families.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{BicoloredGraph, Color};

use super::{h1, h2, t1, t2, unavoidable_graph, UnavoidableType, Witness};

/// Witness for the triangle `{a, b, c}` if it is not monochromatic.
fn triangle_witness(g: &BicoloredGraph, a: usize, b: usize, c: usize) -> Option<Witness> {
    let ab = g.color(a, b)?;
    let ac = g.color(a, c)?;
    let bc = g.color(b, c)?;
    if ab == ac && ac == bc {
        return None;
    }
    // the apex is the vertex opposite the odd-colored edge
    let (apex, x, y, major) = if ab == ac {
        (a, b, c, ab)
    } else if ab == bc {
        (b, a, c, ab)
    } else {
        (c, a, b, ac)
    };
    let pattern = if major == Color::Red { t1() } else { t2() };
    Some(Witness::new(pattern, vec![apex, x, y]))
}

/// Lexicographically least non-monochromatic triangle `a < b < c`.
pub fn detect_nonmono_triangle(g: &BicoloredGraph) -> Option<Witness> {
    let n = g.n();
    for a in 0..n {
        for b in bits::ones(&g.neighbors(a)).filter(|&b| b > a) {
            let common: Vec<u64> = g.neighbors(a).iter().zip(g.neighbors(b)).map(|(x, y)| x & y).collect();
            if let Some(w) = bits::ones(&common).filter(|&c| c > b).find_map(|c| triangle_witness(g, a, b, c)) {
                return Some(w);
            }
        }
    }
    None
}

pub(crate) fn nonmono_triangle_through_edge(g: &BicoloredGraph, u: usize, v: usize) -> Option<Witness> {
    let c = g.color(u, v)?;
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    let both_c = g.row(c, u).iter().zip(g.row(c, v)).map(|(x, y)| x & y);
    let bad: Vec<u64> = nu.iter().zip(&nv).zip(both_c).map(|((x, y), m)| x & y & !m).collect();
    let w = bits::ones(&bad).next()?;
    let mut t = [u, v, w];
    t.sort_unstable();
    triangle_witness(g, t[0], t[1], t[2])
}

pub(crate) fn nonmono_triangle_through_vertex(g: &BicoloredGraph, v: usize) -> Option<Witness> {
    bits::ones(&g.neighbors(v)).find_map(|u| nonmono_triangle_through_edge(g, v, u))
}

/// Some monochromatic triangle with a pendant edge of the other color,
/// scanning triangles `a < b < c` lexicographically.
pub fn detect_handle(g: &BicoloredGraph) -> Option<Witness> {
    let n = g.n();
    for a in 0..n {
        for m in Color::BOTH {
            for b in bits::ones(g.row(m, a)).filter(|&b| b > a) {
                let common: Vec<u64> = g.row(m, a).iter().zip(g.row(m, b)).map(|(x, y)| x & y).collect();
                for c in bits::ones(&common).filter(|&c| c > b) {
                    for (z, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
                        if let Some(w) = bits::ones(g.row(m.swap(), z)).next() {
                            let pattern = if m == Color::Red { h1() } else { h2() };
                            return Some(Witness::new(pattern, vec![x, y, z, w]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically least `size`-clique of color `c` inside `cand`.
fn mono_clique(g: &BicoloredGraph, c: Color, cand: &[u64], size: usize, acc: &mut Vec<usize>) -> bool {
    if size == 0 {
        return true;
    }
    if bits::count(cand) < size {
        return false;
    }
    for v in bits::ones(cand) {
        let mut next: Vec<u64> = cand.iter().zip(g.row(c, v)).map(|(x, y)| x & y).collect();
        // only larger vertices, so each clique is found once in sorted order
        bits::clear_through(&mut next, v);
        acc.push(v);
        if mono_clique(g, c, &next, size - 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

fn cliques_in_order(g: &BicoloredGraph, c: Color, t: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(g: &BicoloredGraph, c: Color, cand: Vec<u64>, t: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == t {
            return f(acc);
        }
        for v in bits::ones(&cand) {
            let mut next: Vec<u64> = cand.iter().zip(g.row(c, v)).map(|(x, y)| x & y).collect();
            bits::clear_through(&mut next, v);
            acc.push(v);
            if rec(g, c, next, t, acc, f) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(g, c, bits::full(g.n()), t, &mut Vec::with_capacity(t), &mut f)
}

/// Unavoidable t-graph inside a complete host. Type 1 is preferred over
/// Type 2, and red minority over blue; within a type the clique `X` is the
/// lexicographically least that extends.
pub fn detect_unavoidable(g: &BicoloredGraph, t: usize) -> Result<Option<Witness>> {
    if !g.is_complete() {
        return Err(Error::HostNotComplete);
    }
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    if g.n() < 2 * t {
        return Ok(None);
    }
    for kind in [UnavoidableType::One, UnavoidableType::Two] {
        for minority in Color::BOTH {
            let major = minority.swap();
            let y_color = match kind {
                UnavoidableType::One => major,
                UnavoidableType::Two => minority,
            };
            let mut found = None;
            cliques_in_order(g, minority, t, |x| {
                // Y lives in the common major-neighborhood of X
                let mut cand = bits::full(g.n());
                for &v in x {
                    for (c, r) in cand.iter_mut().zip(g.row(major, v)) {
                        *c &= r;
                    }
                }
                let mut y = Vec::with_capacity(t);
                if mono_clique(g, y_color, &cand, t, &mut y) {
                    let mut map = x.to_vec();
                    map.extend(y);
                    found = Some(map);
                    true
                } else {
                    false
                }
            });
            if let Some(map) = found {
                return Ok(Some(Witness::new(unavoidable_graph(t, kind, minority), map)));
            }
        }
    }
    Ok(None)
}
