//! Triangle counts by color type and the two counting bounds.

use num_rational::Ratio;
use serde::Serialize;

use crate::bits;
use crate::graph::{BicoloredGraph, Color};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TriangleCensus {
    pub red: u64,
    pub blue: u64,
    pub two_red_one_blue: u64,
    pub one_red_two_blue: u64,
}

impl TriangleCensus {
    pub fn total(&self) -> u64 {
        self.red + self.blue + self.two_red_one_blue + self.one_red_two_blue
    }

    pub fn nonmono(&self) -> u64 {
        self.two_red_one_blue + self.one_red_two_blue
    }

    pub fn mono(&self, c: Color) -> u64 {
        match c {
            Color::Red => self.red,
            Color::Blue => self.blue,
        }
    }
}

/// Counts every triangle `a < b < c` once, by number of red edges.
pub fn triangle_census(g: &BicoloredGraph) -> TriangleCensus {
    let mut by_red = [0u64; 4];
    let n = g.n();
    for a in 0..n {
        for (b, cab) in g.colored_neighbors(a) {
            if b <= a {
                continue;
            }
            for ca in Color::BOTH {
                for cb in Color::BOTH {
                    let mut common: Vec<u64> = g.row(ca, a).iter().zip(g.row(cb, b)).map(|(x, y)| x & y).collect();
                    bits::clear_through(&mut common, b);
                    let reds = [cab, ca, cb].iter().filter(|&&c| c == Color::Red).count();
                    by_red[reds] += bits::count(&common) as u64;
                }
            }
        }
    }
    TriangleCensus {
        red: by_red[3],
        blue: by_red[0],
        two_red_one_blue: by_red[2],
        one_red_two_blue: by_red[1],
    }
}

/// `e(4e - n^2) / (3n)`, a lower bound on the triangle count of any graph
/// with `n` vertices and `e` edges. Negative when `e < n^2 / 4`.
pub fn triangle_lower_bound(n: u64, e: u64) -> Ratio<i128> {
    assert!(n >= 1, "n must be positive");
    let (n, e) = (n as i128, e as i128);
    Ratio::new(e * (4 * e - n * n), 3 * n)
}

/// `binom(x, 3)` where `binom(x, 2) = e`, an upper bound on the triangles
/// spanned by `e` edges.
pub fn mono_triangle_upper_bound(e: u64) -> f64 {
    let x = (1.0 + (1.0 + 8.0 * e as f64).sqrt()) / 2.0;
    x * (x - 1.0) * (x - 2.0) / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::choose3;

    #[test]
    fn red_triangle() {
        let g = BicoloredGraph::complete_with(3, |_, _| Color::Red);
        let c = triangle_census(&g);
        assert_eq!((c.red, c.blue, c.two_red_one_blue, c.one_red_two_blue), (1, 0, 0, 0));
    }

    #[test]
    fn complete_graph_bound_is_tight() {
        assert_eq!(triangle_lower_bound(3, 3), Ratio::from_integer(1));
        assert_eq!(triangle_lower_bound(10, 45), Ratio::from_integer(choose3(10) as i128));
        let g = BicoloredGraph::complete_with(10, |u, v| if (u + v) % 3 == 0 { Color::Red } else { Color::Blue });
        assert_eq!(triangle_census(&g).total(), 120);
    }

    #[test]
    fn upper_bound_at_triangular_numbers() {
        assert!((mono_triangle_upper_bound(3) - 1.0).abs() < 1e-12);
        assert!((mono_triangle_upper_bound(6) - 4.0).abs() < 1e-12);
        assert_eq!(mono_triangle_upper_bound(0), 0.0);
    }
}
