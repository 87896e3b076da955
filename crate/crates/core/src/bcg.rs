//! The `bcg` text format.
//!
//! ```text
//! bcg 1
//! n <count>
//! e <u> <v> <R|B>      (u < v, 0-based; zero or more lines)
//! ```
//!
//! Lines starting with `#` are comments. Blank lines are ignored.

use crate::error::{Error, Result};
use crate::graph::{BicoloredGraph, Color};

pub fn to_bcg(g: &BicoloredGraph) -> String {
    let mut s = format!("bcg 1\nn {}\n", g.n());
    for (u, v, c) in g.edges() {
        s.push_str(&format!("e {u} {v} {c}\n"));
    }
    s
}

pub(crate) fn ser_bcg<S: serde::Serializer>(g: &BicoloredGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_bcg(g))
}

pub fn parse_bcg(text: &str) -> Result<BicoloredGraph> {
    let err = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if magic.trim() != "bcg 1" {
        return Err(err(ln, "expected header `bcg 1`"));
    }
    let (ln, count) = lines.next().ok_or_else(|| err(ln + 1, "missing `n <count>` line"))?;
    let n = match count.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", k] => k.parse::<usize>().map_err(|_| err(ln, "vertex count is not an integer"))?,
        _ => return Err(err(ln, "expected `n <count>`")),
    };

    let mut g = BicoloredGraph::empty(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [tag, u, v, c] = toks.as_slice() else {
            return Err(err(ln, "expected `e <u> <v> <R|B>`"));
        };
        if *tag != "e" {
            return Err(err(ln, "expected `e <u> <v> <R|B>`"));
        }
        let u: usize = u.parse().map_err(|_| err(ln, "endpoint is not an integer"))?;
        let v: usize = v.parse().map_err(|_| err(ln, "endpoint is not an integer"))?;
        let c = Color::from_letter(c).ok_or_else(|| err(ln, "color must be R or B"))?;
        if u >= n || v >= n {
            return Err(err(ln, &format!("endpoint out of range (n = {n})")));
        }
        if u == v {
            return Err(err(ln, "self-loop"));
        }
        if u > v {
            return Err(err(ln, "edges must be written with u < v"));
        }
        if g.has_edge(u, v) {
            return Err(err(ln, &format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v, c);
    }
    Ok(g)
}
