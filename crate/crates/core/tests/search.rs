use bicolor::balance::BalanceSpec;
use bicolor::enumerate::graphs_up_to_iso;
use bicolor::extremal::{ex_exact, ramsey_exact};
use bicolor::fixtures::{self, check_entry, Fixture};
use bicolor::inevitability::{embed_cycle_into_blowup, is_inevitable_oracle, is_inevitable_structural, verify_certificate};
use bicolor::oracle::{ex_bruteforce, orbit_count_complete, ramsey_bruteforce};
use bicolor::patterns::{h1, h2, t1, t2, PatternFamily};
use bicolor::{BicoloredGraph, Color, Error};

#[test]
fn shipped_fixtures_verify() {
    let report = fixtures::verify(&fixtures::default_path()).unwrap();
    assert!(report.all_pass);
    assert_eq!(report.entries.len(), 10);
}

#[test]
fn corrupted_fixture_names_the_entry() {
    let file = fixtures::load(&fixtures::default_path()).unwrap();
    let mut entry = file.get("ex/1/2/nonmono-triangles/n=5").cloned().expect("entry present");
    if let Fixture::Ex { value, .. } = &mut entry {
        *value += 1;
    }
    match check_entry(&entry) {
        Err(Error::FixtureMismatch(msg)) => assert!(msg.contains("ex/1/2/nonmono-triangles/n=5"), "{msg}"),
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

#[test]
fn ex_engine_matches_oracle_on_small_instances() {
    let families = [
        PatternFamily::NonMonoTriangles,
        PatternFamily::Handles,
        PatternFamily::NonMonoClique(4),
        PatternFamily::NonMonoCycle(4),
    ];
    for eps in ["1/2", "1/3"] {
        let spec: BalanceSpec = eps.parse().unwrap();
        for f in &families {
            for n in 1..=5 {
                let engine = ex_exact(&spec, n, f).unwrap().value;
                let (oracle, _) = ex_bruteforce(&spec, n, f).unwrap();
                assert_eq!(engine, oracle, "eps {eps}, {f}, n = {n}");
            }
        }
    }
}

#[test]
fn ramsey_engine_matches_oracle() {
    let spec = BalanceSpec::half();
    for f in [PatternFamily::NonMonoTriangles, PatternFamily::Unavoidable(1), PatternFamily::Unavoidable(2)] {
        let engine = ramsey_exact(&spec, &f, 7).unwrap().value;
        let oracle = ramsey_bruteforce(&spec, &f, 7).unwrap();
        assert_eq!(Some(engine), oracle, "{f}");
    }
}

#[test]
fn isomorphism_class_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| graphs_up_to_iso(n).len()).collect();
    // graphs whose pairs are absent, red or blue, up to relabeling
    assert_eq!(counts, vec![1, 3, 10, 66]);
    for n in 1..=5 {
        let complete = graphs_up_to_iso(n).into_iter().filter(BicoloredGraph::is_complete).count();
        assert_eq!(complete, orbit_count_complete(n), "n = {n}");
    }
    assert_eq!(orbit_count_complete(4), 11);
}

#[test]
fn structural_test_agrees_with_oracle_up_to_five_vertices() {
    for n in 1..=5 {
        let mut inevitable = 0;
        for g in graphs_up_to_iso(n) {
            let s = is_inevitable_structural(&g).unwrap();
            assert_eq!(s.is_some(), is_inevitable_oracle(&g), "{}", bicolor::to_bcg(&g));
            if let Some(c) = s {
                assert!(verify_certificate(&g, &c));
                inevitable += 1;
            }
        }
        assert!(inevitable > 0);
    }
}

fn cycle(colors: &[Color]) -> BicoloredGraph {
    let n = colors.len();
    BicoloredGraph::from_edges(n, colors.iter().enumerate().map(|(i, &c)| (i, (i + 1) % n, c))).unwrap()
}

/// Lengths of the maximal monochromatic paths of each color, or `None` for
/// a monochromatic cycle.
fn run_lengths(colors: &[Color]) -> Option<Vec<(Color, usize)>> {
    let n = colors.len();
    let start = (0..n).find(|&i| colors[i] != colors[(i + n - 1) % n])?;
    let mut out: Vec<(Color, usize)> = Vec::new();
    for k in 0..n {
        let c = colors[(start + k) % n];
        match out.last_mut() {
            Some((lc, len)) if *lc == c => *len += 1,
            _ => out.push((c, 1)),
        }
    }
    Some(out)
}

/// The cycle fits the blow-up of a triangle whose apex has two `double`
/// edges, or of a handle with triangle color `tri`.
fn fits(colors: &[Color], base: &BicoloredGraph, t: usize) -> bool {
    let n = colors.len();
    let first = colors[0];
    let triangle = base.n() == 3;
    // the bipartite color of the base: the apex color or the pendant color
    let bip = if triangle {
        (0..3).find_map(|x| {
            let (a, b) = (base.color(x, (x + 1) % 3), base.color(x, (x + 2) % 3));
            (a == b).then_some(a.unwrap())
        })
    } else {
        base.colored_neighbors((0..4).find(|&v| base.degree(v) == 1).unwrap()).first().map(|&(_, c)| c)
    }
    .unwrap();
    if t < n {
        return false;
    }
    match run_lengths(colors) {
        None => n.is_multiple_of(2) || (!triangle && first != bip),
        Some(rs) => rs.iter().all(|&(c, l)| if c == bip { l % 2 == 0 } else { triangle || l >= 2 }),
    }
}

#[test]
fn cycles_embed_into_blowups_exactly_when_they_fit() {
    let mut embedded = 0;
    for n in 3..=10 {
        for mask in 0u32..1 << n {
            let colors: Vec<Color> = (0..n).map(|i| if mask >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
            let c = cycle(&colors);
            let inevitable = is_inevitable_structural(&c).unwrap().is_some();
            for base in [t1(), t2(), h1(), h2()] {
                let expect = inevitable && fits(&colors, &base, n);
                match embed_cycle_into_blowup(&c, &base, n) {
                    Ok(w) => {
                        assert!(expect, "{colors:?}");
                        assert!(w.is_valid_in(&base.blow_up(n)), "{colors:?}");
                        embedded += 1;
                    }
                    Err(Error::PreconditionViolated(_)) => assert!(!expect, "{colors:?} into {}", bicolor::to_bcg(&base)),
                    Err(e) => panic!("{colors:?}: {e}"),
                }
            }
        }
    }
    assert!(embedded > 0);
}

#[test]
fn smallest_inevitable_cycle_without_even_runs() {
    // B R R B R R R: red forms two paths, blue joins them; neither color has
    // only even maximal paths
    let mut smallest = None;
    'outer: for n in 3..=10 {
        for mask in 0u32..1 << n {
            let colors: Vec<Color> = (0..n).map(|i| if mask >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
            let Some(rs) = run_lengths(&colors) else { continue };
            let even = |col: Color| rs.iter().all(|&(c, l)| c != col || l % 2 == 0);
            if !even(Color::Red) && !even(Color::Blue) && is_inevitable_structural(&cycle(&colors)).unwrap().is_some() {
                assert!(is_inevitable_oracle(&cycle(&colors)));
                smallest = Some(colors);
                break 'outer;
            }
        }
    }
    use Color::{Blue as B, Red as R};
    assert_eq!(smallest, Some(vec![B, R, R, B, R, R, R]));
}
