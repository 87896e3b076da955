//! Seeded randomized procedures with per-trial statistics.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream = trial
//! index), so aggregate reports do not depend on the thread count.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{choose2, BicoloredGraph, Color};
use crate::patterns::detect_nonmono_triangle;

/// The RNG for `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplerConfig {
    #[serde(serialize_with = "crate::balance::ser_ratio")]
    pub epsilon_prime: Ratio<u64>,
    pub k: usize,
    #[serde(rename = "C")]
    pub c: f64,
    pub seed: u64,
    pub trials: usize,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let e = self.epsilon_prime;
        if *e.numer() == 0 || e >= Ratio::new(1, 2) {
            return Err(Error::InvalidParams("need 0 < epsilon' < 1/2".into()));
        }
        if self.c <= 0.0 || self.k == 0 {
            return Err(Error::InvalidParams("need C > 0 and k >= 1".into()));
        }
        Ok(())
    }

    /// `p = 4k / (C n)`.
    pub fn p(&self, n: usize) -> f64 {
        4.0 * self.k as f64 / (self.c * n as f64)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub size: usize,
    pub e_red: u64,
    pub e_blue: u64,
    pub balanced: bool,
    pub success: bool,
    /// Procedure-specific deviation, when one is measured.
    pub deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub procedure: String,
    pub seed: u64,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub stats: BTreeMap<String, f64>,
    pub outcomes: Vec<TrialOutcome>,
}

impl TrialReport {
    fn new(procedure: &str, seed: u64, outcomes: Vec<TrialOutcome>) -> Self {
        let successes = outcomes.iter().filter(|o| o.success).count();
        let trials = outcomes.len();
        TrialReport {
            procedure: procedure.to_string(),
            seed,
            trials,
            successes,
            success_rate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            stats: BTreeMap::new(),
            outcomes,
        }
    }

    fn stat(&mut self, key: &str, value: f64) {
        self.stats.insert(key.to_string(), value);
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn color_counts_in(g: &BicoloredGraph, set: &[usize]) -> (u64, u64) {
    let mut mask = vec![0u64; g.words()];
    for &v in set {
        bits::set(&mut mask, v);
    }
    let (mut r, mut b) = (0, 0);
    for &v in set {
        r += bits::and_count(g.row(Color::Red, v), &mask) as u64;
        b += bits::and_count(g.row(Color::Blue, v), &mask) as u64;
    }
    (r / 2, b / 2)
}

/// `count > eps * total`, exactly.
fn exceeds(count: u64, total: u64, eps: Ratio<u64>) -> bool {
    count as u128 * *eps.denom() as u128 > *eps.numer() as u128 * total as u128
}

fn one_clique_sample(g: &BicoloredGraph, cfg: &SamplerConfig, trial: u64) -> (Vec<usize>, TrialOutcome) {
    let mut rng = trial_rng(cfg.seed, trial);
    let p = cfg.p(g.n());
    let s: Vec<usize> = (0..g.n()).filter(|_| rng.random_bool(p)).collect();
    // one pass: drop both ends of every non-adjacent pair in S
    let mut removed = vec![false; g.n()];
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !g.has_edge(u, v) {
                removed[u] = true;
                removed[v] = true;
            }
        }
    }
    let t: Vec<usize> = s.into_iter().filter(|&v| !removed[v]).collect();
    let (e_red, e_blue) = color_counts_in(g, &t);
    let pairs = choose2(t.len() as u64);
    let balanced = exceeds(e_red, pairs, cfg.epsilon_prime) && exceeds(e_blue, pairs, cfg.epsilon_prime);
    let big = t.len() as f64 >= cfg.k as f64 / cfg.c;
    let outcome = TrialOutcome { trial, size: t.len(), e_red, e_blue, balanced, success: big && balanced, deviation: None };
    (t, outcome)
}

/// Samples each vertex with probability `p = 4k/(Cn)`, then removes both
/// endpoints of every non-adjacent sampled pair. A trial succeeds when the
/// remaining clique `T` has at least `k/C` vertices and more than
/// `epsilon' * C(|T|, 2)` edges of each color. Returns the first successful
/// clique, if any, with the report over all trials.
pub fn balanced_clique_sample(g: &BicoloredGraph, cfg: &SamplerConfig) -> Result<(Option<Vec<usize>>, TrialReport)> {
    cfg.validate()?;
    let p = cfg.p(g.n());
    if p >= 1.0 {
        return Err(Error::InvalidParams(format!("p = 4k/(Cn) = {p} must be below 1")));
    }
    let runs: Vec<(Vec<usize>, TrialOutcome)> =
        (0..cfg.trials as u64).into_par_iter().map(|t| one_clique_sample(g, cfg, t)).collect();
    for (t, _) in &runs {
        debug_assert!(g.is_clique(t, None));
    }
    let first = runs.iter().find(|(_, o)| o.success).map(|(t, _)| t.clone());
    let mut report = TrialReport::new("balanced-clique", cfg.seed, runs.into_iter().map(|(_, o)| o).collect());
    let sizes: Vec<f64> = report.outcomes.iter().map(|o| o.size as f64).collect();
    let (mean, se) = mean_and_se(&sizes);
    let c = cfg.c;
    report.stat("p", p);
    report.stat("C", c);
    report.stat("k", cfg.k as f64);
    report.stat("delta", 1.0 / c.sqrt());
    report.stat("M", 4.0 * cfg.k as f64 / c / (1.0 - 1.0 / c));
    report.stat("mean_size", mean);
    report.stat("se_size", se);
    report.stat("all_cliques", 1.0);
    Ok((first, report))
}

/// Result of one run of the random-order clique procedure.
#[derive(Clone, Debug, Serialize)]
pub struct PermutationClique {
    pub clique: Vec<usize>,
    pub triangle: [usize; 3],
    /// Vertices preceding all their non-neighbors in the induced order.
    pub s: Vec<usize>,
    /// Draws before the first non-monochromatic triangle is complete.
    pub w: usize,
}

fn completes_nonmono(g: &BicoloredGraph, seen: &[usize], v: usize) -> Option<[usize; 3]> {
    let mut best: Option<[usize; 3]> = None;
    for (i, &a) in seen.iter().enumerate() {
        let Some(ca) = g.color(a, v) else { continue };
        for &b in &seen[i + 1..] {
            let (Some(cb), Some(cab)) = (g.color(b, v), g.color(a, b)) else { continue };
            if ca == cb && cb == cab {
                continue;
            }
            let mut tri = [a, b, v];
            tri.sort_unstable();
            if best.is_none_or(|t| tri < t) {
                best = Some(tri);
            }
        }
    }
    best
}

fn one_permutation_clique(g: &BicoloredGraph, rng: &mut ChaCha8Rng) -> PermutationClique {
    let n = g.n();
    let mut seen_at = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut draws = 0;
    let mut found: Option<([usize; 3], usize)> = None;
    while order.len() < n {
        let v = rng.random_range(0..n);
        draws += 1;
        if seen_at[v] != usize::MAX {
            continue;
        }
        if found.is_none() {
            if let Some(tri) = completes_nonmono(g, &order, v) {
                found = Some((tri, draws - 1));
            }
        }
        seen_at[v] = order.len();
        order.push(v);
    }
    let (triangle, w) = found.expect("host has a non-monochromatic triangle");
    let s: Vec<usize> = (0..n)
        .filter(|&v| (0..n).all(|u| u == v || g.has_edge(u, v) || seen_at[v] < seen_at[u]))
        .collect();
    // W' is every vertex among the first w draws, i.e. seen before the
    // draw that completes the triangle
    let completing = seen_at[triangle.iter().copied().max_by_key(|&x| seen_at[x]).unwrap()];
    let mut clique: Vec<usize> = triangle.to_vec();
    clique.extend(s.iter().copied().filter(|&v| seen_at[v] >= completing && !triangle.contains(&v)));
    clique.sort_unstable();
    PermutationClique { clique, triangle, s, w }
}

fn is_nonmono_clique(g: &BicoloredGraph, set: &[usize]) -> bool {
    let (r, b) = color_counts_in(g, set);
    g.is_clique(set, None) && r > 0 && b > 0
}

/// Draws vertices with repetition until all are seen; returns the first
/// non-monochromatic triangle together with the members of `S` first seen
/// after it completes. Ties at the completing draw go to the
/// lexicographically least triple.
pub fn permutation_clique(g: &BicoloredGraph, seed: u64) -> Result<(PermutationClique, TrialReport)> {
    let (mut runs, report) = permutation_clique_trials(g, seed, 1)?;
    Ok((runs.remove(0), report))
}

/// `trials` independent runs, comparing the mean of `|S|` with
/// `sum_v 1/(n - d(v))`.
pub fn permutation_clique_trials(g: &BicoloredGraph, seed: u64, trials: usize) -> Result<(Vec<PermutationClique>, TrialReport)> {
    if detect_nonmono_triangle(g).is_none() {
        return Err(Error::NoNonMonoTriangle);
    }
    let runs: Vec<PermutationClique> =
        (0..trials as u64).into_par_iter().map(|t| one_permutation_clique(g, &mut trial_rng(seed, t))).collect();
    let outcomes = runs
        .iter()
        .enumerate()
        .map(|(t, r)| {
            let (e_red, e_blue) = color_counts_in(g, &r.clique);
            let ok = is_nonmono_clique(g, &r.clique) && g.is_clique(&r.s, None);
            TrialOutcome { trial: t as u64, size: r.clique.len(), e_red, e_blue, balanced: e_red > 0 && e_blue > 0, success: ok, deviation: None }
        })
        .collect();
    let mut report = TrialReport::new("permutation-clique", seed, outcomes);
    let n = g.n();
    let expected: f64 = (0..n).map(|v| 1.0 / (n - g.degree(v)) as f64).sum();
    let s_sizes: Vec<f64> = runs.iter().map(|r| r.s.len() as f64).collect();
    let (mean, se) = mean_and_se(&s_sizes);
    let (mean_w, _) = mean_and_se(&runs.iter().map(|r| r.w as f64).collect::<Vec<_>>());
    report.stat("expected_s", expected);
    report.stat("mean_s", mean);
    report.stat("se_s", se);
    report.stat("z_s", if se > 0.0 { (mean - expected) / se } else { 0.0 });
    report.stat("mean_w", mean_w);
    Ok((runs, report))
}

/// Pair densities of a `k`-partite bicolored graph.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterColoringSpec {
    pub k: usize,
    pub epsilon: f64,
    pub epsilon0: f64,
    /// `(d, d_R)` for each pair `i < j`, in lexicographic pair order.
    pub densities: Vec<(f64, f64)>,
}

impl ClusterColoringSpec {
    /// Checks `k >= 1/epsilon0`, `0 <= d_R <= d <= 1`, and that every pair
    /// with positive density is dense in some color.
    pub fn validate(&self) -> Result<()> {
        if self.densities.len() as u64 != choose2(self.k as u64) {
            return Err(Error::InvalidParams(format!("need {} pair densities", choose2(self.k as u64))));
        }
        if self.epsilon0 <= 0.0 || (self.k as f64) < 1.0 / self.epsilon0 {
            return Err(Error::HypothesisViolated(format!("k = {} < 1/epsilon0", self.k)));
        }
        for (i, &(d, dr)) in self.densities.iter().enumerate() {
            if !(0.0..=1.0).contains(&d) || dr < 0.0 || dr > d {
                return Err(Error::InvalidParams(format!("pair {i}: need 0 <= d_R <= d <= 1")));
            }
            if d > 0.0 && dr < self.epsilon && d - dr < self.epsilon {
                return Err(Error::HypothesisViolated(format!("pair {i}: neither color has density {}", self.epsilon)));
            }
        }
        Ok(())
    }

    /// `sum over pairs of d_R/d`, divided by `C(k, 2)`; the expected red
    /// density of the random coloring.
    pub fn red_density(&self) -> f64 {
        self.densities.iter().filter(|(d, _)| *d > 0.0).map(|(d, dr)| dr / d).sum::<f64>() / choose2(self.k as u64) as f64
    }

    pub fn blue_density(&self) -> f64 {
        self.densities.iter().filter(|(d, _)| *d > 0.0).map(|(d, dr)| (d - dr) / d).sum::<f64>()
            / choose2(self.k as u64) as f64
    }

    pub fn gamma_red(&self) -> f64 {
        4.0 * self.epsilon0 / self.red_density().sqrt()
    }

    pub fn gamma_blue(&self) -> f64 {
        4.0 * self.epsilon0 / self.blue_density().sqrt()
    }

    /// Pairs with `d >= 2 epsilon` uniformly, `d_R` uniform in `[0, d]`.
    pub fn random_admissible(k: usize, epsilon: f64, epsilon0: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let densities = (0..choose2(k as u64))
            .map(|_| {
                let d = rng.random_range(2.0 * epsilon..=1.0);
                (d, rng.random_range(0.0..=d))
            })
            .collect();
        ClusterColoringSpec { k, epsilon, epsilon0, densities }
    }
}

/// Colors each positive-density pair red with probability `d_R/d`, blue
/// otherwise.
pub fn random_cluster_coloring(spec: &ClusterColoringSpec, seed: u64) -> Result<(BicoloredGraph, TrialReport)> {
    let (mut graphs, report) = random_cluster_coloring_trials(spec, seed, 1)?;
    Ok((graphs.remove(0), report))
}

fn cluster_trial(spec: &ClusterColoringSpec, rng: &mut ChaCha8Rng) -> (BicoloredGraph, usize) {
    let mut g = BicoloredGraph::empty(spec.k);
    let mut uncertified = 0;
    let mut i = 0;
    for u in 0..spec.k {
        for v in u + 1..spec.k {
            let (d, dr) = spec.densities[i];
            i += 1;
            if d <= 0.0 {
                continue;
            }
            let red = rng.random_bool((dr / d).clamp(0.0, 1.0));
            let own = if red { dr } else { d - dr };
            if own < spec.epsilon {
                uncertified += 1;
            }
            g.add_edge(u, v, if red { Color::Red } else { Color::Blue });
        }
    }
    (g, uncertified)
}

/// `trials` independent colorings. A trial succeeds when both color
/// densities lie within `gamma_R`, `gamma_B` of their expectations; the
/// report also carries the empirical Chernoff tail of the red count on a
/// grid of relative deviations next to `2 exp(-mu gamma^2 / 3)`.
pub fn random_cluster_coloring_trials(spec: &ClusterColoringSpec, seed: u64, trials: usize) -> Result<(Vec<BicoloredGraph>, TrialReport)> {
    spec.validate()?;
    let pairs = choose2(spec.k as u64) as f64;
    let (dr, db) = (spec.red_density(), spec.blue_density());
    let (gr, gb) = (spec.gamma_red(), spec.gamma_blue());
    let runs: Vec<(BicoloredGraph, usize)> =
        (0..trials as u64).into_par_iter().map(|t| cluster_trial(spec, &mut trial_rng(seed, t))).collect();
    let mut uncertified = 0;
    let outcomes = runs
        .iter()
        .enumerate()
        .map(|(t, (g, u))| {
            uncertified += u;
            let (e_red, e_blue) = g.edge_counts();
            let dev_r = (e_red as f64 / pairs - dr).abs();
            let dev_b = (e_blue as f64 / pairs - db).abs();
            TrialOutcome {
                trial: t as u64,
                size: spec.k,
                e_red,
                e_blue,
                balanced: e_red > 0 && e_blue > 0,
                success: dev_r <= gr && dev_b <= gb,
                deviation: Some(dev_r),
            }
        })
        .collect::<Vec<_>>();
    let mut report = TrialReport::new("cluster-coloring", seed, outcomes);
    report.stat("d_red", dr);
    report.stat("d_blue", db);
    report.stat("gamma_red", gr);
    report.stat("gamma_blue", gb);
    report.stat("uncertified_edges", uncertified as f64);
    let mu = dr * pairs;
    for gamma in [0.01, 0.02, 0.05, 0.1] {
        let tail = report.outcomes.iter().filter(|o| (o.e_red as f64 - mu).abs() >= gamma * mu).count() as f64
            / trials.max(1) as f64;
        report.stat(&format!("tail_{gamma}"), tail);
        report.stat(&format!("chernoff_{gamma}"), 2.0 * (-mu * gamma * gamma / 3.0).exp());
    }
    Ok((runs.into_iter().map(|(g, _)| g).collect(), report))
}

/// Exact variance of `e_c` of a uniform `n2`-subset, by the pair decomposition
/// over edges sharing 2, 1 or 0 endpoints.
fn subsample_variance(g: &BicoloredGraph, c: Color, n2: usize) -> (f64, f64) {
    let n1 = g.n();
    let p = |k: usize| (0..k).map(|i| (n2 as f64 - i as f64) / (n1 as f64 - i as f64)).product::<f64>();
    let e = g.edge_counts();
    let e = if c == Color::Red { e.0 } else { e.1 } as f64;
    let paths: f64 = (0..n1).map(|v| choose2(g.color_degree(v, c) as u64) as f64).sum();
    let mean = e * p(2);
    let second = e * p(2) + 2.0 * paths * p(3) + (e * e - e - 2.0 * paths) * p(4);
    (mean, second - mean * mean)
}

/// Induced red and blue densities of `trials` uniform `n2`-subsets. A trial
/// succeeds when the blue density is within `tolerance` of the host's; the
/// report carries the matching Chebyshev bound from the exact variance.
pub fn subsample_density(g: &BicoloredGraph, n2: usize, trials: usize, seed: u64, tolerance: f64) -> Result<TrialReport> {
    if n2 > g.n() || n2 < 2 {
        return Err(Error::InvalidParams(format!("need 2 <= n2 <= n = {}", g.n())));
    }
    let pairs2 = choose2(n2 as u64) as f64;
    let db = g.edge_counts().1 as f64 / choose2(g.n() as u64) as f64;
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut set = index::sample(&mut rng, g.n(), n2).into_vec();
            set.sort_unstable();
            let (e_red, e_blue) = color_counts_in(g, &set);
            let dev = (e_blue as f64 / pairs2 - db).abs();
            TrialOutcome { trial: t, size: n2, e_red, e_blue, balanced: e_red > 0 && e_blue > 0, success: dev <= tolerance, deviation: Some(dev) }
        })
        .collect();
    let mut report = TrialReport::new("subsample", seed, outcomes);
    let (mean, var) = subsample_variance(g, Color::Blue, n2);
    report.stat("d_blue", db);
    report.stat("tolerance", tolerance);
    report.stat("expected_e_blue", mean);
    report.stat("var_e_blue", var);
    let bound = if tolerance > 0.0 { var / (tolerance * pairs2).powi(2) } else { f64::INFINITY };
    report.stat("chebyshev_bound", bound.min(1.0));
    let max_dev = report.outcomes.iter().filter_map(|o| o.deviation).fold(0.0, f64::max);
    report.stat("max_deviation", max_dev);
    Ok(report)
}

/// Uniformly random vertex order from `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}
