use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bicolor::balance::{density, is_balanced, BalanceSpec};
use bicolor::constructions as cons;
use bicolor::error::Error;
use bicolor::extremal::{ex_exact_with_limit, ex_limit_diagnostic, ramsey_exact_with_limit, DEFAULT_EX_LIMIT, DEFAULT_RAMSEY_LIMIT};
use bicolor::inevitability::{embed_cycle_into_blowup, is_inevitable_structural, type_embeddability, verify_certificate};
use bicolor::normalize::{analyze, clone_normalize, identity_permutation};
use bicolor::patterns::{contains_family, h1, h2, t1, t2, PatternFamily};
use bicolor::probabilistic as prob;
use bicolor::{fixtures, parse_bcg, to_bcg, BicoloredGraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

mod manifest;

use manifest::{document, RunManifest};

/// Balanced red-blue edge-colored graphs: detection, exact search,
/// constructions and randomized procedures.
#[derive(Parser, Debug)]
#[command(name = "bicolor", version)]
struct Cli {
    /// Worker threads for searches and trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit CSV instead of JSON where the result is tabular.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Check epsilon-balance of a graph.
    Balance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "1/2")]
        eps: String,
    },
    /// Look for a member of a pattern family.
    Detect {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: String,
    },
    /// Decide inevitability and cross-check against the embedding oracle.
    Inevitable {
        #[arg(long)]
        graph: PathBuf,
        /// Also run the embedding oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact balanced extremal number.
    Ex {
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, required_unless_present = "n_list")]
        n: Option<usize>,
        /// Comma-separated sizes for a density table.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// Extra epsilons for the density table.
        #[arg(long, value_delimiter = ',')]
        eps_grid: Vec<String>,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_EX_LIMIT)]
        limit: usize,
    },
    /// Exact balanced Ramsey threshold.
    Ramsey {
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_RAMSEY_LIMIT)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_RAMSEY_LIMIT)]
        limit: usize,
    },
    /// Generate an explicit construction.
    Construct(ConstructArgs),
    /// Run a randomized procedure.
    Sample(SampleArgs),
    /// Clone-normalize a triangle- and handle-free graph.
    Normalize {
        #[arg(long)]
        graph: PathBuf,
        /// `identity` or `seed:N`.
        #[arg(long, default_value = "identity")]
        perm: String,
        /// Write one JSON object per step to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Embed a cycle into a blow-up of T1, T2, H1 or H2.
    Embed {
        #[arg(long)]
        cycle: PathBuf,
        /// `t1`, `t2`, `h1`, `h2` or a bcg file.
        #[arg(long)]
        base: String,
        #[arg(long)]
        t: usize,
    },
    /// Golden-value regression.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FixturesAction {
    /// Recompute every entry and compare.
    Verify {
        /// Fixture file (default: $BICOLOR_FIXTURES or the bundled file).
        #[arg(long)]
        path: Option<PathBuf>,
        /// Rewrite the file from fresh computations and print the diff.
        #[arg(long)]
        regenerate: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConstructName {
    Dmm,
    HalfHalf,
    Cliques,
    Urschel,
    UrschelSearch,
    Blowup,
    GDoublePrime,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Middle {
    Red,
    Blue,
    Alternating,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    name: ConstructName,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Urschel part sizes `a,b,c,d`.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Base coloring for `blowup`.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Blow-up factor.
    #[arg(long)]
    m: Option<usize>,
    /// Unavoidable family parameter checked on a blow-up.
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// `G''` sizes `r,b,m,r1,r2,b1,b2,d`.
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
    #[arg(long, value_enum, default_value = "red")]
    middle: Middle,
    /// Print the property report instead of the graph.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Procedure {
    BalancedClique,
    PermutationClique,
    Cluster,
    Subsample,
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    procedure: Procedure,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Target clique parameter `k` (balanced-clique), or the number of
    /// parts (cluster).
    #[arg(long, default_value_t = 12)]
    k: usize,
    #[arg(long = "C", default_value_t = 8.0)]
    c: f64,
    #[arg(long, default_value = "1/4")]
    eps_prime: String,
    /// Per-pair density threshold (cluster).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon0: f64,
    /// Sample size (subsample).
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    tolerance: f64,
    /// Keep per-trial outcomes in the JSON output.
    #[arg(long)]
    json: bool,
}

/// Output of one subcommand: the document and whether every check passed.
struct Output {
    body: String,
    ok: bool,
}

fn read_graph(path: &Path) -> anyhow::Result<BicoloredGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_bcg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn json_out<T: Serialize>(m: &RunManifest, r: &T) -> String {
    let mut s = serde_json::to_string_pretty(&document(m, r)).expect("serializable");
    s.push('\n');
    s
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Error::InvalidParams(msg.into()))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let fixtures_path = fixtures::default_path();
    let params = serde_json::to_value(&cli.command)?;
    let name = match params.as_object().and_then(|o| o.keys().next()) {
        Some(k) => k.clone(),
        None => params.as_str().unwrap_or("unknown").to_string(),
    };
    let seeds = match &cli.command {
        Command::Sample(a) => vec![a.seed],
        _ => vec![],
    };
    let manifest = RunManifest::new(&name, params, seeds, &fixtures_path);
    let m = &manifest;
    let ok = |body: String| Ok(Output { body, ok: true });

    match &cli.command {
        Command::Balance { graph, eps } => {
            let g = read_graph(graph)?;
            let spec: BalanceSpec = eps.parse()?;
            let (e_red, e_blue) = g.edge_counts();
            let balanced = is_balanced(&g, &spec);
            ok(json_out(m, &json!({"balanced": balanced, "e_red": e_red, "e_blue": e_blue, "density": density(&g)})))
        }
        Command::Detect { graph, family } => {
            let g = read_graph(graph)?;
            let fam: PatternFamily = family.parse()?;
            fam.validate()?;
            let w = contains_family(&g, &fam);
            ok(json_out(m, &json!({"found": w.is_some(), "witness": w})))
        }
        Command::Inevitable { graph, oracle } => {
            let g = read_graph(graph)?;
            let cert = is_inevitable_structural(&g)?;
            let cert_ok = cert.as_ref().is_none_or(|c| verify_certificate(&g, c));
            let mut out = json!({"inevitable": cert.is_some(), "certificate": cert, "certificate_valid": cert_ok});
            let mut agree = true;
            if *oracle {
                let te = type_embeddability(&g);
                agree = te.inevitable() == cert.is_some();
                out["oracle"] = json!({"inevitable": te.inevitable(), "type1": te.type1.is_some(), "type2": te.type2.is_some(), "t": te.t});
                out["agree"] = json!(agree);
            }
            Ok(Output { body: json_out(m, &out), ok: cert_ok && agree })
        }
        Command::Ex { eps, n, n_list, eps_grid, family, limit } => {
            let spec: BalanceSpec = eps.parse()?;
            let fam: PatternFamily = family.parse()?;
            if !n_list.is_empty() {
                let grid = eps_grid.iter().map(|e| e.parse()).collect::<Result<Vec<BalanceSpec>, _>>()?;
                if let Some(&big) = n_list.iter().find(|&&k| k > *limit) {
                    return Err(Error::LimitExceeded { n: big, limit: *limit }.into());
                }
                let diag = ex_limit_diagnostic(&spec, &fam, n_list, &grid)?;
                return ok(if cli.csv { diag.to_csv() } else { json_out(m, &diag) });
            }
            let n = n.ok_or_else(|| usage("need --n or --n-list"))?;
            let out = ex_exact_with_limit(&spec, n, &fam, *limit)?;
            ok(json_out(m, &out))
        }
        Command::Ramsey { eps, family, n_max, limit } => {
            let spec: BalanceSpec = eps.parse()?;
            let fam: PatternFamily = family.parse()?;
            let out = ramsey_exact_with_limit(&spec, &fam, *n_max, *limit)?;
            ok(json_out(m, &out))
        }
        Command::Construct(a) => construct(m, a),
        Command::Sample(a) => sample(m, a, cli.csv),
        Command::Normalize { graph, perm, log } => {
            let g = read_graph(graph)?;
            let order = match perm.as_str() {
                "identity" => identity_permutation(g.n()),
                p => match p.strip_prefix("seed:").map(str::parse::<u64>) {
                    Some(Ok(s)) => prob::random_permutation(g.n(), s),
                    _ => return Err(usage(format!("--perm must be identity or seed:N, got {p}"))),
                },
            };
            let out = clone_normalize(&g, &order)?;
            if let Some(path) = log {
                let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                for s in &out.steps {
                    writeln!(f, "{}", serde_json::to_string(s)?)?;
                }
            }
            let analysis = analyze(&out.graph)?;
            let monotone = out.steps.iter().all(|s| s.e_red_after >= s.e_red_before && s.e_blue_after >= s.e_blue_before);
            let chain = g.edge_count() <= out.graph.edge_count() && out.graph.edge_count() <= analysis.params.edge_formula();
            let pass = monotone && chain && analysis.bounds.hold() && analysis.m_report.triangle_free;
            let body = json_out(
                m,
                &json!({
                    "graph": to_bcg(&out.graph),
                    "steps": out.steps.len(),
                    "monotone": monotone,
                    "edges_before": g.edge_count(),
                    "edges_after": out.graph.edge_count(),
                    "g_double_prime_edges": analysis.params.edge_formula(),
                    "chain_holds": chain,
                    "analysis": analysis,
                }),
            );
            Ok(Output { body, ok: pass })
        }
        Command::Embed { cycle, base, t } => {
            let c = read_graph(cycle)?;
            let b = match base.as_str() {
                "t1" => t1(),
                "t2" => t2(),
                "h1" => h1(),
                "h2" => h2(),
                path => read_graph(Path::new(path))?,
            };
            let w = embed_cycle_into_blowup(&c, &b, *t)?;
            let host = b.blow_up(*t);
            let valid = w.is_valid_in(&host);
            Ok(Output { body: json_out(m, &json!({"witness": w, "valid": valid, "host_vertices": host.n()})), ok: valid })
        }
        Command::Fixtures { action: FixturesAction::Verify { path, regenerate } } => {
            let path = path.clone().unwrap_or(fixtures_path);
            if *regenerate {
                let old = fixtures::load(&path).ok();
                let new = fixtures::generate()?;
                let changes = old.as_ref().map_or_else(|| vec!["created".to_string()], |o| fixtures::diff(o, &new));
                fixtures::save(&path, &new)?;
                return ok(json_out(m, &json!({"path": path.display().to_string(), "entries": new.entries.len(), "changes": changes})));
            }
            let report = fixtures::verify(&path)?;
            if cli.csv {
                let mut s = String::from("name,expected,engine,oracle,witness_ok,pass\n");
                for e in &report.entries {
                    let oracle = e.oracle.map_or(String::new(), |o| o.to_string());
                    s.push_str(&format!("{},{},{},{},{},{}\n", e.name, e.expected, e.engine, oracle, e.witness_ok, e.pass));
                }
                return Ok(Output { body: s, ok: report.all_pass });
            }
            Ok(Output { ok: report.all_pass, body: json_out(m, &report) })
        }
    }
}

fn need(v: Option<usize>, flag: &str) -> anyhow::Result<usize> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn construct(m: &RunManifest, a: &ConstructArgs) -> anyhow::Result<Output> {
    let finish = |g: BicoloredGraph, report: Option<cons::ConstructionReport>| -> anyhow::Result<Output> {
        match report {
            Some(r) if a.verify => Ok(Output { ok: r.ok, body: json_out(m, &r) }),
            _ => Ok(Output { body: to_bcg(&g), ok: true }),
        }
    };
    match a.name {
        ConstructName::Dmm => {
            let s = need(a.s, "s")?;
            finish(cons::dmm_tripartite(s)?, a.verify.then(|| cons::verify_dmm(s)).transpose()?)
        }
        ConstructName::HalfHalf => {
            let n = need(a.n, "n")?;
            finish(cons::half_half_bipartite(n)?, a.verify.then(|| cons::verify_half_half(n)).transpose()?)
        }
        ConstructName::Cliques => {
            let n = need(a.n, "n")?;
            finish(cons::disjoint_mono_cliques(n)?, a.verify.then(|| cons::verify_disjoint_cliques(n)).transpose()?)
        }
        ConstructName::Urschel => {
            let [p, q, r, s] = a.sizes[..] else { return Err(usage("--sizes needs a,b,c,d")) };
            finish(cons::urschel(p, q, r, s)?, a.verify.then(|| cons::verify_urschel(p, q, r, s)).transpose()?)
        }
        ConstructName::UrschelSearch => {
            let n = a.n.unwrap_or(200);
            let grid = cons::urschel_grid_search(n)?;
            let cont = cons::urschel_continuous_optimum();
            let s = grid.sizes;
            let report = cons::verify_urschel(s.a, s.b, s.c, s.d)?;
            let above = grid.density > Ratio::new(2, 3);
            let body = json_out(m, &json!({"grid": grid, "continuous": cont, "report": report, "above_two_thirds": above}));
            Ok(Output { body, ok: report.ok && above })
        }
        ConstructName::Blowup => {
            let base = read_graph(a.base.as_deref().ok_or_else(|| usage("missing --base"))?)?;
            let k = need(a.m, "m")?;
            let g = cons::ramsey_blowup(&base, k)?;
            finish(g, a.verify.then(|| cons::verify_ramsey_blowup(&base, k, a.t)).transpose()?)
        }
        ConstructName::GDoublePrime => {
            let [r, b, mm, r1, r2, b1, b2, d] = a.params[..] else {
                return Err(usage("--params needs r,b,m,r1,r2,b1,b2,d"));
            };
            let middle = match a.middle {
                Middle::Red => cons::MiddleColoring::Red,
                Middle::Blue => cons::MiddleColoring::Blue,
                Middle::Alternating => cons::MiddleColoring::Alternating,
            };
            let p = cons::GDoublePrimeParams::new(r, b, mm, r1, r2, b1, b2, d)?.with_middle(middle);
            finish(cons::g_double_prime(&p)?, a.verify.then(|| cons::verify_g_double_prime(&p)).transpose()?)
        }
    }
}

fn report_csv(r: &prob::TrialReport) -> String {
    let mut s = String::from("trial,size,e_red,e_blue,balanced,success,deviation\n");
    for o in &r.outcomes {
        let dev = o.deviation.map_or(String::new(), |d| d.to_string());
        s.push_str(&format!("{},{},{},{},{},{},{}\n", o.trial, o.size, o.e_red, o.e_blue, o.balanced, o.success, dev));
    }
    s
}

fn sample(m: &RunManifest, a: &SampleArgs, csv: bool) -> anyhow::Result<Output> {
    let graph = || -> anyhow::Result<BicoloredGraph> { read_graph(a.graph.as_deref().ok_or_else(|| usage("missing --graph"))?) };
    let (mut report, extra, ok): (prob::TrialReport, Value, bool) = match a.procedure {
        Procedure::BalancedClique => {
            let g = graph()?;
            let eps: BalanceSpec = a.eps_prime.parse()?;
            let cfg = prob::SamplerConfig { epsilon_prime: eps.epsilon(), k: a.k, c: a.c, seed: a.seed, trials: a.trials };
            let (t, r) = prob::balanced_clique_sample(&g, &cfg)?;
            let ok = r.outcomes.len() == a.trials;
            (r, json!({"config": cfg, "first_success": t}), ok)
        }
        Procedure::PermutationClique => {
            let g = graph()?;
            let (runs, r) = prob::permutation_clique_trials(&g, a.seed, a.trials)?;
            let ok = r.successes == r.trials;
            (r, json!({"first": runs.first()}), ok)
        }
        Procedure::Cluster => {
            let spec = prob::ClusterColoringSpec::random_admissible(a.k, a.epsilon, a.epsilon0, a.seed);
            let (_, r) = prob::random_cluster_coloring_trials(&spec, a.seed, a.trials)?;
            (r, json!({"k": a.k, "epsilon": a.epsilon, "epsilon0": a.epsilon0}), true)
        }
        Procedure::Subsample => {
            let g = graph()?;
            let n2 = need(a.n2, "n2")?;
            (prob::subsample_density(&g, n2, a.trials, a.seed, a.tolerance)?, json!({"n2": n2}), true)
        }
    };
    if csv {
        return Ok(Output { body: report_csv(&report), ok });
    }
    if !a.json {
        report.outcomes.clear();
    }
    Ok(Output { body: json_out(m, &json!({"report": report, "details": extra})), ok })
}

/// 2 for bad input, 1 for findings that are answers rather than mistakes.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::InvalidEpsilon(_)
            | Error::InvalidParams(_)
            | Error::VertexOutOfRange { .. }
            | Error::Io(_)
            | Error::LimitExceeded { .. }
            | Error::TooLarge { .. },
        ) => 2,
        Some(_) => 1,
        None if e.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &out.body).with_context(|| format!("writing {}", p.display())),
                None => std::io::stdout().write_all(out.body.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("a checked property does not hold");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
