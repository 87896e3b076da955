//! Golden values for the exact searches, stored as versioned JSON.
//!
//! Each entry is recomputed on verification: by the naive oracle when the
//! instance is within the oracle's limits (or by the oracle at a reduced
//! limit for Ramsey entries), and always by the optimized engine.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::balance::{is_balanced, BalanceSpec};
use crate::bcg::{parse_bcg, to_bcg};
use crate::canon::canonical_certificate;
use crate::error::{Error, Result};
use crate::extremal::{ex_exact, ramsey_exact};
use crate::oracle::{ex_bruteforce, ramsey_bruteforce, EX_ORACLE_LIMIT, RAMSEY_ORACLE_LIMIT};
use crate::patterns::{contains_family, PatternFamily};

pub const SCHEMA: u32 = 1;
pub const ENV_VAR: &str = "BICOLOR_FIXTURES";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Fixture {
    Ex {
        name: String,
        epsilon: String,
        family: String,
        n: usize,
        value: u64,
        witness: String,
    },
    Ramsey {
        name: String,
        epsilon: String,
        family: String,
        n_max: usize,
        value: u64,
        witness: String,
    },
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Ex { name, .. } | Fixture::Ramsey { name, .. } => name,
        }
    }

    pub fn value(&self) -> u64 {
        match self {
            Fixture::Ex { value, .. } | Fixture::Ramsey { value, .. } => *value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema: u32,
    pub entries: Vec<Fixture>,
}

impl FixtureFile {
    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.entries.iter().find(|f| f.name() == name)
    }
}

/// `$BICOLOR_FIXTURES` if set, else the file shipped with this crate.
pub fn default_path() -> PathBuf {
    match std::env::var_os(ENV_VAR) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("golden.json"),
    }
}

pub fn load(path: &Path) -> Result<FixtureFile> {
    let text = std::fs::read_to_string(path)?;
    let file: FixtureFile =
        serde_json::from_str(&text).map_err(|e| Error::FixtureMismatch(format!("{}: {e}", path.display())))?;
    if file.schema != SCHEMA {
        return Err(Error::FixtureMismatch(format!("schema {} (expected {SCHEMA})", file.schema)));
    }
    Ok(file)
}

pub fn save(path: &Path, file: &FixtureFile) -> Result<()> {
    let mut text = serde_json::to_string_pretty(file).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// The instances covered by the golden file.
fn instances() -> Vec<(String, bool, String, usize)> {
    let mut v: Vec<(String, bool, String, usize)> =
        (1..=7).map(|n| ("1/2".to_string(), true, "nonmono-triangles".to_string(), n)).collect();
    for fam in ["unavoidable:1", "nonmono-triangles", "unavoidable:2"] {
        v.push(("1/2".to_string(), false, fam.to_string(), 10));
    }
    v
}

fn ex_name(eps: &str, fam: &str, n: usize) -> String {
    format!("ex/{eps}/{fam}/n={n}")
}

fn ramsey_name(eps: &str, fam: &str, n_max: usize) -> String {
    format!("ramsey/{eps}/{fam}/n_max={n_max}")
}

/// Computes every golden value with the engine, cross-checked against the
/// oracle wherever the oracle reaches.
pub fn generate() -> Result<FixtureFile> {
    let mut entries = Vec::new();
    for (eps, is_ex, fam, n) in instances() {
        let spec: BalanceSpec = eps.parse()?;
        let family: PatternFamily = fam.parse()?;
        let fixture = if is_ex {
            let out = ex_exact(&spec, n, &family)?;
            Fixture::Ex { name: ex_name(&eps, &fam, n), epsilon: eps, family: fam, n, value: out.value, witness: to_bcg(&out.witness) }
        } else {
            let out = ramsey_exact(&spec, &family, n)?;
            Fixture::Ramsey {
                name: ramsey_name(&eps, &fam, n),
                epsilon: eps,
                family: fam,
                n_max: n,
                value: out.value,
                witness: to_bcg(&out.witness),
            }
        };
        check_entry(&fixture)?;
        entries.push(fixture);
    }
    Ok(FixtureFile { schema: SCHEMA, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub expected: u64,
    pub engine: u64,
    /// Oracle value, when the instance (or a reduced version) is in reach.
    pub oracle: Option<u64>,
    pub witness_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub path: String,
    pub entries: Vec<EntryCheck>,
    pub all_pass: bool,
}

fn mismatch(name: &str, what: &str, expected: u64, got: u64) -> Error {
    Error::FixtureMismatch(format!("{name}: {what} gives {got}, fixture says {expected}"))
}

/// Recomputes one entry; `Err(FixtureMismatch)` names the entry on failure.
pub fn check_entry(f: &Fixture) -> Result<EntryCheck> {
    match f {
        Fixture::Ex { name, epsilon, family, n, value, witness } => {
            let spec: BalanceSpec = epsilon.parse()?;
            let fam: PatternFamily = family.parse()?;
            let engine = ex_exact(&spec, *n, &fam)?;
            if engine.value != *value {
                return Err(mismatch(name, "engine", *value, engine.value));
            }
            let oracle = if *n <= EX_ORACLE_LIMIT { Some(ex_bruteforce(&spec, *n, &fam)?.0) } else { None };
            if let Some(o) = oracle {
                if o != *value {
                    return Err(mismatch(name, "oracle", *value, o));
                }
            }
            let w = parse_bcg(witness)?;
            let witness_ok = w.n() == *n
                && w.edge_count() == *value
                && is_balanced(&w, &spec)
                && contains_family(&w, &fam).is_none();
            if !witness_ok {
                return Err(Error::FixtureMismatch(format!("{name}: stored witness fails re-verification")));
            }
            Ok(EntryCheck { name: name.clone(), expected: *value, engine: engine.value, oracle, witness_ok, pass: true })
        }
        Fixture::Ramsey { name, epsilon, family, n_max, value, witness } => {
            let spec: BalanceSpec = epsilon.parse()?;
            let fam: PatternFamily = family.parse()?;
            let engine = ramsey_exact(&spec, &fam, *n_max)?;
            if engine.value != *value {
                return Err(mismatch(name, "engine", *value, engine.value));
            }
            // the oracle runs at a reduced range; it must agree whenever the
            // threshold falls inside that range
            let reduced = (*n_max).min(RAMSEY_ORACLE_LIMIT);
            let oracle = ramsey_bruteforce(&spec, &fam, reduced)?;
            match oracle {
                Some(o) if (*value as usize) <= reduced && o != *value => return Err(mismatch(name, "oracle", *value, o)),
                None if (*value as usize) <= reduced => {
                    return Err(Error::FixtureMismatch(format!("{name}: oracle finds counterexamples up to {reduced}")))
                }
                _ => {}
            }
            let w = parse_bcg(witness)?;
            let witness_ok = w.n() as u64 + 1 == *value
                && w.is_complete()
                && is_balanced(&w, &spec)
                && contains_family(&w, &fam).is_none()
                && canonical_certificate(&w) == canonical_certificate(&engine.witness);
            if !witness_ok {
                return Err(Error::FixtureMismatch(format!("{name}: stored witness fails re-verification")));
            }
            Ok(EntryCheck { name: name.clone(), expected: *value, engine: engine.value, oracle, witness_ok, pass: true })
        }
    }
}

/// Checks every entry of the file at `path`.
pub fn verify(path: &Path) -> Result<FixtureReport> {
    let file = load(path)?;
    let entries = file.entries.iter().map(check_entry).collect::<Result<Vec<_>>>()?;
    Ok(FixtureReport { path: path.display().to_string(), all_pass: entries.iter().all(|e| e.pass), entries })
}

/// Names of entries whose value or witness changed between two files.
pub fn diff(old: &FixtureFile, new: &FixtureFile) -> Vec<String> {
    let mut out = Vec::new();
    for f in &new.entries {
        match old.get(f.name()) {
            None => out.push(format!("added {}", f.name())),
            Some(o) if o != f => out.push(format!("changed {}: {} -> {}", f.name(), o.value(), f.value())),
            _ => {}
        }
    }
    for o in &old.entries {
        if new.get(o.name()).is_none() {
            out.push(format!("removed {}", o.name()));
        }
    }
    out
}
