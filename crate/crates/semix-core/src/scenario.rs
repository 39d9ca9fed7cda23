//! Scenario files: a TOML description of one surface computation.
//!
//! A scenario names a group fixture, specifies the index-2 subgroup and the
//! covering datum (fully pinned or partially, with the rest searched), an
//! optional lift directive, and an optional block of expected values that
//! turns the run into a regression check.
//!
//! ```toml
//! name = "example"
//! group_file = "../fixtures/groups/g_48_38.group"
//! mode = "pinned"              # pinned | search-gv | search-tau | full-search
//!
//! [datum]
//! g0_generators = ["g1", "g4", "g2*g5"]
//! signature = "[1;2,2]"
//! tau_prime = "g3"             # absent in search-tau / full-search
//! hyperbolic = [["g2", "g4*g5"]]
//! branch = ["g1*g2", "g1*g2"]  # with hyperbolic: absent in search-gv / full-search
//!
//! [lift]
//! mode = "auto"                # auto | none | pinned
//!
//! [expected]
//! k2 = 4
//! branch = "(2,-4),(4,-12)"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::cover::SignatureType;
use crate::error::ScenarioError;
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Pinned,
    SearchGv,
    SearchTau,
    FullSearch,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Pinned => "pinned",
            Mode::SearchGv => "search-gv",
            Mode::SearchTau => "search-tau",
            Mode::FullSearch => "full-search",
        }
    }

    fn parse(s: &str) -> Option<Mode> {
        match s {
            "pinned" => Some(Mode::Pinned),
            "search-gv" => Some(Mode::SearchGv),
            "search-tau" => Some(Mode::SearchTau),
            "full-search" => Some(Mode::FullSearch),
            _ => None,
        }
    }

    /// Whether the vector (hyperbolic + branch entries) must be given.
    pub fn vector_pinned(&self) -> bool {
        matches!(self, Mode::Pinned | Mode::SearchTau)
    }

    /// Whether the coset representative must be given.
    pub fn tau_pinned(&self) -> bool {
        matches!(self, Mode::Pinned | Mode::SearchGv)
    }
}

#[derive(Clone, Debug)]
pub enum LiftDirective {
    /// Lift when the signature has a lift rule; analyze the base cover
    /// otherwise.
    Auto,
    /// Never lift.
    None,
    /// A caller-supplied extension, verified before use.
    Pinned {
        group_file: PathBuf,
        /// Images of the subgroup generators, as words in the lift group.
        embedding: Vec<Word>,
        /// The lifted vector's branch entries, as words in the lift group.
        vector: Vec<Word>,
    },
}

/// Expected values; every field is optional and only present fields are
/// checked. In search modes a datum "matches" when all per-datum fields
/// hold, and the scenario passes when at least one datum matches.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct Expected {
    pub genus: Option<usize>,
    pub q: Option<usize>,
    pub chi: Option<i64>,
    pub k2: Option<i64>,
    /// Branch locus shorthand, e.g. `"(2,-4)^2,(3,-8)"` (sorted).
    pub branch: Option<String>,
    /// Totals over the first analyzed cover.
    pub orbit_divisors: Option<usize>,
    pub non_branch: Option<usize>,
    pub exceptional: Option<usize>,
    pub disjoint: Option<bool>,
    pub k2_min: Option<String>,
    /// Order of the lifted group, when a lift is expected to exist.
    pub lift_order: Option<usize>,
    pub lift_type: Option<String>,
    /// Number of distinct data classes found (search modes).
    pub data_found: Option<usize>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        *self == Expected::default()
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    /// Resolved relative to the scenario file's directory.
    pub group_file: PathBuf,
    pub mode: Mode,
    pub g0_generators: Vec<Word>,
    pub signature: SignatureType,
    pub tau_prime: Option<Word>,
    pub hyperbolic: Vec<(Word, Word)>,
    pub branch: Vec<Word>,
    pub lift: LiftDirective,
    pub expected: Expected,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    group_file: String,
    mode: String,
    datum: DatumSpec,
    lift: Option<LiftSpec>,
    expected: Option<Expected>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumSpec {
    g0_generators: Vec<String>,
    signature: String,
    tau_prime: Option<String>,
    hyperbolic: Option<Vec<[String; 2]>>,
    branch: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftSpec {
    mode: String,
    group_file: Option<String>,
    embedding: Option<Vec<String>>,
    vector: Option<Vec<String>>,
}

fn parse_words(ws: &[String], what: &str, name: &str) -> Result<Vec<Word>, ScenarioError> {
    ws.iter()
        .map(|w| {
            Word::parse(w).map_err(|e| ScenarioError::Invalid {
                name: name.to_string(),
                reason: format!("{what} `{w}`: {e}"),
            })
        })
        .collect()
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Scenario::parse(&text, base)
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Scenario, ScenarioError> {
        let raw: ScenarioFile =
            toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        let name = raw.name.clone();
        let invalid = |reason: String| ScenarioError::Invalid {
            name: name.clone(),
            reason,
        };

        let mode = Mode::parse(&raw.mode)
            .ok_or_else(|| invalid(format!("unknown mode `{}`", raw.mode)))?;
        let signature = SignatureType::parse(&raw.datum.signature)
            .map_err(|e| invalid(format!("signature: {e}")))?;
        let g0_generators = parse_words(&raw.datum.g0_generators, "subgroup generator", &name)?;
        if g0_generators.is_empty() {
            return Err(invalid("no subgroup generators".into()));
        }

        let tau_prime = match (&raw.datum.tau_prime, mode.tau_pinned()) {
            (Some(w), true) => Some(Word::parse(w).map_err(|e| {
                invalid(format!("tau_prime `{w}`: {e}"))
            })?),
            (None, true) => {
                return Err(invalid(format!(
                    "mode `{}` requires datum.tau_prime",
                    mode.as_str()
                )))
            }
            (Some(_), false) => {
                return Err(invalid(format!(
                    "mode `{}` searches for tau_prime; remove datum.tau_prime",
                    mode.as_str()
                )))
            }
            (None, false) => None,
        };

        let (hyperbolic, branch) = if mode.vector_pinned() {
            let hyp_raw = raw.datum.hyperbolic.unwrap_or_default();
            let branch_raw = raw.datum.branch.unwrap_or_default();
            if hyp_raw.len() != signature.g_prime() {
                return Err(invalid(format!(
                    "{} hyperbolic pairs for quotient genus {}",
                    hyp_raw.len(),
                    signature.g_prime()
                )));
            }
            if branch_raw.len() != signature.periods().len() {
                return Err(invalid(format!(
                    "{} branch entries for {} periods",
                    branch_raw.len(),
                    signature.periods().len()
                )));
            }
            let mut hyperbolic = Vec::with_capacity(hyp_raw.len());
            for [d, e] in &hyp_raw {
                let dw = Word::parse(d)
                    .map_err(|e| invalid(format!("hyperbolic entry `{d}`: {e}")))?;
                let ew = Word::parse(e)
                    .map_err(|er| invalid(format!("hyperbolic entry `{e}`: {er}")))?;
                hyperbolic.push((dw, ew));
            }
            let branch = parse_words(&branch_raw, "branch entry", &name)?;
            (hyperbolic, branch)
        } else {
            if raw.datum.hyperbolic.is_some() || raw.datum.branch.is_some() {
                return Err(invalid(format!(
                    "mode `{}` searches for the vector; remove datum.hyperbolic/branch",
                    mode.as_str()
                )));
            }
            (Vec::new(), Vec::new())
        };

        let lift = match raw.lift {
            None => LiftDirective::Auto,
            Some(spec) => match spec.mode.as_str() {
                "auto" | "none" => {
                    if spec.group_file.is_some()
                        || spec.embedding.is_some()
                        || spec.vector.is_some()
                    {
                        return Err(invalid(format!(
                            "lift mode `{}` takes no further keys",
                            spec.mode
                        )));
                    }
                    if spec.mode == "auto" {
                        LiftDirective::Auto
                    } else {
                        LiftDirective::None
                    }
                }
                "pinned" => {
                    let gf = spec.group_file.ok_or_else(|| {
                        invalid("pinned lift requires lift.group_file".into())
                    })?;
                    let embedding = parse_words(
                        &spec.embedding.ok_or_else(|| {
                            invalid("pinned lift requires lift.embedding".into())
                        })?,
                        "lift embedding word",
                        &name,
                    )?;
                    let vector = parse_words(
                        &spec.vector.ok_or_else(|| {
                            invalid("pinned lift requires lift.vector".into())
                        })?,
                        "lift vector word",
                        &name,
                    )?;
                    LiftDirective::Pinned {
                        group_file: base_dir.join(gf),
                        embedding,
                        vector,
                    }
                }
                other => return Err(invalid(format!("unknown lift mode `{other}`"))),
            },
        };

        Ok(Scenario {
            name: raw.name,
            group_file: base_dir.join(raw.group_file),
            mode,
            g0_generators,
            signature,
            tau_prime,
            hyperbolic,
            branch,
            lift,
            expected: raw.expected.unwrap_or_default(),
        })
    }
}
