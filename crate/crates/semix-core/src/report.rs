//! Report structures produced by a scenario run, with a text renderer
//! mirroring the classification-table layout and a stable JSON form.
//!
//! The JSON schema is versioned through `schema_version` and documented in
//! `docs/report-schema.md`; field order is fixed by the struct definitions,
//! so serializing the same report twice is byte-identical.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub mode: String,
    pub group_file: String,
    pub group_order: usize,
    /// Search cap in effect; `candidates_examined` counts vector/coset
    /// combinations actually tried.
    pub limit: usize,
    pub truncated: bool,
    pub candidates_examined: usize,
    pub data: Vec<DatumReport>,
    /// Number of data matching the expected block.
    pub matched: usize,
    pub expected_ok: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumReport {
    pub g0_order: usize,
    pub tau_prime: String,
    pub signature: String,
    pub hyperbolic: Vec<[String; 2]>,
    pub branch_entries: Vec<String>,
    pub genus: usize,
    pub q: usize,
    pub chi: i64,
    pub k2: i64,
    /// Sorted `(genus, self-intersection)^count` shorthand; `"-"` if the
    /// branch locus is empty.
    pub branch_locus: String,
    pub branch_components: Vec<BranchRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lift_note: Option<String>,
    pub analyses: Vec<AnalysisReport>,
    pub matches_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRow {
    pub rep: String,
    pub genus: i64,
    pub self_int: i64,
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub cover_order: usize,
    pub cover_signature: String,
    /// False when the analysis runs over the subgroup's own cover.
    pub lifted: bool,
    pub orbit_count: usize,
    pub non_branch_count: usize,
    pub branch_count: usize,
    pub orbits: Vec<OrbitRow>,
    /// Representative words of the (-1)-curves.
    pub exceptional: Vec<String>,
    /// Pairwise disjointness of the exceptional curves; absent when fewer
    /// than two were found.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exceptional_disjoint: Option<bool>,
    pub k2: i64,
    pub contraction_bound: usize,
    /// `"4"`, `"2..4"`, or `"undetermined"`.
    pub k2_min: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub rep: String,
    pub n: usize,
    pub branch: bool,
    pub d2: i64,
    pub kd: i64,
    pub pa: i64,
}

/// Canonical `(genus, self-int)^count` shorthand over a multiset.
pub fn branch_shorthand(mut items: Vec<(i64, i64)>) -> String {
    if items.is_empty() {
        return "-".to_string();
    }
    items.sort_unstable();
    let mut out = String::new();
    let mut i = 0;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if !out.is_empty() {
            out.push(',');
        }
        let (g, s) = items[i];
        write!(out, "({g},{s})").unwrap();
        if j - i > 1 {
            write!(out, "^{}", j - i).unwrap();
        }
        i = j;
    }
    out
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering: one block per datum, orbit tables aligned.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "scenario {} ({})", self.scenario, self.mode).unwrap();
        writeln!(w, "group {}  order {}", self.group_file, self.group_order).unwrap();
        if self.mode != "pinned" {
            writeln!(
                w,
                "search: {} candidates examined, {} distinct data{}",
                self.candidates_examined,
                self.data.len(),
                if self.truncated {
                    " (truncated at limit)"
                } else {
                    ""
                }
            )
            .unwrap();
        }
        for (i, d) in self.data.iter().enumerate() {
            writeln!(w).unwrap();
            writeln!(
                w,
                "datum {}: |G0| = {}  tau' = {}  type {}",
                i + 1,
                d.g0_order,
                d.tau_prime,
                d.signature
            )
            .unwrap();
            if !d.hyperbolic.is_empty() {
                let hyp: Vec<String> = d
                    .hyperbolic
                    .iter()
                    .map(|[a, b]| format!("({a}, {b})"))
                    .collect();
                writeln!(w, "  hyperbolic: {}", hyp.join(", ")).unwrap();
            }
            if !d.branch_entries.is_empty() {
                writeln!(w, "  branch entries: {}", d.branch_entries.join(", ")).unwrap();
            }
            writeln!(
                w,
                "  g(C) = {}  q = {}  chi = {}  K^2 = {}  branch locus: {}",
                d.genus, d.q, d.chi, d.k2, d.branch_locus
            )
            .unwrap();
            if let Some(note) = &d.lift_note {
                writeln!(w, "  lift: {note}").unwrap();
            }
            for a in &d.analyses {
                writeln!(
                    w,
                    "  analysis over {} of order {} ({}):",
                    if a.lifted {
                        "lifted cover"
                    } else {
                        "base cover"
                    },
                    a.cover_order,
                    a.cover_signature
                )
                .unwrap();
                writeln!(
                    w,
                    "    {} orbit divisors ({} non-branch, {} branch)",
                    a.orbit_count, a.non_branch_count, a.branch_count
                )
                .unwrap();
                writeln!(w, "    {:<18} {:>4} {:>5} {:>5} {:>4}  kind", "rep", "n", "D^2", "K.D", "p_a")
                    .unwrap();
                for o in &a.orbits {
                    writeln!(
                        w,
                        "    {:<18} {:>4} {:>5} {:>5} {:>4}  {}",
                        o.rep,
                        o.n,
                        o.d2,
                        o.kd,
                        o.pa,
                        if o.branch { "branch" } else { "-" }
                    )
                    .unwrap();
                }
                if a.exceptional.is_empty() {
                    writeln!(w, "    minimal: no (-1)-curves").unwrap();
                } else {
                    writeln!(
                        w,
                        "    (-1)-curves: {}{}",
                        a.exceptional.join(", "),
                        match a.exceptional_disjoint {
                            Some(true) => " (pairwise disjoint)",
                            Some(false) => " (NOT pairwise disjoint)",
                            None => "",
                        }
                    )
                    .unwrap();
                }
                writeln!(
                    w,
                    "    K^2 = {}, contraction bound {}: minimal model K^2 = {}",
                    a.k2, a.contraction_bound, a.k2_min
                )
                .unwrap();
            }
        }
        writeln!(w).unwrap();
        if self.failures.is_empty() {
            writeln!(w, "expected: ok").unwrap();
        } else {
            writeln!(w, "expected: FAILED").unwrap();
            for f in &self.failures {
                writeln!(w, "  - {f}").unwrap();
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(w, "elapsed: {ms} ms").unwrap();
        }
        out
    }
}
