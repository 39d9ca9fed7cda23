//! Runs one scenario end to end: assemble the datum (or search for it),
//! compute invariants, lift if directed, decompose orbit divisors, detect
//! exceptional curves, settle the minimal model, and check the expected
//! block.

use std::sync::Arc;
use std::time::Instant;

use crate::cover::{enumerate_generating_vectors, CoverData, GeneratingVector};
use crate::divisors::{exceptional_among, minimal_model_from_parts, orbit_divisors};
use crate::error::{LiftError, ScenarioError};
use crate::group::{El, FiniteGroup, GroupMap, DEFAULT_GROUP_CAP};
use crate::lifting::{
    check_lift_structure, lifted_signature, search_lift, verify_lift_consistency, LiftCandidate,
};
use crate::mixed::{build_mixed_datum_from_elements, MixedDatum, SurfaceInvariants};
use crate::report::{
    branch_shorthand, AnalysisReport, BranchRow, DatumReport, OrbitRow, Report,
    REPORT_SCHEMA_VERSION,
};
use crate::scenario::{Expected, LiftDirective, Mode, Scenario};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Cap on enumerated generating vectors in search modes.
    pub limit: usize,
    /// Emit wall-clock timing in the report (off by default so repeated runs
    /// are byte-identical).
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            limit: 1_000_000,
            timing: false,
        }
    }
}

pub fn load_group_file(path: &std::path::Path) -> Result<Arc<FiniteGroup>, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Arc::new(FiniteGroup::from_group_file(
        &text,
        DEFAULT_GROUP_CAP,
    )?))
}

pub fn run_scenario(sc: &Scenario, opts: &RunOptions) -> Result<Report, ScenarioError> {
    let start = Instant::now();
    let invalid = |reason: String| ScenarioError::Invalid {
        name: sc.name.clone(),
        reason,
    };

    let g = load_group_file(&sc.group_file)?;
    let (g0, g0_embedding) = g.subgroup_from_words(&sc.g0_generators)?;
    let g0 = Arc::new(g0);
    if g.order() != 2 * g0.order() {
        return Err(invalid(format!(
            "subgroup has index {} in the ambient group, expected 2",
            g.order() / g0.order().max(1)
        )));
    }
    let pre = g0_embedding.preimages();
    let pull = |w: &crate::word::Word| -> Result<El, ScenarioError> {
        let el = g.evaluate(w)?;
        pre[el as usize]
            .ok_or_else(|| invalid(format!("entry `{w}` lies outside the subgroup")))
    };

    // candidate coset representatives
    let taus: Vec<El> = if let Some(tw) = &sc.tau_prime {
        vec![g.evaluate(tw)?]
    } else {
        g.elements()
            .filter(|&x| pre[x as usize].is_none())
            .collect()
    };

    // candidate vectors, in subgroup indices
    let (vectors, truncated) = if sc.mode.vector_pinned() {
        let mut hyperbolic = Vec::with_capacity(sc.hyperbolic.len());
        for (dw, ew) in &sc.hyperbolic {
            hyperbolic.push((pull(dw)?, pull(ew)?));
        }
        let mut branch = Vec::with_capacity(sc.branch.len());
        for bw in &sc.branch {
            branch.push(pull(bw)?);
        }
        (
            vec![GeneratingVector {
                hyperbolic_part: hyperbolic,
                branch_part: branch,
                signature: sc.signature.clone(),
            }],
            false,
        )
    } else {
        let found = enumerate_generating_vectors(&g0, &sc.signature, opts.limit);
        let truncated = found.len() >= opts.limit;
        (found, truncated)
    };

    // assemble all valid free data, deduplicated by their invariants
    let candidates_examined = vectors.len() * taus.len();
    let mut data: Vec<(MixedDatum, SurfaceInvariants)> = Vec::new();
    let mut fingerprints: Vec<(usize, usize, i64, i64, Vec<(i64, i64, usize)>)> = Vec::new();
    for v in &vectors {
        for &tau_prime in &taus {
            let built = build_mixed_datum_from_elements(
                g.clone(),
                g0.clone(),
                g0_embedding.clone(),
                tau_prime,
                v.clone(),
            );
            let datum = match built {
                Ok(d) => d,
                Err(e) => {
                    if sc.mode == Mode::Pinned {
                        return Err(e.into());
                    }
                    continue;
                }
            };
            let inv = datum.surface_invariants()?;
            let fp = inv.fingerprint();
            if fingerprints.contains(&fp) {
                continue;
            }
            fingerprints.push(fp);
            data.push((datum, inv));
        }
    }
    if sc.mode == Mode::Pinned && data.is_empty() {
        return Err(invalid("pinned datum did not assemble".into()));
    }

    // analyze each datum
    let mut datum_reports = Vec::with_capacity(data.len());
    for (datum, inv) in &data {
        datum_reports.push(datum_report(sc, datum, inv)?);
    }

    // evaluate expectations
    let mut failures: Vec<String> = Vec::new();
    if let Some(want) = sc.expected.data_found {
        if datum_reports.len() != want {
            failures.push(format!(
                "data_found: expected {want}, found {}",
                datum_reports.len()
            ));
        }
    }
    let mut matched = 0usize;
    let mut per_datum: Vec<Vec<String>> = Vec::new();
    for d in &mut datum_reports {
        let f = check_expected(&sc.expected, d);
        d.matches_expected = f.is_empty();
        if d.matches_expected {
            matched += 1;
        }
        per_datum.push(f);
    }
    match sc.mode {
        Mode::Pinned => {
            for f in per_datum.into_iter().flatten() {
                failures.push(f);
            }
        }
        _ => {
            if matched == 0 {
                if datum_reports.is_empty() {
                    failures.push("no valid datum found".to_string());
                } else {
                    for (i, fs) in per_datum.into_iter().enumerate() {
                        for f in fs {
                            failures.push(format!("datum {}: {f}", i + 1));
                        }
                    }
                }
            }
        }
    }

    let expected_ok = failures.is_empty();
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        scenario: sc.name.clone(),
        mode: sc.mode.as_str().to_string(),
        group_file: sc.group_file.display().to_string(),
        group_order: g.order(),
        limit: opts.limit,
        truncated,
        candidates_examined,
        data: datum_reports,
        matched,
        expected_ok,
        failures,
        timing_ms: opts
            .timing
            .then(|| start.elapsed().as_millis().min(u64::MAX as u128) as u64),
    })
}

fn datum_report(
    sc: &Scenario,
    d: &MixedDatum,
    inv: &SurfaceInvariants,
) -> Result<DatumReport, ScenarioError> {
    let g = &d.g;
    // words for subgroup elements are rendered through the ambient group, in
    // the same generator alphabet the scenario uses
    let up = |x: El| g.word_for(d.g0_embedding.apply(x)).to_string();
    let v = d.v();

    let (analyses, lift_note) = run_lift_directive(sc, d, inv)?;

    Ok(DatumReport {
        g0_order: d.g0.order(),
        tau_prime: g.word_for(d.tau_prime).to_string(),
        signature: v.signature.to_string(),
        hyperbolic: v
            .hyperbolic_part
            .iter()
            .map(|&(a, b)| [up(a), up(b)])
            .collect(),
        branch_entries: v.branch_part.iter().map(|&c| up(c)).collect(),
        genus: inv.genus_c,
        q: inv.q,
        chi: inv.chi,
        k2: inv.k2,
        branch_locus: branch_shorthand(
            inv.branch.iter().map(|b| (b.genus, b.self_int)).collect(),
        ),
        branch_components: inv
            .branch
            .iter()
            .map(|b| BranchRow {
                rep: g.word_for(b.rep).to_string(),
                genus: b.genus,
                self_int: b.self_int,
                class_size: b.class_size,
            })
            .collect(),
        lift_note,
        analyses,
        matches_expected: false,
    })
}

fn run_lift_directive(
    sc: &Scenario,
    d: &MixedDatum,
    inv: &SurfaceInvariants,
) -> Result<(Vec<AnalysisReport>, Option<String>), ScenarioError> {
    match &sc.lift {
        LiftDirective::None => Ok((vec![analyze(d, &d.cover0, false, inv.k2)?], None)),
        LiftDirective::Auto => {
            match lifted_signature(&d.v().signature) {
                Err(LiftError::NoLiftRule(_)) => {
                    Ok((vec![analyze(d, &d.cover0, false, inv.k2)?], None))
                }
                Err(e) => Err(e.into()),
                Ok(_) => {
                    let cands = search_lift(&d.cover0, &[])?;
                    if cands.is_empty() {
                        return Ok((
                            vec![analyze(d, &d.cover0, false, inv.k2)?],
                            Some("no verified lift found; analysis over the base cover".into()),
                        ));
                    }
                    let note = format!(
                        "{} verified lift{} of type {}",
                        cands.len(),
                        if cands.len() == 1 { "" } else { "s" },
                        cands[0].lifted_sig
                    );
                    let analyses = analyze_lifts(sc, d, inv, &cands)?;
                    Ok((analyses, Some(note)))
                }
            }
        }
        LiftDirective::Pinned {
            group_file,
            embedding,
            vector,
        } => {
            let h = load_group_file(group_file)?;
            if embedding.len() != sc.g0_generators.len() {
                return Err(ScenarioError::Invalid {
                    name: sc.name.clone(),
                    reason: format!(
                        "lift embedding lists {} images for {} subgroup generators",
                        embedding.len(),
                        sc.g0_generators.len()
                    ),
                });
            }
            let images: Vec<El> = embedding
                .iter()
                .map(|w| h.evaluate(w))
                .collect::<Result<_, _>>()?;
            let emb = GroupMap::from_generator_images(&d.g0, &h, &images)?;
            let entries: Vec<El> = vector
                .iter()
                .map(|w| h.evaluate(w))
                .collect::<Result<_, _>>()?;
            let cand = LiftCandidate {
                h,
                embedding: emb,
                w: GeneratingVector {
                    hyperbolic_part: vec![],
                    branch_part: entries,
                    signature: lifted_signature(&d.v().signature)?,
                },
                source_sig: d.v().signature.clone(),
                lifted_sig: lifted_signature(&d.v().signature)?,
                consistency: false,
            };
            check_lift_structure(&cand, &d.cover0)?;
            verify_lift_consistency(&cand, &d.cover0)?;
            let analyses = analyze_lifts(sc, d, inv, std::slice::from_ref(&cand))?;
            Ok((analyses, Some("pinned lift verified".into())))
        }
    }
}

/// Analyzes every verified lift; the number of exceptional curves must be
/// the same for all of them — a disagreement would mean the lifted covers do
/// not describe one surface, and is raised as a hard error.
fn analyze_lifts(
    sc: &Scenario,
    d: &MixedDatum,
    inv: &SurfaceInvariants,
    cands: &[LiftCandidate],
) -> Result<Vec<AnalysisReport>, ScenarioError> {
    let mut analyses = Vec::with_capacity(cands.len());
    for cand in cands {
        let cover = cand.cover()?;
        analyses.push(analyze(d, &cover, true, inv.k2)?);
    }
    let n_exc = analyses[0].exceptional.len();
    if analyses.iter().any(|a| a.exceptional.len() != n_exc) {
        return Err(ScenarioError::Invalid {
            name: sc.name.clone(),
            reason: format!(
                "exceptional count differs across verified lifts: {:?}",
                analyses
                    .iter()
                    .map(|a| a.exceptional.len())
                    .collect::<Vec<_>>()
            ),
        });
    }
    Ok(analyses)
}

fn analyze(
    d: &MixedDatum,
    cover: &CoverData,
    lifted: bool,
    k2: i64,
) -> Result<AnalysisReport, ScenarioError> {
    let divs = orbit_divisors(d, cover)?;
    let exc = exceptional_among(&divs);
    let mm = minimal_model_from_parts(d, cover, &divs, k2)?;
    let non_branch_count = divs.iter().filter(|o| !o.is_branch).count();
    Ok(AnalysisReport {
        cover_order: cover.h.order(),
        cover_signature: cover.w.signature.to_string(),
        lifted,
        orbit_count: divs.len(),
        non_branch_count,
        branch_count: divs.len() - non_branch_count,
        orbits: divs
            .iter()
            .map(|o| OrbitRow {
                rep: cover.h.word_for(o.rep).to_string(),
                n: o.n,
                branch: o.is_branch,
                d2: o.d2.expect("filled"),
                kd: o.kd.expect("filled"),
                pa: o.pa.expect("filled"),
            })
            .collect(),
        exceptional: exc
            .iter()
            .map(|o| cover.h.word_for(o.rep).to_string())
            .collect(),
        exceptional_disjoint: (exc.len() >= 2).then_some(mm.disjoint),
        k2,
        contraction_bound: mm.bound,
        k2_min: mm.verdict.to_string(),
    })
}

fn check_expected(exp: &Expected, d: &DatumReport) -> Vec<String> {
    fn check(
        f: &mut Vec<String>,
        what: &str,
        want: &dyn std::fmt::Display,
        got: &dyn std::fmt::Display,
    ) {
        let (w, g) = (want.to_string(), got.to_string());
        if w != g {
            f.push(format!("{what}: expected {w}, computed {g}"));
        }
    }
    let mut f = Vec::new();
    if let Some(v) = exp.genus {
        check(&mut f, "genus", &v, &d.genus);
    }
    if let Some(v) = exp.q {
        check(&mut f, "q", &v, &d.q);
    }
    if let Some(v) = exp.chi {
        check(&mut f, "chi", &v, &d.chi);
    }
    if let Some(v) = exp.k2 {
        check(&mut f, "k2", &v, &d.k2);
    }
    if let Some(v) = &exp.branch {
        check(&mut f, "branch", v, &d.branch_locus);
    }
    let head = &d.analyses[0];
    if let Some(v) = exp.orbit_divisors {
        check(&mut f, "orbit_divisors", &v, &head.orbit_count);
    }
    if let Some(v) = exp.non_branch {
        check(&mut f, "non_branch", &v, &head.non_branch_count);
    }
    if let Some(v) = exp.exceptional {
        check(&mut f, "exceptional", &v, &head.exceptional.len());
    }
    if let Some(v) = exp.disjoint {
        match head.exceptional_disjoint {
            Some(got) => check(&mut f, "disjoint", &v, &got),
            None => f.push(format!(
                "disjoint: expected {v}, but fewer than two exceptional curves"
            )),
        }
    }
    if let Some(v) = &exp.k2_min {
        check(&mut f, "k2_min", v, &head.k2_min);
    }
    if exp.lift_order.is_some() || exp.lift_type.is_some() {
        match d.analyses.iter().find(|a| a.lifted) {
            None => f.push("lift: expected a lifted analysis, none present".to_string()),
            Some(a) => {
                if let Some(v) = exp.lift_order {
                    check(&mut f, "lift_order", &v, &a.cover_order);
                }
                if let Some(v) = &exp.lift_type {
                    check(&mut f, "lift_type", v, &a.cover_signature);
                }
            }
        }
    }
    f
}
