//! Orbit divisors on the quotient surface and their intersection numbers.
//!
//! Every automorphism `f` of the curve in a group `H` extending `G0` has a
//! graph inside `C x C`, and the ambient group `G` permutes these graphs by
//!
//! ```text
//! h:      Delta_f  ->  Delta_{phi(h) f h^{-1}},
//! tau'h:  Delta_f  ->  Delta_{tau h f^{-1} phi(h^{-1})},     h in G0.
//! ```
//!
//! The image of a full orbit `{Delta_{f_1}, ..., Delta_{f_n}}` is an
//! irreducible curve `D` on `X`, and because distinct graphs meet
//! transversally in `|Fix(f_i^{-1} f_j)|` points, its numerical invariants
//! are exact integer expressions:
//!
//! ```text
//! non-branch:  D^2 = (-2(g-1)n + 2 sum_{i<j} Delta_i.Delta_j) / |G|
//!              K.D = (4(g-1)n - sum_j sum_{x in O2} Delta_{tau'x}.Delta_{f_j}) / |G|
//! branch:      D^2 = (-8(g-1)n + 8 sum_{i<j} Delta_i.Delta_j) / |G|
//!              K.D = 12(g-1)n / |G|
//! ```
//!
//! with `p_a = 1 + (D^2 + K.D)/2`. A `(-1)`-curve is a non-branch orbit
//! divisor with `D^2 = K.D = -1`; contracting a maximal disjoint set of them
//! moves the surface toward its minimal model.

use crate::cover::CoverData;
use crate::error::DivisorError;
use crate::group::El;
use crate::mixed::{max_exceptional_bound, MixedDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDivisor {
    /// Smallest element index in the orbit — the canonical representative.
    pub rep: El,
    /// All orbit members, sorted.
    pub orbit: Vec<El>,
    pub n: usize,
    /// True exactly when the orbit consists of ramification graphs.
    pub is_branch: bool,
    pub d2: Option<i64>,
    pub kd: Option<i64>,
    pub pa: Option<i64>,
}

/// Shared per-(datum, cover) tables for the two orbit actions.
struct ActionContext {
    /// `emb(h)` for each subgroup index `h`.
    emb: Vec<El>,
    /// `emb(phi(h))` for each subgroup index `h`.
    phi_emb: Vec<El>,
    /// `emb(tau)`.
    tau: El,
    /// Ramification representatives embedded into the cover group, sorted.
    ram: Vec<El>,
}

impl ActionContext {
    fn new(d: &MixedDatum, cover: &CoverData) -> ActionContext {
        let emb: Vec<El> = d.g0.elements().map(|h| cover.embedding.apply(h)).collect();
        let phi_emb: Vec<El> = d
            .g0
            .elements()
            .map(|h| cover.embedding.apply(d.phi.apply(h)))
            .collect();
        let tau = cover.embedding.apply(d.tau);
        let ram: Vec<El> = d
            .ramification_reps()
            .iter()
            .map(|&r| cover.embedding.apply(r))
            .collect();
        ActionContext {
            emb,
            phi_emb,
            tau,
            ram,
        }
    }
}

/// The orbit of the graph of `f` under the two actions above, with the
/// intersection numbers not yet filled in.
pub fn graph_orbit(
    d: &MixedDatum,
    cover: &CoverData,
    f: El,
) -> Result<OrbitDivisor, DivisorError> {
    let ctx = ActionContext::new(d, cover);
    Ok(orbit_with_context(d, cover, &ctx, f))
}

fn orbit_with_context(
    d: &MixedDatum,
    cover: &CoverData,
    ctx: &ActionContext,
    f: El,
) -> OrbitDivisor {
    let h = &cover.h;
    let mut in_orbit = vec![false; h.order()];
    in_orbit[f as usize] = true;
    let mut queue = vec![f];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for g0_el in d.g0.elements() {
            let i = g0_el as usize;
            // h(Delta_x) = Delta_{phi(h) x h^{-1}}
            let a = h.mul(h.mul(ctx.phi_emb[i], x), h.inv(ctx.emb[i]));
            // tau'h(Delta_x) = Delta_{tau h x^{-1} phi(h^{-1})}
            let b = h.mul(
                h.mul(h.mul(ctx.tau, ctx.emb[i]), h.inv(x)),
                h.inv(ctx.phi_emb[i]),
            );
            for y in [a, b] {
                if !in_orbit[y as usize] {
                    in_orbit[y as usize] = true;
                    queue.push(y);
                }
            }
        }
    }
    let orbit: Vec<El> = (0..h.order() as El)
        .filter(|&e| in_orbit[e as usize])
        .collect();
    let rep = orbit[0];
    let is_branch = ctx.ram.binary_search(&rep).is_ok();
    OrbitDivisor {
        rep,
        n: orbit.len(),
        orbit,
        is_branch,
        d2: None,
        kd: None,
        pa: None,
    }
}

/// Transversal intersection number of two distinct graphs.
pub fn graph_intersection(
    cover: &CoverData,
    f1: El,
    f2: El,
) -> Result<i64, DivisorError> {
    if f1 == f2 {
        return Err(DivisorError::EqualElements {
            element: cover.h.word_for(f1).to_string(),
        });
    }
    Ok(cover.fixed_point_count(cover.h.mul(cover.h.inv(f1), f2))?)
}

/// Computes `D^2`, `K.D` and the arithmetic genus of an orbit divisor; every
/// division by `|G|` is asserted exact.
pub fn fill_intersections(
    mut div: OrbitDivisor,
    d: &MixedDatum,
    cover: &CoverData,
) -> Result<OrbitDivisor, DivisorError> {
    let ctx = ActionContext::new(d, cover);
    fill_with_context(&mut div, d, cover, &ctx)?;
    Ok(div)
}

fn fill_with_context(
    div: &mut OrbitDivisor,
    d: &MixedDatum,
    cover: &CoverData,
    ctx: &ActionContext,
) -> Result<(), DivisorError> {
    let h = &cover.h;
    let g1 = cover.genus as i64 - 1;
    let n = div.n as i64;
    let order_g = d.g.order() as i64;
    let rep_word = || h.word_for(div.rep).to_string();

    // 2 * sum_{i<j} Delta_i.Delta_j, as the sum over ordered pairs.
    let mut pair_sum: i64 = 0;
    for &x in &div.orbit {
        for &y in &div.orbit {
            if x != y {
                pair_sum += cover.fixed_point_count(h.mul(h.inv(x), y))?;
            }
        }
    }

    let exact_div = |num: i64, quantity: &'static str| -> Result<i64, DivisorError> {
        if num % order_g != 0 {
            return Err(DivisorError::NonIntegral {
                quantity,
                rep: rep_word(),
                value: format!("{num}/{order_g}"),
            });
        }
        Ok(num / order_g)
    };

    let (d2, kd) = if div.is_branch {
        let d2 = exact_div(-8 * g1 * n + 4 * pair_sum, "D^2")?;
        let kd = exact_div(12 * g1 * n, "K.D")?;
        (d2, kd)
    } else {
        let d2 = exact_div(-2 * g1 * n + pair_sum, "D^2")?;
        let mut ram_sum: i64 = 0;
        for &x in &div.orbit {
            for &r in &ctx.ram {
                if x == r {
                    return Err(DivisorError::EqualElements {
                        element: h.word_for(x).to_string(),
                    });
                }
                ram_sum += cover.fixed_point_count(h.mul(h.inv(x), r))?;
            }
        }
        let kd = exact_div(4 * g1 * n - ram_sum, "K.D")?;
        (d2, kd)
    };

    if (d2 + kd) % 2 != 0 {
        return Err(DivisorError::NonIntegral {
            quantity: "p_a",
            rep: rep_word(),
            value: format!("1 + ({d2} + {kd})/2"),
        });
    }
    let pa = 1 + (d2 + kd) / 2;
    if pa < 0 {
        return Err(DivisorError::NegativeGenus {
            rep: rep_word(),
            value: pa.to_string(),
        });
    }
    div.d2 = Some(d2);
    div.kd = Some(kd);
    div.pa = Some(pa);
    Ok(())
}

/// All orbit divisors of the cover group, filled, canonically ordered by
/// representative; they partition the group.
pub fn orbit_divisors(
    d: &MixedDatum,
    cover: &CoverData,
) -> Result<Vec<OrbitDivisor>, DivisorError> {
    let ctx = ActionContext::new(d, cover);
    let mut seen = vec![false; cover.h.order()];
    let mut out = Vec::new();
    let mut covered = 0usize;
    for f in cover.h.elements() {
        if seen[f as usize] {
            continue;
        }
        let mut div = orbit_with_context(d, cover, &ctx, f);
        debug_assert_eq!(div.rep, f, "sweeping in index order visits representatives first");
        for &x in &div.orbit {
            seen[x as usize] = true;
        }
        covered += div.n;
        fill_with_context(&mut div, d, cover, &ctx)?;
        out.push(div);
    }
    assert_eq!(covered, cover.h.order(), "orbits must partition the group");
    Ok(out)
}

/// Intersection number of two distinct orbit divisors. Two branch curves
/// never meet; a branch/non-branch pair double-counts the graph pairs.
pub fn divisor_pair_intersection(
    d1: &OrbitDivisor,
    d2: &OrbitDivisor,
    d: &MixedDatum,
    cover: &CoverData,
) -> Result<i64, DivisorError> {
    if d1.rep == d2.rep {
        return Err(DivisorError::EqualElements {
            element: cover.h.word_for(d1.rep).to_string(),
        });
    }
    let alpha: i64 = match (d1.is_branch, d2.is_branch) {
        (true, true) => return Ok(0),
        (true, false) | (false, true) => 2,
        (false, false) => 1,
    };
    let h = &cover.h;
    let mut sum: i64 = 0;
    for &x in &d1.orbit {
        for &y in &d2.orbit {
            debug_assert_ne!(x, y, "distinct orbits are disjoint");
            sum += cover.fixed_point_count(h.mul(h.inv(x), y))?;
        }
    }
    let num = alpha * sum;
    let order_g = d.g.order() as i64;
    if num % order_g != 0 {
        return Err(DivisorError::NonIntegral {
            quantity: "D.D'",
            rep: h.word_for(d1.rep).to_string(),
            value: format!("{num}/{order_g}"),
        });
    }
    Ok(num / order_g)
}

/// The non-branch orbit divisors with `D^2 = K.D = -1`, in canonical order.
/// Branch curves are skipped: their genus is at least 1 whenever the curve
/// has genus at least 2, so they are never rational.
pub fn find_exceptional(
    d: &MixedDatum,
    cover: &CoverData,
) -> Result<Vec<OrbitDivisor>, DivisorError> {
    Ok(exceptional_among(&orbit_divisors(d, cover)?))
}

/// Filters an already-computed divisor list for `(-1)`-curves.
pub fn exceptional_among(divisors: &[OrbitDivisor]) -> Vec<OrbitDivisor> {
    divisors
        .iter()
        .filter(|dv| !dv.is_branch && dv.d2 == Some(-1) && dv.kd == Some(-1))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K2Verdict {
    /// Minimal model is certain: all possible contractions found, pairwise
    /// disjoint.
    Exact(i64),
    /// Fewer exceptional curves found than the bound allows; the minimal
    /// `K^2` lies in this inclusive range.
    Range { min: i64, max: i64 },
    /// Exceptional curves found but not pairwise disjoint; contracting them
    /// simultaneously is not justified.
    Undetermined,
}

impl std::fmt::Display for K2Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            K2Verdict::Exact(k) => write!(f, "{k}"),
            K2Verdict::Range { min, max } => write!(f, "{min}..{max}"),
            K2Verdict::Undetermined => write!(f, "undetermined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModelReport {
    pub k2_x: i64,
    pub found: usize,
    pub bound: usize,
    pub disjoint: bool,
    pub verdict: K2Verdict,
}

/// Combines the exceptional-curve scan with the canonical-degree bound into
/// a verdict on the minimal model's `K^2`.
pub fn minimal_model_report(
    d: &MixedDatum,
    cover: &CoverData,
) -> Result<MinimalModelReport, DivisorError> {
    let divisors = orbit_divisors(d, cover)?;
    let k2 = d.surface_invariants()?.k2;
    minimal_model_from_parts(d, cover, &divisors, k2)
}

/// Same verdict from an already-computed divisor list and `K^2`.
pub fn minimal_model_from_parts(
    d: &MixedDatum,
    cover: &CoverData,
    divisors: &[OrbitDivisor],
    k2: i64,
) -> Result<MinimalModelReport, DivisorError> {
    let bound = max_exceptional_bound(k2)?;
    let exceptional = exceptional_among(divisors);
    let found = exceptional.len();
    if found > bound {
        return Err(DivisorError::BoundExceeded { found, bound });
    }
    let mut disjoint = true;
    for i in 0..found {
        for j in i + 1..found {
            if divisor_pair_intersection(&exceptional[i], &exceptional[j], d, cover)? != 0 {
                disjoint = false;
            }
        }
    }
    let verdict = if found == bound {
        if disjoint {
            K2Verdict::Exact(k2 + found as i64)
        } else {
            K2Verdict::Undetermined
        }
    } else {
        K2Verdict::Range {
            min: k2,
            max: k2 + bound as i64,
        }
    };
    Ok(MinimalModelReport {
        k2_x: k2,
        found,
        bound,
        disjoint,
        verdict,
    })
}
