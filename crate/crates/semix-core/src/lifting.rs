//! Degree-2 extensions of the curve group realizing one more involution.
//!
//! When the quotient datum has type `[1;m,m]` or `[2;-]`, the curve `C`
//! admits an extra automorphism normalizing the given action, and the group
//! it generates together with `H0` is a degree-2 extension `H = H0 x| Z2`
//! with a generating vector of its own:
//!
//! ```text
//! [1;m,m]  ->  [0;2,2,2,2,m]     W = (k1,k2,k3,k4,c1), k_i in H\H0
//! [2;-]    ->  [0;2,2,2,2,2,2]   W = (k1,...,k6),      k_i in H\H0
//! ```
//!
//! where `c1` is the first branch entry of the base vector. Candidates are
//! searched over all split extensions (one per involutory automorphism of
//! `H0`, the identity included) plus any caller-supplied groups, and a hit is
//! kept only if the lifted cover is consistent with the base one: the part of
//! its stabilizer set inside `H0` must be exactly the base stabilizer set,
//! and every `f` in `H0 \ {1}` must fix the same number of points whether
//! counted from the base vector or the lifted one.

use std::collections::HashSet;
use std::sync::Arc;

use crate::cover::{CoverData, GeneratingVector, SignatureType};
use crate::error::LiftError;
use crate::group::{El, FiniteGroup, GroupMap};

/// A verified degree-2 extension `(H, W)` of a base cover.
#[derive(Clone)]
pub struct LiftCandidate {
    pub h: Arc<FiniteGroup>,
    /// Embedding of the base group into `h`.
    pub embedding: GroupMap,
    pub w: GeneratingVector,
    pub source_sig: SignatureType,
    pub lifted_sig: SignatureType,
    /// Set once `verify_lift_consistency` has passed.
    pub consistency: bool,
}

impl LiftCandidate {
    /// The cover data of the extension, ready for the divisor pipeline.
    pub fn cover(&self) -> Result<CoverData, LiftError> {
        Ok(CoverData::with_embedding(
            self.h.clone(),
            self.w.clone(),
            self.embedding.clone(),
        )?)
    }
}

/// Signature of the lifted cover. Only the two shapes above lift; anything
/// else is rejected.
pub fn lifted_signature(sig: &SignatureType) -> Result<SignatureType, LiftError> {
    let p = sig.periods();
    if sig.g_prime() == 1 && p.len() == 2 && p[0] == p[1] {
        let m = p[0];
        return Ok(SignatureType::new(0, vec![2, 2, 2, 2, m]).expect("periods at least 2"));
    }
    if sig.g_prime() == 2 && p.is_empty() {
        return Ok(SignatureType::new(0, vec![2; 6]).expect("periods at least 2"));
    }
    Err(LiftError::NoLiftRule(sig.to_string()))
}

/// Structural requirements on a candidate, checked before any counting:
/// twice the base order, the right signature shape, the free entries of `W`
/// order-2 outside the embedded base group, and — for a `[1;m,m]` base — the
/// last entry pinned to the image of the base vector's first branch entry.
pub fn check_lift_structure(cand: &LiftCandidate, source: &CoverData) -> Result<(), LiftError> {
    let g0 = &source.h;
    let h = &cand.h;
    let mut problems = Vec::new();
    if h.order() != 2 * g0.order() {
        problems.push(format!(
            "extension has order {}, expected {}",
            h.order(),
            2 * g0.order()
        ));
    }
    let expected_sig = lifted_signature(&source.w.signature)?;
    if cand.w.signature != expected_sig {
        problems.push(format!(
            "lifted vector has type {}, expected {}",
            cand.w.signature, expected_sig
        ));
    }
    let mut inside = vec![false; h.order()];
    for e in g0.elements() {
        inside[cand.embedding.apply(e) as usize] = true;
    }
    let pinned = source.w.signature.g_prime() == 1;
    let free_len = if pinned {
        cand.w.branch_part.len().saturating_sub(1)
    } else {
        cand.w.branch_part.len()
    };
    for (i, &k) in cand.w.branch_part[..free_len].iter().enumerate() {
        if h.element_order(k) != 2 || inside[k as usize] {
            problems.push(format!(
                "entry {} (`{}`) must be an involution outside the base group",
                i + 1,
                h.word_for(k)
            ));
        }
    }
    if pinned {
        let c1 = cand.embedding.apply(source.w.branch_part[0]);
        if cand.w.branch_part.last() != Some(&c1) {
            problems.push(format!(
                "last entry must equal the embedded first base branch entry `{}`",
                h.word_for(c1)
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(LiftError::Inconsistent {
            mismatches: problems,
        })
    }
}

/// Checks that a lifted cover extends the base cover honestly: restriction
/// of the stabilizer set and the full fixed-point profile must both agree.
/// Every failing element is reported.
pub fn verify_lift_consistency(
    cand: &LiftCandidate,
    source: &CoverData,
) -> Result<(), LiftError> {
    let lifted = cand.cover()?;
    verify_cover_consistency(&lifted, source)
}

fn verify_cover_consistency(lifted: &CoverData, source: &CoverData) -> Result<(), LiftError> {
    let g0 = &source.h;
    let h = &lifted.h;
    let emb = &lifted.embedding;
    let mut mismatches = Vec::new();

    if lifted.genus != source.genus {
        mismatches.push(format!(
            "covering curve genus changed: base {}, lifted {}",
            source.genus, lifted.genus
        ));
    }

    let mut inside = vec![false; h.order()];
    for e in g0.elements() {
        inside[emb.apply(e) as usize] = true;
    }
    let mut base_sigma: Vec<El> = crate::cover::stabilizer_set(g0, &source.w)
        .into_iter()
        .map(|x| emb.apply(x))
        .collect();
    base_sigma.sort_unstable();
    let mut lifted_sigma: Vec<El> = crate::cover::stabilizer_set(h, &lifted.w)
        .into_iter()
        .filter(|&x| inside[x as usize])
        .collect();
    lifted_sigma.sort_unstable();
    if base_sigma != lifted_sigma {
        let show = |set: &[El]| {
            set.iter()
                .map(|&x| h.word_for(x).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        mismatches.push(format!(
            "stabilizer sets differ inside the base group: base {{{}}}, lifted {{{}}}",
            show(&base_sigma),
            show(&lifted_sigma)
        ));
    }

    for f in g0.elements().skip(1) {
        let base = source.fixed_point_count(f)?;
        let up = lifted.fixed_point_count(emb.apply(f))?;
        if base != up {
            mismatches.push(format!(
                "fixed-point count of `{}` differs: base {base}, lifted {up}",
                g0.word_for(f)
            ));
        }
    }

    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(LiftError::Inconsistent { mismatches })
    }
}

/// Weak isomorphism signature used to deduplicate candidates: the element
/// order multiset and conjugacy class sizes of `H`, plus the (order, class
/// size) multiset of the vector entries.
type CandidateKey = (Vec<u32>, Vec<usize>, Vec<(u32, usize)>);

fn group_key(h: &FiniteGroup) -> (Vec<u32>, Vec<usize>) {
    let mut orders: Vec<u32> = h.elements().map(|e| h.element_order(e)).collect();
    orders.sort_unstable();
    let mut class_sizes: Vec<usize> = h.conjugacy_classes().iter().map(|c| c.len()).collect();
    class_sizes.sort_unstable();
    (orders, class_sizes)
}

fn entry_key(h: &FiniteGroup, entries: &[El]) -> Vec<(u32, usize)> {
    let mut key: Vec<(u32, usize)> = entries
        .iter()
        .map(|&e| (h.element_order(e), h.conjugacy_class(e).len()))
        .collect();
    key.sort_unstable();
    key
}

/// Orbit representatives of `set` under conjugation by `conjugators`,
/// in element-index order.
fn conjugation_reps(h: &FiniteGroup, set: &[El], conjugators: &[El]) -> Vec<El> {
    let mut seen = vec![false; h.order()];
    let mut reps = Vec::new();
    for &x in set {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        for &z in conjugators {
            seen[h.conj(z, x) as usize] = true;
        }
    }
    reps
}

/// Searches all candidate degree-2 extensions of the base cover for verified
/// lifted generating vectors. An empty result means no lift was found; that
/// is an answer, not an error.
pub fn search_lift(
    source: &CoverData,
    extra_candidates: &[(Arc<FiniteGroup>, GroupMap)],
) -> Result<Vec<LiftCandidate>, LiftError> {
    let g0 = &source.h;
    let lifted_sig = lifted_signature(&source.w.signature)?;

    let mut groups: Vec<(Arc<FiniteGroup>, GroupMap)> = Vec::new();
    for psi in g0.involutory_automorphisms() {
        let (h, emb) = g0.semidirect_z2(&psi)?;
        groups.push((Arc::new(h), emb));
    }
    groups.extend_from_slice(extra_candidates);

    let mut kept: Vec<LiftCandidate> = Vec::new();
    let mut kept_keys: HashSet<CandidateKey> = HashSet::new();
    for (h, emb) in &groups {
        if h.order() != 2 * g0.order() {
            debug_assert!(false, "candidate extension must have twice the base order");
            continue;
        }
        search_in_extension(source, h, emb, &lifted_sig, &mut kept, &mut kept_keys)?;
    }
    Ok(kept)
}

fn search_in_extension(
    source: &CoverData,
    h: &Arc<FiniteGroup>,
    emb: &GroupMap,
    lifted_sig: &SignatureType,
    kept: &mut Vec<LiftCandidate>,
    kept_keys: &mut HashSet<CandidateKey>,
) -> Result<(), LiftError> {
    let g0 = &source.h;
    let mut inside = vec![false; h.order()];
    for e in g0.elements() {
        inside[emb.apply(e) as usize] = true;
    }
    let t2: Vec<El> = h
        .elements()
        .filter(|&x| !inside[x as usize] && h.element_order(x) == 2)
        .collect();
    if t2.is_empty() {
        return Ok(());
    }
    let hkey = group_key(h);

    let consider = |entries: &[El],
                    kept: &mut Vec<LiftCandidate>,
                    kept_keys: &mut HashSet<CandidateKey>|
     -> Result<(), LiftError> {
        if h.subgroup_generated(entries).len() != h.order() {
            return Ok(());
        }
        let key: CandidateKey = (hkey.0.clone(), hkey.1.clone(), entry_key(h, entries));
        if kept_keys.contains(&key) {
            return Ok(());
        }
        let w = GeneratingVector {
            hyperbolic_part: Vec::new(),
            branch_part: entries.to_vec(),
            signature: lifted_sig.clone(),
        };
        let cand = LiftCandidate {
            h: h.clone(),
            embedding: emb.clone(),
            w,
            source_sig: source.w.signature.clone(),
            lifted_sig: lifted_sig.clone(),
            consistency: false,
        };
        if verify_lift_consistency(&cand, source).is_ok() {
            kept_keys.insert(key);
            kept.push(LiftCandidate {
                consistency: true,
                ..cand
            });
        }
        Ok(())
    };

    if source.w.signature.g_prime() == 1 {
        // W = (k1, k2, k3, k4, c1) with k4 forced by the product relation.
        // Conjugating a solution by any z centralizing c1 gives another
        // solution with the same key and verification outcome, so the first
        // entry only needs to range over centralizer-conjugation orbit
        // representatives.
        let c1 = emb.apply(source.w.branch_part[0]);
        let z = h.centralizer(c1);
        let reps = conjugation_reps(h, &t2, &z);
        let c1_inv = h.inv(c1);
        for &k1 in &reps {
            for &k2 in &t2 {
                let p12 = h.mul(k1, k2);
                for &k3 in &t2 {
                    let k4 = h.mul(h.inv(h.mul(p12, k3)), c1_inv);
                    if inside[k4 as usize] || h.element_order(k4) != 2 {
                        continue;
                    }
                    consider(&[k1, k2, k3, k4, c1], kept, kept_keys)?;
                }
            }
        }
    } else {
        // W = (k1, ..., k6), k6 forced. Here nothing is pinned, so the first
        // entry ranges over full conjugacy-class representatives.
        let all: Vec<El> = h.elements().collect();
        let reps = conjugation_reps(h, &t2, &all);
        for &k1 in &reps {
            for &k2 in &t2 {
                let p12 = h.mul(k1, k2);
                for &k3 in &t2 {
                    let p13 = h.mul(p12, k3);
                    for &k4 in &t2 {
                        let p14 = h.mul(p13, k4);
                        for &k5 in &t2 {
                            let k6 = h.inv(h.mul(p14, k5));
                            if inside[k6 as usize] || h.element_order(k6) != 2 {
                                continue;
                            }
                            consider(&[k1, k2, k3, k4, k5, k6], kept, kept_keys)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
