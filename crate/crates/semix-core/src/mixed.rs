//! The mixed quotient datum and the numerical invariants of the surface.
//!
//! A finite group `G` with an index-2 subgroup `G0` acting on a curve `C`
//! through a generating vector `V` induces an action on `C x C` in which the
//! elements outside `G0` exchange the factors: a fixed coset representative
//! `tau'` gives `tau = tau'^2` and the automorphism `phi(h) = tau' h
//! tau'^{-1}` of `G0`. The quotient `X = (C x C)/G` is smooth exactly when
//!
//! ```text
//! Sigma_V  intersect  phi(Sigma_V)  =  {1},
//! ```
//!
//! and then the only ramification comes from `O2 = {g in G \ G0 : g^2 = 1}`,
//! whose fixed loci map to branch curves `B_g` of genus
//! `2 (g(C) - 1) / |Z_G(g)| + 1`, one per conjugacy class. The surface has
//!
//! ```text
//! q = g(C/G0),    chi = (g(C)-1)^2/|G| - (p_a(B)-1)/2,
//! K^2 = 8 chi - (p_a(B)-1),     p_a(B)-1 = sum_i (g(B_i)-1).
//! ```

use std::sync::Arc;

use num_rational::Ratio;

use crate::cover::{
    stabilizer_set, CoverData, GeneratingVector, SignatureType,
};
use crate::divisors;
use crate::error::{CoverError, MixedError};
use crate::group::{El, FiniteGroup, GroupMap};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct MixedDatum {
    pub g: Arc<FiniteGroup>,
    pub g0: Arc<FiniteGroup>,
    /// Embedding of the index-2 subgroup into the ambient group.
    pub g0_embedding: GroupMap,
    /// Coset representative outside the subgroup, as an ambient index.
    pub tau_prime: El,
    /// `tau'^2`, as a subgroup index.
    pub tau: El,
    /// Conjugation by `tau'` restricted to the subgroup.
    pub phi: GroupMap,
    /// The subgroup's action datum on the curve; its vector is `V`.
    pub cover0: CoverData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchComponent {
    /// Smallest-index member of a conjugacy class in `O2` (ambient index).
    pub rep: El,
    pub class_size: usize,
    pub genus: i64,
    pub self_int: i64,
    /// `tau' * rep`, the graph representative inside the subgroup.
    pub graph_rep: El,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus_c: usize,
    pub q: usize,
    pub chi: i64,
    pub k2: i64,
    pub branch: Vec<BranchComponent>,
    pub pa_b_minus_1: i64,
}

impl SurfaceInvariants {
    /// Identity of the surface up to the numbers the classification tables
    /// are keyed by; used to merge search hits that describe one family.
    pub fn fingerprint(&self) -> (usize, usize, i64, i64, Vec<(i64, i64, usize)>) {
        let mut branch: Vec<(i64, i64, usize)> = self
            .branch
            .iter()
            .map(|b| (b.genus, b.self_int, b.class_size))
            .collect();
        branch.sort_unstable();
        (self.genus_c, self.q, self.chi, self.k2, branch)
    }
}

/// Assembles a mixed datum from words: subgroup generators, the coset
/// representative, and the generating vector, all written over the ambient
/// group's generators.
pub fn build_mixed_datum(
    g: Arc<FiniteGroup>,
    g0_gens: &[Word],
    tau_prime: &Word,
    signature: &SignatureType,
    hyperbolic_words: &[(Word, Word)],
    branch_words: &[Word],
) -> Result<MixedDatum, MixedError> {
    let (g0, embedding) = g.subgroup_from_words(g0_gens)?;
    let g0 = Arc::new(g0);
    let tau_prime_el = g.evaluate(tau_prime)?;

    let pre = embedding.preimages();
    let pull = |w: &Word| -> Result<El, MixedError> {
        let in_g = g.evaluate(w)?;
        pre[in_g as usize].ok_or_else(|| {
            MixedError::Cover(CoverError::InvalidVector {
                violations: vec![format!(
                    "vector entry `{w}` lies outside the index-2 subgroup"
                )],
            })
        })
    };
    let mut hyperbolic_part = Vec::with_capacity(hyperbolic_words.len());
    for (dw, ew) in hyperbolic_words {
        hyperbolic_part.push((pull(dw)?, pull(ew)?));
    }
    let mut branch_part = Vec::with_capacity(branch_words.len());
    for bw in branch_words {
        branch_part.push(pull(bw)?);
    }
    let v = GeneratingVector {
        hyperbolic_part,
        branch_part,
        signature: signature.clone(),
    };
    build_mixed_datum_from_elements(g, g0, embedding, tau_prime_el, v)
}

/// Element-level constructor used by the search modes; verifies every datum
/// invariant (index 2, mixedness, vector validity, freeness).
pub fn build_mixed_datum_from_elements(
    g: Arc<FiniteGroup>,
    g0: Arc<FiniteGroup>,
    g0_embedding: GroupMap,
    tau_prime: El,
    v: GeneratingVector,
) -> Result<MixedDatum, MixedError> {
    if g.order() != 2 * g0.order() {
        return Err(MixedError::NotIndexTwo {
            index: g.order() / g0.order().max(1),
        });
    }
    let pre = g0_embedding.preimages();
    if pre[tau_prime as usize].is_some() {
        return Err(MixedError::TauPrimeInSubgroup {
            word: g.word_for(tau_prime).to_string(),
        });
    }

    let cover0 = CoverData::new(g0.clone(), v)?;

    let tau_in_g = g.mul(tau_prime, tau_prime);
    let tau = pre[tau_in_g as usize]
        .expect("square of a coset representative lies in an index-2 subgroup");

    let mut phi_images = vec![0 as El; g0.order()];
    for h in g0.elements() {
        let conj = g.conj(tau_prime, g0_embedding.apply(h));
        phi_images[h as usize] = pre[conj as usize]
            .expect("an index-2 subgroup is normal, so conjugation stays inside");
    }
    let phi = GroupMap::from_full_images(&g0, &g0, phi_images)?;
    phi.check_injective(&g0)?;

    if let Some(witness) = free_action_witness(&g0, &cover0.w, &phi) {
        return Err(MixedError::NotFree {
            witness: g
                .word_for(g0_embedding.apply(witness))
                .to_string(),
        });
    }

    Ok(MixedDatum {
        g,
        g0,
        g0_embedding,
        tau_prime,
        tau,
        phi,
        cover0,
    })
}

/// Smallest nontrivial element of `Sigma_V intersect phi(Sigma_V)`, i.e. a
/// point of `C x C` with nontrivial stabilizer, if one exists.
pub fn free_action_witness(
    g0: &FiniteGroup,
    v: &GeneratingVector,
    phi: &GroupMap,
) -> Option<El> {
    let sigma = stabilizer_set(g0, v);
    let mut in_sigma = vec![false; g0.order()];
    for &s in &sigma {
        in_sigma[s as usize] = true;
    }
    let mut witnesses: Vec<El> = sigma
        .iter()
        .map(|&s| phi.apply(s))
        .filter(|&x| x != 0 && in_sigma[x as usize])
        .collect();
    witnesses.sort_unstable();
    witnesses.first().copied()
}

impl MixedDatum {
    pub fn v(&self) -> &GeneratingVector {
        &self.cover0.w
    }

    /// Re-checks freeness on a built datum (always `None` after a successful
    /// build; exposed so the condition can be probed independently).
    pub fn check_free(&self) -> Option<El> {
        free_action_witness(&self.g0, self.v(), &self.phi)
    }

    /// Order-2 elements outside the subgroup (ambient indices, sorted);
    /// exactly the elements of `G` with fixed points on `C x C`.
    pub fn o2_set(&self) -> Vec<El> {
        let pre = self.g0_embedding.preimages();
        self.g
            .elements()
            .filter(|&x| pre[x as usize].is_none() && self.g.element_order(x) == 2)
            .collect()
    }

    /// `{tau' g : g in O2}` as subgroup indices, sorted — one graph
    /// representative per ramification curve.
    pub fn ramification_reps(&self) -> Vec<El> {
        let pre = self.g0_embedding.preimages();
        let mut reps: Vec<El> = self
            .o2_set()
            .iter()
            .map(|&x| {
                let y = self.g.mul(self.tau_prime, x);
                pre[y as usize]
                    .expect("tau' * (element outside G0) lies in G0")
            })
            .collect();
        reps.sort_unstable();
        reps.dedup();
        assert_eq!(
            reps.len(),
            self.o2_set().len(),
            "graphs of distinct involutions must be distinct"
        );
        reps
    }

    /// Numerical invariants of the quotient surface: irregularity, Euler
    /// characteristic, canonical self-intersection, and the branch curves
    /// with their genera and self-intersections.
    pub fn surface_invariants(&self) -> Result<SurfaceInvariants, MixedError> {
        let genus_c = self.cover0.genus;
        let g1 = genus_c as i64 - 1;
        let order_g = self.g.order() as i64;
        let pre = self.g0_embedding.preimages();

        let o2 = self.o2_set();
        let mut seen = vec![false; self.g.order()];
        let mut branch = Vec::new();
        for &x in &o2 {
            if seen[x as usize] {
                continue;
            }
            let class = self.g.conjugacy_class(x);
            for &c in &class {
                debug_assert!(o2.binary_search(&c).is_ok(), "O2 is closed under conjugation");
                seen[c as usize] = true;
            }
            let rep = class[0];
            let class_size = class.len();
            let centralizer_order = (self.g.order() / class_size) as i64;
            if (2 * g1) % centralizer_order != 0 {
                return Err(MixedError::NonIntegral {
                    what: format!(
                        "branch genus for class of `{}`",
                        self.g.word_for(rep)
                    ),
                    value: format!("2({g1})/{centralizer_order} + 1"),
                });
            }
            let genus = 2 * g1 / centralizer_order + 1;
            let graph_rep = pre[self.g.mul(self.tau_prime, rep) as usize]
                .expect("graph representative lies in G0");
            let orbit = divisors::graph_orbit(self, &self.cover0, graph_rep)?;
            let filled = divisors::fill_intersections(orbit, self, &self.cover0)?;
            assert!(filled.is_branch, "ramification graph must be branch");
            branch.push(BranchComponent {
                rep,
                class_size,
                genus,
                self_int: filled.d2.unwrap(),
                graph_rep,
            });
        }

        let pa_b_minus_1: i64 = branch.iter().map(|b| b.genus - 1).sum();
        let chi_rat = Ratio::new(g1 * g1, order_g) - Ratio::new(pa_b_minus_1, 2);
        if !chi_rat.is_integer() {
            return Err(MixedError::NonIntegral {
                what: "chi".into(),
                value: chi_rat.to_string(),
            });
        }
        let chi = chi_rat.to_integer();
        let k2 = 8 * chi - pa_b_minus_1;

        Ok(SurfaceInvariants {
            genus_c,
            q: self.v().signature.g_prime(),
            chi,
            k2,
            branch,
            pa_b_minus_1,
        })
    }
}

/// Largest possible number of exceptional curves on the quotient surface,
/// from the canonical-degree bound. Defined for `1 <= K^2 <= 8`.
pub fn max_exceptional_bound(k2: i64) -> Result<usize, MixedError> {
    match k2 {
        6..=8 => Ok(0),
        4 | 5 => Ok(1),
        2 | 3 => Ok(2),
        1 => Ok(3),
        _ => Err(MixedError::BoundDomain { k2 }),
    }
}
