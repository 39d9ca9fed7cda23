//! Galois coverings of curves presented by generating vectors.
//!
//! A finite group `H` acting on a curve `C` with quotient of genus `g'` and
//! branching orders `m_1, ..., m_r` is encoded by a generating vector
//! `(d_1, e_1, ..., d_g', e_g'; h_1, ..., h_r)` satisfying the product-one
//! relation `prod [d_i, e_i] * h_1 ... h_r = 1` with `ord(h_i) = m_i`. The
//! genus of `C` comes from the Hurwitz formula
//!
//! ```text
//! 2g - 2 = |H| (2g' - 2 + sum_i (m_i - 1)/m_i)
//! ```
//!
//! and the number of fixed points of `f != 1` on `C` is
//!
//! ```text
//! |Fix(f)| = sum_j (1/m_j) * #{(g, p) : g h_j^p g^{-1} = f, 1 <= p < m_j}.
//! ```
//!
//! Every quantity here is an exact integer; rationals appear only in
//! intermediate steps and integrality is asserted, never rounded.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::CoverError;
use crate::group::{El, FiniteGroup, GroupMap};

/// A covering type `[g'; m_1, ..., m_r]`: quotient genus plus branching
/// orders, kept sorted ascending.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct SignatureType {
    g_prime: usize,
    periods: Vec<u32>,
}

impl SignatureType {
    pub fn new(g_prime: usize, mut periods: Vec<u32>) -> Result<SignatureType, CoverError> {
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(CoverError::BadSignature(format!(
                "period {m} is below 2"
            )));
        }
        periods.sort_unstable();
        Ok(SignatureType { g_prime, periods })
    }

    pub fn g_prime(&self) -> usize {
        self.g_prime
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    /// Parses `[1; 2,2]`, the power shorthand `[1;2^2]`, and `[2;-]` for an
    /// unbranched type.
    pub fn parse(s: &str) -> Result<SignatureType, CoverError> {
        let body = s.trim().replace('\u{2212}', "-"); // tolerate unicode minus
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| CoverError::BadSignature(format!("`{s}` is not bracketed")))?;
        let (g_str, rest) = inner
            .split_once(';')
            .ok_or_else(|| CoverError::BadSignature(format!("`{s}` lacks `;`")))?;
        let g_prime: usize = g_str
            .trim()
            .parse()
            .map_err(|_| CoverError::BadSignature(format!("bad quotient genus `{g_str}`")))?;
        let rest = rest.trim();
        let mut periods = Vec::new();
        if rest != "-" {
            for part in rest.split(',') {
                let part = part.trim();
                let (m_str, count) = match part.split_once('^') {
                    Some((m, k)) => {
                        let k: usize = k.trim().parse().map_err(|_| {
                            CoverError::BadSignature(format!("bad exponent in `{part}`"))
                        })?;
                        (m.trim(), k)
                    }
                    None => (part, 1),
                };
                let m: u32 = m_str.parse().map_err(|_| {
                    CoverError::BadSignature(format!("bad period `{part}`"))
                })?;
                periods.extend(std::iter::repeat(m).take(count));
            }
            if periods.is_empty() {
                return Err(CoverError::BadSignature(
                    "empty period list; write `-` for an unbranched type".into(),
                ));
            }
        }
        SignatureType::new(g_prime, periods)
    }
}

impl fmt::Display for SignatureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.g_prime)?;
        if self.periods.is_empty() {
            write!(f, "-")?;
        } else {
            let mut i = 0;
            let mut first = true;
            while i < self.periods.len() {
                let m = self.periods[i];
                let mut j = i;
                while j < self.periods.len() && self.periods[j] == m {
                    j += 1;
                }
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                if j - i > 1 {
                    write!(f, "{m}^{}", j - i)?;
                } else {
                    write!(f, "{m}")?;
                }
                i = j;
            }
        }
        write!(f, "]")
    }
}

/// The genus of the covering curve from the Hurwitz formula; rejects data
/// yielding a negative or non-integral genus.
pub fn hurwitz_genus(order: usize, sig: &SignatureType) -> Result<usize, CoverError> {
    assert!(order >= 1);
    let mut excess: Ratio<i64> = Ratio::from_integer(2 * sig.g_prime as i64 - 2);
    for &m in &sig.periods {
        excess += Ratio::new(m as i64 - 1, m as i64);
    }
    let genus = Ratio::from_integer(1) + Ratio::from_integer(order as i64) * excess / 2;
    if !genus.is_integer() {
        return Err(CoverError::InadmissibleSignature {
            signature: sig.to_string(),
            reason: format!("genus {genus} is not an integer"),
        });
    }
    if genus.is_negative() {
        return Err(CoverError::InadmissibleSignature {
            signature: sig.to_string(),
            reason: format!("genus {genus} is negative"),
        });
    }
    Ok(genus.to_integer() as usize)
}

/// A tuple `(d_1, e_1, ..., d_g', e_g'; h_1, ..., h_r)` of elements of a
/// fixed group, with its declared signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratingVector {
    pub hyperbolic_part: Vec<(El, El)>,
    pub branch_part: Vec<El>,
    pub signature: SignatureType,
}

impl GeneratingVector {
    pub fn entries(&self) -> Vec<El> {
        let mut out = Vec::with_capacity(2 * self.hyperbolic_part.len() + self.branch_part.len());
        for &(d, e) in &self.hyperbolic_part {
            out.push(d);
            out.push(e);
        }
        out.extend_from_slice(&self.branch_part);
        out
    }

    /// `prod [d_i, e_i] * h_1 ... h_r` in the given group.
    pub fn product(&self, h: &FiniteGroup) -> El {
        let mut p: El = 0;
        for &(d, e) in &self.hyperbolic_part {
            p = h.mul(p, h.comm(d, e));
        }
        for &c in &self.branch_part {
            p = h.mul(p, c);
        }
        p
    }
}

/// Checks the product-one relation, the entry orders against the signature,
/// and generation; all violated clauses are reported together.
pub fn validate_generating_vector(
    h: &FiniteGroup,
    v: &GeneratingVector,
) -> Result<(), CoverError> {
    let mut violations = Vec::new();
    if v.hyperbolic_part.len() != v.signature.g_prime() {
        violations.push(format!(
            "{} hyperbolic pairs for quotient genus {}",
            v.hyperbolic_part.len(),
            v.signature.g_prime()
        ));
    }
    if v.branch_part.len() != v.signature.periods().len() {
        violations.push(format!(
            "{} branch entries for {} periods",
            v.branch_part.len(),
            v.signature.periods().len()
        ));
    }
    for (j, (&c, &m)) in v
        .branch_part
        .iter()
        .zip(v.signature.periods().iter())
        .enumerate()
    {
        let ord = h.element_order(c);
        if ord != m {
            violations.push(format!(
                "branch entry {} (`{}`) has order {ord}, signature requires {m}",
                j + 1,
                h.word_for(c)
            ));
        }
    }
    let p = v.product(h);
    if p != 0 {
        violations.push(format!(
            "product relation fails: product is `{}`",
            h.word_for(p)
        ));
    }
    let span = h.subgroup_generated(&v.entries());
    if span.len() != h.order() {
        violations.push(format!(
            "entries generate a subgroup of order {}, not the full group of order {}",
            span.len(),
            h.order()
        ));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CoverError::InvalidVector { violations })
    }
}

/// The stabilizer set: all conjugates of all powers of the branch entries
/// (the identity always included). Defined for any vector, generating or
/// not.
pub fn stabilizer_set(h: &FiniteGroup, v: &GeneratingVector) -> Vec<El> {
    let mut in_set = vec![false; h.order()];
    in_set[0] = true;
    for &c in &v.branch_part {
        for g in h.elements() {
            let mut p = c;
            while p != 0 {
                in_set[h.conj(g, p) as usize] = true;
                p = h.mul(p, c);
            }
        }
    }
    (0..h.order() as El)
        .filter(|&e| in_set[e as usize])
        .collect()
}

/// A group acting on a curve through a validated generating vector, with the
/// genus and the full fixed-point-count table precomputed.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub h: Arc<FiniteGroup>,
    pub w: GeneratingVector,
    pub genus: usize,
    /// Identifies the distinguished subgroup whose datum this cover extends;
    /// the identity map when the cover is the subgroup's own.
    pub embedding: GroupMap,
    fix: Vec<i64>,
}

impl CoverData {
    /// Cover of the group by itself (identity embedding).
    pub fn new(h: Arc<FiniteGroup>, w: GeneratingVector) -> Result<CoverData, CoverError> {
        let identity = GroupMap::from_full_images(&h, &h, h.elements().collect())
            .expect("identity map is a homomorphism");
        Self::with_embedding(h, w, identity)
    }

    /// Cover by a group extending a distinguished subgroup.
    pub fn with_embedding(
        h: Arc<FiniteGroup>,
        w: GeneratingVector,
        embedding: GroupMap,
    ) -> Result<CoverData, CoverError> {
        validate_generating_vector(&h, &w)?;
        let genus = hurwitz_genus(h.order(), &w.signature)?;
        let fix = fix_table(&h, &w)?;
        Ok(CoverData {
            h,
            w,
            genus,
            embedding,
            fix,
        })
    }

    /// Number of fixed points of `f` on the covering curve; rejects the
    /// identity, whose fixed locus is the whole curve.
    pub fn fixed_point_count(&self, f: El) -> Result<i64, CoverError> {
        if f == 0 {
            return Err(CoverError::IdentityFixedPoints);
        }
        Ok(self.fix[f as usize])
    }
}

fn fix_table(h: &FiniteGroup, v: &GeneratingVector) -> Result<Vec<i64>, CoverError> {
    let n = h.order();
    let mut total = vec![0i64; n];
    for (j, &c) in v.branch_part.iter().enumerate() {
        let m = v.signature.periods()[j] as i64;
        let mut cnt = vec![0i64; n];
        for g in h.elements() {
            let mut p = c;
            while p != 0 {
                cnt[h.conj(g, p) as usize] += 1;
                p = h.mul(p, c);
            }
        }
        for f in 0..n {
            if cnt[f] % m != 0 {
                return Err(CoverError::NonIntegralCount {
                    element: h.word_for(f as El).to_string(),
                });
            }
            total[f] += cnt[f] / m;
        }
    }
    debug_assert_eq!(total[0], 0, "identity acquired branch-point count");
    Ok(total)
}

/// Enumerates generating vectors of the given signature in lexicographic
/// element-index order: hyperbolic entries first, then branch entries with
/// the final one solved from the product-one relation. Stops after `limit`
/// vectors. An unrealizable signature yields an empty list; any returned
/// vector certifies its own admissibility.
pub fn enumerate_generating_vectors(
    h: &FiniteGroup,
    sig: &SignatureType,
    limit: usize,
) -> Vec<GeneratingVector> {
    let by_order: Vec<Vec<El>> = sig
        .periods()
        .iter()
        .map(|&m| h.elements().filter(|&e| h.element_order(e) == m).collect())
        .collect();
    let mut search = VectorSearch {
        h,
        sig,
        by_order,
        limit,
        out: Vec::new(),
        hyper: Vec::new(),
        branch: Vec::new(),
    };
    search.hyperbolic(0, 0);
    search.out
}

struct VectorSearch<'a> {
    h: &'a FiniteGroup,
    sig: &'a SignatureType,
    by_order: Vec<Vec<El>>,
    limit: usize,
    out: Vec<GeneratingVector>,
    hyper: Vec<(El, El)>,
    branch: Vec<El>,
}

impl VectorSearch<'_> {
    fn full(&self) -> bool {
        self.out.len() >= self.limit
    }

    fn hyperbolic(&mut self, k: usize, prod: El) {
        if self.full() {
            return;
        }
        if k == self.sig.g_prime() {
            self.branch_entries(0, prod);
            return;
        }
        for d in self.h.elements() {
            for e in self.h.elements() {
                self.hyper.push((d, e));
                self.hyperbolic(k + 1, self.h.mul(prod, self.h.comm(d, e)));
                self.hyper.pop();
                if self.full() {
                    return;
                }
            }
        }
    }

    fn branch_entries(&mut self, j: usize, prod: El) {
        if self.full() {
            return;
        }
        let r = self.sig.periods().len();
        if r == 0 {
            if prod == 0 {
                self.emit_if_generating();
            }
            return;
        }
        if j == r - 1 {
            let last = self.h.inv(prod);
            if self.h.element_order(last) == self.sig.periods()[j] {
                self.branch.push(last);
                self.emit_if_generating();
                self.branch.pop();
            }
            return;
        }
        for idx in 0..self.by_order[j].len() {
            let c = self.by_order[j][idx];
            self.branch.push(c);
            self.branch_entries(j + 1, self.h.mul(prod, c));
            self.branch.pop();
            if self.full() {
                return;
            }
        }
    }

    fn emit_if_generating(&mut self) {
        let v = GeneratingVector {
            hyperbolic_part: self.hyper.clone(),
            branch_part: self.branch.clone(),
            signature: self.sig.clone(),
        };
        if self.h.subgroup_generated(&v.entries()).len() == self.h.order() {
            self.out.push(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;
    use crate::perm::Perm;

    fn z2() -> Arc<FiniteGroup> {
        let gens = vec![("s".to_string(), Perm::parse_cycles("(1 2)", 2).unwrap())];
        Arc::new(FiniteGroup::from_permutations(&gens, DEFAULT_GROUP_CAP).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        let gens = vec![
            ("a".to_string(), Perm::parse_cycles("(1 2)", 3).unwrap()),
            ("b".to_string(), Perm::parse_cycles("(1 2 3)", 3).unwrap()),
        ];
        Arc::new(FiniteGroup::from_permutations(&gens, DEFAULT_GROUP_CAP).unwrap())
    }

    #[test]
    fn signature_parse_and_display() {
        let s = SignatureType::parse("[0; 2,2,2,2,2]").unwrap();
        assert_eq!(s.to_string(), "[0;2^5]");
        let s = SignatureType::parse("[1;2^2]").unwrap();
        assert_eq!(s.periods(), &[2, 2]);
        let s = SignatureType::parse("[2;-]").unwrap();
        assert!(s.periods().is_empty());
        assert_eq!(s.to_string(), "[2;-]");
        let s = SignatureType::parse("[0;3,2,2,2,2]").unwrap();
        assert_eq!(s.to_string(), "[0;2^4,3]");
        assert!(SignatureType::parse("[0;1,2]").is_err());
        assert!(SignatureType::parse("[0;]").is_err());
        assert!(SignatureType::parse("0;2,2").is_err());
    }

    #[test]
    fn hurwitz_examples() {
        let t = |o, s| hurwitz_genus(o, &SignatureType::parse(s).unwrap());
        assert_eq!(t(24, "[1;2,2]").unwrap(), 13);
        assert_eq!(t(128, "[0;2^5]").unwrap(), 33);
        assert_eq!(t(64, "[0;2^5]").unwrap(), 17);
        assert_eq!(t(1, "[5;-]").unwrap(), 5);
        assert_eq!(t(2, "[0;2^6]").unwrap(), 2);
        // genus negative (sphere quotients of too-large groups)
        assert!(t(4, "[0;-]").is_err());
        // non-integral genus
        assert!(t(2, "[0;2,2,2]").is_err());
    }

    #[test]
    fn hurwitz_monotone_in_periods() {
        let order = 12;
        let mut last = 0;
        for m in 2..8 {
            let sig = SignatureType::new(1, vec![m, m]).unwrap();
            if let Ok(g) = hurwitz_genus(order, &sig) {
                assert!(g >= last);
                last = g;
            }
        }
    }

    #[test]
    fn validation_reports_all_violations() {
        let h = s3();
        let a = h.evaluate_str("a").unwrap();
        let sig = SignatureType::parse("[0;2,2,2]").unwrap();
        let v = GeneratingVector {
            hyperbolic_part: vec![],
            branch_part: vec![a, a, a],
            signature: sig,
        };
        // product a^3 = a != 1, and <a> is not all of S3: two violations.
        let err = validate_generating_vector(&h, &v).unwrap_err();
        match err {
            CoverError::InvalidVector { violations } => assert_eq!(violations.len(), 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn z2_six_branch_points() {
        let h = z2();
        let s = h.evaluate_str("s").unwrap();
        let sig = SignatureType::parse("[0;2^6]").unwrap();
        let v = GeneratingVector {
            hyperbolic_part: vec![],
            branch_part: vec![s; 6],
            signature: sig,
        };
        let cover = CoverData::new(h.clone(), v.clone()).unwrap();
        assert_eq!(cover.genus, 2);
        assert_eq!(cover.fixed_point_count(s).unwrap(), 6);
        assert!(cover.fixed_point_count(0).is_err());
        assert_eq!(stabilizer_set(&h, &v), vec![0, s]);
    }

    #[test]
    fn stabilizer_set_of_non_generating_vector() {
        // Two equal transpositions in S3: valid product, not generating;
        // the stabilizer set is still defined and holds all transpositions.
        let h = s3();
        let a = h.evaluate_str("a").unwrap();
        let sig = SignatureType::parse("[0;2,2]").unwrap();
        let v = GeneratingVector {
            hyperbolic_part: vec![],
            branch_part: vec![a, a],
            signature: sig,
        };
        let sigma = stabilizer_set(&h, &v);
        assert_eq!(sigma.len(), 4); // identity + three transpositions
        assert!(sigma.contains(&0));
        for e in h.elements() {
            if h.element_order(e) == 2 {
                assert!(sigma.contains(&e));
            }
        }
    }

    #[test]
    fn fixed_points_vanish_outside_stabilizer_set() {
        let h = s3();
        let a = h.evaluate_str("a").unwrap();
        let b = h.evaluate_str("b").unwrap();
        // (-; a, ab, b^-1...) build a valid vector of type [0;2,2,3,3]:
        // a * a = 1 and b * b^-1 = 1, so (a, a, b, b^2) has product 1.
        let sig = SignatureType::parse("[0;2,2,3,3]").unwrap();
        let v = GeneratingVector {
            hyperbolic_part: vec![],
            branch_part: vec![a, a, b, h.inv(b)],
            signature: sig,
        };
        let cover = CoverData::new(h.clone(), v).unwrap();
        // All of S3 is in the stabilizer set here, so instead check the
        // double-count identity as the integrity probe.
        let total: i64 = h
            .elements()
            .skip(1)
            .map(|f| cover.fixed_point_count(f).unwrap())
            .sum();
        let expected: i64 = cover
            .w
            .signature
            .periods()
            .iter()
            .map(|&m| (h.order() as i64 / m as i64) * (m as i64 - 1))
            .sum();
        assert_eq!(total, expected);
    }

    #[test]
    fn enumerate_z2_and_s3() {
        let h = z2();
        let sig = SignatureType::parse("[0;2,2]").unwrap();
        let vs = enumerate_generating_vectors(&h, &sig, 1_000_000);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].branch_part, vec![1, 1]);

        // Two transpositions with product one are equal, and a single
        // transposition never generates S3.
        let h = s3();
        let sig = SignatureType::parse("[0;2,2]").unwrap();
        let vs = enumerate_generating_vectors(&h, &sig, 1_000_000);
        assert!(vs.is_empty());
    }

    #[test]
    fn enumerate_respects_limit_and_determinism() {
        let h = s3();
        let sig = SignatureType::parse("[0;2,2,3,3]").unwrap();
        let all = enumerate_generating_vectors(&h, &sig, 1_000_000);
        assert!(!all.is_empty());
        let some = enumerate_generating_vectors(&h, &sig, 2);
        assert_eq!(some.len(), 2);
        assert_eq!(&all[..2], &some[..]);
        for v in &all {
            validate_generating_vector(&h, v).unwrap();
        }
    }
}
