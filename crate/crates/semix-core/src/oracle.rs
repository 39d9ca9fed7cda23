//! A deliberately naive second implementation of the fixed-point count.
//!
//! The production engine in [`crate::cover`] tabulates counts for a whole
//! group at once; this one recomputes a single count the slow way — for each
//! branch entry `c`, the number of `g` with `f` in the conjugated cyclic
//! subgroup `g<c>g^{-1}`, divided by `|<c>|` — so tests can check the two
//! against each other pair by pair. Exact rationals are kept throughout; for
//! `f != 1` the result is the (integer) number of fixed points of `f`, while
//! `f = 1` yields the degenerate value `sum_j |H|/m_j`, which is not a
//! fixed-point count (the identity fixes the whole curve).

use num_rational::Ratio;
use num_traits::Zero;

use crate::group::{El, FiniteGroup};

pub fn fixed_point_count_naive(h: &FiniteGroup, branch_entries: &[El], f: El) -> Ratio<i64> {
    let mut int = Ratio::zero();
    for &c in branch_entries {
        let mut k = vec![0 as El];
        let mut p = c;
        while p != 0 {
            k.push(p);
            p = h.mul(p, c);
        }
        let mut count: i64 = 0;
        for g in h.elements() {
            if k.iter().any(|&kk| h.conj(g, kk) == f) {
                count += 1;
            }
        }
        int += Ratio::new(count, k.len() as i64);
    }
    int
}
