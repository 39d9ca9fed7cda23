//! Permutations on `{1..n}`, stored 0-based.
//!
//! Products compose left to right: `(a * b)(p) = b(a(p))`, matching the
//! convention of the group files under `fixtures/` (and of most
//! computer-algebra systems), so that element words like `g2*g5` evaluate to
//! the same abstract element here and there.

use crate::error::GroupError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    map: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            map: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: u32) -> u32 {
        self.map[point as usize]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            map: self.map.iter().map(|&x| other.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0u32; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u32;
        }
        Perm { map }
    }

    /// Parses cycle notation with 1-based points: `(1 2 3)(4 5)`; the
    /// identity is written `()`. Points may not exceed `degree`.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm, GroupError> {
        let mut map: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let body = s.trim();
        if body.is_empty() {
            return Err(GroupError::BadPermutation("empty permutation".into()));
        }
        let mut rest = body;
        let mut any_cycle = false;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| GroupError::BadPermutation(format!("expected '(' in `{rest}`")))?;
            if !rest[..open].trim().is_empty() {
                return Err(GroupError::BadPermutation(format!(
                    "unexpected `{}`",
                    &rest[..open]
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| GroupError::BadPermutation("unbalanced '('".into()))?;
            let cycle_str = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let points: Vec<u32> = cycle_str
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| GroupError::BadPermutation(format!("bad point `{tok}`")))
                })
                .collect::<Result<_, _>>()?;
            any_cycle = true;
            if points.is_empty() {
                continue; // `()` — identity cycle
            }
            if points.len() == 1 {
                return Err(GroupError::BadPermutation(format!(
                    "fixed point `({})` is redundant",
                    points[0]
                )));
            }
            for window in 0..points.len() {
                let from = points[window];
                let to = points[(window + 1) % points.len()];
                if from == 0 || from as usize > degree {
                    return Err(GroupError::BadPermutation(format!(
                        "point {from} out of range 1..={degree}"
                    )));
                }
                if seen[from as usize - 1] {
                    return Err(GroupError::BadPermutation(format!(
                        "point {from} appears twice"
                    )));
                }
                seen[from as usize - 1] = true;
                map[from as usize - 1] = to - 1;
            }
        }
        if !any_cycle {
            return Err(GroupError::BadPermutation(format!("no cycles in `{body}`")));
        }
        Ok(Perm { map })
    }

    /// Cycle notation with 1-based points; identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.map[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                if p != start {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                p = self.map[p] as usize;
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}
