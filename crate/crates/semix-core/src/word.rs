//! Words in named generators: `g1*g3^-1*g2^2`, with `1` for the empty word.

use std::fmt;

use crate::error::GroupError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    pub factors: Vec<(String, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { factors: vec![] }
    }

    pub fn parse(s: &str) -> Result<Word, GroupError> {
        let body = s.trim();
        if body.is_empty() {
            return Err(GroupError::BadWord("empty word".into()));
        }
        if body == "1" {
            return Ok(Word::identity());
        }
        let mut factors = Vec::new();
        for tok in body.split('*') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(GroupError::BadWord(format!("empty factor in `{body}`")));
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e.trim().parse().map_err(|_| {
                        GroupError::BadWord(format!("bad exponent `{e}` in `{tok}`"))
                    })?;
                    (n.trim(), exp)
                }
                None => (tok, 1),
            };
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(GroupError::BadWord(format!("bad generator name `{name}`")));
            }
            factors.push((name.to_string(), exp));
        }
        Ok(Word { factors })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, exp) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}
