//! Freely reduced words over meridian generators `m1, m2, ...`.
//!
//! The word `m1*m2^-1*m1` is the textual form used by the CLI; `e` denotes
//! the identity. Group-element equality is never decided abstractly here —
//! words are only ever compared through matrix representations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One letter of a word: a 1-based generator index with exponent +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Letter {
        assert!(gen >= 1, "generator indices are 1-based");
        assert!(exp == 1 || exp == -1, "letter exponent must be +1 or -1");
        Letter { gen, exp }
    }

    fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord::default()
    }

    pub fn generator(gen: usize) -> GroupWord {
        GroupWord {
            letters: vec![Letter::new(gen, 1)],
        }
    }

    /// `m_gen^k` for any integer `k`.
    pub fn generator_power(gen: usize, k: i64) -> GroupWord {
        let exp = if k >= 0 { 1 } else { -1 };
        GroupWord {
            letters: vec![Letter::new(gen, exp); k.unsigned_abs() as usize],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> GroupWord {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn conjugate_by(&self, g: &GroupWord) -> GroupWord {
        g.invert().concat(self).concat(g)
    }

    /// Total exponent sum: the image in the abelianization, which for a knot
    /// complement is the linking number with the knot.
    pub fn linking_number(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.exp)).sum()
    }

    /// Largest generator index used, or 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        // run-length collapse purely for readability: m1*m1 -> m1^2
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = i64::from(l.exp) * run as i64;
            if e == 1 {
                parts.push(format!("m{}", l.gen));
            } else {
                parts.push(format!("m{}^{}", l.gen, e));
            }
            i += run;
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("malformed word token {0:?}")]
    BadToken(String),
}

impl FromStr for GroupWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<GroupWord, WordParseError> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(GroupWord::identity());
        }
        let mut w = GroupWord::identity();
        for token in s.split('*') {
            let token = token.trim();
            let bad = || WordParseError::BadToken(token.to_owned());
            let rest = token.strip_prefix('m').ok_or_else(bad)?;
            let (gen_str, exp) = match rest.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let gen: usize = gen_str.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            w = w.concat(&GroupWord::generator_power(gen, exp));
        }
        Ok(w)
    }
}
