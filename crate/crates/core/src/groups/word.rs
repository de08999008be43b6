use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A run `g^k` of a single generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

/// A freely reduced word in run-length form.
///
/// Adjacent syllables never share a generator and no syllable has exponent
/// zero, so [`Word::len`] is the length of the word over `S ∪ S⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(generator: usize, exponent: impl Into<BigInt>) -> Self {
        let mut w = Word::empty();
        w.push(generator, exponent);
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exponent.abs()).sum()
    }

    pub fn len_u64(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        self.len().to_u64()
    }

    pub fn push(&mut self, generator: usize, exponent: impl Into<BigInt>) {
        let exponent = exponent.into();
        if exponent.is_zero() {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.generator == generator {
                last.exponent += exponent;
                if last.exponent.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable {
            generator,
            exponent,
        });
    }

    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            self.push(s.generator, s.exponent.clone());
        }
    }

    pub fn concat(mut self, other: &Word) -> Word {
        self.append(other);
        self
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for s in self.syllables.iter().rev() {
            w.push(s.generator, -&s.exponent);
        }
        w
    }

    /// The word repeated `times` times (`times ≥ 0`).
    pub fn repeat(&self, times: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..times {
            w.append(self);
        }
        w
    }

    /// Expands into single letters `(generator, ±1)`; only sensible for short words.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.syllables.iter().flat_map(|s| {
            use num_traits::ToPrimitive;
            let n = s.exponent.abs().to_usize().expect("word too long to expand");
            let sign = if s.exponent.is_positive() { 1 } else { -1 };
            std::iter::repeat_n((s.generator, sign), n)
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses a word such as `t a t^-1`, `x y x⁻¹ y⁻¹` or `a^12`.
    ///
    /// Tokens are separated by whitespace, `*`, `·` or `,`. A token is a
    /// generator name optionally followed by `^k` or `⁻¹`.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut w = Word::empty();
        let tokens = text
            .split(|c: char| c.is_whitespace() || matches!(c, '*' | '·' | ','))
            .filter(|t| !t.is_empty());
        for token in tokens {
            if token == "1" {
                continue;
            }
            let (name, exponent) = split_token(token)?;
            let generator = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            w.push(generator, exponent);
        }
        Ok(w)
    }
}

fn split_token(token: &str) -> Result<(&str, BigInt)> {
    if let Some(name) = token.strip_suffix("⁻¹") {
        return Ok((name, -BigInt::one()));
    }
    match token.split_once('^') {
        None => Ok((token, BigInt::one())),
        Some((name, exp)) => {
            let exp = exp.trim_start_matches('(').trim_end_matches(')');
            let k: BigInt = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
            Ok((name, k))
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = &self.names[s.generator];
            if s.exponent.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}
