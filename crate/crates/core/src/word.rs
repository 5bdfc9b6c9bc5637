//! Words over `{j, d, y}` modulo `jd = dj = 1`.
//!
//! A normalized word is `j^{a_1} y j^{a_2} y ... y j^{a_s}` with `a_i ∈ Z`
//! (`j^{-1} = d`). It is stored as the exponent list read right to left,
//! `[a_s, ..., a_1]`, so that prepending a letter only touches the end of the
//! vector. For a word ending in `y` the stored list is `[0, k_1, ..., k_r]`,
//! which is exactly the corresponding index with a leading zero.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::index::{Index, IndexSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    J,
    D,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::J => 'j',
            Letter::D => 'd',
            Letter::Y => 'y',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    /// Exponent blocks, last block of the word first. Never empty.
    rev_blocks: Vec<i64>,
}

impl Default for Word {
    fn default() -> Self {
        Word::empty()
    }
}

impl Word {
    pub fn empty() -> Self {
        Word {
            rev_blocks: vec![0],
        }
    }

    /// Builds from `[a_1, ..., a_s]` as written left to right.
    pub fn from_blocks(blocks: &[i64]) -> Self {
        if blocks.is_empty() {
            return Word::empty();
        }
        Word {
            rev_blocks: blocks.iter().rev().copied().collect(),
        }
    }

    /// Exponent blocks `[a_1, ..., a_s]` left to right.
    pub fn blocks(&self) -> Vec<i64> {
        self.rev_blocks.iter().rev().copied().collect()
    }

    pub fn normalize(letters: &[Letter]) -> Self {
        let mut w = Word::empty();
        for &l in letters.iter().rev() {
            w.prepend_mut(l);
        }
        w
    }

    pub fn is_empty(&self) -> bool {
        self.rev_blocks == [0]
    }

    pub fn y_count(&self) -> usize {
        self.rev_blocks.len() - 1
    }

    /// True for the empty word and for words whose last letter is `y`.
    pub fn is_wy(&self) -> bool {
        self.rev_blocks[0] == 0
    }

    /// Total letter count of the normalized word.
    pub fn length(&self) -> usize {
        self.rev_blocks
            .iter()
            .map(|a| a.unsigned_abs() as usize)
            .sum::<usize>()
            + self.y_count()
    }

    pub fn head(&self) -> Option<Letter> {
        let a = *self.rev_blocks.last().expect("blocks never empty");
        match a {
            a if a > 0 => Some(Letter::J),
            a if a < 0 => Some(Letter::D),
            _ if self.rev_blocks.len() > 1 => Some(Letter::Y),
            _ => None,
        }
    }

    /// Exponent of the leading `j`-block (negative for a `d`-run).
    pub fn head_exponent(&self) -> i64 {
        *self.rev_blocks.last().expect("blocks never empty")
    }

    pub fn prepend_mut(&mut self, letter: Letter) {
        match letter {
            Letter::J => *self.rev_blocks.last_mut().unwrap() += 1,
            Letter::D => *self.rev_blocks.last_mut().unwrap() -= 1,
            Letter::Y => self.rev_blocks.push(0),
        }
    }

    pub fn prepended(&self, letter: Letter) -> Word {
        let mut w = self.clone();
        w.prepend_mut(letter);
        w
    }

    /// Prepends `j^e` (`d^{-e}` when negative).
    pub fn prepended_power(&self, e: i64) -> Word {
        let mut w = self.clone();
        *w.rev_blocks.last_mut().unwrap() += e;
        w
    }

    /// Removes the leading letter, if any.
    pub fn strip_head(&self) -> Option<Word> {
        let mut w = self.clone();
        match self.head()? {
            Letter::J => *w.rev_blocks.last_mut().unwrap() -= 1,
            Letter::D => *w.rev_blocks.last_mut().unwrap() += 1,
            Letter::Y => {
                w.rev_blocks.pop();
            }
        }
        Some(w)
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.length());
        for (i, &a) in self.rev_blocks.iter().rev().enumerate() {
            if i > 0 {
                out.push(Letter::Y);
            }
            let l = if a > 0 { Letter::J } else { Letter::D };
            out.extend(std::iter::repeat_n(l, a.unsigned_abs() as usize));
        }
        out
    }

    pub fn from_index(k: &Index) -> Word {
        let mut rev_blocks = Vec::with_capacity(k.depth() + 1);
        rev_blocks.push(0);
        rev_blocks.extend_from_slice(k.entries());
        Word { rev_blocks }
    }

    pub fn to_index(&self) -> Result<Index> {
        if !self.is_wy() {
            return Err(Error::NotWy(self.to_string()));
        }
        Ok(Index::new(self.rev_blocks[1..].to_vec()))
    }
}

pub fn word_from_index(k: &Index) -> Word {
    Word::from_index(k)
}

pub fn index_from_word(w: &Word) -> Result<Index> {
    w.to_index()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts concatenated letters (`jjydy`), exponent form (`j^2 y d y`),
    /// and `1` or the empty string for the empty word.
    fn from_str(text: &str) -> Result<Word> {
        let err = |position: usize, message: &str| Error::Parse {
            input: text.to_string(),
            position,
            message: message.to_string(),
        };
        if text.trim() == "1" {
            return Ok(Word::empty());
        }
        let bytes = text.as_bytes();
        let mut letters_rev: Vec<(Letter, i64)> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            let letter = match c {
                c if c.is_ascii_whitespace() => {
                    pos += 1;
                    continue;
                }
                'j' => Letter::J,
                'd' => Letter::D,
                'y' => Letter::Y,
                _ => return Err(err(pos, "expected one of j, d, y")),
            };
            pos += 1;
            let mut exponent = 1i64;
            if bytes.get(pos) == Some(&b'^') {
                pos += 1;
                let start = pos;
                if matches!(bytes.get(pos), Some(b'-')) {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exponent = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, "expected an integer exponent"))?;
                if letter == Letter::Y && exponent < 0 {
                    return Err(err(start, "y has no inverse"));
                }
            }
            letters_rev.push((letter, exponent));
        }
        let mut w = Word::empty();
        for (letter, e) in letters_rev.into_iter().rev() {
            match letter {
                Letter::J => w = w.prepended_power(e),
                Letter::D => w = w.prepended_power(-e),
                Letter::Y => {
                    for _ in 0..e {
                        w.prepend_mut(Letter::Y);
                    }
                }
            }
        }
        Ok(w)
    }
}

/// A finite `Q`-linear combination of words; zero coefficients are pruned.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, Rational>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(w: Word) -> Self {
        let mut s = Self::zero();
        s.add_term(Rational::one(), w);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Rational, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &WordSum) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(c * v, w.clone());
        }
    }

    /// `self += c * x^e * other` where `x^e` is `j^e` (or `d^{-e}`).
    pub(crate) fn add_scaled_prepended(&mut self, c: &Rational, e: i64, other: &WordSum) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(c * v, w.prepended_power(e));
        }
    }

    pub fn prepend(&self, letter: Letter) -> WordSum {
        let mut out = WordSum::zero();
        for (w, c) in &self.terms {
            out.add_term(c.clone(), w.prepended(letter));
        }
        out
    }

    /// Drops every term that is not a `Wy` word (the quotient by `T`).
    pub fn retain_wy(&mut self) {
        self.terms.retain(|w, _| w.is_wy());
    }

    pub fn to_index_sum(&self) -> Result<IndexSum> {
        let mut out = IndexSum::zero();
        for (w, c) in &self.terms {
            out.add_term(c.clone(), w.to_index()?);
        }
        Ok(out)
    }

    pub fn from_index_sum(s: &IndexSum) -> WordSum {
        let mut out = WordSum::zero();
        for (k, c) in s.iter() {
            out.add_term(c.clone(), Word::from_index(k));
        }
        out
    }
}

impl FromIterator<(Rational, Word)> for WordSum {
    fn from_iter<I: IntoIterator<Item = (Rational, Word)>>(iter: I) -> Self {
        let mut s = WordSum::zero();
        for (c, w) in iter {
            s.add_term(c, w);
        }
        s
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·{}", format_rational(c), w)?;
        }
        Ok(())
    }
}
