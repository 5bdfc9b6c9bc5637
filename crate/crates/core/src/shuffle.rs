//! The extended shuffle product on integer indices, computed on words over
//! `{j, d, y}`.
//!
//! Rules, in priority order, for `u ⧢ v` with `u`, `v` empty or ending in `y`:
//!
//! * `1 ⧢ w = w ⧢ 1 = w`
//! * `yu ⧢ v = u ⧢ yv = y(u ⧢ v)`
//! * `d^n yu ⧢ v = sum_{j=0}^{n} (-1)^j C(n, j) d^{n-j}(yu ⧢ d^j v)`, with the
//!   same expansion when only the right factor starts with `d`
//! * `ju ⧢ jv = j(u ⧢ jv) + j(ju ⧢ v)`
//!
//! Each call orients its arguments by the word order first, so the product is
//! commutative term by term and every memo key is symmetric. Terms that do
//! not end in `y` are discarded as soon as they appear.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::One;

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};
use crate::index::IndexSum;
use crate::word::{Letter, Word, WordSum};

const DEFAULT_LIMIT_FACTOR: usize = 10;

/// Shuffle evaluator with a memo table on oriented word pairs.
#[derive(Debug)]
pub struct Shuffler {
    memo: HashMap<(Word, Word), WordSum>,
    limit_factor: usize,
}

impl Default for Shuffler {
    fn default() -> Self {
        Self::new()
    }
}

impl Shuffler {
    pub fn new() -> Self {
        Self::with_limit_factor(DEFAULT_LIMIT_FACTOR)
    }

    /// The recursion depth limit is `factor * (|u| + |v|)`.
    pub fn with_limit_factor(factor: usize) -> Self {
        Shuffler {
            memo: HashMap::new(),
            limit_factor: factor,
        }
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn shuffle_words(&mut self, u: &Word, v: &Word) -> Result<WordSum> {
        for w in [u, v] {
            if !w.is_wy() {
                return Err(Error::NotWy(w.to_string()));
            }
        }
        let limit = self.limit_factor * (u.length() + v.length()).max(1);
        self.product(u, v, 0, limit)
    }

    pub fn shuffle(&mut self, a: &IndexSum, b: &IndexSum) -> Result<IndexSum> {
        let mut out = IndexSum::zero();
        for (ka, ca) in a.iter() {
            let wa = Word::from_index(ka);
            for (kb, cb) in b.iter() {
                let wb = Word::from_index(kb);
                let p = self.shuffle_words(&wa, &wb)?.to_index_sum()?;
                out.add_scaled(&(ca * cb), &p);
            }
        }
        Ok(out)
    }

    fn product(&mut self, u: &Word, v: &Word, depth: usize, limit: usize) -> Result<WordSum> {
        if u.is_empty() {
            return Ok(WordSum::single(v.clone()));
        }
        if v.is_empty() {
            return Ok(WordSum::single(u.clone()));
        }
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        if depth >= limit {
            return Err(Error::RecursionLimit { limit });
        }
        let next = depth + 1;

        let mut out = match (u.head(), v.head()) {
            (Some(Letter::Y), _) => {
                let rest = u.strip_head().expect("nonempty");
                self.product(&rest, v, next, limit)?.prepend(Letter::Y)
            }
            (_, Some(Letter::Y)) => {
                let rest = v.strip_head().expect("nonempty");
                self.product(u, &rest, next, limit)?.prepend(Letter::Y)
            }
            (Some(Letter::D), _) => self.expand_d_run(u, v, next, limit)?,
            (_, Some(Letter::D)) => self.expand_d_run(v, u, next, limit)?,
            _ => {
                let one = Rational::one();
                let mut acc = WordSum::zero();
                let left = self.product(&u.strip_head().expect("nonempty"), v, next, limit)?;
                acc.add_scaled_prepended(&one, 1, &left);
                let right = self.product(u, &v.strip_head().expect("nonempty"), next, limit)?;
                acc.add_scaled_prepended(&one, 1, &right);
                acc
            }
        };
        out.retain_wy();
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// `d^n yu ⧢ v` for `w = d^n yu`.
    fn expand_d_run(&mut self, w: &Word, v: &Word, depth: usize, limit: usize) -> Result<WordSum> {
        let n = -w.head_exponent();
        debug_assert!(n > 0);
        let stripped = w.prepended_power(n);
        let mut acc = WordSum::zero();
        for j in 0..=n {
            let c = Rational::from_integer(binomial(n as u64, j));
            let c = if j % 2 == 0 { c } else { -c };
            let inner = self.product(&stripped, &v.prepended_power(-j), depth, limit)?;
            acc.add_scaled_prepended(&c, -(n - j), &inner);
        }
        Ok(acc)
    }
}

thread_local! {
    static SHUFFLER: RefCell<Shuffler> = RefCell::new(Shuffler::new());
}

/// `u ⧢ v` for `Wy` words, using a per-thread memo table.
pub fn shuffle_words(u: &Word, v: &Word) -> Result<WordSum> {
    SHUFFLER.with(|s| s.borrow_mut().shuffle_words(u, v))
}

pub fn try_shuffle(a: &IndexSum, b: &IndexSum) -> Result<IndexSum> {
    SHUFFLER.with(|s| s.borrow_mut().shuffle(a, b))
}

/// Bilinear shuffle product of index sums.
///
/// Panics only if the internal recursion guard trips, which legal inputs
/// never do; use [`try_shuffle`] to observe that case as an error.
pub fn shuffle(a: &IndexSum, b: &IndexSum) -> IndexSum {
    try_shuffle(a, b).expect("shuffle recursion guard tripped")
}

pub fn clear_shuffle_memo() {
    SHUFFLER.with(|s| s.borrow_mut().clear());
}
