//! Integer indices, their formal rational combinations and the
//! regularizability index.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// A finite tuple of integers `(k_1, ..., k_r)`. The empty tuple is `∅`.
///
/// Ordered by depth first, then lexicographically; this is the canonical
/// order used for every serialized sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Index(Vec<i64>);

impl Index {
    pub fn new(entries: impl Into<Vec<i64>>) -> Self {
        Index(entries.into())
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `(k_t, ..., k_r)` for `1 <= t <= r`.
    pub fn tail(&self, t: usize) -> Result<Index> {
        if t == 0 || t > self.depth() {
            return Err(Error::TailOutOfRange {
                t,
                depth: self.depth(),
            });
        }
        Ok(Index(self.0[t - 1..].to_vec()))
    }

    /// Minimum over all tails of weight minus depth; `+∞` for `∅`.
    pub fn m_index(&self) -> MIndex {
        let mut best = MIndex::Infinite;
        let mut acc = 0i64;
        for k in self.0.iter().rev() {
            acc += k - 1;
            best = best.min(MIndex::Finite(acc));
        }
        best
    }

    pub fn classify(&self) -> Classification {
        Classification::from_m(self.m_index())
    }

    pub fn is_admissible(&self) -> bool {
        self.classify() == Classification::Admissible
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&k| k > 0)
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// Appends one entry at the end (the `(k, k)` notation).
    pub fn push(&self, last: i64) -> Index {
        let mut v = self.0.clone();
        v.push(last);
        Index(v)
    }

    /// Splits off the last entry, if any.
    pub fn split_last(&self) -> Option<(Index, i64)> {
        self.0
            .split_last()
            .map(|(&last, init)| (Index(init.to_vec()), last))
    }
}

impl From<Vec<i64>> for Index {
    fn from(v: Vec<i64>) -> Self {
        Index(v)
    }
}

impl<const N: usize> From<[i64; N]> for Index {
    fn from(v: [i64; N]) -> Self {
        Index(v.to_vec())
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `(k1,k2,...)` with optional whitespace and `()` for `∅`.
    /// Both `-` and `−` (U+2212) are read as minus signs.
    fn from_str(text: &str) -> Result<Index> {
        let err = |position: usize, message: &str| Error::Parse {
            input: text.to_string(),
            position,
            message: message.to_string(),
        };
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].1.is_whitespace() {
                *pos += 1;
            }
        };
        let offset = |pos: usize| chars.get(pos).map_or(text.len(), |c| c.0);

        skip_ws(&mut pos);
        if chars.get(pos).map(|c| c.1) != Some('(') {
            return Err(err(offset(pos), "expected `(`"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let mut entries = Vec::new();
        if chars.get(pos).map(|c| c.1) == Some(')') {
            pos += 1;
        } else {
            loop {
                skip_ws(&mut pos);
                let start = pos;
                let mut negative = false;
                if let Some(&(_, c)) = chars.get(pos) {
                    if c == '-' || c == '\u{2212}' {
                        negative = true;
                        pos += 1;
                    } else if c == '+' {
                        pos += 1;
                    }
                }
                let digits_start = pos;
                while pos < chars.len() && chars[pos].1.is_ascii_digit() {
                    pos += 1;
                }
                if pos == digits_start {
                    return Err(err(offset(start), "expected an integer"));
                }
                let digits: String = chars[digits_start..pos].iter().map(|c| c.1).collect();
                let value: i64 = digits
                    .parse()
                    .map_err(|_| err(offset(digits_start), "integer out of range"))?;
                entries.push(if negative { -value } else { value });
                skip_ws(&mut pos);
                match chars.get(pos).map(|c| c.1) {
                    Some(',') => pos += 1,
                    Some(')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(err(offset(pos), "expected `,` or `)`")),
                }
            }
        }
        skip_ws(&mut pos);
        if pos != chars.len() {
            return Err(err(offset(pos), "trailing characters after `)`"));
        }
        Ok(Index(entries))
    }
}

/// An integer or `+∞`. `∞` sorts above every integer and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MIndex {
    Finite(i64),
    Infinite,
}

impl MIndex {
    pub fn finite(self) -> Option<i64> {
        match self {
            MIndex::Finite(m) => Some(m),
            MIndex::Infinite => None,
        }
    }
}

impl Add for MIndex {
    type Output = MIndex;
    fn add(self, rhs: MIndex) -> MIndex {
        match (self, rhs) {
            (MIndex::Finite(a), MIndex::Finite(b)) => MIndex::Finite(a + b),
            _ => MIndex::Infinite,
        }
    }
}

impl Add<i64> for MIndex {
    type Output = MIndex;
    fn add(self, rhs: i64) -> MIndex {
        self + MIndex::Finite(rhs)
    }
}

impl fmt::Display for MIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MIndex::Finite(m) => write!(f, "{m}"),
            MIndex::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for MIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MIndex::Finite(m) => s.serialize_i64(*m),
            MIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `min{a, b, a + b}`, the shape of both product formulas for `m`.
pub fn product_m(a: MIndex, b: MIndex) -> MIndex {
    a.min(b).min(a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `m > 0`
    Admissible,
    /// `m = 0`
    RegularizableOnly,
    /// `m < 0`
    NonRegularizable,
}

impl Classification {
    pub fn from_m(m: MIndex) -> Self {
        match m {
            MIndex::Infinite => Classification::Admissible,
            MIndex::Finite(m) if m > 0 => Classification::Admissible,
            MIndex::Finite(0) => Classification::RegularizableOnly,
            MIndex::Finite(_) => Classification::NonRegularizable,
        }
    }

    pub fn is_regularizable(self) -> bool {
        self != Classification::NonRegularizable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Admissible => "admissible",
            Classification::RegularizableOnly => "regularizable_only",
            Classification::NonRegularizable => "non_regularizable",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite `Q`-linear combination of indices. Zero coefficients are never
/// stored, so the key set is exactly the support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexSum {
    terms: BTreeMap<Index, Rational>,
}

impl IndexSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: Index) -> Self {
        Self::term(Rational::one(), k)
    }

    pub fn term(c: Rational, k: Index) -> Self {
        let mut s = Self::zero();
        s.add_term(c, k);
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

    pub fn coeff(&self, k: &Index) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, c: Rational, k: Index) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &IndexSum) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(c * v, k.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> IndexSum {
        let mut out = IndexSum::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Index> {
        self.terms.keys()
    }

    /// Minimum `m` over the support; `+∞` for the zero sum.
    pub fn m_index(&self) -> MIndex {
        self.terms
            .keys()
            .map(Index::m_index)
            .min()
            .unwrap_or(MIndex::Infinite)
    }

    /// Applies `f` to every index and sums the results linearly.
    pub fn flat_map(&self, mut f: impl FnMut(&Index) -> IndexSum) -> IndexSum {
        let mut out = IndexSum::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Human-readable form such as `1·(2) − 1·(3)`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('−'),
                (0, false) => {}
                (_, true) => out.push_str(" − "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format_rational(&abs));
            out.push('·');
            out.push_str(&k.to_string());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index sums always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<IndexSum, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl FromIterator<(Rational, Index)> for IndexSum {
    fn from_iter<I: IntoIterator<Item = (Rational, Index)>>(iter: I) -> Self {
        let mut s = IndexSum::zero();
        for (c, k) in iter {
            s.add_term(c, k);
        }
        s
    }
}

impl From<Index> for IndexSum {
    fn from(k: Index) -> Self {
        IndexSum::single(k)
    }
}

impl Add<&IndexSum> for &IndexSum {
    type Output = IndexSum;
    fn add(self, rhs: &IndexSum) -> IndexSum {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub<&IndexSum> for &IndexSum {
    type Output = IndexSum;
    fn sub(self, rhs: &IndexSum) -> IndexSum {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &IndexSum {
    type Output = IndexSum;
    fn neg(self) -> IndexSum {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for IndexSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

struct TermRef<'a>(&'a Index, &'a Rational);

impl Serialize for TermRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("coeff", &format_rational(self.1))?;
        m.serialize_entry("index", self.0)?;
        m.end()
    }
}

struct Terms<'a>(&'a BTreeMap<Index, Rational>);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (k, c) in self.0 {
            seq.serialize_element(&TermRef(k, c))?;
        }
        seq.end()
    }
}

impl Serialize for IndexSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("terms", &Terms(&self.terms))?;
        m.end()
    }
}

#[derive(Deserialize)]
struct RawTerm {
    coeff: String,
    index: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSum {
    terms: Vec<RawTerm>,
}

impl<'de> Deserialize<'de> for IndexSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSum::deserialize(d)?;
        let mut out = IndexSum::zero();
        for t in raw.terms {
            let c = parse_rational(&t.coeff).ok_or_else(|| {
                serde::de::Error::custom(format!("bad rational coefficient `{}`", t.coeff))
            })?;
            out.add_term(c, Index(t.index));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rational};
    use proptest::prelude::*;

    fn idx(v: &[i64]) -> Index {
        Index::new(v.to_vec())
    }

    /// Direct evaluation of the defining minimum over explicit tails.
    fn m_by_tails(k: &Index) -> MIndex {
        (1..=k.depth())
            .map(|t| {
                let tail = k.tail(t).unwrap();
                MIndex::Finite(tail.weight() - tail.depth() as i64)
            })
            .min()
            .unwrap_or(MIndex::Infinite)
    }

    #[test]
    fn weight_depth_tail() {
        assert_eq!(idx(&[1, 2, 3]).weight(), 6);
        assert_eq!(Index::empty().weight(), 0);
        assert_eq!(idx(&[-2, 5]).weight(), 3);
        assert_eq!(idx(&[1, 2, 3]).depth(), 3);
        assert_eq!(Index::empty().depth(), 0);
        assert_eq!(idx(&[0]).depth(), 1);
        assert_eq!(idx(&[1, -2, 3]).tail(2).unwrap(), idx(&[-2, 3]));
        assert_eq!(idx(&[1, -2, 3]).tail(1).unwrap(), idx(&[1, -2, 3]));
        assert_eq!(idx(&[5]).tail(1).unwrap(), idx(&[5]));
        assert!(matches!(
            idx(&[5]).tail(2),
            Err(Error::TailOutOfRange { t: 2, depth: 1 })
        ));
        assert!(idx(&[5]).tail(0).is_err());
    }

    #[test]
    fn m_index_examples() {
        assert_eq!(idx(&[0]).m_index(), MIndex::Finite(-1));
        assert_eq!(Index::empty().m_index(), MIndex::Infinite);
        assert_eq!(idx(&[-2, 5]).m_index(), MIndex::Finite(1));
        assert_eq!(idx(&[2]).classify(), Classification::Admissible);
        assert_eq!(idx(&[1]).classify(), Classification::RegularizableOnly);
        assert_eq!(idx(&[0, 3]).classify(), Classification::Admissible);
        assert_eq!(idx(&[0]).classify(), Classification::NonRegularizable);
        assert_eq!(Index::empty().classify(), Classification::Admissible);
    }

    #[test]
    fn infinity_sentinel() {
        assert!(MIndex::Infinite > MIndex::Finite(i64::MAX));
        assert_eq!(MIndex::Infinite + MIndex::Finite(-5), MIndex::Infinite);
        assert_eq!(MIndex::Finite(-5) + MIndex::Infinite, MIndex::Infinite);
        assert_eq!(
            product_m(MIndex::Finite(-1), MIndex::Infinite),
            MIndex::Finite(-1)
        );
        assert_eq!(
            product_m(MIndex::Finite(-1), MIndex::Finite(-1)),
            MIndex::Finite(-2)
        );
    }

    #[test]
    fn m_of_sum_examples() {
        let s: IndexSum = [(int(1), idx(&[0])), (int(1), idx(&[2]))]
            .into_iter()
            .collect();
        assert_eq!(s.m_index(), MIndex::Finite(-1));
        assert_eq!(IndexSum::zero().m_index(), MIndex::Infinite);
        let s: IndexSum = [(rational(1, 2), idx(&[2])), (rational(-1, 2), idx(&[3]))]
            .into_iter()
            .collect();
        assert_eq!(s.m_index(), MIndex::Finite(1));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(idx(&[1]).concat(&idx(&[2, 3])), idx(&[1, 2, 3]));
        assert_eq!(Index::empty().concat(&idx(&[-1])), idx(&[-1]));
        assert_eq!(idx(&[0]).concat(&Index::empty()), idx(&[0]));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("(0,3)".parse::<Index>().unwrap(), idx(&[0, 3]));
        assert_eq!("()".parse::<Index>().unwrap(), Index::empty());
        assert_eq!("( )".parse::<Index>().unwrap(), Index::empty());
        assert_eq!("(−1, 4)".parse::<Index>().unwrap(), idx(&[-1, 4]));
        assert_eq!(" ( -1 ,4 ) ".parse::<Index>().unwrap(), idx(&[-1, 4]));
        assert_eq!(idx(&[-1, 4]).to_string(), "(-1,4)");
        assert_eq!(Index::empty().to_string(), "()");
        for bad in [
            "", "(", "(1,", "(1,,2)", "1,2", "(1 2)", "(a)", "(1))", "(-)",
        ] {
            let e = bad.parse::<Index>().unwrap_err();
            assert!(matches!(e, Error::Parse { .. }), "{bad}: {e}");
        }
        match "(1,x)".parse::<Index>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_order_and_json() {
        let s: IndexSum = [
            (int(-1), idx(&[3])),
            (int(1), idx(&[2])),
            (int(6), idx(&[1, 4])),
            (int(2), Index::empty()),
            (rational(1, 2), idx(&[-1, 4])),
        ]
        .into_iter()
        .collect();
        assert_eq!(
            s.to_json(),
            r#"{"terms":[{"coeff":"2","index":[]},{"coeff":"1","index":[2]},{"coeff":"-1","index":[3]},{"coeff":"1/2","index":[-1,4]},{"coeff":"6","index":[1,4]}]}"#
        );
        assert_eq!(IndexSum::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(s.pretty(), "2·() + 1·(2) − 1·(3) + 1/2·(-1,4) + 6·(1,4)");
    }

    #[test]
    fn zero_pruning() {
        let mut s = IndexSum::single(idx(&[2]));
        s.add_term(int(-1), idx(&[2]));
        assert!(s.is_zero());
        s.add_term(int(0), idx(&[5]));
        assert!(s.is_zero());
        assert_eq!(s.support().count(), 0);
    }

    fn arb_index(max_depth: usize, lo: i64, hi: i64) -> impl Strategy<Value = Index> {
        prop::collection::vec(lo..=hi, 0..=max_depth).prop_map(Index::new)
    }

    fn arb_sum() -> impl Strategy<Value = IndexSum> {
        prop::collection::vec((-3i64..=3, 1i64..=3, arb_index(3, -2, 2)), 0..6)
            .prop_map(|v| v.into_iter().map(|(p, q, k)| (rational(p, q), k)).collect())
    }

    proptest! {
        #[test]
        fn m_matches_tail_enumeration(k in arb_index(6, -5, 5)) {
            prop_assert_eq!(k.m_index(), m_by_tails(&k));
        }

        #[test]
        fn m_of_appended_entry(k in arb_index(5, -5, 5), c in -5i64..=5) {
            let expected = (k.m_index() + (c - 1)).min(MIndex::Finite(c - 1));
            prop_assert_eq!(k.push(c).m_index(), expected);
        }

        #[test]
        fn positive_with_last_above_one_is_admissible(
            init in prop::collection::vec(1i64..=6, 0..5),
            last in 2i64..=6,
        ) {
            let mut v = init;
            v.push(last);
            prop_assert!(Index::new(v).m_index() > MIndex::Finite(0));
        }

        #[test]
        fn sums_form_a_vector_space(a in arb_sum(), b in arb_sum(), c in arb_sum(), p in -4i64..=4, q in 1i64..=4) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            let r = rational(p, q);
            prop_assert_eq!((&a + &b).scale(&r), &a.scale(&r) + &b.scale(&r));
            for (_, v) in (&a + &b).iter() {
                prop_assert!(!v.is_zero());
                prop_assert!(crate::arith::is_in_lowest_terms(v));
            }
            prop_assert_eq!(IndexSum::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
