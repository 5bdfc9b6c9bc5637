//! The positive-index map.
//!
//! A non-positive entry `k_m = -a` (with `m` the first such position, never
//! the last) is summed out with Faulhaber's formula:
//!
//! ```text
//! sum_{n_{m-1} < n < n_{m+1}} n^a
//!     = (1/(a+1)) sum_i C(a+1, i) B^-_i n_{m+1}^{a+1-i} - δ_{a,0}
//!     - (1/(a+1)) sum_i C(a+1, i) B^+_i n_{m-1}^{a+1-i}
//! ```
//!
//! The first family merges position `m` into `m+1`, the second into `m-1`
//! (absent when `m` is the first position, where `n_0 = 0`). Each step lowers
//! the depth by one, so repeated application terminates.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arith::{bernoulli, binomial, BernoulliSign, Rational};
use crate::error::{Error, Result};
use crate::index::{Index, IndexSum, MIndex};

/// Position (0-based) of the first non-positive entry, if it is not the last.
pub fn reduction_position(k: &Index) -> Option<usize> {
    let e = k.entries();
    let p = e.iter().position(|&x| x <= 0)?;
    (p + 1 < e.len()).then_some(p)
}

/// One elimination step at the first non-positive position.
pub fn reduce_step(k: &Index) -> Result<IndexSum> {
    let p = reduction_position(k).ok_or_else(|| Error::NotReducible(k.clone()))?;
    let e = k.entries();
    let a = -e[p];
    let scale = Rational::new(One::one(), (a + 1).into());
    let mut out = IndexSum::zero();

    for i in 0..=a {
        let c = Rational::from_integer(binomial(a as u64 + 1, i)) * &scale;

        let b_minus = bernoulli(i as usize, BernoulliSign::Minus);
        if !b_minus.is_zero() {
            let mut up: Vec<i64> = e.to_vec();
            up[p + 1] += e[p] - 1 + i;
            up.remove(p);
            out.add_term(&c * b_minus, Index::new(up));
        }

        if p > 0 {
            let b_plus = bernoulli(i as usize, BernoulliSign::Plus);
            if !b_plus.is_zero() {
                let mut down: Vec<i64> = e.to_vec();
                down[p - 1] += e[p] - 1 + i;
                down.remove(p);
                out.add_term(-(&c * b_plus), Index::new(down));
            }
        }
    }
    if a == 0 {
        let mut dropped = e.to_vec();
        dropped.remove(p);
        out.add_term(-Rational::one(), Index::new(dropped));
    }
    Ok(out)
}

#[derive(Debug, Default)]
pub struct Reducer {
    memo: HashMap<Index, IndexSum>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn pi_plus_index(&mut self, k: &Index) -> IndexSum {
        if reduction_position(k).is_none() {
            return IndexSum::single(k.clone());
        }
        if let Some(hit) = self.memo.get(k) {
            return hit.clone();
        }
        let step = reduce_step(k).expect("reduction position exists");
        let out = step.flat_map(|l| self.pi_plus_index(l));
        self.memo.insert(k.clone(), out.clone());
        out
    }

    pub fn pi_plus(&mut self, s: &IndexSum) -> IndexSum {
        s.flat_map(|k| self.pi_plus_index(k))
    }
}

thread_local! {
    static REDUCER: RefCell<Reducer> = RefCell::new(Reducer::new());
}

/// The (extended) positive-index map on a linear combination.
pub fn pi_plus(s: &IndexSum) -> IndexSum {
    REDUCER.with(|r| r.borrow_mut().pi_plus(s))
}

pub fn pi_plus_index(k: &Index) -> IndexSum {
    REDUCER.with(|r| r.borrow_mut().pi_plus_index(k))
}

pub fn clear_reduce_memo() {
    REDUCER.with(|r| r.borrow_mut().clear());
}

/// Whether `l` lies in the codomain promised for the image of `k`: either
/// `∅`, or all entries but the last positive and the last entry above `m_k`.
pub fn in_extended_codomain(k: &Index, l: &Index) -> bool {
    let Some((init, last)) = l.split_last() else {
        return true;
    };
    init.is_positive() && MIndex::Finite(last) > k.m_index()
}
