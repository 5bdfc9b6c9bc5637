//! Exact truncated multiple polylogarithm series and multiple harmonic sums,
//! used as brute-force oracles for the symbolic layers, plus a plain `f64`
//! partial-sum estimate of real multiple zeta values.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{inverse_power, Rational};
use crate::error::{Error, Result};
use crate::index::{Index, IndexSum, MIndex};
use crate::reduce::pi_plus_index;
use crate::shuffle::shuffle;
use crate::stuffle::stuffle;

pub const DEFAULT_SERIES_ORDER: usize = 60;
pub const DEFAULT_HARMONIC_ORDER: usize = 50;

/// `c_0 + c_1 z + ... + c_N z^N` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Rational>,
}

impl SeriesPoly {
    pub fn zero(order: usize) -> Self {
        SeriesPoly {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        SeriesPoly { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Product truncated at the common order.
    pub fn mul_truncated(&self, other: &SeriesPoly) -> SeriesPoly {
        let order = self.order().min(other.order());
        let mut out = SeriesPoly::zero(order);
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &SeriesPoly) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    /// First `n` at which the two series differ.
    pub fn first_mismatch(&self, other: &SeriesPoly) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

/// `c_n = sum over 0 < n_1 < ... < n_r = n of prod n_i^{-k_i}` for `n <= N`.
///
/// Dynamic programming over prefix sums, `O(r N)` rational operations.
pub fn mpl_coefficients(k: &Index, order: usize) -> Result<SeriesPoly> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(SeriesPoly::from_coeffs(mpl_raw(k, order)))
}

fn mpl_raw(k: &Index, order: usize) -> Vec<Rational> {
    let mut cur = vec![Rational::zero(); order + 1];
    let Some((&first, rest)) = k.entries().split_first() else {
        cur[0] = num_traits::One::one();
        return cur;
    };
    for (n, c) in cur.iter_mut().enumerate().skip(1) {
        *c = inverse_power(n as u64, first);
    }
    for &e in rest {
        let mut next = vec![Rational::zero(); order + 1];
        let mut prefix = Rational::zero();
        for n in 1..=order {
            if !prefix.is_zero() {
                next[n] = &prefix * inverse_power(n as u64, e);
            }
            prefix += &cur[n];
        }
        cur = next;
    }
    cur
}

/// `H_n(k)` for every `n` in `0..=N`.
pub fn harmonic_sums(k: &Index, order: usize) -> Vec<Rational> {
    let c = mpl_raw(k, order);
    let mut acc = Rational::zero();
    c.iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

/// `H_N(k) = sum over 0 < n_1 < ... < n_r <= N of prod n_i^{-k_i}`.
pub fn harmonic_sum(k: &Index, order: usize) -> Result<Rational> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(harmonic_sums(k, order).pop().expect("order >= 1"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub first_mismatch: Option<usize>,
    pub order: usize,
}

impl Report {
    fn from_mismatch(first_mismatch: Option<usize>, order: usize) -> Self {
        Report {
            pass: first_mismatch.is_none(),
            first_mismatch,
            order,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Series oracle at a fixed truncation order, caching per-index coefficients.
#[derive(Debug)]
pub struct Oracle {
    order: usize,
    mpl: HashMap<Index, Rc<SeriesPoly>>,
    harmonic: HashMap<Index, Rc<Vec<Rational>>>,
}

impl Oracle {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Oracle {
            order,
            mpl: HashMap::new(),
            harmonic: HashMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mpl(&mut self, k: &Index) -> Rc<SeriesPoly> {
        let order = self.order;
        self.mpl
            .entry(k.clone())
            .or_insert_with(|| Rc::new(SeriesPoly::from_coeffs(mpl_raw(k, order))))
            .clone()
    }

    pub fn harmonic(&mut self, k: &Index) -> Rc<Vec<Rational>> {
        let order = self.order;
        self.harmonic
            .entry(k.clone())
            .or_insert_with(|| Rc::new(harmonic_sums(k, order)))
            .clone()
    }

    /// `sum c_l Li_l(z)` truncated at the oracle order.
    pub fn mpl_combination(&mut self, s: &IndexSum) -> SeriesPoly {
        let mut out = SeriesPoly::zero(self.order);
        for (l, c) in s.iter() {
            let series = self.mpl(l);
            out.add_scaled(c, &series);
        }
        out
    }

    /// `sum c_l H_n(l)` for every `n <= N`.
    pub fn harmonic_combination(&mut self, s: &IndexSum) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.order + 1];
        for (l, c) in s.iter() {
            let h = self.harmonic(l);
            for (x, y) in out.iter_mut().zip(h.iter()) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        out
    }

    pub fn verify_reduction(&mut self, k: &Index) -> Report {
        let lhs = self.mpl(k);
        let rhs = self.mpl_combination(&pi_plus_index(k));
        Report::from_mismatch(lhs.first_mismatch(&rhs), self.order)
    }

    pub fn verify_shuffle(&mut self, a: &Index, b: &Index) -> Report {
        let product = self.mpl(a).mul_truncated(&self.mpl(b));
        let rhs = self.mpl_combination(&shuffle(&a.clone().into(), &b.clone().into()));
        Report::from_mismatch(product.first_mismatch(&rhs), self.order)
    }

    /// Checks `H_n(a) H_n(b) = H_n(a * b)` for every `n <= N`; a mismatch
    /// reports the smallest failing `n`.
    pub fn verify_stuffle(&mut self, a: &Index, b: &Index) -> Report {
        let ha = self.harmonic(a);
        let hb = self.harmonic(b);
        let rhs = self.harmonic_combination(&stuffle(&a.clone().into(), &b.clone().into()));
        let mismatch = (1..=self.order).find(|&n| &ha[n] * &hb[n] != rhs[n]);
        Report::from_mismatch(mismatch, self.order)
    }
}

/// Compares `Li_k` with `sum c_{k,l} Li_l` over the positive-index image.
pub fn verify_reduction(k: &Index, order: usize) -> Result<Report> {
    Ok(Oracle::new(order)?.verify_reduction(k))
}

/// Compares `Li_a Li_b` with `Li` of the shuffle product, coefficientwise.
pub fn verify_shuffle(a: &Index, b: &Index, order: usize) -> Result<Report> {
    Ok(Oracle::new(order)?.verify_shuffle(a, b))
}

/// Compares `H_N(a) H_N(b)` with `H_N` of the stuffle product, exactly.
pub fn verify_stuffle(a: &Index, b: &Index, order: usize) -> Result<Report> {
    Ok(Oracle::new(order)?.verify_stuffle(a, b))
}

/// Floating-point estimate of a real multiple zeta value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaApprox {
    /// Partial sum with every `n_i <= N`.
    pub value: f64,
    /// Heuristic size of the omitted tail, `r / N^{m_k}`. Not a bound.
    pub error_hint: f64,
}

/// Partial sum of the defining nested series for an admissible index.
pub fn zeta_real_approx(k: &Index, order: usize) -> Result<ZetaApprox> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let m = match k.m_index() {
        MIndex::Infinite => {
            return Ok(ZetaApprox {
                value: 1.0,
                error_hint: 0.0,
            })
        }
        MIndex::Finite(m) if m > 0 => m,
        MIndex::Finite(_) => return Err(Error::NotAdmissible(k.clone())),
    };
    let term = |n: usize, e: i64| -> f64 {
        let n = n as f64;
        if e >= 0 {
            n.powi(-(e as i32))
        } else {
            n.powi((-e) as i32)
        }
    };
    let entries = k.entries();
    let mut cur: Vec<f64> = (0..=order)
        .map(|n| if n == 0 { 0.0 } else { term(n, entries[0]) })
        .collect();
    for &e in &entries[1..] {
        let mut next = vec![0.0; order + 1];
        let mut prefix = 0.0;
        for n in 1..=order {
            next[n] = prefix * term(n, e);
            prefix += cur[n];
        }
        cur = next;
    }
    let value = cur.iter().sum();
    let error_hint = k.depth() as f64 / (order as f64).powi(m as i32);
    Ok(ZetaApprox { value, error_hint })
}
