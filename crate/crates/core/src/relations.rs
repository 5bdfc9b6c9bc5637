//! Zeta symbols for admissible integer indices and double shuffle relations.
//!
//! `ζ(k)` for admissible `k` is the formal combination `π⁺(k)` of positive
//! admissible symbols. Both products of two such symbols, pushed through
//! `π⁺`, name the same value; their difference is a linear relation.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Index, IndexSum};
use crate::reduce::pi_plus;
use crate::series::zeta_real_approx;
use crate::shuffle::shuffle;
use crate::stuffle::stuffle;

/// Expansion of `ζ(k)` over positive admissible indices.
pub fn zeta_expand(k: &Index) -> Result<IndexSum> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(k.clone()));
    }
    Ok(pi_plus(&IndexSum::single(k.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub pair: (Index, Index),
    pub shuffle_expansion: IndexSum,
    pub stuffle_expansion: IndexSum,
    /// `shuffle_expansion - stuffle_expansion`; its symbols sum to zero.
    pub difference: IndexSum,
}

impl Relation {
    pub fn is_trivial(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relations always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Relation, serde_json::Error> {
        let raw: RawRelation = serde_json::from_str(text)?;
        Ok(Relation {
            pair: (raw.pair.0, raw.pair.1),
            shuffle_expansion: raw.shuffle,
            stuffle_expansion: raw.stuffle,
            difference: raw.difference,
        })
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Relation", 4)?;
        st.serialize_field("pair", &[&self.pair.0, &self.pair.1])?;
        st.serialize_field("shuffle", &self.shuffle_expansion)?;
        st.serialize_field("stuffle", &self.stuffle_expansion)?;
        st.serialize_field("difference", &self.difference)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawRelation {
    pair: (Index, Index),
    shuffle: IndexSum,
    stuffle: IndexSum,
    difference: IndexSum,
}

/// The double shuffle relation attached to two admissible indices.
pub fn dsr_relation(k: &Index, k2: &Index) -> Result<Relation> {
    for x in [k, k2] {
        if !x.is_admissible() {
            return Err(Error::NotAdmissible(x.clone()));
        }
    }
    let (a, b) = (IndexSum::single(k.clone()), IndexSum::single(k2.clone()));
    let shuffle_expansion = pi_plus(&shuffle(&a, &b));
    let stuffle_expansion = pi_plus(&stuffle(&a, &b));
    let difference = &shuffle_expansion - &stuffle_expansion;
    Ok(Relation {
        pair: (k.clone(), k2.clone()),
        shuffle_expansion,
        stuffle_expansion,
        difference,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericReport {
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
    pub order: usize,
}

/// Evaluates the difference with truncated real sums; passes iff `|value| < tol`.
pub fn verify_relation_numeric(rel: &Relation, order: usize, tol: f64) -> Result<NumericReport> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut value = 0.0;
    for (k, c) in rel.difference.iter() {
        let z = zeta_real_approx(k, order)?;
        value += num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN) * z.value;
    }
    Ok(NumericReport {
        pass: value.abs() < tol,
        value,
        tolerance: tol,
        order,
    })
}
