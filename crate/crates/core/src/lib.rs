//! Exact algebra of integer-index multiple zeta values.
//!
//! Indices are tuples of arbitrary integers. The crate classifies them by
//! their regularizability index, maps them onto positive indices with
//! Bernoulli-number coefficients, multiplies them with the extended shuffle
//! and stuffle products, and derives double shuffle relations. Every layer
//! can be checked against exact truncated series in [`series`].
//!
//! ```
//! use intzeta::{pi_plus_index, Index};
//!
//! let k: Index = "(0,3)".parse().unwrap();
//! assert_eq!(pi_plus_index(&k).pretty(), "1·(2) − 1·(3)");
//! ```

pub mod arith;
pub mod error;
pub mod index;
pub mod reduce;
pub mod relations;
pub mod series;
pub mod shuffle;
pub mod stuffle;
pub mod word;

pub use arith::{bernoulli, binomial, faulhaber_coefficients, BernoulliSign, Rational, SumBound};
pub use error::{Error, Result};
pub use index::{product_m, Classification, Index, IndexSum, MIndex};
pub use reduce::{pi_plus, pi_plus_index, reduce_step};
pub use relations::{dsr_relation, verify_relation_numeric, zeta_expand, NumericReport, Relation};
pub use series::{
    harmonic_sum, mpl_coefficients, verify_reduction, verify_shuffle, verify_stuffle,
    zeta_real_approx, Oracle, Report, SeriesPoly, ZetaApprox,
};
pub use shuffle::{shuffle, try_shuffle};
pub use stuffle::stuffle;
pub use word::{index_from_word, word_from_index, Letter, Word, WordSum};

/// Drops the per-thread product and reduction memos.
pub fn clear_caches() {
    shuffle::clear_shuffle_memo();
    stuffle::clear_stuffle_memo();
    reduce::clear_reduce_memo();
}
