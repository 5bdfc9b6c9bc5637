//! The stuffle (quasi-shuffle) product on integer indices, peeling last
//! entries:
//!
//! `(k, a) * (l, b) = (k * (l, b), a) + ((k, a) * l, b) + (k * l, a + b)`

use std::cell::RefCell;
use std::collections::HashMap;

use crate::index::{Index, IndexSum};

#[derive(Debug, Default)]
pub struct Stuffler {
    memo: HashMap<(Index, Index), IndexSum>,
}

fn append_entry(s: &IndexSum, last: i64) -> IndexSum {
    s.iter().map(|(k, c)| (c.clone(), k.push(last))).collect()
}

impl Stuffler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn stuffle_indices(&mut self, a: &Index, b: &Index) -> IndexSum {
        if a.is_empty() || b.is_empty() {
            return IndexSum::single(if a.is_empty() { b.clone() } else { a.clone() });
        }
        // the product is symmetric, so one memo entry serves both orders
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (init_a, last_a) = a.split_last().expect("nonempty");
        let (init_b, last_b) = b.split_last().expect("nonempty");

        let one = num_traits::One::one();
        let mut out = IndexSum::zero();
        let x = self.stuffle_indices(&init_a, b);
        out.add_scaled(&one, &append_entry(&x, last_a));
        let y = self.stuffle_indices(a, &init_b);
        out.add_scaled(&one, &append_entry(&y, last_b));
        let z = self.stuffle_indices(&init_a, &init_b);
        out.add_scaled(&one, &append_entry(&z, last_a + last_b));
        self.memo.insert(key, out.clone());
        out
    }

    pub fn stuffle(&mut self, a: &IndexSum, b: &IndexSum) -> IndexSum {
        let mut out = IndexSum::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                out.add_scaled(&(ca * cb), &self.stuffle_indices(ka, kb));
            }
        }
        out
    }
}

thread_local! {
    static STUFFLER: RefCell<Stuffler> = RefCell::new(Stuffler::new());
}

/// Bilinear stuffle product of index sums, memoized per thread.
pub fn stuffle(a: &IndexSum, b: &IndexSum) -> IndexSum {
    STUFFLER.with(|s| s.borrow_mut().stuffle(a, b))
}

pub fn clear_stuffle_memo() {
    STUFFLER.with(|s| s.borrow_mut().clear());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::index::product_m;
    use num_traits::One;
    use proptest::prelude::*;

    fn idx(v: &[i64]) -> IndexSum {
        IndexSum::single(Index::new(v.to_vec()))
    }

    fn sum(terms: &[(i64, &[i64])]) -> IndexSum {
        terms
            .iter()
            .map(|(c, k)| (int(*c), Index::new(k.to_vec())))
            .collect()
    }

    /// Textbook recursion with no memo and no argument reordering.
    fn naive(a: &Index, b: &Index) -> IndexSum {
        let (Some((ia, x)), Some((ib, y))) = (a.split_last(), b.split_last()) else {
            return IndexSum::single(if a.is_empty() { b.clone() } else { a.clone() });
        };
        let mut out = append_entry(&naive(&ia, b), x);
        out = &out + &append_entry(&naive(a, &ib), y);
        &out + &append_entry(&naive(&ia, &ib), x + y)
    }

    #[test]
    fn examples() {
        assert_eq!(
            stuffle(&idx(&[2]), &idx(&[3])),
            sum(&[(1, &[2, 3]), (1, &[3, 2]), (1, &[5])])
        );
        assert_eq!(stuffle(&idx(&[]), &idx(&[-1, 4])), idx(&[-1, 4]));
        assert_eq!(
            stuffle(&idx(&[2]), &idx(&[-1, 4])),
            sum(&[
                (1, &[-1, 4, 2]),
                (1, &[-1, 2, 4]),
                (1, &[2, -1, 4]),
                (1, &[1, 4]),
                (1, &[-1, 6]),
            ])
        );
    }

    #[test]
    fn integer_coefficients_for_single_indices() {
        let p = stuffle(&idx(&[1, 1, 2]), &idx(&[1, 1]));
        assert!(p.iter().all(|(_, c)| c.is_integer()));
        assert!(p.iter().any(|(_, c)| *c > One::one()));
    }

    fn arb_index(depth: usize, lo: i64, hi: i64) -> impl Strategy<Value = Index> {
        prop::collection::vec(lo..=hi, 0..=depth).prop_map(Index::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_naive_recursion(a in arb_index(3, -3, 3), b in arb_index(3, -3, 3)) {
            prop_assert_eq!(stuffle(&a.clone().into(), &b.clone().into()), naive(&a, &b));
            prop_assert_eq!(stuffle(&b.clone().into(), &a.clone().into()), naive(&a, &b));
        }

        #[test]
        fn m_formula(a in arb_index(4, -4, 4), b in arb_index(4, -4, 4)) {
            let p = stuffle(&a.clone().into(), &b.clone().into());
            prop_assert_eq!(p.m_index(), product_m(a.m_index(), b.m_index()));
        }

        #[test]
        fn associative(a in arb_index(3, -3, 3), b in arb_index(3, -3, 3), c in arb_index(2, -3, 3)) {
            let (a, b, c): (IndexSum, IndexSum, IndexSum) = (a.into(), b.into(), c.into());
            prop_assert_eq!(stuffle(&stuffle(&a, &b), &c), stuffle(&a, &stuffle(&b, &c)));
        }
    }
}
