use intzeta::arith::int;
use intzeta::{
    binomial, dsr_relation, pi_plus, shuffle, stuffle, verify_relation_numeric, Index, IndexSum,
    Oracle, Rational,
};

fn idx(v: &[i64]) -> Index {
    Index::new(v.to_vec())
}

fn binom_ext(n: i64, k: i64) -> Rational {
    if k == -1 {
        return int((n == -1) as i64);
    }
    if n < 0 {
        return int(0);
    }
    Rational::from_integer(binomial(n as u64, k))
}

/// `(a) ⧢ (b, c)` for `a, c >= 1 > b`, split by leading letters.
fn shuffle_closed_form(a: i64, b: i64, c: i64) -> IndexSum {
    let sign = |e: i64| int(if e % 2 == 0 { 1 } else { -1 });
    let mut out = IndexSum::zero();
    for i in 0..a {
        let outer = binom_ext(c - 1 + i, i);
        for j in 0..=(a - i - 1).min(-b) {
            out.add_term(
                &outer * sign(j) * binom_ext(-b, j),
                idx(&[a - i - j, b + j, c + i]),
            );
        }
        for j in 0..=(-b - a + i) {
            let coef = &outer * sign(a - i) * binom_ext(-b - 1 - j, a - i - 1);
            out.add_term(coef, idx(&[-j, b + a - i + j, c + i]));
        }
    }
    for i in 0..c {
        out.add_term(binom_ext(a - 1 + i, i), idx(&[b, c - i, a + i]));
    }
    out
}

#[test]
fn depth_one_times_depth_two_closed_forms() {
    let mut oracle = Oracle::new(40).unwrap();
    for a in 1..=4 {
        for b in -4..=-1 {
            for c in 2..=5 {
                let closed = shuffle_closed_form(a, b, c);
                let product = oracle
                    .mpl(&idx(&[a]))
                    .mul_truncated(&oracle.mpl(&idx(&[b, c])));
                assert_eq!(
                    product.first_mismatch(&oracle.mpl_combination(&closed)),
                    None
                );

                let (x, y) = (idx(&[a]).into(), idx(&[b, c]).into());
                assert_eq!(pi_plus(&shuffle(&x, &y)), pi_plus(&closed), "({a},{b},{c})");
                if b == -1 {
                    assert_eq!(shuffle(&x, &y), closed, "({a},{b},{c})");
                }
                let st: IndexSum = [
                    idx(&[b, c, a]),
                    idx(&[b, a, c]),
                    idx(&[a, b, c]),
                    idx(&[a + b, c]),
                    idx(&[b, a + c]),
                ]
                .into_iter()
                .map(|k| (int(1), k))
                .collect();
                assert_eq!(stuffle(&x, &y), st);
            }
        }
    }
}

fn admissible_indices(max_depth: usize, lo: i64, hi: i64) -> Vec<Index> {
    let mut layer = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_depth {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<i64>| {
                (lo..=hi).map(move |e| {
                    let mut v = p.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
        out.extend(
            layer
                .iter()
                .cloned()
                .map(Index::new)
                .filter(Index::is_admissible),
        );
    }
    out
}

#[test]
fn relations_up_to_weight_seven_hold_numerically() {
    let ks = admissible_indices(3, -1, 5);
    let mut checked = 0;
    for (i, a) in ks.iter().enumerate() {
        for b in &ks[i..] {
            if a.weight() + b.weight() > 7 {
                continue;
            }
            let rel = dsr_relation(a, b).unwrap();
            for l in rel.difference.support() {
                assert!(l.is_positive() && l.is_admissible(), "{a} x {b}: {l}");
            }
            let report = verify_relation_numeric(&rel, 10_000, 1e-2).unwrap();
            assert!(report.pass, "{a} x {b}: {report:?}");
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn relation_jsonl_is_stable() {
    let a = dsr_relation(&idx(&[2]), &idx(&[0, 3])).unwrap().to_json();
    intzeta::clear_caches();
    let b = dsr_relation(&idx(&[2]), &idx(&[0, 3])).unwrap().to_json();
    assert_eq!(a, b);
    assert!(!a.contains('\n'));
    let back = intzeta::Relation::from_json(&a).unwrap();
    assert_eq!(back.to_json(), a);
}
