"""Smoke test for the `intzeta` Python extension.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

import json
import math
from fractions import Fraction

import intzeta


def main() -> None:
    k = intzeta.Index.parse("(0,3)")
    assert k.entries == [0, 3] and k.weight == 3 and k.depth == 2
    assert k.m_index() == 1 and k.classify() == "admissible"
    assert intzeta.Index().m_index() == math.inf
    assert intzeta.classify([2, 1]) == "regularizable_only"
    assert intzeta.Index.from_word(k.word()) == k

    reduced = intzeta.pi_plus("(0,3)")
    assert reduced.terms() == [(Fraction(1), intzeta.Index([2])), (Fraction(-1), intzeta.Index([3]))]
    assert json.loads(reduced.to_json()) == {
        "terms": [{"coeff": "1", "index": [2]}, {"coeff": "-1", "index": [3]}]
    }
    assert intzeta.pi_plus([-1, 4]).coeff([2]) == Fraction(1, 2)
    assert intzeta.IndexSum.from_json(reduced.to_json()) == reduced

    euler = intzeta.shuffle([2], [3])
    assert str(euler) == "6·(1,4) + 3·(2,3) + 1·(3,2)"
    stuffled = intzeta.stuffle([2], [3])
    assert (euler - stuffled).pretty() == "−1·(5) + 6·(1,4) + 2·(2,3)"

    rel = intzeta.dsr_relation([2], [-1, 4])
    assert all(l.is_positive() and l.is_admissible() for _, l in rel.difference.terms())
    assert intzeta.verify_relation_numeric(rel, 10_000, 1e-2)["pass"]
    assert intzeta.Relation.from_json(rel.to_json()) == rel

    assert intzeta.verify_reduction([0, 0, 4])["pass"]
    assert intzeta.verify_shuffle([-1], [0, 2], 30) == {"pass": True, "first_mismatch": None, "order": 30}
    assert intzeta.verify_stuffle([1, -2], [3])["pass"]

    value, hint = intzeta.zeta_real_approx([2], 100_000)
    assert abs(value - math.pi**2 / 6) < 1e-4 and hint > 0
    assert intzeta.bernoulli(12) == Fraction(-691, 2730)
    assert intzeta.bernoulli(1, "plus") == Fraction(1, 2)

    for bad in (lambda: intzeta.zeta_expand([1]), lambda: intzeta.Index.parse("(1,")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("intzeta smoke test: ok")


if __name__ == "__main__":
    main()
