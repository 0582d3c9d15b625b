import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qplane.coefficients import P
from qplane.errors import MissingRule
from qplane.freealg import (GENERATORS, GROUP, NCPoly, RewriteRule, RewriteSystem, check_critical_pairs,
                            concat, is_identity, is_normal, nc_mul, normal_order, proportionality,
                            strategy_divergences, word_key)
from qplane.presets import (cross_rules, diffcalc_rules, glpq_rules, plane_rules, qij_general,
                            qij_symbolic)

p, q, qp, qb, k = (P(n) for n in ("p", "q", "q'", "qbar", "k"))
N = NCPoly.parse
L = NCPoly.letter
GLPQ = glpq_rules(p, qp)
CALC = plane_rules(q) + diffcalc_rules(p, q)


def test_concat_examples():
    assert concat(("A",), ("D",)) == ("A", "D")
    assert concat((), ("x", "y")) == ("x", "y")
    assert concat(("dx",), ("dx",)) == ("dx", "dx")


def test_generator_order():
    assert GENERATORS == ("A", "B", "C", "D", "dx", "dy", "x", "y")
    assert is_normal(("A", "D", "dx", "x", "y"))
    assert not is_normal(("D", "A"))
    assert not is_normal(("dx", "dx"))
    assert word_key(("B",)) < word_key(("A", "A"))


def test_normal_order_examples():
    assert normal_order(N("B A"), GLPQ) == N("p^-1 A B")
    assert normal_order(N("D A"), GLPQ) == L("A") * L("D") - (L("B") * L("C")).scale(p - qp.inv())
    assert normal_order(N("y x"), plane_rules(q)) == N("q^-1 x y")
    assert normal_order(N("dx dx"), CALC).is_zero()
    table = qij_symbolic(q, qb, p, qp)
    assert normal_order(N("x A"), cross_rules(table)) == N("q11 A x")


def test_nc_mul_examples():
    one = NCPoly.scalar(1)
    poly = N("A B + p C")
    assert nc_mul(one, poly, GLPQ) == poly
    assert nc_mul(L("dx"), L("dy"), CALC) == N("dx dy")


def test_transformed_plane_product():
    # (A x + B y)(C x + D y): push x, y right with q_ij, then y x -> q^-1 x y
    table = qij_symbolic(q, qb, p, qp)
    rules = GLPQ + cross_rules(table, False) + plane_rules(q)
    got = nc_mul(N("A x + B y"), N("C x + D y"), rules)
    want = N("q13 A C x x + q14 A D x y + q^-1 q23 B C x y + q24 B D y y")
    assert got == want


def test_polynomial_text_round_trip():
    poly = N("p^-1 A B - B A + (p - q'^-1) B C")
    assert str(poly) == "p^{-1} A B - B A + (p - q'^{-1}) B C"
    assert N(str(poly)) == poly
    assert str(NCPoly()) == "0"


def test_rule_validation():
    with pytest.raises(ValueError):
        RewriteRule(("A", "B"), N("B A"))          # head already normal
    with pytest.raises(ValueError):
        RewriteRule(("B", "A"), N("B A"))          # rhs not smaller
    with pytest.raises(ValueError):
        RewriteRule(("y", "dx"), N("x y"))         # parity changes
    with pytest.raises(ValueError):
        RewriteSystem("clash", [RewriteRule(("B", "A"), N("A B")), RewriteRule(("B", "A"), N("2 A B"))])


def test_missing_rule_raises_unless_partial():
    rules = RewriteSystem.from_pairs("half", {"B A": "A B"})
    with pytest.raises(MissingRule) as info:
        normal_order(N("D C"), rules)
    assert info.value.pair == ("D", "C")
    partial = RewriteSystem.from_pairs("half", {"B A": "A B"}, partial=True)
    assert normal_order(N("D C"), partial) == N("D C")


def test_glq_limit_by_substitution():
    from qplane.presets import glq_rules
    assert GLPQ.substitute({"p": q, "q'": q}) == glq_rules(q)


def test_critical_pairs_glpq_empty():
    assert check_critical_pairs(GLPQ, GROUP) == []


def test_critical_pairs_sabotage_detected():
    rules = dict(GLPQ.rules)
    rules[("B", "A")] = RewriteRule(("B", "A"), N("A B"))
    found = check_critical_pairs(RewriteSystem("broken", rules.values()))
    assert found and all(d.difference is not None for d in found)


def test_k_family_overlap_obstruction():
    # x (D A) two ways: x D A -> q11 q14 D A x -> q11 q14 (AD - cBC) x, and
    # x (AD - cBC) -> q11 q14 AD x - c q12 q13 BC x, with c = p - 1/q'
    table = qij_general(q, qb, p, qp, k)
    rules = GLPQ + cross_rules(table, False) + plane_rules(q)
    found = {d.word: d for d in check_critical_pairs(rules)}
    assert set(found) == {("x", "D", "A"), ("y", "D", "A")}
    c = p - qp.inv()
    e = table.entries
    assert found[("x", "D", "A")].difference == N("B C x").scale(c * (e[1, 2] * e[1, 3] - e[1, 1] * e[1, 4]))
    assert found[("y", "D", "A")].difference == N("B C y").scale(c * (e[2, 2] * e[2, 3] - e[2, 1] * e[2, 4]))
    healed = GLPQ + cross_rules(qij_general(q, qb, p, qp, qb / p), False) + plane_rules(q)
    assert check_critical_pairs(healed) == []


def test_strategy_independence_small():
    assert strategy_divergences(GLPQ, n=200, seed=1) == []
    assert strategy_divergences(CALC, n=200, seed=2) == []


def test_proportionality():
    a = N("A B - p B A")
    assert proportionality(a.scale(q), a) == q
    assert proportionality(a, N("A B")) is None


words = st.lists(st.sampled_from(GROUP), max_size=5).map(tuple)
calc_words = st.lists(st.sampled_from(("dx", "dy", "x", "y")), max_size=5).map(tuple)


@given(words)
def test_normal_forms_are_normal_and_stable(w):
    out = normal_order(NCPoly.from_word(w), GLPQ)
    assert all(is_normal(u) for u, _ in out)
    assert normal_order(out, GLPQ) == out


@given(words, st.integers(0, 10_000))
def test_random_strategy_agrees(w, seed):
    poly = NCPoly.from_word(w)
    assert normal_order(poly, GLPQ, "random", random.Random(seed)) == normal_order(poly, GLPQ)


@given(calc_words, calc_words)
def test_reduction_respects_products(u, v):
    a, b = NCPoly.from_word(u), NCPoly.from_word(v)
    lhs = nc_mul(a, b, CALC)
    rhs = nc_mul(normal_order(a, CALC), normal_order(b, CALC), CALC)
    assert is_identity(lhs, rhs, CALC)
