from hypothesis import given
from hypothesis import strategies as st

from qplane.coefficients import ONE, P
from qplane.freealg import GROUP, NCPoly, normal_order
from qplane.hopf import (TensorPoly, adjugate, adjugate_identities, counit, counit_left, counit_right,
                         delta, delta_det_check, delta_residual, derive_hopf_constraints,
                         det_relations_check, group_matrix, inverse_det_scalars, left_adjugate, matmul,
                         naive_adjugate_residuals, quantum_det, quantum_det_alt)
from qplane.presets import glpq_rules
from qplane.rmatrix import relation_polys

p, qp, eps = P("p"), P("q'"), P("eps")
N = NCPoly.parse
L = NCPoly.letter
RULES = glpq_rules(p, qp)


def test_delta_examples():
    assert delta(L("A")) == TensorPoly.pure(L("A"), L("A")) + TensorPoly.pure(L("B"), L("C"))
    assert delta(NCPoly.scalar(1)) == TensorPoly.unit()
    assert len(delta(N("A B"))) == 4


def test_delta_residuals_vanish():
    for rel in relation_polys(p, qp):
        assert delta_residual(rel, RULES).is_zero()


def test_delta_residual_free_eps():
    assert not delta_residual(N("A D") - N("D A").scale(eps), RULES).is_zero()


def test_counit():
    assert counit(N("A D - p B C")) == ONE
    for g in GROUP:
        assert counit_left(delta(L(g))) == L(g) == counit_right(delta(L(g)))


def test_hopf_constraints():
    r = derive_hopf_constraints()
    assert r.q1_q2.substitute({"q2": P("q1")}).is_zero()
    assert not r.q1_q2.is_zero()
    assert r.exchange_q1.substitute({"q1": qp}) == N("A D - D A - q' C B + q'^-1 B C")
    assert r.exchange_q3.substitute({"q3": p}) == N("A D - D A - p B C + p^-1 C B")
    assert r.bc_relation == N("p B C - q' C B")
    assert r.excluded_factor.substitute({"p": -qp.inv()}).is_zero()


def test_determinant_spellings():
    assert quantum_det(p, qp) == quantum_det_alt(p, qp)


def test_right_adjugate_entries():
    prod = matmul(group_matrix(), adjugate(p), RULES)
    assert prod[0][0] == quantum_det(p, qp)
    # A(-B/p) + B A = -AB/p + AB/p
    assert prod[0][1].is_zero()


def test_left_adjugate_against_displayed_scalars():
    # det^-1 B = (q'/p) B det^-1, det^-1 C = (p/q') C det^-1 moves det^-1 past adj
    want = ((L("D"), L("B").scale(-qp.inv())), (L("C").scale(-qp), L("A")))
    assert left_adjugate(p, qp) == want
    prod = matmul(want, group_matrix(), RULES)
    det = quantum_det(p, qp)
    assert prod[0][0] == det and prod[1][1] == det
    assert prod[0][1].is_zero() and prod[1][0].is_zero()


def test_adjugate_identities():
    assert all(r.ok for r in adjugate_identities(p, qp))
    assert not all(r.value.is_zero() for r in naive_adjugate_residuals(p, qp))
    assert all(r.value.is_zero() for r in naive_adjugate_residuals(qp, qp))


def test_determinant_relations():
    assert all(r.value.is_zero() for r in det_relations_check(p, qp))
    assert inverse_det_scalars(p, qp) == {"A": ONE, "B": qp / p, "C": p / qp, "D": ONE}


def test_delta_det():
    assert delta_det_check(p, qp).is_zero()
    q = P("q")
    assert not delta_det_check(p, qp, normal_order(N("A D - q B C"), RULES)).is_zero()
    assert delta_det_check(q, q).is_zero()


words = st.lists(st.sampled_from(GROUP), max_size=3).map(tuple)


@given(words, words)
def test_delta_is_multiplicative(u, v):
    a, b = NCPoly.from_word(u), NCPoly.from_word(v)
    assert delta(a * b).reduce(RULES) == (delta(a) * delta(b)).reduce(RULES)


@given(words, words, words)
def test_tensor_product_associative(u, v, w):
    a, b, c = (TensorPoly.pure(NCPoly.from_word(x), NCPoly.from_word(x[::-1])) for x in (u, v, w))
    assert ((a * b) * c).reduce(RULES) == (a * (b * c)).reduce(RULES)


@given(words)
def test_counit_property_on_words(u):
    a = NCPoly.from_word(u)
    assert normal_order(counit_left(delta(a)), RULES) == normal_order(a, RULES)
    assert normal_order(counit_right(delta(a)), RULES) == normal_order(a, RULES)
