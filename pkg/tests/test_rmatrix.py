from qplane.coefficients import ONE, ZERO, P
from qplane.freealg import NCPoly
from qplane.presets import glpq_rules, glq_rules
from qplane.rmatrix import (build_r, build_rq, distinct_up_to_scalar, flip, identity, is_zero_matrix,
                            kron, matmul, relation_polys, rtt_residuals, reduce_entries, same_span,
                            span_rank, substitute_matrix, swap_legs_consistent, ybe_check,
                            ybe_residuals)

p, q, qp = P("p"), P("q"), P("q'")
N = NCPoly.parse


def test_r_entries():
    r = build_r(p, q)
    assert r[2][1] == q - p.inv()
    assert r[0][1] == ZERO
    assert [r[i][i] for i in range(4)] == [q, ONE, q / p, q]


def test_r_limit():
    r = substitute_matrix(build_r(p, q), {"p": q})
    assert r[2][1] == q - q.inv() and r[2][2] == ONE
    assert r == build_rq(q)


def test_flip_and_kron():
    f = flip()
    assert matmul(f, f) == identity(4)
    assert kron(identity(2), identity(2)) == identity(4)


def test_ybe():
    assert ybe_check(q, q).quantum_holds or ybe_check(q, q).braid_holds
    rep = ybe_check(p, q)
    assert rep.quantum_holds and rep.braid_holds
    r = build_r(p, q)
    r[2][1] = q + p.inv()
    bad = ybe_residuals(r)
    assert not bad.quantum_holds and not bad.braid_holds


def test_rtt_entry_by_hand():
    # row (1,1), column (1,2): q AB - BA - (q' - 1/p) AB with R_{p,q'}
    entries = rtt_residuals(p, qp)
    assert entries[1] == N("p^-1 A B - B A")


def test_rtt_reduces_to_zero():
    assert all(e.is_zero() for e in reduce_entries(rtt_residuals(p, qp), glpq_rules(p, qp)))
    assert all(e.is_zero() for e in reduce_entries(rtt_residuals(q, q), glq_rules(q)))


def test_rtt_spans_relations():
    nz = distinct_up_to_scalar(rtt_residuals(p, qp))
    rel = relation_polys(p, qp)
    assert span_rank(rel) == 6
    assert same_span(nz, rel)
    assert not same_span(nz, rel[:5])


def test_legs_swap():
    assert swap_legs_consistent(build_r(p, qp))


def test_zero_matrix():
    assert is_zero_matrix([[ZERO, ZERO]])
    assert not is_zero_matrix(identity(2))
