import pytest

from qplane.coefficients import ONE, P
from qplane.freealg import NCPoly, normal_order
from qplane.presets import (COACTIONS, INDEX, PRESET_NAMES, TT, QijTable, T, apply_coaction, case1_k,
                            cross_rules, diffcalc_eq4_rules, diffcalc_rules, exterior_d,
                            extract_constraints, glpq_rules, glq_rules, plane_rules, preset, qij_case1,
                            qij_case2, qij_case2_pre, qij_commuting, qij_general, qij_general_q21_alt,
                            qij_manin, qij_one_param, qij_symbolic)

p, q, qp, qb, k = (P(n) for n in ("p", "q", "q'", "qbar", "k"))
N = NCPoly.parse


def rhs(rules, head):
    return rules.rule(*head.split()).rhs


def test_glq_rules():
    rules = glq_rules(q)
    assert rhs(rules, "B A") == N("q^-1 A B")
    assert rhs(rules, "C B") == N("B C")
    assert rhs(rules, "D A") == N("A D") - N("B C").scale(q - q.inv())


def test_glpq_rules():
    rules = glpq_rules(p, qp)
    assert rhs(rules, "C B") == N("B C").scale(p / qp)
    assert rhs(rules, "D B") == N("q'^-1 B D")
    assert len(rules) == 6


def test_k_family_entries():
    t = qij_general(q, qb, p, qp, k)
    assert t[1, 2] == qb / p
    assert t[2, 4] == q * qb ** 2 / (qp * p) * (qb - (p - qp.inv()) * k)
    assert t[2, 1] == q * k / qp == q / qb * t[1, 4] == qij_general_q21_alt(q, qb, p, qp, k)
    assert all(r.is_zero() for _, r in t.constraint_residuals())


def test_case1_entries():
    t = qij_case1(q, p, qp)
    assert t[2, 2] == q ** 2 / p ** 2
    assert t[1, 4] == q * (q * p - 1) / (p * (qp * p - 1))
    assert case1_k(q, p, qp) == qp * (q * p - 1) / (p * (qp * p - 1))
    one = qij_case1(q, p, qp).substitute({"q'": q}, validate=False)
    assert one[1, 3] == ONE
    assert one[1, 2] == one[2, 3] == q / p
    assert one[2, 2] == q ** 2 / p ** 2
    assert one.same_entries(qij_one_param(q, p))


def test_case2_entries():
    t = qij_case2(q, qb, qp)
    assert t[2, 1] == q * qb / qp ** 2
    assert t[2, 4] == q * qb ** 3 / qp ** 4
    c = qij_case2(1, qp, qp)
    assert all(c[1, j] == ONE and c[2, j] == qp.inv() for j in range(1, 5))
    assert c.same_entries(qij_commuting(qp))
    assert qij_case2(qp, qp, qp).same_entries(qij_manin(qp))
    assert qij_case2_pre(q, qb, p, qp).same_entries(qij_general(q, qb, p, qp, qb / p))


def test_invalid_table_rejected():
    with pytest.raises(ValueError):
        QijTable({ij: ONE for ij in INDEX}, "bad", q, qb, p, qp)


def test_cross_rules():
    assert rhs(cross_rules(qij_one_param(q, p)), "x B") == N("B x").scale(q / p)
    assert rhs(cross_rules(qij_manin(q)), "y D") == N("D y")
    assert rhs(cross_rules(qij_symbolic(q, qb, p, qp)), "dy C") == N("q23 C dy")
    assert cross_rules(qij_manin(q), differentials=False).rule("dx", "A") is None


def test_calculus_rules():
    two = diffcalc_rules(p, q)
    assert rhs(two, "x dy") == N("q dy x") + N("dx y").scale(p * q - 1)
    assert rhs(two, "dy dx") == N("-p dx dy")
    assert rhs(two, "dx dx").is_zero()
    assert rhs(diffcalc_rules(q, q, one_param=True), "x dx") == N("q^2 dx x")
    assert two.substitute({"p": q}) == diffcalc_eq4_rules(q)
    assert rhs(plane_rules(q), "y x") == N("q^-1 x y")


def test_coaction_examples():
    table = qij_general(q, qb, p, qp, k)
    rules = glpq_rules(p, qp) + cross_rules(table, False) + plane_rules(q)
    for c in (T, TT):
        x1, y1 = c.images["x"], c.images["y"]
        assert normal_order(x1 * y1 - (y1 * x1).scale(qb), rules).is_zero()
    manin = glq_rules(q) + cross_rules(qij_manin(q), False) + plane_rules(q)
    x1, y1 = T.images["x"], T.images["y"]
    assert normal_order(x1 * y1 - (y1 * x1).scale(q), manin).is_zero()
    assert set(COACTIONS) == {"T", "Tt"}


def test_apply_coaction_rejects_group_letters():
    with pytest.raises(ValueError):
        apply_coaction(T, N("A x"), plane_rules(q))


def test_exterior_derivative():
    rules = plane_rules(q) + diffcalc_rules(p, q)
    assert exterior_d(N("x y")) == N("dx y + x dy")
    assert exterior_d(exterior_d(N("x y"))).is_zero()
    assert exterior_d(N("dx x")) == N("-dx dx")
    # dx y + x dy - q dy x - q y dx, then x dy and y dx are pushed into order
    assert normal_order(N("dx y + x dy - q dy x - q y dx"), rules).is_zero()
    assert exterior_d(N("x y - q y x"), rules).is_zero()
    with pytest.raises(ValueError):
        exterior_d(N("A x"))


def test_extract_constraints_under_t():
    sym = qij_symbolic(q, qb, p, qp)
    cons = {c.coordinates: c for c in extract_constraints(T, sym, q, qb)}
    assert cons[("x", "x")].ratio() == qb * P("q11") / P("q13")
    four = N("q q14 A D - qbar q21 D A - q qbar q12 C B + q23 B C")
    from qplane.freealg import proportionality
    assert proportionality(cons[("x", "y")].relation, four) is not None


def test_bound_constraints_hold():
    table = qij_general(q, qb, p, qp, k)
    bind = {f"q{i}{j}": table[i, j] for i, j in INDEX}
    sym = qij_symbolic(q, qb, p, qp).substitute(bind, validate=True)
    assert all(r.is_zero() for _, r in sym.constraint_residuals())


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_presets_resolve(name):
    assert preset(name) is not None


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("qij:nope")
