"""Relation sets, cross-commutation tables, coactions and the differential.

Everything downstream builds its algebras from the functions here.  The
cross-commutation table ``q_ij`` says how a coordinate (row 1: x, row 2: y)
moves past a group generator (column 1..4: A, B, C, D)::

    x G_j = q_1j G_j x        y G_j = q_2j G_j y

and the same table governs dx and dy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .coefficients import ONE, C, Coefficient, P
from .freealg import GROUP, NCPoly, RewriteRule, RewriteSystem, normal_order

L = NCPoly.letter
INDEX = ((1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4))


def _rules(name, pairs, partial=False):
    return RewriteSystem(name, [RewriteRule(tuple(h.split()), r) for h, r in pairs.items()], partial)


# group presentations ------------------------------------------------------


def glq_rules(q) -> RewriteSystem:
    """GL_q(2): AB = qBA, AC = qCA, BD = qDB, CD = qDC, BC = CB, AD - DA = (q - 1/q)BC."""
    q = C(q)
    A, B, Cc, D = (L(g) for g in GROUP)
    return _rules("glq", {
        "B A": (A * B).scale(q.inv()),
        "C A": (A * Cc).scale(q.inv()),
        "D B": (B * D).scale(q.inv()),
        "D C": (Cc * D).scale(q.inv()),
        "C B": B * Cc,
        "D A": A * D - (B * Cc).scale(q - q.inv()),
    })


def glpq_rules(p, qp) -> RewriteSystem:
    """GL_{p,q'}(2): AB = pBA, CD = pDC, AC = q'CA, BD = q'DB,
    pBC = q'CB, AD - DA = (p - 1/q')BC."""
    p, qp = C(p), C(qp)
    A, B, Cc, D = (L(g) for g in GROUP)
    return _rules("glpq", {
        "B A": (A * B).scale(p.inv()),
        "D C": (Cc * D).scale(p.inv()),
        "C A": (A * Cc).scale(qp.inv()),
        "D B": (B * D).scale(qp.inv()),
        "C B": (B * Cc).scale(p / qp),
        "D A": A * D - (B * Cc).scale(p - qp.inv()),
    })


def plane_rules(q) -> RewriteSystem:
    """Quantum plane xy = q yx."""
    return _rules("plane", {"y x": (L("x") * L("y")).scale(C(q).inv())})


def diffcalc_rules(p, q, one_param: bool = False) -> RewriteSystem:
    """Two-parameter calculus on the plane (one-parameter one when ``one_param``)::

        dx dy = -(1/p) dy dx    x dx = pq dx x     x dy = q dy x + (pq - 1) dx y
        y dx = p dx y           y dy = pq dy y     dx dx = dy dy = 0
    """
    q = C(q)
    p = q if one_param else C(p)
    x, y, dx, dy = L("x"), L("y"), L("dx"), L("dy")
    return _rules("diffcalc:1p" if one_param else "diffcalc:2p", {
        "dy dx": (dx * dy).scale(-p),
        "x dx": (dx * x).scale(p * q),
        "x dy": (dy * x).scale(q) + (dx * y).scale(p * q - 1),
        "y dx": (dx * y).scale(p),
        "y dy": (dy * y).scale(p * q),
        "dx dx": NCPoly(),
        "dy dy": NCPoly(),
    })


def diffcalc_eq4_rules(q) -> RewriteSystem:
    """The one-parameter calculus transcribed on its own (x dx = q^2 dx x, ...)."""
    q = C(q)
    x, y, dx, dy = L("x"), L("y"), L("dx"), L("dy")
    return _rules("diffcalc:1p", {
        "dy dx": (dx * dy).scale(-q),
        "x dx": (dx * x).scale(q * q),
        "x dy": (dy * x).scale(q) + (dx * y).scale(q * q - 1),
        "y dx": (dx * y).scale(q),
        "y dy": (dy * y).scale(q * q),
        "dx dx": NCPoly(),
        "dy dy": NCPoly(),
    })


# cross-commutation tables -------------------------------------------------


def _eq101(entries, q, qbar, p, qp) -> list[tuple[str, Coefficient]]:
    e = entries
    return [
        ("q' = qbar q11 / q13", qp - qbar * e[1, 1] / e[1, 3]),
        ("q' = qbar q22 / q24", qp - qbar * e[2, 2] / e[2, 4]),
        ("p = qbar q11 / q12", p - qbar * e[1, 1] / e[1, 2]),
        ("p = qbar q23 / q24", p - qbar * e[2, 3] / e[2, 4]),
        ("q q14 = qbar q21", q * e[1, 4] - qbar * e[2, 1]),
        ("p - 1/q' = qbar q13/q14 - p q22/(q q' q14)",
         (p - qp.inv()) - (qbar * e[1, 3] / e[1, 4] - p * e[2, 2] / (q * qp * e[1, 4]))),
    ]


@dataclass(frozen=True)
class QijTable:
    """The eight cross-commutation scalars plus the parameters they belong to.

    ``context`` records q (plane), qbar (transformed plane), p and q' (group).
    Unless ``validate`` is false the six compatibility identities are
    enforced at construction.
    """

    entries: Mapping[tuple[int, int], Coefficient]
    label: str
    q: Coefficient
    qbar: Coefficient
    p: Coefficient
    qp: Coefficient
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        entries = {ij: C(self.entries[ij]) for ij in INDEX}
        object.__setattr__(self, "entries", entries)
        for name in ("q", "qbar", "p", "qp"):
            object.__setattr__(self, name, C(getattr(self, name)))
        for ij, v in entries.items():
            if v.is_zero():
                raise ValueError(f"{self.label}: q{ij[0]}{ij[1]} is zero")
        if self.validate:
            bad = [name for name, r in self.constraint_residuals() if not r.is_zero()]
            if bad:
                raise ValueError(f"{self.label}: violates {'; '.join(bad)}")

    def __getitem__(self, ij: tuple[int, int]) -> Coefficient:
        return self.entries[ij]

    def constraint_residuals(self) -> list[tuple[str, Coefficient]]:
        return _eq101(self.entries, self.q, self.qbar, self.p, self.qp)

    # ratios appearing in the extracted group relations
    @property
    def q1(self):
        return self.qbar * self[1, 1] / self[1, 3]

    @property
    def q2(self):
        return self.qbar * self[2, 2] / self[2, 4]

    @property
    def q3(self):
        return self.qbar * self[1, 1] / self[1, 2]

    @property
    def q4(self):
        return self.qbar * self[2, 3] / self[2, 4]

    def substitute(self, bindings, label: str | None = None, validate: bool | None = None) -> QijTable:
        return QijTable(
            {ij: v.substitute(bindings) for ij, v in self.entries.items()},
            label or self.label,
            self.q.substitute(bindings), self.qbar.substitute(bindings),
            self.p.substitute(bindings), self.qp.substitute(bindings),
            self.validate if validate is None else validate,
        )

    def same_entries(self, other: QijTable) -> bool:
        return all(self[ij] == other[ij] for ij in INDEX)

    def mismatches(self, other: QijTable) -> list[str]:
        return [f"q{i}{j}: {self[i, j]} vs {other[i, j]}" for i, j in INDEX if self[i, j] != other[i, j]]

    def rows(self) -> list[str]:
        return [f"q{i}{j} = {self[i, j]}" for i, j in INDEX]


def _table(values, label, q, qbar, p, qp, validate=True) -> QijTable:
    return QijTable(dict(zip(INDEX, values)), label, q, qbar, p, qp, validate)


def qij_general(q, qbar, p, qp, k) -> QijTable:
    """The one-parameter (k) family of admissible tables."""
    q, qb, p, qp, k = map(C, (q, qbar, p, qp, k))
    s = qb - (p - qp.inv()) * k
    return _table([
        ONE, qb / p, qb / qp, qb * k / qp,
        q * k / qp, q * qb * s / p, q * qb * s / qp, q * qb * qb * s / (qp * p),
    ], "general-k", q, qb, p, qp)


def qij_general_q21_alt(q, qbar, p, qp, k) -> Coefficient:
    """The other spelling of q21 in the family, q qbar^-1 q14."""
    q, qb, qp, k = map(C, (q, qbar, qp, k))
    return q / qb * (qb * k / qp)


def case1_k(q, p, qp) -> Coefficient:
    """k = q'(qp - 1) / (p(q'p - 1))."""
    q, p, qp = map(C, (q, p, qp))
    return qp * (q * p - 1) / (p * (qp * p - 1))


def qij_case1(q, p, qp) -> QijTable:
    """qbar = q with k fixed by invariance of the differential relation."""
    q, p, qp = map(C, (q, p, qp))
    r = q * (q * p - 1) / (p * (qp * p - 1))
    return _table([
        ONE, q / p, q / qp, r,
        r, q ** 2 / p ** 2, q ** 2 / (qp * p), q ** 3 / (qp * p ** 2),
    ], "case1-k", q, q, p, qp)


def qij_one_param(q, p) -> QijTable:
    """Case I with q' = q: q11 = q13 = 1, q12 = q14 = q21 = q23 = q/p, q22 = q24 = q^2/p^2."""
    q, p = C(q), C(p)
    r = q / p
    return _table([ONE, r, ONE, r, r, r * r, r, r * r], "one-param", q, q, p, q)


def qij_case2_pre(q, qbar, p, qp) -> QijTable:
    """The family at k = q12, before setting p = q'."""
    q, qb, p, qp = map(C, (q, qbar, p, qp))
    return _table([
        ONE, qb / p, qb / qp, qb ** 2 / (qp * p),
        q * qb / (qp * p), q * qb ** 2 / (qp * p ** 2),
        q * qb ** 2 / (qp ** 2 * p), q * qb ** 3 / (qp ** 2 * p ** 2),
    ], "case2", q, qb, p, qp)


def qij_case2(q, qbar, qp) -> QijTable:
    """Case II (p = q', k = q12)."""
    q, qb, qp = map(C, (q, qbar, qp))
    return _table([
        ONE, qb / qp, qb / qp, qb ** 2 / qp ** 2,
        q * qb / qp ** 2, q * qb ** 2 / qp ** 3, q * qb ** 2 / qp ** 3, q * qb ** 3 / qp ** 4,
    ], "case2", q, qb, qp, qp)


def qij_commuting(qp) -> QijTable:
    """Commuting plane (q = 1, qbar = q') for GL_{q'}: q_1i = 1, q_2i = 1/q'."""
    qp = C(qp)
    r = qp.inv()
    return _table([ONE] * 4 + [r] * 4, "commuting", ONE, qp, qp, qp)


def qij_manin(q) -> QijTable:
    """Manin's plane for GL_q: every q_ij = 1."""
    q = C(q)
    return _table([ONE] * 8, "manin", q, q, q, q)


def qij_trivial(q, qbar, p, qp) -> QijTable:
    """All q_ij = 1 without checking compatibility (used for controls)."""
    return _table([ONE] * 8, "trivial", q, qbar, p, qp, validate=False)


def qij_symbolic(q, qbar, p, qp) -> QijTable:
    """Table whose entries are the free parameters q11 ... q24."""
    return _table([P(f"q{i}{j}") for i, j in INDEX], "symbolic", q, qbar, p, qp, validate=False)


def cross_rules(table: QijTable, differentials: bool = True) -> RewriteSystem:
    """x G -> q_1j G x, y G -> q_2j G y, and likewise for dx, dy."""
    movers = (("x", 1), ("y", 2)) + ((("dx", 1), ("dy", 2)) if differentials else ())
    rules = []
    for m, row in movers:
        for j, g in enumerate(GROUP, start=1):
            rules.append(RewriteRule((m, g), (L(g) * L(m)).scale(table[row, j])))
    return RewriteSystem(f"cross[{table.label}]", rules)


# coactions ----------------------------------------------------------------


@dataclass(frozen=True)
class Coaction:
    label: str
    images: Mapping[str, NCPoly]


def _coaction(label, m):
    (a, b), (c, d) = m
    images = {}
    for first, second in (("x", "y"), ("dx", "dy")):
        u, v = L(first), L(second)
        images[first] = L(a) * u + L(b) * v
        images[second] = L(c) * u + L(d) * v
    return Coaction(label, images)


T = _coaction("T", (("A", "B"), ("C", "D")))
TT = _coaction("Tt", (("A", "C"), ("B", "D")))
COACTIONS = {"T": T, "Tt": TT}


def apply_coaction(c: Coaction, poly: NCPoly, rules: RewriteSystem) -> NCPoly:
    bad = poly.letters() & set(GROUP)
    if bad:
        raise ValueError(f"coaction argument contains group letters {sorted(bad)}")
    return normal_order(poly.map_letters(c.images), rules)


# exterior differential ----------------------------------------------------

_D = {"x": "dx", "y": "dy"}


def exterior_d(poly: NCPoly, rules: RewriteSystem | None = None) -> NCPoly:
    """Graded derivation with d x = dx, d y = dy, d dx = d dy = 0."""
    out = {}
    for w, c in poly.terms.items():
        sign = 1
        for i, g in enumerate(w):
            if g in _D:
                v = w[:i] + (_D[g],) + w[i + 1:]
                out[v] = out.get(v, 0) + c * sign
            elif g in ("dx", "dy"):
                sign = -sign
            else:
                raise ValueError(f"d is only defined on x, y, dx, dy; got {g}")
    result = NCPoly(out)
    return normal_order(result, rules) if rules is not None else result


# constraint extraction ----------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """Vanishing relation among group words attached to one coordinate word."""

    coordinates: tuple[str, ...]
    relation: NCPoly

    def ratio(self) -> Coefficient | None:
        """For a two-word relation a u + b v (u < v) return r with u = r v."""
        if len(self.relation) != 2:
            return None
        (u, a), (v, b) = list(self.relation)
        return -b / a

    def __str__(self):
        return f"[{' '.join(self.coordinates)}] {self.relation} = 0"


def extract_constraints(transform: Coaction, table: QijTable, q, qbar) -> list[Constraint]:
    """Conditions for x'y' - qbar y'x' to vanish with free group generators."""
    rules = (plane_rules(q) + cross_rules(table, differentials=False))
    rules = RewriteSystem("extract", rules.rules.values(), partial=True)
    x1, y1 = transform.images["x"], transform.images["y"]
    expr = normal_order(x1 * y1 - (y1 * x1).scale(C(qbar)), rules)
    groups: dict[tuple[str, ...], dict] = {}
    for w, c in expr:
        cut = next((i for i, g in enumerate(w) if g not in GROUP), len(w))
        groups.setdefault(w[cut:], {})[w[:cut]] = c
    return [Constraint(coords, NCPoly(terms)) for coords, terms in groups.items()]


# named presets ------------------------------------------------------------


def preset(name: str, **params):
    """Look up a preset by its CLI name, filling parameters from ``params``."""
    g = {n: C(params.get(n, P(n))) for n in ("p", "q", "q'", "qbar", "k")}
    table = {
        "glq": lambda: glq_rules(g["q"]),
        "glpq": lambda: glpq_rules(g["p"], g["q'"]),
        "qij:general": lambda: qij_general(g["q"], g["qbar"], g["p"], g["q'"], g["k"]),
        "qij:case1": lambda: qij_case1(g["q"], g["p"], g["q'"]),
        "qij:one-param": lambda: qij_one_param(g["q"], g["p"]),
        "qij:case2": lambda: qij_case2(g["q"], g["qbar"], g["q'"]),
        "qij:manin": lambda: qij_manin(g["q"]),
        "qij:commuting": lambda: qij_commuting(g["q'"]),
        "plane": lambda: plane_rules(g["q"]),
        "diffcalc:1p": lambda: diffcalc_rules(g["p"], g["q"], one_param=True),
        "diffcalc:2p": lambda: diffcalc_rules(g["p"], g["q"]),
    }
    if name not in table:
        raise KeyError(name)
    return table[name]()


PRESET_NAMES = ("glq", "glpq", "qij:general", "qij:case1", "qij:one-param", "qij:case2",
                "qij:manin", "qij:commuting", "plane", "diffcalc:1p", "diffcalc:2p")
