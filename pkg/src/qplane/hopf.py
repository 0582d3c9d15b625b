"""Coproduct, counit, quantum determinant and adjugate for GL_{p,q'}(2).

Tensors are reduced factorwise: each leg is normal-ordered under its own
copy of the group relations and there are no relations between legs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .coefficients import ONE, ZERO, C, Coefficient, P
from .freealg import GROUP, NCPoly, RewriteSystem, Word, _join, normal_order, proportionality, word_key
from .presets import glpq_rules

L = NCPoly.letter
Pair = tuple[Word, Word]


class TensorPoly:
    """Linear combination of word pairs ``u (x) v``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Pair, object] | None = None):
        clean = {}
        for (u, v), c in (terms or {}).items():
            c = C(c)
            if not c.is_zero():
                clean[(tuple(u), tuple(v))] = c
        self.terms = clean

    @staticmethod
    def unit() -> TensorPoly:
        return TensorPoly({((), ()): ONE})

    @staticmethod
    def pure(a: NCPoly, b: NCPoly) -> TensorPoly:
        return TensorPoly({(u, v): c * d for u, c in a.terms.items() for v, d in b.terms.items()})

    def __add__(self, other: TensorPoly) -> TensorPoly:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorPoly(out)

    def __neg__(self):
        return TensorPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def scale(self, c) -> TensorPoly:
        c = C(c)
        return TensorPoly({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Coefficient)):
            return self.scale(other)
        out: dict[Pair, Coefficient] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                k = (u1 + u2, v1 + v2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return TensorPoly(out)

    __rmul__ = scale

    def reduce(self, left: RewriteSystem, right: RewriteSystem | None = None) -> TensorPoly:
        right = right or left
        out: dict[Pair, Coefficient] = {}
        for (u, v), c in self.terms.items():
            for u2, a in left.reduce_word(u).items():
                for v2, b in right.reduce_word(v).items():
                    out[(u2, v2)] = out.get((u2, v2), ZERO) + c * a * b
        return TensorPoly(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Pair, Coefficient]]:
        return iter(sorted(self.terms.items(), key=lambda t: (word_key(t[0][0]), word_key(t[0][1]))))

    def __len__(self):
        return len(self.terms)

    def by_right(self) -> dict[Word, NCPoly]:
        """Group as sum_v (poly_v) (x) v."""
        out: dict[Word, dict] = {}
        for (u, v), c in self.terms.items():
            out.setdefault(v, {})[u] = c
        return {v: NCPoly(t) for v, t in out.items()}

    def by_left(self) -> dict[Word, NCPoly]:
        """Group as sum_u u (x) (poly_u)."""
        out: dict[Word, dict] = {}
        for (u, v), c in self.terms.items():
            out.setdefault(u, {})[v] = c
        return {u: NCPoly(t) for u, t in out.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in self:
            body = f"{' '.join(u) or '1'} (x) {' '.join(v) or '1'}"
            if c.is_one():
                parts.append(body)
            elif c.needs_parens():
                parts.append(f"({c}) {body}")
            else:
                parts.append(f"{c} {body}")
        return _join(parts)


# coproduct and counit -------------------------------------------------------

T_MATRIX = (("A", "B"), ("C", "D"))


def _delta_letter(g: str) -> TensorPoly:
    for i, row in enumerate(T_MATRIX):
        for j, name in enumerate(row):
            if name == g:
                return TensorPoly({((T_MATRIX[i][m],), (T_MATRIX[m][j],)): ONE for m in range(2)})
    raise ValueError(f"coproduct is only defined on A, B, C, D; got {g}")


DELTA = {g: _delta_letter(g) for g in GROUP}


def delta(poly: NCPoly) -> TensorPoly:
    """Extend T -> T (x) T multiplicatively (no reduction)."""
    out = TensorPoly()
    for w, c in poly.terms.items():
        term = TensorPoly.unit().scale(c)
        for g in w:
            term = term * DELTA[g]
        out = out + term
    return out


def delta_residual(relation: NCPoly, rules: RewriteSystem) -> TensorPoly:
    return delta(relation).reduce(rules)


COUNIT = {"A": ONE, "B": ZERO, "C": ZERO, "D": ONE}


def counit(poly: NCPoly) -> Coefficient:
    total = ZERO
    for w, c in poly.terms.items():
        term = c
        for g in w:
            term = term * COUNIT[g]
        total = total + term
    return total


def counit_left(t: TensorPoly) -> NCPoly:
    """(eps (x) id)(t)."""
    out = NCPoly()
    for (u, v), c in t.terms.items():
        out = out + NCPoly.from_word(v, c * counit(NCPoly.from_word(u)))
    return out


def counit_right(t: TensorPoly) -> NCPoly:
    """(id (x) eps)(t)."""
    out = NCPoly()
    for (u, v), c in t.terms.items():
        out = out + NCPoly.from_word(u, c * counit(NCPoly.from_word(v)))
    return out


# determinant and adjugate ---------------------------------------------------

Matrix = tuple[tuple[NCPoly, NCPoly], tuple[NCPoly, NCPoly]]


def group_matrix() -> Matrix:
    return tuple(tuple(L(g) for g in row) for row in T_MATRIX)


def matmul(a: Matrix, b: Matrix, rules: RewriteSystem) -> Matrix:
    return tuple(
        tuple(normal_order(a[i][0] * b[0][j] + a[i][1] * b[1][j], rules) for j in range(2))
        for i in range(2)
    )


def quantum_det(p, qp=None, rules: RewriteSystem | None = None) -> NCPoly:
    """AD - pBC in normal form."""
    p = C(p)
    rules = rules or glpq_rules(p, qp if qp is not None else P("q'"))
    return normal_order(L("A") * L("D") - (L("B") * L("C")).scale(p), rules)


def quantum_det_alt(p, qp=None, rules: RewriteSystem | None = None) -> NCPoly:
    """DA - p^-1 CB in normal form."""
    p = C(p)
    rules = rules or glpq_rules(p, qp if qp is not None else P("q'"))
    return normal_order(L("D") * L("A") - (L("C") * L("B")).scale(p.inv()), rules)


def adjugate(p) -> Matrix:
    """(D, -B/p; -pC, A), the right cofactor matrix: T adj = det I."""
    p = C(p)
    return ((L("D"), L("B").scale(-p.inv())), (L("C").scale(-p), L("A")))


def det_scalar(g: str, det: NCPoly, rules: RewriteSystem) -> Coefficient:
    """The scalar s with g det = s det g; raises if g does not skew-commute."""
    lhs = normal_order(L(g) * det, rules)
    rhs = normal_order(det * L(g), rules)
    s = proportionality(lhs, rhs)
    if s is None:
        raise ValueError(f"{g} does not skew-commute with the determinant")
    return s


def transport_inverse_det(m: Matrix, det: NCPoly, rules: RewriteSystem) -> Matrix:
    """Rewrite m det^-1 as det^-1 m' and return m'.

    From g det = s_g det g one gets g det^-1 = s_g^-1 det^-1 g, so each
    word w is rescaled by the product of s_g^-1 over its letters.
    """
    scal = {g: det_scalar(g, det, rules) for g in GROUP}

    def twist(poly):
        out = {}
        for w, c in poly.terms.items():
            f = ONE
            for g in w:
                f = f / scal[g]
            out[w] = c * f
        return NCPoly(out)

    return tuple(tuple(twist(e) for e in row) for row in m)


def left_adjugate(p, qp) -> Matrix:
    """adj with det^-1 moved to the left: S(T) T = I becomes adj' T = det I."""
    rules = glpq_rules(p, qp)
    return transport_inverse_det(adjugate(p), quantum_det(p, qp, rules), rules)


@dataclass(frozen=True)
class Residual:
    name: str
    value: object
    expect_zero: bool = True

    @property
    def ok(self) -> bool:
        return self.value.is_zero() == self.expect_zero

    def __str__(self):
        return f"{self.name}: {self.value}"


def adjugate_identities(p, qp) -> list[Residual]:
    """The 8 entry identities T adj = det I and adj' T = det I."""
    rules = glpq_rules(p, qp)
    det = quantum_det(p, qp, rules)
    t = group_matrix()
    out = []
    for label, prod in (("T adj", matmul(t, adjugate(p), rules)),
                        ("S(T) T", matmul(left_adjugate(p, qp), t, rules))):
        for i in range(2):
            for j in range(2):
                expected = det if i == j else NCPoly()
                out.append(Residual(f"{label} [{i + 1},{j + 1}]", normal_order(prod[i][j] - expected, rules)))
    return out


def naive_adjugate_residuals(p, qp) -> list[Residual]:
    """adj T - det I without moving det^-1; vanishes only when p = q'."""
    rules = glpq_rules(p, qp)
    det = quantum_det(p, qp, rules)
    prod = matmul(adjugate(p), group_matrix(), rules)
    return [Residual(f"adj T [{i + 1},{j + 1}]",
                     normal_order(prod[i][j] - (det if i == j else NCPoly()), rules))
            for i in range(2) for j in range(2)]


def det_relations_check(p, qp) -> list[Residual]:
    """A det = det A, B det = (q'/p) det B, C det = (p/q') det C, D det = det D."""
    p, qp = C(p), C(qp)
    rules = glpq_rules(p, qp)
    det = quantum_det(p, qp, rules)
    scal = {"A": ONE, "B": qp / p, "C": p / qp, "D": ONE}
    return [
        Residual(f"{g} det - ({s}) det {g}",
                 normal_order(L(g) * det - (det * L(g)).scale(s), rules))
        for g, s in scal.items()
    ]


def inverse_det_scalars(p, qp) -> dict[str, Coefficient]:
    """s with det^-1 g = s g det^-1, derived from the skew-commutation with det."""
    rules = glpq_rules(p, qp)
    det = quantum_det(p, qp, rules)
    return {g: det_scalar(g, det, rules) for g in GROUP}


def delta_det_check(p, qp, det: NCPoly | None = None) -> TensorPoly:
    """Delta(det) - det (x) det, factorwise reduced."""
    rules = glpq_rules(p, qp)
    det = det if det is not None else quantum_det(p, qp, rules)
    return (delta(det) - TensorPoly.pure(det, det)).reduce(rules)


# deriving the Hopf constraints ----------------------------------------------


@dataclass
class HopfConstraints:
    residuals: dict[str, TensorPoly]
    q1_q2: Coefficient          # scalar that must vanish: forces q1 = q2
    q3_q4: Coefficient          # forces q3 = q4
    exchange_q1: NCPoly         # AD - DA - (q1 CB - q1^-1 BC), from Delta(AC) = q1 Delta(CA)
    exchange_q3: NCPoly         # AD - DA - (q3 BC - q3^-1 CB), from Delta(AB) = q3 Delta(BA)
    bc_relation: NCPoly         # p BC - q' CB after removing the common factor
    excluded_factor: Coefficient  # the factor removed; vanishes iff p q' = -1

    def lines(self) -> list[str]:
        return [
            f"q1/q2 condition: {self.q1_q2} = 0",
            f"q3/q4 condition: {self.q3_q4} = 0",
            f"exchange (q1): {self.exchange_q1} = 0",
            f"exchange (q3): {self.exchange_q3} = 0",
            f"combined: {self.bc_relation} = 0 (common factor {self.excluded_factor})",
        ]


def candidate_rules() -> RewriteSystem:
    """Only the four q-swap relations with free q1..q4; AD, DA, BC, CB unordered."""
    q1, q2, q3, q4 = (P(f"q{i}") for i in range(1, 5))
    A, B, Cc, D = (L(g) for g in GROUP)
    return RewriteSystem.from_pairs("candidates", {
        "C A": (A * Cc).scale(q1.inv()),
        "D B": (B * D).scale(q2.inv()),
        "B A": (A * B).scale(q3.inv()),
        "D C": (Cc * D).scale(q4.inv()),
    }, partial=True)


def _normalize_exchange(poly: NCPoly) -> NCPoly:
    """Scale so the AD coefficient is 1."""
    return poly.scale(poly.coeff(("A", "D")).inv())


def derive_hopf_constraints() -> HopfConstraints:
    rules = candidate_rules()
    qs = [P(f"q{i}") for i in range(1, 5)]
    A, B, Cc, D = (L(g) for g in GROUP)
    rel = {
        "AC - q1 CA": A * Cc - (Cc * A).scale(qs[0]),
        "BD - q2 DB": B * D - (D * B).scale(qs[1]),
        "AB - q3 BA": A * B - (B * A).scale(qs[2]),
        "CD - q4 DC": Cc * D - (D * Cc).scale(qs[3]),
    }
    res = {name: delta_residual(r, rules) for name, r in rel.items()}

    # Delta(AC) - q1 Delta(CA): the C C leg carries a lone B D; the A C leg the exchange relation
    right = res["AC - q1 CA"].by_right()
    q1_q2 = right[("C", "C")].coeff(("B", "D"))
    exchange_q1 = _normalize_exchange(right[("A", "C")])
    # Delta(AB) - q3 Delta(BA): the relation sits on the right leg this time
    left = res["AB - q3 BA"].by_left()
    q3_q4 = left[("B", "B")].coeff(("C", "D"))
    exchange_q3 = _normalize_exchange(left[("A", "B")])

    # impose q1 = q2 = q', q3 = q4 = p and subtract the two exchange relations
    bind = {"q1": P("q'"), "q2": P("q'"), "q3": P("p"), "q4": P("p")}
    diff = exchange_q1.substitute(bind) - exchange_q3.substitute(bind)
    factor = diff.coeff(("B", "C")) / P("p")
    bc = diff.scale(factor.inv())
    return HopfConstraints(res, q1_q2, q3_q4, exchange_q1, exchange_q3, bc, factor)
