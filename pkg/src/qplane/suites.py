"""Named verification suites.

A suite is a list of :class:`Check` objects, each a name plus a thunk that
returns ``(status, residual)``.  Statuses are ``pass``, ``fail`` and
``reported``; the last one records a finding that is not a pass/fail claim.
Checks only read the :class:`Context`, so they can run in any order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import cache
from typing import Callable, Iterable, Mapping

from . import hopf, presets, rmatrix
from .coefficients import (BASE_PARAMETERS, ONE, ZERO, C, Coefficient, P, cross_equal,
                           random_coefficient)
from .errors import QPlaneError, SingularSubstitution, UnknownParameter, UnknownSuite
from .freealg import (GROUP, NCPoly, RewriteRule, RewriteSystem, check_critical_pairs, normal_order,
                      proportionality, random_word, strategy_divergences)
from .presets import (TT, T, apply_coaction, cross_rules, diffcalc_rules, glpq_rules, glq_rules,
                      plane_rules)

PASS, FAIL, REPORTED = "pass", "fail", "reported"
N = NCPoly.parse
L = NCPoly.letter


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    residual: str | None
    elapsed_ms: float | None

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "residual": self.residual,
                "elapsed_ms": self.elapsed_ms}


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], tuple[str, str | None]]


@dataclass(frozen=True)
class Context:
    """Parameter values after user bindings, plus the randomization seed."""

    bindings: Mapping[str, Coefficient] = field(default_factory=dict)
    seed: int = 0
    samples: int = 1000

    @staticmethod
    def build(bindings: Mapping[str, object] | None = None, seed: int = 0, samples: int = 1000) -> Context:
        clean = {}
        for name, value in (bindings or {}).items():
            if name not in BASE_PARAMETERS:
                raise UnknownParameter(name)
            value = C(value)
            stray = value.parameters() - set(BASE_PARAMETERS)
            if stray:
                raise UnknownParameter(", ".join(sorted(stray)))
            clean[name] = value
        ctx = Context(clean, seed, samples)
        ctx.validate()
        return ctx

    def value(self, name: str) -> Coefficient:
        return P(name).substitute(self.bindings)

    @property
    def p(self):
        return self.value("p")

    @property
    def q(self):
        return self.value("q")

    @property
    def qp(self):
        return self.value("q'")

    @property
    def qbar(self):
        return self.value("qbar")

    @property
    def k(self):
        return self.value("k")

    def validate(self):
        for name in BASE_PARAMETERS:
            if self.value(name).is_zero():
                raise SingularSubstitution(f"binding makes {name} zero")
        if (self.p * self.qp + 1).is_zero():
            raise SingularSubstitution("binding hits the excluded point p q' = -1")
        if (self.p * self.qp - 1).is_zero():
            raise SingularSubstitution("binding makes q' p - 1 vanish (Case I denominator)")


def zero(residual) -> tuple[str, str | None]:
    return (PASS, None) if residual.is_zero() else (FAIL, str(residual))


def nonzero(residual) -> tuple[str, str | None]:
    return (PASS, str(residual)) if not residual.is_zero() else (FAIL, "residual vanished")


def truth(ok: bool, detail: str | None = None) -> tuple[str, str | None]:
    return (PASS, None) if ok else (FAIL, detail or "identity does not hold")


def reported(text: str) -> tuple[str, str | None]:
    return (REPORTED, text)


# shared algebras ------------------------------------------------------------


def general_system(ctx: Context) -> RewriteSystem:
    table = presets.qij_general(ctx.q, ctx.qbar, ctx.p, ctx.qp, ctx.k)
    return (glpq_rules(ctx.p, ctx.qp) + cross_rules(table, False) + plane_rules(ctx.q)).renamed(
        "glpq+qij:general+plane")


def shipped_rulesets(ctx: Context) -> list[tuple[str, RewriteSystem]]:
    """Every presentation the suites reduce with, named by its parts."""
    p, q, qp, qb, k = ctx.p, ctx.q, ctx.qp, ctx.qbar, ctx.k
    plane = plane_rules(q)

    def combo(name, *parts):
        out = parts[0]
        for part in parts[1:]:
            out = out + part
        return name, out.renamed(name)

    return [
        ("glq", glq_rules(q)),
        ("glpq", glpq_rules(p, qp)),
        ("plane", plane),
        combo("plane+diffcalc:1p", plane, diffcalc_rules(p, q, one_param=True)),
        combo("plane+diffcalc:2p", plane, diffcalc_rules(p, q)),
        ("glpq+qij:general+plane", general_system(ctx)),
        combo("glpq+qij:case1+plane", glpq_rules(p, qp),
              cross_rules(presets.qij_case1(q, p, qp), False), plane),
        combo("glpq(q'=q)+qij:one-param+plane+diffcalc:2p", glpq_rules(p, q),
              cross_rules(presets.qij_one_param(q, p)), plane, diffcalc_rules(p, q)),
        combo("glpq(p=q')+qij:case2+plane", glpq_rules(qp, qp),
              cross_rules(presets.qij_case2(q, qb, qp), False), plane),
        combo("glpq(p=q')+qij:commuting+plane(q=1)", glpq_rules(qp, qp),
              cross_rules(presets.qij_commuting(qp), False), plane_rules(1)),
        combo("glq+qij:manin+plane+diffcalc:1p", glq_rules(q),
              cross_rules(presets.qij_manin(q)), plane, diffcalc_rules(q, q, one_param=True)),
    ]


CALC_RELATIONS = {
    "dx dy = -(1/p) dy dx": "dx dy + p^-1 dy dx",
    "x dx = pq dx x": "x dx - p q dx x",
    "x dy = q dy x + (pq - 1) dx y": "x dy - q dy x - (p q - 1) dx y",
    "y dx = p dx y": "y dx - p dx y",
    "y dy = pq dy y": "y dy - p q dy y",
}
NILPOTENT = {"dx dx = 0": "dx dx", "dy dy = 0": "dy dy"}


def calc_relations(ctx: Context) -> dict[str, NCPoly]:
    bind = {"p": ctx.p, "q": ctx.q}
    return {name: N(text).substitute(bind) for name, text in CALC_RELATIONS.items()}


def image_relation(c: presets.Coaction, target_q) -> NCPoly:
    """x'y' - target_q y'x' as a free expression in group letters and coordinates."""
    x1, y1 = c.images["x"], c.images["y"]
    return x1 * y1 - (y1 * x1).scale(C(target_q))


# suites -----------------------------------------------------------------------


def suite_coeff_field(ctx: Context) -> list[Check]:
    n = ctx.samples

    @cache
    def triples():
        rng = random.Random(ctx.seed)
        return [tuple(random_coefficient(rng) for _ in range(3)) for _ in range(n)]

    def axioms():
        for a, b, c in triples():
            checks = {
                "associative +": (a + b) + c == a + (b + c),
                "associative *": (a * b) * c == a * (b * c),
                "commutative +": a + b == b + a,
                "commutative *": a * b == b * a,
                "distributive": a * (b + c) == a * b + a * c,
                "additive inverse": (a + (-a)).is_zero(),
                "multiplicative inverse": (a * a.inv()).is_one(),
                "unit": a * ONE == a and a + ZERO == a,
            }
            bad = [k for k, ok in checks.items() if not ok]
            if bad:
                return FAIL, f"{', '.join(bad)} fails for a={a}, b={b}, c={c}"
        return PASS, None

    def idempotent():
        for a, b, _ in triples():
            if Coefficient(a._f) != a or Coefficient.parse(str(a)) != a:
                return FAIL, f"canonical form unstable for {a}"
        return PASS, None

    def oracle():
        rng = random.Random(ctx.seed + 1)
        for a, b, c in triples():
            disguised = (a * c) / c
            if cross_equal(a, disguised) != (a == disguised) or not cross_equal(a, disguised):
                return FAIL, f"cross-multiplication disagrees on {a}"
            if cross_equal(a, b) != (a == b):
                return FAIL, f"cross-multiplication disagrees on {a} vs {b}"
        return PASS, None

    def homomorphism():
        rng = random.Random(ctx.seed + 2)
        tested = 0
        for a, b, _ in triples():
            name = rng.choice(BASE_PARAMETERS)
            image = random_coefficient(rng, [x for x in BASE_PARAMETERS if x != name], max_terms=2)
            bind = {name: image}
            try:
                lhs_mul, lhs_add = (a * b).substitute(bind), (a + b).substitute(bind)
                sa, sb = a.substitute(bind), b.substitute(bind)
            except SingularSubstitution:
                continue
            tested += 1
            if lhs_mul != sa * sb or lhs_add != sa + sb:
                return FAIL, f"substitution {name} -> {image} is not multiplicative on {a}, {b}"
        return (PASS, None) if tested else (FAIL, "no substitution was defined")

    def inverse_zero():
        try:
            ZERO.inv()
        except ZeroDivisionError:
            return PASS, None
        return FAIL, "inverse of 0 did not raise"

    return [
        Check(f"field axioms on {n} random triples", axioms),
        Check("canonical form is idempotent and round-trips through text", idempotent),
        Check("canonical equality agrees with cross-multiplication", oracle),
        Check("substitution commutes with + and *", homomorphism),
        Check("inverting zero raises", inverse_zero),
    ]


def suite_confluence(ctx: Context) -> list[Check]:
    def run(rules):
        def go():
            found = strategy_divergences(rules, n=ctx.samples, max_len=6, seed=ctx.seed)
            if found:
                return FAIL, f"{len(found)} of {ctx.samples} words disagree; first: {found[0]}"
            return PASS, None
        return go

    return [Check(f"{ctx.samples} random words, leftmost vs random redex: {name}", run(rules))
            for name, rules in shipped_rulesets(ctx)]


def sabotaged_glpq(ctx: Context) -> RewriteSystem:
    rules = dict(glpq_rules(ctx.p, ctx.qp).rules)
    rules[("B", "A")] = RewriteRule(("B", "A"), L("A") * L("B"))
    return RewriteSystem("glpq(sabotaged)", rules.values())


def suite_critical_pairs(ctx: Context) -> list[Check]:
    def run(rules):
        def go():
            n = len(rules.alphabet()) ** 3
            found = check_critical_pairs(rules)
            if found:
                return FAIL, f"{len(found)} of {n} triples diverge: " + "; ".join(str(d) for d in found[:4])
            return PASS, None
        return go

    def sabotage():
        found = check_critical_pairs(sabotaged_glpq(ctx))
        return (PASS, f"{len(found)} divergent triples") if found else (FAIL, "sabotage not detected")

    checks = [Check(f"overlaps resolve: {name}", run(rules)) for name, rules in shipped_rulesets(ctx)]
    checks.append(Check("sabotaged rule B A -> A B is detected", sabotage))
    return checks


def suite_glq_limit(ctx: Context) -> list[Check]:
    q = ctx.q

    def rules_direct():
        a, b = glpq_rules(q, q), glq_rules(q)
        return truth(a == b, f"glpq(q,q):\n{a}\nglq:\n{b}")

    def rules_subst():
        a = glpq_rules(P("p"), P("q'")).substitute({"p": q, "q'": q})
        return truth(a == glq_rules(q), str(a))

    def r_limit():
        r = rmatrix.substitute_matrix(rmatrix.build_r(P("p"), q), {"p": q})
        diff = rmatrix.sub(r, rmatrix.build_rq(q))
        return truth(rmatrix.is_zero_matrix(diff), str(rmatrix.nonzero_entries(diff)))

    def rtt_limit():
        entries = rmatrix.reduce_entries(rmatrix.rtt_residuals(q, q), glq_rules(q))
        bad = [str(e) for e in entries if not e.is_zero()]
        return truth(not bad, "; ".join(bad))

    return [
        Check("GL_{p,q'} relations at p = q' = q equal GL_q relations rule for rule", rules_direct),
        Check("substituting p -> q, q' -> q into GL_{p,q'} gives GL_q", rules_subst),
        Check("R_{p,q} at p = q equals R_q entry for entry", r_limit),
        Check("RTT with R_q reduces to zero under GL_q relations", rtt_limit),
    ]


def suite_glpq_rtt(ctx: Context) -> list[Check]:
    p, qp = ctx.p, ctx.qp

    @cache
    def entries():
        return rmatrix.rtt_residuals(p, qp)

    @cache
    def reduced():
        return rmatrix.reduce_entries(entries(), glpq_rules(p, qp))

    @cache
    def relations():
        return rmatrix.relation_polys(p, qp)

    def entry(i):
        def go():
            if not reduced()[i].is_zero():
                return FAIL, str(reduced()[i])
            e = entries()[i]
            if not e.is_zero() and rmatrix.span_rank(relations() + [e]) != rmatrix.span_rank(relations()):
                return FAIL, f"{e} is not a combination of the six relations"
            return PASS, None
        return go

    def span():
        nz = rmatrix.distinct_up_to_scalar(entries())
        rel = relations()
        verbatim = sum(any(proportionality(e, r) is not None for e in nz) for r in rel)
        if not rmatrix.same_span(nz, rel):
            return FAIL, f"span mismatch: rank {rmatrix.span_rank(nz)} vs {rmatrix.span_rank(rel)}"
        return reported(f"{len(nz)} distinct nonzero entries span the six relations; "
                        f"{verbatim} of the six appear as single entries up to scalars")

    def mismatch():
        if (p - qp).is_zero():
            return reported("not applicable: the control needs p != q'")
        bad = [e for e in rmatrix.reduce_entries(entries(), glq_rules(qp)) if not e.is_zero()]
        if not bad:
            return FAIL, "GL_q' rules also reduce every entry"
        return reported(f"{len(bad)} entries survive GL_q' rules")

    def legs():
        if not rmatrix.swap_legs_consistent(rmatrix.build_r(p, qp)):
            return FAIL, "leg exchange is inconsistent"
        return reported("conjugating by the flip exchanges the legs consistently")

    checks = [Check(f"RTT entry [{i // 4 + 1},{i % 4 + 1}] reduces to zero", entry(i)) for i in range(16)]
    checks += [
        Check("nonzero RTT entries and the six GL_{p,q'} relations", span),
        Check("RTT entries under GL_q' rules when p != q'", mismatch),
        Check("flip-conjugated RTT matrix versus RTT with legs exchanged", legs),
    ]
    return checks


def suite_ybe(ctx: Context) -> list[Check]:
    p, q = ctx.p, ctx.q

    @cache
    def generic():
        return rmatrix.ybe_check(p, q)

    def sabotaged():
        r = rmatrix.build_r(p, q)
        r[2][1] = q + p.inv()
        return rmatrix.ybe_residuals(r)

    def one_param():
        rep = rmatrix.ybe_check(q, q)
        return truth(rep.quantum_holds or rep.braid_holds, rep.summary())

    def sabotage():
        rep = sabotaged()
        return truth(not rep.quantum_holds and not rep.braid_holds, rep.summary())

    return [
        Check("R12 R13 R23 = R23 R13 R12 for R_{p,q}",
              lambda: reported("holds" if generic().quantum_holds else
                               f"fails: {rmatrix.nonzero_entries(generic().quantum)[:2]}")),
        Check("braid form with Rh = P R for R_{p,q}",
              lambda: reported("holds" if generic().braid_holds else
                               f"fails: {rmatrix.nonzero_entries(generic().braid)[:2]}")),
        Check("R_q satisfies at least one Yang-Baxter convention", one_param),
        Check("entry q + 1/p in place of q - 1/p breaks both conventions", sabotage),
    ]


def _random_tensor(rng, rules):
    t = hopf.TensorPoly()
    for _ in range(rng.randint(1, 2)):
        u = random_word(rng, GROUP, 2)
        v = random_word(rng, GROUP, 2)
        t = t + hopf.TensorPoly({(u, v): rng.randint(1, 3)})
    return t.reduce(rules)


def suite_hopf_delta(ctx: Context) -> list[Check]:
    p, qp = ctx.p, ctx.qp
    rules = glpq_rules(p, qp)
    names = ["AB = p BA", "CD = p DC", "AC = q' CA", "BD = q' DB", "p BC = q' CB",
             "AD - DA = (p - 1/q') BC"]
    checks = []
    for name, rel in zip(names, rmatrix.relation_polys(p, qp)):
        checks.append(Check(f"coproduct preserves {name}",
                            lambda rel=rel: zero(hopf.delta_residual(rel, rules))))

    def eps_control():
        rel = L("A") * L("D") - (L("D") * L("A")).scale(P("eps"))
        return nonzero(hopf.delta_residual(rel, rules))

    checks.append(Check("coproduct of AD - eps DA is nonzero for free eps", eps_control))
    for g in GROUP:
        checks.append(Check(f"(counit x id) coproduct({g}) = {g}",
                            lambda g=g: zero(hopf.counit_left(hopf.delta(L(g))) - L(g))))
        checks.append(Check(f"(id x counit) coproduct({g}) = {g}",
                            lambda g=g: zero(hopf.counit_right(hopf.delta(L(g))) - L(g))))

    def assoc():
        rng = random.Random(ctx.seed)
        for _ in range(max(ctx.samples // 10, 1)):
            a, b, c = (_random_tensor(rng, rules) for _ in range(3))
            lhs = ((a * b).reduce(rules) * c).reduce(rules)
            rhs = (a * (b * c).reduce(rules)).reduce(rules)
            if lhs != rhs:
                return FAIL, f"({a})({b})({c}): {lhs - rhs}"
        return PASS, None

    def multiplicative():
        rng = random.Random(ctx.seed + 1)
        for _ in range(max(ctx.samples // 10, 1)):
            u, v = random_word(rng, GROUP, 3), random_word(rng, GROUP, 3)
            a, b = NCPoly.from_word(u), NCPoly.from_word(v)
            lhs = hopf.delta(a * b).reduce(rules)
            rhs = (hopf.delta(a) * hopf.delta(b)).reduce(rules)
            if lhs != rhs:
                return FAIL, f"{u} {v}"
        return PASS, None

    checks.append(Check("factorwise tensor product is associative on random triples", assoc))
    checks.append(Check("coproduct is multiplicative on random words", multiplicative))
    return checks


def suite_hopf_constraints(ctx: Context) -> list[Check]:
    @cache
    def report():
        return hopf.derive_hopf_constraints()

    p, qp = ctx.p, ctx.qp

    def forces(cond, a, b):
        if cond.is_zero():
            return FAIL, "condition vanishes identically"
        if not cond.substitute({b: P(a)}).is_zero():
            return FAIL, f"{cond} does not vanish at {a} = {b}"
        quotient = cond.numerator / (P(a) - P(b))
        if not quotient.is_monomial():
            return FAIL, f"{cond} has solutions besides {a} = {b}"
        return PASS, f"{cond} = 0"

    def exchange(poly, bind, expected):
        got = poly.substitute(bind)
        return zero(got - N(expected).substitute({"p": p, "q'": qp}))

    def bd_agrees():
        right = report().residuals["BD - q2 DB"].by_right()
        ex = right[("B", "D")].scale(right[("B", "D")].coeff(("A", "D")).inv())
        return zero(ex.substitute({"q2": qp}) - report().exchange_q1.substitute({"q1": qp}))

    def cd_agrees():
        left = report().residuals["CD - q4 DC"].by_left()
        ex = left[("C", "D")].scale(left[("C", "D")].coeff(("A", "D")).inv())
        return zero(ex.substitute({"q4": p}) - report().exchange_q3.substitute({"q3": p}))

    def combined():
        r = report()
        bc = r.bc_relation.substitute({"p": p, "q'": qp})
        target = (L("B") * L("C")).scale(p) - (L("C") * L("B")).scale(qp)
        factor = r.excluded_factor.substitute({"p": p, "q'": qp})
        ok = bc == target and factor * p * qp == p * qp + 1
        return (PASS, f"common factor {factor} vanishes only at p q' = -1") if ok else \
            (FAIL, f"{bc}; factor {factor}")

    def full_relation():
        # eliminate CB from the p-exchange relation using p BC = q' CB
        ex = report().exchange_q3.substitute({"q3": p})
        cb = ex.coeff(("C", "B"))
        ex = ex - NCPoly.from_word(("C", "B"), cb) + NCPoly.from_word(("B", "C"), cb * p / qp)
        return zero(ex - (L("A") * L("D") - L("D") * L("A") - (L("B") * L("C")).scale(p - qp.inv())))

    return [
        Check("coproduct of AC - q1 CA forces q1 = q2", lambda: forces(report().q1_q2, "q1", "q2")),
        Check("coproduct of AB - q3 BA forces q3 = q4", lambda: forces(report().q3_q4, "q3", "q4")),
        Check("AD - DA = q' CB - q'^-1 BC from AC = q' CA",
              lambda: exchange(report().exchange_q1, {"q1": qp}, "A D - D A - q' C B + q'^-1 B C")),
        Check("same exchange relation from BD = q' DB", bd_agrees),
        Check("AD - DA = p BC - p^-1 CB from AB = p BA",
              lambda: exchange(report().exchange_q3, {"q3": p}, "A D - D A - p B C + p^-1 C B")),
        Check("same exchange relation from CD = p DC", cd_agrees),
        Check("the two exchange relations give p BC = q' CB unless p q' = -1", combined),
        Check("hence AD - DA = (p - 1/q') BC", full_relation),
    ]


def suite_det_inverse(ctx: Context) -> list[Check]:
    p, qp = ctx.p, ctx.qp
    rules = glpq_rules(p, qp)

    @cache
    def identities():
        return hopf.adjugate_identities(p, qp)

    def spellings():
        return zero(hopf.quantum_det(p, qp, rules) - hopf.quantum_det_alt(p, qp, rules))

    def naive():
        res = hopf.naive_adjugate_residuals(p, qp)
        bad = [str(r) for r in res if not r.value.is_zero()]
        return reported("adj T = det I without moving det^-1" if not bad else
                        "adj T != det I unless p = q'; the inverse determinant must be moved "
                        "past the adjugate first: " + "; ".join(bad))

    checks = [Check("AD - pBC = DA - p^-1 CB", spellings)]
    for i in range(8):
        checks.append(Check(
            ["T adj", "S(T) T"][i // 4] + f" = det I, entry [{i % 4 // 2 + 1},{i % 2 + 1}]",
            lambda i=i: zero(identities()[i].value)))
    checks.append(Check("adjugate times T without moving det^-1", naive))
    return checks


def suite_det_relations(ctx: Context) -> list[Check]:
    p, qp, q = ctx.p, ctx.qp, ctx.q

    @cache
    def residuals():
        return hopf.det_relations_check(p, qp)

    names = ["A det = det A", "B det = p^-1 q' det B", "C det = p q'^-1 det C", "D det = det D"]
    checks = [Check(name, lambda i=i: zero(residuals()[i].value)) for i, name in enumerate(names)]

    def inverse_scalars():
        got = hopf.inverse_det_scalars(p, qp)
        want = {"A": ONE, "B": qp / p, "C": p / qp, "D": ONE}
        bad = [f"{g}: {got[g]} vs {want[g]}" for g in GROUP if got[g] != want[g]]
        return truth(not bad, "; ".join(bad))

    def central():
        rules = glq_rules(q)
        det = hopf.quantum_det(q, q, rules)
        bad = [g for g in GROUP if not normal_order(L(g) * det - det * L(g), rules).is_zero()]
        return truth(not bad, f"not central against {bad}")

    checks.append(Check("det^-1 g = s g det^-1 with s = 1, q'/p, p/q', 1", inverse_scalars))
    checks.append(Check("det is central at p = q' = q", central))
    return checks


def suite_delta_det(ctx: Context) -> list[Check]:
    p, qp, q = ctx.p, ctx.qp, ctx.q

    def sabotage():
        if (q - p).is_zero():
            return reported("not applicable: the control needs q != p")
        rules = glpq_rules(p, qp)
        bad = normal_order(L("A") * L("D") - (L("B") * L("C")).scale(q), rules)
        return nonzero(hopf.delta_det_check(p, qp, bad))

    return [
        Check("coproduct(det) = det (x) det", lambda: zero(hopf.delta_det_check(p, qp))),
        Check("AD - qBC is not grouplike", sabotage),
        Check("coproduct(det) = det (x) det at p = q' = q", lambda: zero(hopf.delta_det_check(q, q))),
    ]


def shipped_tables(ctx: Context) -> dict[str, presets.QijTable]:
    p, q, qp, qb, k = ctx.p, ctx.q, ctx.qp, ctx.qbar, ctx.k
    return {
        "k-family": presets.qij_general(q, qb, p, qp, k),
        "Case I": presets.qij_case1(q, p, qp),
        "one-parameter": presets.qij_one_param(q, p),
        "k = q12": presets.qij_case2_pre(q, qb, p, qp),
        "Case II": presets.qij_case2(q, qb, qp),
        "Case II at q = 1, qbar = q'": presets.qij_commuting(qp),
        "Case II at q = qbar = 1": presets.qij_case2(1, 1, qp),
        "Manin": presets.qij_manin(q),
    }


def suite_qij_constraints(ctx: Context) -> list[Check]:
    p, q, qp, qb, k = ctx.p, ctx.q, ctx.qp, ctx.qbar, ctx.k
    sym = presets.qij_symbolic(q, qb, p, qp)
    qbb = P("qbb")
    e = {ij: P(f"q{ij[0]}{ij[1]}") for ij in presets.INDEX}

    def table_ok(t):
        def go():
            bad = [f"{name}: {r}" for name, r in t.constraint_residuals() if not r.is_zero()]
            return truth(not bad, "; ".join(bad))
        return go

    @cache
    def extracted(label):
        c = presets.COACTIONS[label]
        return {con.coordinates: con for con in presets.extract_constraints(c, sym, q, qb if label == "T" else qbb)}

    def t_lines():
        cons = extracted("T")
        ok = (cons[("x", "x")].ratio() == qb * e[1, 1] / e[1, 3]
              and cons[("y", "y")].ratio() == qb * e[2, 2] / e[2, 4])
        four = ((L("A") * L("D")).scale(q * e[1, 4]) - (L("D") * L("A")).scale(qb * e[2, 1])
                - (L("C") * L("B")).scale(q * qb * e[1, 2]) + (L("B") * L("C")).scale(e[2, 3]))
        ok = ok and proportionality(cons[("x", "y")].relation, four) is not None and len(cons) == 3
        return truth(ok, "; ".join(str(c) for c in cons.values()))

    def tt_lines():
        cons = extracted("Tt")
        ok = (cons[("x", "x")].ratio() == qbb * e[1, 1] / e[1, 2]
              and cons[("y", "y")].ratio() == qbb * e[2, 3] / e[2, 4])
        four = ((L("A") * L("D")).scale(q * e[1, 4]) - (L("D") * L("A")).scale(qbb * e[2, 1])
                - (L("B") * L("C")).scale(q * qbb * e[1, 3]) + (L("C") * L("B")).scale(e[2, 2]))
        ok = ok and proportionality(cons[("x", "y")].relation, four) is not None and len(cons) == 3
        return truth(ok, "; ".join(str(c) for c in cons.values()))

    def bound(label):
        def go():
            gen = presets.qij_general(q, qb, p, qp, k)
            bind = {f"q{i}{j}": gen[i, j] for i, j in presets.INDEX}
            bind["qbb"] = qb
            rules = glpq_rules(p, qp)
            cons = extracted(label)
            want = {"T": (qp, qp), "Tt": (p, p)}[label]
            bad = []
            for coords, target in ((("x", "x"), want[0]), (("y", "y"), want[1])):
                r = cons[coords].ratio().substitute(bind)
                if r != target:
                    bad.append(f"ratio at {coords}: {r} vs {target}")
            rel = normal_order(cons[("x", "y")].relation.substitute(bind), rules)
            if not rel.is_zero():
                bad.append(f"x y relation leaves {rel}")
            return truth(not bad, "; ".join(bad))
        return go

    def q21():
        return zero(presets.qij_general(q, qb, p, qp, k)[2, 1] - presets.qij_general_q21_alt(q, qb, p, qp, k))

    def ones():
        t = presets.qij_trivial(q, q, q, q)
        bad = [name for name, r in t.constraint_residuals() if not r.is_zero()]
        return truth(not bad, "; ".join(bad))

    def compatibility():
        gen = presets.qij_general(q, qb, p, qp, P("k"))
        obstruction = gen[1, 2] * gen[1, 3] - gen[1, 1] * gen[1, 4]
        at = obstruction.substitute({"k": qb / p})
        return reported(f"x (AD - DA - (p - 1/q')BC) forces ({obstruction}) B C x = 0; "
                        f"the factor vanishes at k = qbar/p ({'yes' if at.is_zero() else 'no'})")

    checks = [Check(f"compatibility identities hold for the {name} table", table_ok(t))
              for name, t in shipped_tables(ctx).items()]
    checks += [
        Check("free-generator constraints under T: AC, BD and the AD/DA/CB/BC line", t_lines),
        Check("free-generator constraints under Tt: AB, CD and the AD/DA/BC/CB line", tt_lines),
        Check("k-family values turn the T constraints into GL_{p,q'} relations", bound("T")),
        Check("k-family values turn the Tt constraints into GL_{p,q'} relations", bound("Tt")),
        Check("both spellings of q21 agree", q21),
        Check("all q_ij = 1 is admissible at qbar = p = q' = q", ones),
        Check("compatibility of the k-family with AD - DA = (p - 1/q')BC", compatibility),
    ]
    return checks


def suite_coaction_invariance(ctx: Context) -> list[Check]:
    p, q, qp, qb = ctx.p, ctx.q, ctx.qp, ctx.qbar

    def run(c, rules, target):
        return lambda: zero(normal_order(image_relation(c, target), rules))

    def manin_rules():
        return glq_rules(q) + cross_rules(presets.qij_manin(q), False) + plane_rules(q)

    def trivial_rules():
        return glpq_rules(p, q) + cross_rules(presets.qij_trivial(q, q, p, q), False) + plane_rules(q)

    def trivial_tt():
        if (p - q).is_zero():
            return reported("not applicable: needs p != q")
        return nonzero(normal_order(image_relation(TT, q), trivial_rules()))

    return [
        Check("x'y' = qbar y'x' under T with the k-family", run(T, general_system(ctx), qb)),
        Check("x''y'' = qbar y''x'' under Tt with the k-family", run(TT, general_system(ctx), qb)),
        Check("Manin plane: x'y' = q y'x' under T with commuting generators",
              lambda: run(T, manin_rules(), q)()),
        Check("Manin plane: x''y'' = q y''x'' under Tt with commuting generators",
              lambda: run(TT, manin_rules(), q)()),
        Check("GL_{p,q} with commuting generators preserves xy = q yx under T",
              lambda: run(T, trivial_rules(), q)()),
        Check("GL_{p,q} with commuting generators breaks xy = q yx under Tt", trivial_tt),
    ]


def solve_linear(residual: Coefficient, name: str) -> Coefficient:
    """Solve residual(name) = 0 after confirming it is affine in ``name``."""
    r0 = residual.substitute({name: 0})
    slope = residual.substitute({name: 1}) - r0
    if residual != r0 + slope * P(name):
        raise ValueError(f"{residual} is not linear in {name}")
    if slope.is_zero():
        raise ValueError(f"{residual} does not depend on {name}")
    return -r0 / slope


def suite_case1_k(ctx: Context) -> list[Check]:
    p, q, qp = ctx.p, ctx.q, ctx.qp
    kk = P("k")

    def solve():
        table = presets.qij_general(q, q, p, qp, kk)
        rules = glpq_rules(p, qp) + cross_rules(table) + plane_rules(q) + diffcalc_rules(p, q)
        rel = calc_relations(ctx)["dx dy = -(1/p) dy dx"]
        res = apply_coaction(T, rel, rules)
        if res.is_zero():
            return FAIL, "residual vanishes for every k"
        sols = set()
        for w, c in res:
            if c.parameters() & {"k"}:
                sols.add(solve_linear(c, "k"))
            else:
                return FAIL, f"k-independent obstruction on {' '.join(w)}: {c}"
        if len(sols) != 1:
            return FAIL, f"inconsistent solutions {sols}"
        (sol,) = sols
        want = presets.case1_k(q, p, qp)
        return truth(sol == want, f"solved k = {sol}, expected {want}") if sol != want else \
            (PASS, f"k = {sol}")

    def matches_family():
        t = presets.qij_general(q, q, p, qp, presets.case1_k(q, p, qp))
        c1 = presets.qij_case1(q, p, qp)
        return truth(t.same_entries(c1), "; ".join(t.mismatches(c1)))

    def to_one_param():
        t = presets.qij_case1(q, p, P("q'")).substitute({"q'": q}, validate=False)
        ref = presets.qij_one_param(q, p)
        return truth(t.same_entries(ref), "; ".join(t.mismatches(ref)))

    def at_p_eq_q():
        t = presets.qij_one_param(q, P("p")).substitute({"p": q}, validate=False)
        bad = [r for r in t.rows() if not r.endswith("= 1")]
        return truth(not bad, "; ".join(bad))

    def k_vs_q12():
        diff = presets.case1_k(q, p, qp) - q / p
        return reported("the solved k equals q12 = q/p" if diff.is_zero()
                        else f"the solved k differs from q12 = q/p by {diff}; they agree at q' = q")

    return [
        Check("dx dy = -(1/p) dy dx preserved under T fixes k uniquely", solve),
        Check("k-family at qbar = q and the solved k equals the Case I table", matches_family),
        Check("Case I table at q' = q equals the one-parameter table", to_one_param),
        Check("one-parameter table at p = q is all ones", at_p_eq_q),
        Check("solved k versus q12", k_vs_q12),
    ]


def suite_diffcalc_consistency(ctx: Context) -> list[Check]:
    p, q = ctx.p, ctx.q
    rules2 = plane_rules(q) + diffcalc_rules(p, q)
    rules1 = plane_rules(q) + diffcalc_rules(p, q, one_param=True)
    plane_rel = L("x") * L("y") - (L("y") * L("x")).scale(q)
    checks = [
        Check("d(xy - q yx) = 0 modulo the two-parameter calculus",
              lambda: zero(presets.exterior_d(plane_rel, rules2))),
        Check("d(xy - q yx) = 0 modulo the one-parameter calculus",
              lambda: zero(presets.exterior_d(plane_rel, rules1))),
    ]
    for name, rel in calc_relations(ctx).items():
        checks.append(Check(f"d({name}) lies in the ideal",
                            lambda rel=rel: zero(presets.exterior_d(rel, rules2))))

    def d_squared():
        rng = random.Random(ctx.seed)
        letters = ("dx", "dy", "x", "y")
        n = max(ctx.samples // 5, 1)
        for _ in range(n):
            poly = NCPoly()
            for _ in range(rng.randint(1, 4)):
                poly = poly + NCPoly.from_word(random_word(rng, letters, 4),
                                               random_coefficient(rng, max_terms=2, max_degree=1))
            free = presets.exterior_d(presets.exterior_d(poly))
            reduced = presets.exterior_d(presets.exterior_d(normal_order(poly, rules2), rules2), rules2)
            if not free.is_zero() or not reduced.is_zero():
                return FAIL, f"d^2 ({poly}) = {free if not free.is_zero() else reduced}"
        return PASS, None

    def leibniz():
        got = presets.exterior_d(L("x") * L("y"))
        return zero(got - (L("dx") * L("y") + L("x") * L("dy")))

    def same_calculus():
        a = diffcalc_rules(P("p"), q).substitute({"p": q})
        b = presets.diffcalc_eq4_rules(q)
        return truth(a == b and diffcalc_rules(p, q, one_param=True) == b, f"{a}\nvs\n{b}")

    checks += [
        Check(f"d^2 = 0 on {max(ctx.samples // 5, 1)} random polynomials", d_squared),
        Check("d(x y) = dx y + x dy", leibniz),
        Check("two-parameter calculus at p = q is the one-parameter calculus", same_calculus),
    ]
    return checks


def invariance_checks(ctx: Context, rules: RewriteSystem, label: str) -> list[Check]:
    checks = []
    for c in (T, TT):
        for name, rel in calc_relations(ctx).items():
            checks.append(Check(f"{label}: {name} preserved under {c.label}",
                                lambda c=c, rel=rel: zero(apply_coaction(c, rel, rules))))
    for name, text in NILPOTENT.items():
        rel = N(text)

        def both(rel=rel):
            out = [apply_coaction(c, rel, rules) for c in (T, TT)]
            bad = [f"{c.label}: {r}" for c, r in zip((T, TT), out) if not r.is_zero()]
            return truth(not bad, "; ".join(bad))

        checks.append(Check(f"{label}: {name} preserved under T and Tt", both))
    return checks


def one_param_system(ctx):
    p, q = ctx.p, ctx.q
    return (glpq_rules(p, q) + cross_rules(presets.qij_one_param(q, p)) + plane_rules(q)
            + diffcalc_rules(p, q))


def suite_diffcalc_invariance(ctx: Context) -> list[Check]:
    return invariance_checks(ctx, one_param_system(ctx), "one-parameter table")


def suite_diffcalc_negative(ctx: Context) -> list[Check]:
    p, q = ctx.p, ctx.q

    def rules():
        return (glpq_rules(p, q) + cross_rules(presets.qij_trivial(q, q, p, q)) + plane_rules(q)
                + diffcalc_rules(p, q))

    def under(c):
        def go():
            rs = rules()
            out = {name: apply_coaction(c, rel, rs) for name, rel in calc_relations(ctx).items()}
            bad = {name: r for name, r in out.items() if not r.is_zero()}
            return out, bad
        return go

    def t_holds():
        _, bad = under(T)()
        return truth(not bad, "; ".join(f"{n}: {r}" for n, r in bad.items()))

    def tt_breaks():
        if (p - q).is_zero():
            return reported("not applicable: needs p != q")
        _, bad = under(TT)()
        if not bad:
            return FAIL, "every relation survived Tt"
        name, r = next(iter(bad.items()))
        return PASS, f"{len(bad)} of 5 relations break; {name}: {r}"

    def one_param_tt():
        rs = (glq_rules(q) + cross_rules(presets.qij_manin(q)) + plane_rules(q)
              + diffcalc_rules(q, q, one_param=True))
        rels = {name: N(text).substitute({"p": q, "q": q}) for name, text in CALC_RELATIONS.items()}
        bad = [f"{name} under {c.label}" for name, rel in rels.items()
               for c in (T, TT) if not apply_coaction(c, rel, rs).is_zero()]
        return truth(not bad, ", ".join(bad))

    return [
        Check("commuting generators: calculus preserved under T", t_holds),
        Check("commuting generators, p != q: calculus not preserved under Tt", tt_breaks),
        Check("commuting generators, one-parameter calculus preserved under T and Tt", one_param_tt),
    ]


def suite_case2_planes(ctx: Context) -> list[Check]:
    q, qp, qb, p = ctx.q, ctx.qp, ctx.qbar, ctx.p

    def vs_family():
        fam = presets.qij_general(q, qb, P("p"), qp, qb / P("p")).substitute({"p": qp})
        ref = presets.qij_case2(q, qb, qp)
        return truth(fam.same_entries(ref), "; ".join(fam.mismatches(ref)))

    def pre_vs_family():
        fam = presets.qij_general(q, qb, p, qp, qb / p)
        ref = presets.qij_case2_pre(q, qb, p, qp)
        return truth(fam.same_entries(ref), "; ".join(fam.mismatches(ref)))

    def case2_rules(table, plane_q):
        return glpq_rules(qp, qp) + cross_rules(table, False) + plane_rules(plane_q)

    def invariant(c):
        return lambda: zero(normal_order(image_relation(c, qb),
                                         case2_rules(presets.qij_case2(q, qb, qp), q)))

    def commuting_table():
        t = presets.qij_case2(1, qp, qp)
        ref = presets.qij_commuting(qp)
        return truth(t.same_entries(ref), "; ".join(t.mismatches(ref)))

    def commuting_maps(c):
        return lambda: zero(normal_order(image_relation(c, qp),
                                         case2_rules(presets.qij_commuting(qp), 1)))

    def violates():
        table = presets.qij_commuting(qp)
        rules = case2_rules(table, 1)
        x1 = T.images["x"]
        res = normal_order(x1 * L("A") - (L("A") * x1).scale(table[1, 1]), rules)
        if (qp * qp - 1).is_zero():
            return reported("not applicable at q'^2 = 1")
        return nonzero(res)

    def ordinary():
        t = presets.qij_case2(1, 1, qp)
        res = normal_order(image_relation(T, 1), case2_rules(t, 1))
        return (PASS, "x'y' = y'x'; " + ", ".join(t.rows())) if res.is_zero() else (FAIL, str(res))

    def manin():
        t = presets.qij_case2(qp, qp, qp)
        return truth(t.same_entries(presets.qij_manin(qp)), "; ".join(t.rows()))

    def same_as_case1():
        pre = presets.qij_case2_pre(q, q, p, P("q'")).substitute({"q'": q}, validate=False)
        ref = presets.qij_one_param(q, p)
        general = presets.qij_case2_pre(q, q, p, qp)
        if not pre.same_entries(ref):
            return reported("k = q12 does not reproduce the one-parameter table: " + "; ".join(pre.mismatches(ref)))
        differs = general.mismatches(ref)
        return reported("k = q12 with qbar = q reproduces the one-parameter table exactly when q' = q"
                        + (f"; for generic q' it differs in {len(differs)} entries" if differs else ""))

    return [
        Check("Case II table equals the k-family at p = q', k = q12", vs_family),
        Check("k-family at k = q12 equals the pre-specialized Case II table", pre_vs_family),
        Check("Case II: x'y' = qbar y'x' under T", invariant(T)),
        Check("Case II: x''y'' = qbar y''x'' under Tt", invariant(TT)),
        Check("q = 1, qbar = q' gives q_1i = 1 and q_2i = 1/q'", commuting_table),
        Check("commuting plane xy = yx maps to x'y' = q' y'x' under T", commuting_maps(T)),
        Check("commuting plane xy = yx maps to x''y'' = q' y''x'' under Tt", commuting_maps(TT)),
        Check("transformed coordinates violate x'A = q11 A x'", violates),
        Check("q = qbar = 1 gives an ordinary commuting plane", ordinary),
        Check("q = qbar = q' gives all q_ij = 1 (Manin plane)", manin),
        Check("k = q12 compared with the one-parameter table", same_as_case1),
    ]


# registry ------------------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    anchor: str
    build: Callable[[Context], list[Check]]


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("coeff-field", "field axioms, canonical form and substitution for coefficients",
          "rational functions in p, q, q', qbar, k", suite_coeff_field),
    Suite("confluence", "leftmost versus random-redex normal forms on random words",
          "every shipped presentation", suite_confluence),
    Suite("critical-pairs", "overlap triples resolve for every shipped presentation",
          "every shipped presentation", suite_critical_pairs),
    Suite("glq-limit", "GL_{p,q'} and R_{p,q} reduce to GL_q and R_q at p = q' = q",
          "AD - DA = (q - q^-1) BC; R_q", suite_glq_limit),
    Suite("glpq-rtt", "R T1 T2 = T2 T1 R entries reduce to zero under GL_{p,q'}",
          "R_{p,q} and AB = pBA, ..., AD - DA = (p - 1/q')BC", suite_glpq_rtt),
    Suite("ybe", "Yang-Baxter equation for R_{p,q} in both conventions",
          "R_{p,q} = (q,0,0,0; 0,1,0,0; 0,q-1/p,q/p,0; 0,0,0,q)", suite_ybe),
    Suite("hopf-delta", "coproduct respects the GL_{p,q'} relations; counit",
          "Delta(T) = T (x) T", suite_hopf_delta),
    Suite("hopf-constraints", "derive q1 = q2, q3 = q4 and the exchange relations from the coproduct",
          "AD - DA = q' CB - q'^-1 BC", suite_hopf_constraints),
    Suite("det-inverse", "quantum determinant and the adjugate inverse",
          "det = AD - pBC = DA - p^-1 CB", suite_det_inverse),
    Suite("det-relations", "skew-commutation of generators with the determinant",
          "B det = p^-1 q' det B", suite_det_relations),
    Suite("delta-det", "the quantum determinant is grouplike",
          "Delta(det) = det (x) det", suite_delta_det),
    Suite("qij-constraints", "admissible cross-commutation tables and extracted constraints",
          "q' = qbar q13^-1 q11, ..., p - 1/q' = qbar q14^-1 q13 - q^-1 q'^-1 p q14^-1 q22",
          suite_qij_constraints),
    Suite("coaction-invariance", "xy = q yx maps to x'y' = qbar y'x' under T and Tt",
          "qbar = qbarbar", suite_coaction_invariance),
    Suite("case1-k", "qbar = q: k fixed by the differential relation, one-parameter limit",
          "Case I, k = q'(qp - 1)/(p(q'p - 1))", suite_case1_k),
    Suite("diffcalc-consistency", "exterior derivative against the calculus relations",
          "d^2 = 0 and the Leibniz rule", suite_diffcalc_consistency),
    Suite("diffcalc-invariance", "two-parameter calculus preserved under T and Tt",
          "x dy = q dy x + (pq - 1) dx y with q12 = q14 = q21 = q23 = q/p", suite_diffcalc_invariance),
    Suite("diffcalc-negative-control", "commuting generators break the calculus under Tt",
          "not invariant under Tt when generators commute with coordinates", suite_diffcalc_negative),
    Suite("case2-planes", "p = q': Case II tables and their special planes",
          "Case II, p = q', k = q12", suite_case2_planes),
]}


def list_suites() -> list[tuple[str, str, str]]:
    return [(s.name, s.description, s.anchor) for s in SUITES.values()] + [
        ("all", "every suite above, in order", "everything")]


def run_check(check: Check, timing: bool = True) -> CheckResult:
    start = time.perf_counter()
    try:
        status, residual = check.run()
    except QPlaneError as exc:
        status, residual = FAIL, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        status, residual = FAIL, f"error: {exc}"
    elapsed = round((time.perf_counter() - start) * 1000, 3) if timing else None
    if status == FAIL and not residual:
        residual = "nonzero"
    return CheckResult(check.name, status, residual, elapsed)


def suite_checks(name: str, ctx: Context) -> list[tuple[str, Check]]:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(name)
    out = []
    for n in names:
        out.extend((n, c) for c in SUITES[n].build(ctx))
    return out


def run_suite(name: str, ctx: Context | None = None, timing: bool = True) -> list[CheckResult]:
    ctx = ctx or Context()
    results = []
    for suite, check in suite_checks(name, ctx):
        r = run_check(check, timing)
        if name == "all":
            r = CheckResult(f"{suite}: {r.name}", r.status, r.residual, r.elapsed_ms)
        results.append(r)
    return results


def exit_status(results: Iterable[CheckResult]) -> int:
    return 1 if any(r.status == FAIL for r in results) else 0
