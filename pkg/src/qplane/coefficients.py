"""Exact rational functions in a fixed set of named parameters.

Coefficients are elements of the fraction field ZZ(p, q, q', qbar, k, ...).
Arithmetic is delegated to sympy's sparse fraction field, which cancels the
multivariate GCD after every operation; this module adds the fixed parameter
registry, the canonical sign convention, substitution and the text format.

Text format: ``num / den`` with monomials in descending deg-lex order.  A
monomial denominator is folded into the numerator as negative exponents, so
``p - 1/q'`` renders as ``p - q'^{-1}``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from sympy import Symbol
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from . import _parse
from .errors import DivisionByZero, ParseError, SingularSubstitution, UnknownParameter

# Order matters: it fixes the deg-lex monomial order and hence the canonical sign.
PARAMETERS: tuple[str, ...] = (
    "p", "q", "q'", "qbar", "k",
    "qbb", "eps",
    "q1", "q2", "q3", "q4",
    "q11", "q12", "q13", "q14",
    "q21", "q22", "q23", "q24",
)
BASE_PARAMETERS: tuple[str, ...] = PARAMETERS[:5]

_FIELD, *_GENS = field([Symbol(n) for n in PARAMETERS], ZZ, grlex)
_INDEX = {name: i for i, name in enumerate(PARAMETERS)}
_RING = _FIELD.ring


class Monomial(NamedTuple):
    coeff: int
    exponents: tuple[tuple[str, int], ...]

    def __str__(self):
        parts = []
        for name, e in self.exponents:
            if e == 1:
                parts.append(name)
            elif e > 0:
                parts.append(f"{name}^{e}")
            else:
                parts.append(f"{name}^{{{e}}}")
        if not parts:
            return str(self.coeff)
        body = " ".join(parts)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return "-" + body
        return f"{self.coeff} {body}"


def _canon(f: FracElement) -> FracElement:
    if f.denom.LC < 0:
        return _FIELD.raw_new(-f.numer, -f.denom)
    return f


_SUBRINGS: dict[tuple[int, ...], PolyRing] = {}


def _subring(used: tuple[int, ...]) -> PolyRing:
    ring = _SUBRINGS.get(used)
    if ring is None:
        ring = _SUBRINGS[used] = PolyRing([Symbol(PARAMETERS[i]) for i in used], ZZ, grlex)
    return ring


def _cancel(num, den) -> FracElement:
    """num/den in lowest terms with a positive leading denominator coefficient.

    The GCD runs in a ring over just the parameters that occur: the
    heuristic GCD recurses once per ring generator, used or not.
    """
    if not num:
        return _FIELD.zero
    if den.is_ground:
        c = den.LC
        g = ZZ.gcd(num.content(), c)
        if c < 0:
            g = -g
        return _FIELD.raw_new(num.quo_ground(g), den.quo_ground(g))
    used = sorted({i for poly in (num, den) for exps in poly.itermonoms() for i, e in enumerate(exps) if e})
    sub = _subring(tuple(used))
    n = sub.from_dict({tuple(exps[i] for i in used): c for exps, c in num.iterterms()})
    d = sub.from_dict({tuple(exps[i] for i in used): c for exps, c in den.iterterms()})
    n, d = n.cancel(d)
    width = len(PARAMETERS)

    def lift(poly):
        out = {}
        for exps, c in poly.iterterms():
            full = [0] * width
            for i, e in zip(used, exps):
                full[i] = e
            out[tuple(full)] = c
        return _RING.from_dict(out)

    return _FIELD.raw_new(lift(n), lift(d))


def _add(a: FracElement, b: FracElement) -> FracElement:
    if a.denom == b.denom:
        return _cancel(a.numer + b.numer, a.denom)
    return _cancel(a.numer * b.denom + b.numer * a.denom, a.denom * b.denom)


def _mul(a: FracElement, b: FracElement) -> FracElement:
    return _cancel(a.numer * b.numer, a.denom * b.denom)


def _coerce(value) -> FracElement | None:
    if isinstance(value, Coefficient):
        return value._f
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return _FIELD(value)
    if isinstance(value, Fraction):
        return _FIELD(value.numerator) / value.denominator
    return None


def _poly_monomials(poly, shift: tuple[int, ...] | None = None) -> list[Monomial]:
    out = []
    for exps, c in poly.terms():
        if shift is not None:
            exps = tuple(e - s for e, s in zip(exps, shift))
        named = tuple((PARAMETERS[i], e) for i, e in enumerate(exps) if e)
        out.append((exps, Monomial(int(c), named)))
    out.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
    return [m for _, m in out]


def _render_poly(monomials: list[Monomial]) -> str:
    text = ""
    for i, m in enumerate(monomials):
        s = str(m)
        if i == 0:
            text = s
        elif s.startswith("-"):
            text += " - " + s[1:]
        else:
            text += " + " + s
    return text


class Coefficient:
    """An immutable element of the parameter fraction field."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        if isinstance(value, FracElement):
            f = _canon(value)
        elif isinstance(value, str):
            f = Coefficient.parse(value)._f
        else:
            f = _coerce(value)
            if f is None:
                raise TypeError(f"cannot make a Coefficient from {type(value).__name__}")
        object.__setattr__(self, "_f", f)

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    @staticmethod
    def param(name: str) -> Coefficient:
        try:
            return Coefficient(_GENS[_INDEX[name]])
        except KeyError:
            raise UnknownParameter(name) from None

    @staticmethod
    def parse(text: str) -> Coefficient:
        value = _parse.parse(text, Coefficient.param, Coefficient)
        if not isinstance(value, Coefficient):
            raise ParseError(f"not a coefficient: {text!r}")
        return value

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(_add(self._f, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(_add(self._f, -o))

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(_add(o, -self._f))

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(_mul(self._f, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by the zero coefficient")
        return Coefficient(_mul(self._f, _FIELD.raw_new(o.denom, o.numer)))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Coefficient(o) / self

    def __neg__(self):
        return Coefficient(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return Coefficient(_FIELD.raw_new(self._f.numer ** n, self._f.denom ** n))

    def inv(self) -> Coefficient:
        if self.is_zero():
            raise DivisionByZero("inverse of the zero coefficient")
        return Coefficient(_FIELD.raw_new(self._f.denom, self._f.numer))

    # comparison -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._f.numer

    def is_one(self) -> bool:
        return self._f.numer == self._f.denom

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._f.numer == o.numer and self._f.denom == o.denom

    def __hash__(self):
        return hash((self._f.numer, self._f.denom))

    # structure ------------------------------------------------------------

    @property
    def numerator(self) -> Coefficient:
        return Coefficient(_FIELD.new(self._f.numer, _RING.one))

    @property
    def denominator(self) -> Coefficient:
        return Coefficient(_FIELD.new(self._f.denom, _RING.one))

    def numerator_monomials(self) -> list[Monomial]:
        return _poly_monomials(self._f.numer)

    def denominator_monomials(self) -> list[Monomial]:
        return _poly_monomials(self._f.denom)

    def is_monomial(self) -> bool:
        """True for c * (Laurent monomial) with c a nonzero integer."""
        return len(self._f.numer.terms()) == 1 and len(self._f.denom.terms()) == 1

    def parameters(self) -> set[str]:
        used = set()
        for poly in (self._f.numer, self._f.denom):
            for exps in poly.monoms():
                used.update(PARAMETERS[i] for i, e in enumerate(exps) if e)
        return used

    def substitute(self, bindings: Mapping[str, object]) -> Coefficient:
        """Replace parameters by coefficients; names not bound are kept."""
        images = list(_GENS)
        for name, value in bindings.items():
            if name not in _INDEX:
                raise UnknownParameter(name)
            v = Coefficient(value)._f if not isinstance(value, Coefficient) else value._f
            images[_INDEX[name]] = v
        num_n, num_d = _evaluate(self._f.numer, images)
        den_n, den_d = _evaluate(self._f.denom, images)
        if not den_n:
            raise SingularSubstitution(f"denominator of {self} vanishes under {_show(bindings)}")
        return Coefficient(_cancel(num_n * den_d, num_d * den_n))

    # rendering ------------------------------------------------------------

    def __str__(self):
        f = self._f
        if not f.numer:
            return "0"
        den_terms = f.denom.terms()
        if len(den_terms) == 1:
            exps, c = den_terms[0]
            num = _render_poly(_poly_monomials(f.numer, exps))
            if c == 1:
                return num
            if len(f.numer.terms()) > 1:
                num = f"({num})"
            return f"{num} / {int(c)}"
        num = _render_poly(_poly_monomials(f.numer))
        den = _render_poly(_poly_monomials(f.denom))
        if len(f.numer.terms()) > 1:
            num = f"({num})"
        return f"{num} / ({den})"

    def __repr__(self):
        return f"Coefficient({str(self)!r})"

    def needs_parens(self) -> bool:
        """Whether the rendering must be wrapped when used as a factor."""
        return not self.is_monomial()


def _evaluate(poly, images):
    """Evaluate a polynomial at fractions, returning (numerator, denominator) without cancelling."""
    bound = [i for i, img in enumerate(images) if img != _GENS[i]]
    top = {i: max((exps[i] for exps in poly.itermonoms()), default=0) for i in bound}
    powers: dict[tuple[int, int], object] = {}

    def power(poly_, key):
        got = powers.get(key)
        if got is None:
            got = powers[key] = poly_ ** key[2]
        return got

    num = _RING.zero
    for exps, c in poly.terms():
        term = _RING(c)
        for i, e in enumerate(exps):
            if i in top:
                img = images[i]
                if e:
                    term = term * power(img.numer, (i, "n", e))
                if top[i] - e:
                    term = term * power(img.denom, (i, "d", top[i] - e))
            elif e:
                term = term * _RING.gens[i] ** e
        num = num + term
    den = _RING.one
    for i, e in top.items():
        if e:
            den = den * images[i].denom ** e
    return num, den


def _show(bindings):
    return "{" + ", ".join(f"{k}={v}" for k, v in bindings.items()) + "}"


ZERO = Coefficient(0)
ONE = Coefficient(1)


def P(name: str) -> Coefficient:
    """Shorthand for :meth:`Coefficient.param`."""
    return Coefficient.param(name)


def C(value) -> Coefficient:
    """Coerce an int, Fraction, string or Coefficient to a Coefficient."""
    if isinstance(value, Coefficient):
        return value
    return Coefficient(value)


def cross_equal(a: Coefficient, b: Coefficient) -> bool:
    """Equality decided by cross-multiplying numerators and denominators."""
    return (a._f.numer * b._f.denom - b._f.numer * a._f.denom) == 0


def random_coefficient(rng: random.Random, names: Iterable[str] = BASE_PARAMETERS,
                       max_terms: int = 3, max_degree: int = 2, bound: int = 5) -> Coefficient:
    """A small random rational function, never zero."""
    names = list(names)

    def poly():
        total = ZERO
        while total.is_zero():
            for _ in range(rng.randint(1, max_terms)):
                c = rng.randint(-bound, bound) or 1
                term = Coefficient(c)
                for _ in range(rng.randint(0, max_degree)):
                    term = term * P(rng.choice(names))
                total = total + term
        return total

    return poly() / poly()
