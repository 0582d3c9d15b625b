"""Graded free algebra on A, B, C, D, dx, dy, x, y and pair-swap rewriting.

Letters carry a fixed rank ``A < B < C < D < dx < dy < x < y`` and a parity
(differentials are odd).  A word is normal when its ranks never decrease and
no odd letter is repeated.  A :class:`RewriteSystem` maps each out-of-order
adjacent pair ``g h`` to a polynomial of lex-smaller words; repeatedly
rewriting gives the normal form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from . import _parse
from .coefficients import ONE, ZERO, C, Coefficient
from .errors import MissingRule, ParseError

GENERATORS: tuple[str, ...] = ("A", "B", "C", "D", "dx", "dy", "x", "y")
GROUP = ("A", "B", "C", "D")
COORDS = ("x", "y")
DIFFS = ("dx", "dy")
RANK = {g: i for i, g in enumerate(GENERATORS)}
PARITY = {g: (1 if g in DIFFS else 0) for g in GENERATORS}

Word = tuple[str, ...]


def concat(a: Word, b: Word) -> Word:
    return tuple(a) + tuple(b)


def word_key(w: Word):
    """Total order on words: shorter first, then lexicographic by rank."""
    return (len(w), tuple(RANK[g] for g in w))


def parity(w: Word) -> int:
    return sum(PARITY[g] for g in w) % 2


def out_of_order(g: str, h: str) -> bool:
    return RANK[g] > RANK[h] or (g == h and PARITY[g] == 1)


def is_normal(w: Word) -> bool:
    return not any(out_of_order(g, h) for g, h in zip(w, w[1:])) and not any(
        PARITY[g] and w.count(g) > 1 for g in set(w)
    )


class NCPoly:
    """Finite linear combination of words with Coefficient weights.

    ``*`` is the free (concatenation) product; reduce with :func:`normal_order`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean: dict[Word, Coefficient] = {}
        if terms:
            for w, c in terms.items():
                c = C(c)
                if not c.is_zero():
                    w = tuple(w)
                    for g in w:
                        if g not in RANK:
                            raise ValueError(f"unknown generator {g!r}")
                    clean[w] = c
        self.terms = clean

    @staticmethod
    def letter(g: str) -> NCPoly:
        return NCPoly({(g,): ONE})

    @staticmethod
    def scalar(c) -> NCPoly:
        return NCPoly({(): C(c)})

    @staticmethod
    def from_word(w: Iterable[str], c=1) -> NCPoly:
        return NCPoly({tuple(w): C(c)})

    @staticmethod
    def parse(text: str) -> NCPoly:
        def atom(name):
            if name in RANK:
                return NCPoly.letter(name)
            return NCPoly.scalar(Coefficient.param(name))

        value = _parse.parse(text, atom, NCPoly.scalar)
        if not isinstance(value, NCPoly):
            raise ParseError(f"not an expression: {text!r}")
        return value

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Coefficient)) and not isinstance(other, bool):
            return NCPoly.scalar(other)
        return None

    def __add__(self, other):
        o = NCPoly._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = NCPoly._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = NCPoly._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> NCPoly:
        c = C(c)
        return NCPoly({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Coefficient)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict[Word, Coefficient] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Coefficient)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            if set(other.terms) != {()}:
                raise ParseError("can only divide by a scalar")
            other = other.terms[()]
        return self.scale(C(1) / C(other))

    def __pow__(self, n: int):
        if isinstance(n, int) and set(self.terms) <= {()}:
            return NCPoly.scalar(self.coeff(()) ** n)
        if not isinstance(n, int) or n < 0:
            raise ParseError("expressions only take non-negative integer powers")
        out = NCPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    # queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = NCPoly._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Word, Coefficient]]:
        return iter(sorted(self.terms.items(), key=lambda t: word_key(t[0])))

    def __len__(self):
        return len(self.terms)

    def coeff(self, w: Iterable[str]) -> Coefficient:
        return self.terms.get(tuple(w), ZERO)

    def letters(self) -> set[str]:
        return {g for w in self.terms for g in w}

    def substitute(self, bindings: Mapping[str, object]) -> NCPoly:
        return NCPoly({w: c.substitute(bindings) for w, c in self.terms.items()})

    def map_letters(self, images: Mapping[str, NCPoly]) -> NCPoly:
        """Free algebra map: replace letters by their images (others fixed)."""
        out = NCPoly()
        for w, c in self.terms.items():
            term = NCPoly.scalar(c)
            for g in w:
                term = term * images.get(g, NCPoly.letter(g))
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self:
            word = " ".join(w)
            if not w:
                parts.append(str(c))
            elif c.is_one():
                parts.append(word)
            elif (-c).is_one():
                parts.append("-" + word)
            elif c.needs_parens():
                parts.append(f"({c}) {word}")
            else:
                parts.append(f"{c} {word}")
        return _join(parts)

    def __repr__(self):
        return f"NCPoly({str(self)!r})"


def proportionality(a: NCPoly, b: NCPoly) -> Coefficient | None:
    """Return r with a == r*b, or None when no such scalar exists."""
    if b.is_zero():
        return ZERO if a.is_zero() else None
    if set(a.terms) != set(b.terms):
        return None
    w0 = next(iter(b.terms))
    r = a.terms[w0] / b.terms[w0]
    if all(a.terms[w] == r * c for w, c in b.terms.items()):
        return r
    return None


# rewriting ----------------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    """``g h -> rhs`` with rhs built from strictly lex-smaller words."""

    lhs: tuple[str, str]
    rhs: NCPoly

    def __post_init__(self):
        g, h = self.lhs
        if not out_of_order(g, h):
            raise ValueError(f"rule head {g} {h} is already normal")
        head = word_key(self.lhs)
        for w in self.rhs.terms:
            if len(w) > 2 or word_key(w) >= head:
                raise ValueError(f"rule {g} {h} -> {self.rhs}: word {' '.join(w)} is not smaller")
            if parity(w) != parity(self.lhs):
                raise ValueError(f"rule {g} {h} -> {self.rhs} changes parity")

    def __str__(self):
        return f"{' '.join(self.lhs)} -> {self.rhs}"


class RewriteSystem:
    """An immutable set of pair rules, one per ordered pair.

    With ``partial=True`` an out-of-order pair without a rule is left alone;
    otherwise reaching one raises :class:`MissingRule`.
    """

    def __init__(self, name: str, rules: Iterable[RewriteRule] = (), partial: bool = False):
        self.name = name
        self.partial = partial
        table: dict[tuple[str, str], RewriteRule] = {}
        for r in rules:
            if r.lhs in table and table[r.lhs].rhs != r.rhs:
                raise ValueError(f"{name}: conflicting rules for {' '.join(r.lhs)}")
            table[r.lhs] = r
        self.rules = table
        self._cache: dict[Word, dict[Word, Coefficient]] = {}

    @staticmethod
    def from_pairs(name: str, pairs: Mapping[str, object], partial: bool = False) -> RewriteSystem:
        """Build from ``{"B A": rhs}`` where rhs is an NCPoly or expression text."""
        rules = []
        for head, rhs in pairs.items():
            g, h = head.split()
            if not isinstance(rhs, NCPoly):
                rhs = NCPoly.parse(str(rhs))
            rules.append(RewriteRule((g, h), rhs))
        return RewriteSystem(name, rules, partial)

    def __add__(self, other: RewriteSystem) -> RewriteSystem:
        return RewriteSystem(f"{self.name}+{other.name}",
                             list(self.rules.values()) + list(other.rules.values()),
                             self.partial or other.partial)

    def renamed(self, name: str) -> RewriteSystem:
        return RewriteSystem(name, self.rules.values(), self.partial)

    def substitute(self, bindings: Mapping[str, object]) -> RewriteSystem:
        return RewriteSystem(
            self.name,
            [RewriteRule(r.lhs, r.rhs.substitute(bindings)) for r in self.rules.values()],
            self.partial,
        )

    def alphabet(self) -> tuple[str, ...]:
        used = {g for pair in self.rules for g in pair}
        for r in self.rules.values():
            used |= r.rhs.letters()
        return tuple(g for g in GENERATORS if g in used)

    def rule(self, g: str, h: str) -> RewriteRule | None:
        return self.rules.get((g, h))

    def __eq__(self, other):
        if not isinstance(other, RewriteSystem):
            return NotImplemented
        return self.rules == other.rules and self.partial == other.partial

    def __hash__(self):
        return hash(frozenset(self.rules))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(sorted(self.rules.values(), key=lambda r: word_key(r.lhs)))

    def __str__(self):
        return "\n".join(str(r) for r in self)

    # reduction ------------------------------------------------------------

    def _redexes(self, w: Word) -> list[int]:
        out = []
        for i in range(len(w) - 1):
            g, h = w[i], w[i + 1]
            if out_of_order(g, h):
                if (g, h) in self.rules:
                    out.append(i)
                elif not self.partial:
                    raise MissingRule(g, h)
        return out

    def _rewrite_at(self, w: Word, i: int) -> Iterator[tuple[Word, Coefficient]]:
        rhs = self.rules[(w[i], w[i + 1])].rhs
        prefix, suffix = w[:i], w[i + 2:]
        for v, c in rhs.terms.items():
            yield prefix + v + suffix, c

    def reduce_word(self, w: Word) -> dict[Word, Coefficient]:
        """Leftmost-first normal form of a single word (memoized)."""
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        redexes = self._redexes(w)
        if not redexes:
            out = {w: ONE}
        else:
            out = {}
            for v, c in self._rewrite_at(w, redexes[0]):
                for u, d in self.reduce_word(v).items():
                    out[u] = out.get(u, ZERO) + c * d
            out = {u: d for u, d in out.items() if not d.is_zero()}
        self._cache[w] = out
        return out

    def reduce_with(self, w: Word, pick: Callable[[list[int]], int]) -> dict[Word, Coefficient]:
        """Normal form of a word choosing each redex with ``pick`` (no memo)."""
        out: dict[Word, Coefficient] = {}
        work = [(w, ONE)]
        while work:
            v, c = work.pop()
            redexes = self._redexes(v)
            if not redexes:
                out[v] = out.get(v, ZERO) + c
                continue
            for u, d in self._rewrite_at(v, pick(redexes)):
                work.append((u, c * d))
        return {u: d for u, d in out.items() if not d.is_zero()}


def normal_order(poly: NCPoly, rules: RewriteSystem, strategy: str = "leftmost",
                 rng: random.Random | None = None) -> NCPoly:
    """Reduce every word of ``poly`` to normal form under ``rules``.

    ``strategy`` is ``leftmost`` (memoized default), ``rightmost`` or
    ``random`` (which draws redexes from ``rng``).
    """
    if strategy == "leftmost":
        reduce = rules.reduce_word
    elif strategy == "rightmost":
        def reduce(w):
            return rules.reduce_with(w, lambda idx: idx[-1])
    elif strategy == "random":
        rng = rng or random.Random(0)

        def reduce(w):
            return rules.reduce_with(w, rng.choice)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    out: dict[Word, Coefficient] = {}
    for w, c in poly.terms.items():
        for u, d in reduce(w).items():
            out[u] = out.get(u, ZERO) + c * d
    return NCPoly(out)


def nc_mul(a: NCPoly, b: NCPoly, rules: RewriteSystem) -> NCPoly:
    return normal_order(a * b, rules)


def is_identity(lhs: NCPoly, rhs: NCPoly, rules: RewriteSystem) -> bool:
    return normal_order(lhs - rhs, rules).is_zero()


@dataclass(frozen=True)
class Divergence:
    word: Word
    leftmost: NCPoly | None
    rightmost: NCPoly | None
    error: str | None = None
    other: str = "rightmost"

    @property
    def difference(self) -> NCPoly | None:
        if self.leftmost is None or self.rightmost is None:
            return None
        return self.leftmost - self.rightmost

    def __str__(self):
        w = " ".join(self.word)
        if self.error:
            return f"{w}: {self.error}"
        return f"{w}: leftmost - {self.other} = {self.difference}"


def check_critical_pairs(rules: RewriteSystem, alphabet: Iterable[str] | None = None) -> list[Divergence]:
    """Compare leftmost-first and rightmost-first reduction on every triple."""
    alphabet = tuple(alphabet) if alphabet is not None else rules.alphabet()
    found = []
    for g in alphabet:
        for h in alphabet:
            for i in alphabet:
                w = (g, h, i)
                try:
                    left = normal_order(NCPoly.from_word(w), rules, "leftmost")
                    right = normal_order(NCPoly.from_word(w), rules, "rightmost")
                except MissingRule as exc:
                    found.append(Divergence(w, None, None, str(exc)))
                    continue
                if left != right:
                    found.append(Divergence(w, left, right))
    return found


def random_word(rng: random.Random, alphabet: tuple[str, ...], max_len: int = 6) -> Word:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def strategy_divergences(rules: RewriteSystem, n: int = 1000, max_len: int = 6,
                         seed: int = 0, alphabet: tuple[str, ...] | None = None) -> list[Divergence]:
    """Leftmost-first versus random-redex reduction on ``n`` random words."""
    rng = random.Random(seed)
    alphabet = alphabet or rules.alphabet()
    found = []
    for _ in range(n):
        w = random_word(rng, alphabet, max_len)
        poly = NCPoly.from_word(w)
        left = normal_order(poly, rules, "leftmost")
        drawn = normal_order(poly, rules, "random", rng)
        if left != drawn:
            found.append(Divergence(w, left, drawn, other="random"))
    return found


def _join(parts: list[str]) -> str:
    text = parts[0]
    for s in parts[1:]:
        text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return text
