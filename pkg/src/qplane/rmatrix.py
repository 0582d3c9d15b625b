"""R_{p,q}, the Yang-Baxter equation and the RTT presentation.

Tensor legs use row-major Kronecker order with the first factor outermost:
basis index (i, k) of V (x) V is ``2*i + k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import ONE, ZERO, C, Coefficient
from .freealg import GROUP, NCPoly, RewriteSystem, normal_order, proportionality, word_key
from .hopf import T_MATRIX

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, r = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = None
            for k in range(m):
                if _is_zero(a[i][k]) or _is_zero(b[k][j]):
                    continue
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else _zero_like(a[i][0], b[0][j]))
        out.append(row)
    return out


def _is_zero(x) -> bool:
    return x.is_zero()


def _zero_like(*xs):
    return NCPoly() if any(isinstance(x, NCPoly) for x in xs) else ZERO


def kron(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def nonzero_entries(a: Matrix) -> list[tuple[int, int, object]]:
    return [(i, j, x) for i, row in enumerate(a) for j, x in enumerate(row) if not x.is_zero()]


def flip() -> Matrix:
    """P(e_i (x) e_k) = e_k (x) e_i on C^2 (x) C^2."""
    m = [[ZERO] * 4 for _ in range(4)]
    for i in range(2):
        for k in range(2):
            m[2 * k + i][2 * i + k] = ONE
    return m


def build_r(p, q) -> Matrix:
    """The 4x4 R_{p,q}: diagonal (q, 1, q/p, q) with q - 1/p at row 3, column 2."""
    p, q = C(p), C(q)
    r = [[ZERO] * 4 for _ in range(4)]
    r[0][0] = q
    r[1][1] = ONE
    r[2][1] = q - p.inv()
    r[2][2] = q / p
    r[3][3] = q
    return r


def build_rq(q) -> Matrix:
    """The one-parameter R_q: diagonal (q, 1, 1, q) with q - 1/q at row 3, column 2."""
    q = C(q)
    r = [[ZERO] * 4 for _ in range(4)]
    r[0][0] = q
    r[1][1] = ONE
    r[2][1] = q - q.inv()
    r[2][2] = ONE
    r[3][3] = q
    return r


def substitute_matrix(m: Matrix, bindings) -> Matrix:
    return [[x.substitute(bindings) for x in row] for row in m]


# Yang-Baxter -------------------------------------------------------------------


@dataclass
class YBEReport:
    quantum: Matrix   # R12 R13 R23 - R23 R13 R12
    braid: Matrix     # (Rh x 1)(1 x Rh)(Rh x 1) - (1 x Rh)(Rh x 1)(1 x Rh), Rh = P R

    @property
    def quantum_holds(self) -> bool:
        return is_zero_matrix(self.quantum)

    @property
    def braid_holds(self) -> bool:
        return is_zero_matrix(self.braid)

    def summary(self) -> str:
        return (f"quantum YBE {'holds' if self.quantum_holds else 'fails'}, "
                f"braid relation {'holds' if self.braid_holds else 'fails'}")


def ybe_residuals(r: Matrix) -> YBEReport:
    i2 = identity(2)
    pflip = flip()
    r12 = kron(r, i2)
    r23 = kron(i2, r)
    p23 = kron(i2, pflip)
    r13 = matmul(matmul(p23, r12), p23)
    quantum = sub(matmul(matmul(r12, r13), r23), matmul(matmul(r23, r13), r12))
    rh = matmul(pflip, r)
    b1, b2 = kron(rh, i2), kron(i2, rh)
    braid = sub(matmul(matmul(b1, b2), b1), matmul(matmul(b2, b1), b2))
    return YBEReport(quantum, braid)


def ybe_check(p, q) -> YBEReport:
    return ybe_residuals(build_r(p, q))


# RTT ------------------------------------------------------------------------------


def t_legs() -> tuple[Matrix, Matrix]:
    """T1 = T (x) 1 and T2 = 1 (x) T as 4x4 matrices of letters."""
    t = [[NCPoly.letter(g) for g in row] for row in T_MATRIX]
    one = [[NCPoly.scalar(1), NCPoly()], [NCPoly(), NCPoly.scalar(1)]]
    return kron(t, one), kron(one, t)


def _lift(m: Matrix) -> Matrix:
    return [[NCPoly.scalar(x) for x in row] for row in m]


def rtt_matrix(r: Matrix) -> Matrix:
    """R T1 T2 - T2 T1 R over the free algebra on A, B, C, D."""
    t1, t2 = t_legs()
    rr = _lift(r)
    return sub(matmul(matmul(rr, t1), t2), matmul(matmul(t2, t1), rr))


def rtt_residuals(p, qp) -> list[NCPoly]:
    """The 16 entries of R T1 T2 - T2 T1 R, row-major, unreduced."""
    m = rtt_matrix(build_r(p, qp))
    return [m[i][j] for i in range(4) for j in range(4)]


def reduce_entries(entries: list[NCPoly], rules: RewriteSystem) -> list[NCPoly]:
    return [normal_order(e, rules) for e in entries]


def swap_legs_consistent(r: Matrix) -> bool:
    """P (R T1 T2 - T2 T1 R) P equals (PRP) T2 T1 - T1 T2 (PRP)."""
    pf = _lift(flip())
    t1, t2 = t_legs()
    rr = _lift(r)
    lhs = matmul(matmul(pf, rtt_matrix(r)), pf)
    prp = matmul(matmul(pf, rr), pf)
    rhs = sub(matmul(matmul(prp, t2), t1), matmul(matmul(t1, t2), prp))
    return is_zero_matrix(sub(lhs, rhs))


# linear algebra over the coefficient field --------------------------------------


def _row_reduce(vectors: list[dict]) -> list[dict]:
    """Echelon basis of the span of sparse vectors (dict key -> Coefficient)."""
    basis: list[tuple[object, dict]] = []
    for v in vectors:
        v = {k: c for k, c in v.items() if not c.is_zero()}
        for pivot, b in basis:
            if pivot in v:
                f = v[pivot]
                for k, c in b.items():
                    v[k] = v.get(k, ZERO) - f * c
                v = {k: c for k, c in v.items() if not c.is_zero()}
        if v:
            pivot = min(v, key=word_key)
            f = v[pivot].inv()
            v = {k: c * f for k, c in v.items()}
            for i, (pv, b) in enumerate(basis):
                if pivot in b:
                    g = b[pivot]
                    nb = {k: b.get(k, ZERO) - g * v.get(k, ZERO) for k in set(b) | set(v)}
                    basis[i] = (pv, {k: c for k, c in nb.items() if not c.is_zero()})
            basis.append((pivot, v))
    return [b for _, b in basis]


def span_rank(polys: list[NCPoly]) -> int:
    return len(_row_reduce([dict(p.terms) for p in polys]))


def same_span(a: list[NCPoly], b: list[NCPoly]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(a + b)


def distinct_up_to_scalar(polys: list[NCPoly]) -> list[NCPoly]:
    """Drop zeros and scalar multiples of earlier entries."""
    out: list[NCPoly] = []
    for p in polys:
        if p.is_zero():
            continue
        if not any(proportionality(p, q) is not None for q in out):
            out.append(p)
    return out


def relation_polys(p, qp) -> list[NCPoly]:
    """AB - pBA, CD - pDC, AC - q'CA, BD - q'DB, pBC - q'CB, AD - DA - (p - 1/q')BC."""
    p, qp = C(p), C(qp)
    A, B, Cc, D = (NCPoly.letter(g) for g in GROUP)
    return [
        A * B - (B * A).scale(p),
        Cc * D - (D * Cc).scale(p),
        A * Cc - (Cc * A).scale(qp),
        B * D - (D * B).scale(qp),
        (B * Cc).scale(p) - (Cc * B).scale(qp),
        A * D - D * A - (B * Cc).scale(p - qp.inv()),
    ]
