"""Exact rational linear programming: two-phase tableau simplex with Bland's rule.

Solves ``max c.x  s.t.  A x = b, x >= 0`` in exact rationals.  When
the system is infeasible the phase-one duals give a Farkas vector ``f`` with
``f.A >= 0`` and ``f.b < 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:  # C rationals make pivots several times cheaper; results are still exact
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class CertificateError(AssertionError):
    """A returned certificate failed re-substitution."""


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


def as_fractions(v: Sequence) -> list[Fraction]:
    return [x if isinstance(x, Fraction) else Fraction(x) for x in v]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator))


def _q(x):
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator)
    return _Q(x)


def _pivot(rows, z, r, j):
    row = rows[r]
    piv = row[j]
    if piv != 1:
        inv = 1 / piv
        row[:] = [v * inv if v else v for v in row]
    nz = [(t, v) for t, v in enumerate(row) if v]
    for i, other in enumerate(rows):
        if i != r:
            f = other[j]
            if f:
                for t, v in nz:
                    other[t] -= f * v
    f = z[j]
    if f:
        for t, v in nz:
            z[t] -= f * v


def _run(rows, z, basis, allowed, rhs) -> tuple[str, int]:
    """Minimise with reduced-cost row z; Bland's rule for entering and leaving."""
    pivots = 0
    while True:
        j = next((t for t in allowed if z[t] < 0), None)
        if j is None:
            return OPTIMAL, pivots
        best = None
        for i, row in enumerate(rows):
            if row[j] > 0:
                ratio = row[rhs] / row[j]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED, pivots
        r = best[1]
        _pivot(rows, z, r, j)
        basis[r] = j
        pivots += 1


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence | None = None) -> LPResult:
    """Maximise c.x over {x >= 0 : A x = b}; with c None only feasibility is decided."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m or any(len(row) != n for row in A):
        raise ValueError("inconsistent LP dimensions")
    b = [_q(v) for v in b]
    sign = [(-1 if bi < 0 else 1) for bi in b]
    rhs = n + m
    zero, one = _Q(0), _Q(1)
    rows = []
    for i in range(m):
        s = sign[i]
        row = [s * _q(v) for v in A[i]] + [zero] * m + [s * b[i]]
        row[n + i] = one
        rows.append(row)
    basis = list(range(n, n + m))

    # phase one: minimise the sum of artificials
    z = [zero] * (rhs + 1)
    for row in rows:
        for t in range(n):
            if row[t]:
                z[t] -= row[t]
        z[rhs] -= row[rhs]
    status, pivots = _run(rows, z, basis, range(n), rhs)
    assert status == OPTIMAL
    if -z[rhs] > 0:
        y = [sign[i] * (1 - z[n + i]) for i in range(m)]
        return LPResult(INFEASIBLE, farkas=[-_to_fraction(v) for v in y], pivots=pivots)

    # drive artificials out of the basis, dropping redundant rows
    for i in range(len(rows) - 1, -1, -1):
        if basis[i] >= n:
            j = next((t for t in range(n) if rows[i][t]), None)
            if j is None:
                del rows[i], basis[i]
            else:
                _pivot(rows, z, i, j)
                basis[i] = j
                pivots += 1

    x = [Fraction(0)] * n
    if c is None:
        for i, v in enumerate(basis):
            x[v] = _to_fraction(rows[i][rhs])
        return LPResult(OPTIMAL, x=x, value=Fraction(0), pivots=pivots)

    # phase two: minimise -c.x
    cost = [-_q(v) for v in c]
    z = cost + [zero] * m + [zero]
    for i, v in enumerate(basis):
        cb = cost[v]
        if cb:
            for t, val in enumerate(rows[i]):
                if val:
                    z[t] -= cb * val
    status, more = _run(rows, z, basis, range(n), rhs)
    pivots += more
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=pivots)
    for i, v in enumerate(basis):
        x[v] = _to_fraction(rows[i][rhs])
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x=x, value=value, pivots=pivots)


def check_solution(A, b, x):
    if any(v < 0 for v in x):
        raise CertificateError("negative coefficient in solution")
    for row, bi in zip(A, b):
        if sum((Fraction(a) * xi for a, xi in zip(row, x) if a and xi), Fraction(0)) != bi:
            raise CertificateError("solution does not satisfy A x = b")


def check_farkas(A, b, f):
    n = len(A[0]) if A else 0
    for t in range(n):
        if sum((fi * A[i][t] for i, fi in enumerate(f) if fi), Fraction(0)) < 0:
            raise CertificateError("separator negative on a column")
    if sum((fi * Fraction(bi) for fi, bi in zip(f, b)), Fraction(0)) >= 0:
        raise CertificateError("separator does not cut off the target")


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q."""
    a = [as_fractions(r) for r in rows]
    if not a:
        return 0
    n = len(a[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][col] / a[r][col]
            if f:
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r
