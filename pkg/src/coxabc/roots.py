"""Simple roots of T_{a,b,c} inside Pic(X_{a,b,c}) and the reflections they define."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    DivisorClass,
    LatticeError,
    Params,
    check_compatible,
    mukai_pairing,
    pairing_coords,
)


class NotARootError(LatticeError):
    pass


@dataclass(frozen=True)
class RootSystem:
    params: Params
    simple_roots: tuple[DivisorClass, ...]
    cartan: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.simple_roots)

    def branch_index(self) -> int:
        """Index of the vertex E_c - E_{c+1} where the three legs meet."""
        return self.params.c - 1


def simple_roots(p: Params) -> RootSystem:
    """Roots in fixed order: E_j - E_{j+1}, then H_1 - E_1 - ... - E_c, then H_{i+1} - H_i.

    The H-chain is oriented H_{i+1} - H_i so that every edge of the diagram
    pairs to +1 and the Cartan matrix has only 0 and -1 off the diagonal.
    """
    k, n = p.n_factors, p.n_points
    roots = []
    for j in range(n - 1):
        m = [0] * n
        m[j], m[j + 1] = -1, 1
        roots.append(DivisorClass((0,) * k, tuple(m)))
    h = [0] * k
    h[0] = 1
    roots.append(DivisorClass(tuple(h), tuple([1] * p.c + [0] * (n - p.c))))
    for i in range(k - 1):
        h = [0] * k
        h[i], h[i + 1] = -1, 1
        roots.append(DivisorClass(tuple(h), (0,) * n))
    cartan = tuple(
        tuple(-mukai_pairing(x, y, p) for y in roots) for x in roots
    )
    return RootSystem(p, tuple(roots), cartan)


def cartan_matrix(rs: RootSystem) -> list[list[int]]:
    return [list(row) for row in rs.cartan]


def cartan_csv(rs: RootSystem) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rs.cartan)
    return buf.getvalue()


def adjacency(rs: RootSystem) -> dict[int, list[int]]:
    return {
        i: [j for j, v in enumerate(row) if j != i and v == -1]
        for i, row in enumerate(rs.cartan)
    }


def leg_lengths(rs: RootSystem) -> tuple[int, ...]:
    """Lengths of the legs from the branch vertex, counting the branch vertex.

    A path (some leg of length 1) is reported from the branch index as well,
    which keeps the (a, b, c) reading uniform.
    """
    adj = adjacency(rs)
    root = rs.branch_index()
    legs = []
    for start in adj[root]:
        length, prev, cur = 2, root, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    while len(legs) < 3:
        legs.append(1)
    return tuple(sorted(legs))


def leading_minors(matrix) -> list[Fraction]:
    """All leading principal minors, computed exactly."""
    return [_det(_sub(matrix, t)) for t in range(1, len(matrix) + 1)]


def _sub(matrix, t):
    return [row[:t] for row in matrix[:t]]


def _det(matrix) -> Fraction:
    n = len(matrix)
    a = [[Fraction(v) for v in row] for row in matrix]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def is_positive_definite(matrix) -> bool:
    return all(m > 0 for m in leading_minors(matrix))


def dynkin_type(p: Params) -> str:
    """Type of T_{a,b,c}: A_n, D_n, E_6, E_7, E_8 or NOT-FINITE."""
    x, y, z = sorted(p.triple)
    if x == 1:
        return f"A_{y + z - 1}"
    if (x, y) == (2, 2):
        return f"D_{z + 2}"
    if (x, y) == (2, 3) and z in (3, 4, 5):
        return f"E_{z + 3}"
    return "NOT-FINITE"


def reflect(d: DivisorClass, alpha: DivisorClass, p: Params) -> DivisorClass:
    """s_alpha(D) = D + (D, alpha) alpha, for (alpha, alpha) = -2."""
    check_compatible(d, p)
    if mukai_pairing(alpha, alpha, p) != -2:
        raise NotARootError(f"{alpha} has self-pairing != -2")
    t = mukai_pairing(d, alpha, p)
    return d + t * alpha


def reflect_coords(x: tuple[int, ...], alpha: tuple[int, ...], c: int, k: int) -> tuple[int, ...]:
    """Coordinate-level reflection used by orbit enumeration (no validation)."""
    t = pairing_coords(x, alpha, c, k)
    if t == 0:
        return x
    return tuple(u + t * v for u, v in zip(x, alpha))
