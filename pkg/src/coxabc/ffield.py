"""Dense linear algebra over a prime field F_p with numpy int64 arithmetic.

Entries are kept in [0, p); products of two entries must fit in int64, so
p < 2**31 is required.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_PRIME = 2**31


@lru_cache(maxsize=64)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int):
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"prime {p} outside the int64-safe range [2, 2**31)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def as_field_matrix(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=object) % p
    return np.asarray(arr, dtype=np.int64).reshape(np.shape(a))


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    _check_prime(p)
    m = as_field_matrix(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, col]), -1, p)
        m[r] = m[r] * inv % p
        others = np.flatnonzero(m[:, col])
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, col], m[r]) % p) % p
        pivots.append(col)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : a x = 0} as the rows of a (k, n) array."""
    a = np.asarray(a)
    n = a.shape[1] if a.ndim == 2 else ncols
    if n is None:
        raise ValueError("ncols needed for an empty matrix")
    if a.size == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-r[i, f]) % p
    return basis


def matmul(a, b, p: int) -> np.ndarray:
    """a @ b mod p without int64 overflow (accumulates one column of a at a time)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k]) % p) % p
    return out
