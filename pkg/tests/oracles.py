"""Independent reference computations used only by the tests.

None of these touch the Weyl-group, simplex or interpolation code paths
they are compared against.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt

import numpy as np


def _vectors_with_sum_and_squares(n, total, squares):
    """All integer vectors of length n with given sum and sum of squares."""
    if n == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    # Cauchy-Schwarz: total^2 <= n * squares
    if total * total > n * squares:
        return
    bound = isqrt(squares)
    for v in range(-bound, bound + 1):
        for rest in _vectors_with_sum_and_squares(n - 1, total - v, squares - v * v):
            yield (v,) + rest


def minus_one_box_oracle(a, b, c, h_lo, h_hi):
    """Integer classes with (D,D) = -1 and deg D = 1, h in the box [h_lo, h_hi]^(a-1).

    For fixed h the multiplicities satisfy sum m = c*sum h - 1 and
    sum m^2 = h^T G h + 1, so they range over a finite set with no further
    bound needed.
    """
    k, npts = a - 1, b + c
    out = set()
    for h in itertools.product(range(h_lo, h_hi + 1), repeat=k):
        s = sum(h)
        hgh = (c - 1) * s * s - sum(x * x for x in h)
        squares = hgh + 1
        if squares < 0:
            continue
        total = c * s - 1
        for m in _vectors_with_sum_and_squares(npts, total, squares):
            out.add(tuple(h) + m)
    return out


def gram(a, b, c):
    k, r = a - 1, a - 1 + b + c
    g = np.zeros((r, r), dtype=object)
    for i in range(k):
        for j in range(k):
            g[i, j] = (c - 1) - (1 if i == j else 0)
    for j in range(k, r):
        g[j, j] = -1
    return g


def pair(x, y, a, b, c):
    """Pairing straight from the Gram matrix (H-coefficients first, then -m)."""
    k = a - 1
    u = np.array(list(x[:k]) + [-v for v in x[k:]], dtype=object)
    w = np.array(list(y[:k]) + [-v for v in y[k:]], dtype=object)
    return int(u @ gram(a, b, c) @ w)


def brute_force_decompositions(target, classes, parts):
    """Multisets of `parts` elements of `classes` summing to target, by itertools."""
    out = []
    for combo in itertools.combinations_with_replacement(range(len(classes)), parts):
        total = [sum(col) for col in zip(*(classes[i] for i in combo))]
        if tuple(total) == tuple(target):
            out.append(combo)
    return out


def float_cone_member(generators, target):
    """Cone membership through scipy's HiGHS solver (floating point)."""
    from scipy.optimize import linprog

    a = np.array(generators, dtype=float).T
    res = linprog(np.zeros(a.shape[1]), A_eq=a, b_eq=np.array(target, dtype=float),
                  bounds=[(0, None)] * a.shape[1], method="highs")
    return res.status == 0


def rank_over_q(rows):
    import sympy

    return sympy.Matrix(rows).rank() if rows else 0


def fraction_vector(v):
    return [Fraction(x) for x in v]
