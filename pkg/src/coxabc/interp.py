"""Fat-point interpolation on (P^{c-1})^{a-1} over a prime field.

H^0(X, D) for D = sum h_i H_i - sum m_j E_j is modelled as the space of
forms of multidegree (h_1, ..., h_{a-1}) vanishing to order m_j at the j-th
point.  Points are random over F_p, which stands in for general position.
Vanishing to order m at a point is imposed in the affine chart x_{i,0} = 1 of
every factor, through the Hasse derivatives (Taylor coefficients) of order
< m; these need no division, but we still insist p > max m.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import ffield
from .lattice import DivisorClass, LatticeError, Params, check_compatible

DEFAULT_PRIME = 2147483647


class InterpError(LatticeError):
    pass


@dataclass(frozen=True)
class InterpConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    points: tuple | None = None  # per point, per factor: affine coordinates (length c-1)

    def __post_init__(self):
        if self.prime <= 10**6 or not ffield.is_prime(self.prime):
            raise InterpError(f"{self.prime} is not a prime above 10^6")
        if self.prime >= ffield.MAX_PRIME:
            raise InterpError("prime must be below 2^31 for int64 arithmetic")

    def with_seed(self, seed: int) -> InterpConfig:
        return InterpConfig(self.prime, seed, None)


def sample_points(p: Params, cfg: InterpConfig) -> np.ndarray:
    """Array of shape (b+c, a-1, c-1): affine coordinates of each point in each factor."""
    shape = (p.n_points, p.n_factors, p.c - 1)
    if cfg.points is not None:
        pts = np.array(cfg.points, dtype=object) % cfg.prime
        if pts.shape != shape:
            raise InterpError(f"explicit points have shape {pts.shape}, expected {shape}")
        return pts.astype(np.int64)
    rng = np.random.default_rng([cfg.seed, p.a, p.b, p.c])
    return rng.integers(1, cfg.prime, size=shape, dtype=np.int64)


@lru_cache(maxsize=None)
def homogeneous_monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree-`degree` monomials in nvars variables, lex-descending."""
    out = []
    for cut in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev, e = -1, []
        for x in cut:
            e.append(x - prev - 1)
            prev = x
        e.append(degree + nvars - 2 - prev)
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


def multidegree_monomials(p: Params, h) -> list[tuple[tuple[int, ...], ...]]:
    """Monomials of multidegree h: one homogeneous exponent vector per factor."""
    per_factor = [homogeneous_monomials(p.c, d) for d in h]
    return list(itertools.product(*per_factor))


def affine_exponents(monos) -> np.ndarray:
    """Exponents of x_{i,1..c-1} (chart x_{i,0} = 1), flattened over factors."""
    if not monos:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array([[e for f in mono for e in f[1:]] for mono in monos], dtype=np.int64)


def multi_indices(n: int, below: int):
    """All beta in N^n with |beta| < below, graded then lex."""
    for total in range(below):
        yield from homogeneous_monomials(n, total)


def _effective_multiplicities(d: DivisorClass) -> tuple[int, ...]:
    return tuple(max(x, 0) for x in d.m)


def condition_matrix(p: Params, d: DivisorClass, cfg: InterpConfig) -> np.ndarray:
    """Linear conditions on the coefficients of a multidegree-h form.

    One row per (point j, beta) with |beta| < m_j, one column per monomial.
    Negative m_j impose nothing.
    """
    check_compatible(d, p)
    if any(x < 0 for x in d.h):
        raise InterpError("no forms of negative degree")
    mults = _effective_multiplicities(d)
    if mults and max(mults) >= cfg.prime:
        raise InterpError(f"prime {cfg.prime} must exceed every multiplicity")
    monos = multidegree_monomials(p, d.h)
    expo = affine_exponents(monos)
    n = p.dim
    q = cfg.prime
    pts = sample_points(p, cfg)
    maxdeg = max(d.h) if d.h else 0
    binom = np.array([[comb(e, k) % q for k in range(maxdeg + 1)] for e in range(maxdeg + 1)],
                     dtype=np.int64)
    rows = []
    for j, mj in enumerate(mults):
        if mj == 0:
            continue
        x = pts[j].reshape(-1)
        powers = np.ones((n, maxdeg + 1), dtype=np.int64)
        for k in range(1, maxdeg + 1):
            powers[:, k] = powers[:, k - 1] * x % q
        for beta in multi_indices(n, mj):
            entry = np.ones(len(monos), dtype=np.int64)
            for v, bv in enumerate(beta):
                ev = expo[:, v]
                ok = ev >= bv
                shift = np.where(ok, ev - bv, 0)
                term = binom[ev, min(bv, maxdeg)] * powers[v, shift] % q
                entry = entry * np.where(ok, term, 0) % q
            rows.append(entry)
    if not rows:
        return np.zeros((0, len(monos)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def condition_shape(p: Params, d: DivisorClass) -> tuple[int, int]:
    """Expected (rows, cols) of the condition matrix, from the counting formulas."""
    n = p.dim
    rows = sum(comb(n + m - 1, n) for m in _effective_multiplicities(d) if m > 0)
    cols = 1
    for x in d.h:
        cols *= comb(p.c - 1 + x, p.c - 1)
    return rows, cols


def h0(p: Params, d: DivisorClass, cfg: InterpConfig | None = None) -> int:
    """dim H^0(X, D) for general points (with probability 1 - O(1/prime))."""
    cfg = cfg or InterpConfig()
    check_compatible(d, p)
    if any(x < 0 for x in d.h):
        return 0
    mat = condition_matrix(p, d, cfg)
    return mat.shape[1] - ffield.rank(mat, cfg.prime)


@dataclass
class Consensus:
    value: int
    values: list[int]
    seeds: list[int]

    @property
    def unanimous(self) -> bool:
        return len(set(self.values)) == 1


def h0_consensus(p: Params, d: DivisorClass, cfg: InterpConfig | None = None, seeds=(0, 1, 2)) -> Consensus:
    """h0 at several seeds; the majority value is reported together with all values."""
    cfg = cfg or InterpConfig()
    values = [h0(p, d, cfg.with_seed(s)) for s in seeds]
    value = Counter(values).most_common(1)[0][0]
    return Consensus(value, values, list(seeds))


@dataclass
class SectionBasis:
    divisor: DivisorClass
    monomials: list
    basis: np.ndarray  # rows are coefficient vectors over F_prime
    prime: int = DEFAULT_PRIME
    conditions: np.ndarray | None = field(default=None, repr=False)

    def __len__(self):
        return self.basis.shape[0]

    def evaluate(self, affine_points: np.ndarray) -> np.ndarray:
        """Values of every basis form at affine points, shape (len(basis), npoints)."""
        mono_vals = evaluate_monomials(self.monomials, affine_points, self.prime)
        return ffield.matmul(self.basis, mono_vals, self.prime)

    def to_dict(self) -> dict:
        return {
            "divisor": self.divisor.to_dict(),
            "prime": self.prime,
            "monomials": [[list(f) for f in mono] for mono in self.monomials],
            "basis": [[str(int(v)) for v in row] for row in self.basis],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def evaluate_monomials(monos, affine_points: np.ndarray, q: int) -> np.ndarray:
    """Monomial values at points given by flattened affine coordinates, shape (len(monos), npoints)."""
    expo = affine_exponents(monos)
    pts = np.asarray(affine_points, dtype=np.int64)
    npts = pts.shape[0]
    if len(monos) == 0:
        return np.zeros((0, npts), dtype=np.int64)
    out = np.ones((len(monos), npts), dtype=np.int64)
    for v in range(expo.shape[1]):
        maxe = int(expo[:, v].max())
        powers = np.ones((maxe + 1, npts), dtype=np.int64)
        for k in range(1, maxe + 1):
            powers[k] = powers[k - 1] * pts[:, v] % q
        out = out * powers[expo[:, v]] % q
    return out


def section_basis(p: Params, d: DivisorClass, cfg: InterpConfig | None = None) -> SectionBasis:
    cfg = cfg or InterpConfig()
    check_compatible(d, p)
    if any(x < 0 for x in d.h):
        return SectionBasis(d, [], np.zeros((0, 0), dtype=np.int64), cfg.prime)
    mat = condition_matrix(p, d, cfg)
    monos = multidegree_monomials(p, d.h)
    basis = ffield.nullspace(mat, cfg.prime, ncols=len(monos))
    if mat.shape[0] and basis.shape[0]:
        if ffield.matmul(mat, basis.T, cfg.prime).any():
            raise InterpError("section basis violates a fat-point condition")
    return SectionBasis(d, monos, basis, cfg.prime, mat)


def is_effective_numeric(p: Params, d: DivisorClass, cfg: InterpConfig | None = None) -> bool:
    return h0(p, d, cfg) > 0
