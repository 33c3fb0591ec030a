"""Effective and movable cones of X_{a,b,c} as rational cones over the (-1)-divisors.

Every membership answer carries a certificate that is re-substituted before
it is returned: nonnegative coefficients for a positive answer, a separating
functional for a negative one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lp
from .lattice import (
    DivisorClass,
    LatticeError,
    Params,
    anticanonical,
    check_compatible,
    require_mori_dream,
)
from .roots import reflect, simple_roots
from .weyl import InvariantViolation, minus_one_divisors


class ConeError(LatticeError):
    pass


@dataclass
class Membership:
    member: bool
    coefficients: list[Fraction] | None = None
    separator: list[Fraction] | None = None

    def __bool__(self):
        return self.member

    def to_dict(self) -> dict:
        if self.member:
            return {"member": True, "coefficients": [str(v) for v in self.coefficients]}
        return {"member": False, "separator": [str(v) for v in self.separator]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class GeneratedCone:
    params: Params
    generators: list[DivisorClass]
    extremal_only: bool = False
    pruned: list[DivisorClass] = field(default_factory=list)

    def __post_init__(self):
        if not self.generators:
            raise ConeError("a cone needs at least one generator")


def _vec(v) -> list:
    return list(v.coords) if isinstance(v, DivisorClass) else list(v)


def lp_member(generators: Sequence, target) -> Membership:
    """Decide whether target = sum lambda_i G_i with lambda >= 0, exactly."""
    cols = [_vec(g) for g in generators]
    t = lp.as_fractions(_vec(target))
    dim = len(t)
    if any(len(g) != dim for g in cols):
        raise ConeError("generator and target dimensions differ")
    if not cols:
        if all(v == 0 for v in t):
            return Membership(True, coefficients=[])
        sep = [Fraction(-1 if v > 0 else 1 if v < 0 else 0) for v in t]
        return Membership(False, separator=sep)
    A = [[g[i] for g in cols] for i in range(dim)]
    if t in cols:
        x = [Fraction(0)] * len(cols)
        x[cols.index(t)] = Fraction(1)
        lp.check_solution(A, t, x)
        return Membership(True, coefficients=x)
    res = lp.solve(A, t)
    if res.status == lp.OPTIMAL:
        lp.check_solution(A, t, res.x)
        return Membership(True, coefficients=res.x)
    lp.check_farkas(A, t, res.farkas)
    return Membership(False, separator=res.farkas)


def effective_generators(p: Params) -> list[DivisorClass]:
    require_mori_dream(p)
    return list(minus_one_divisors(p))


def in_effective_cone(d: DivisorClass, p: Params) -> Membership:
    check_compatible(d, p)
    return lp_member(effective_generators(p), d)


def extremal_generators(cone: GeneratedCone) -> GeneratedCone:
    """Drop zero and repeated generators and every G_i lying in the cone of the rest."""
    kept: list[DivisorClass] = []
    pruned: list[DivisorClass] = []
    seen = set()
    for g in cone.generators:
        if g in seen or all(v == 0 for v in g.coords):
            pruned.append(g)
        else:
            seen.add(g)
            kept.append(g)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and lp_member(others, kept[i]).member:
            pruned.append(kept.pop(i))
        else:
            i += 1
    return GeneratedCone(cone.params, kept, True, cone.pruned + pruned)


_extremal_cache: dict[Params, list[DivisorClass]] = {}


def extremal_effective_generators(p: Params) -> list[DivisorClass]:
    if p not in _extremal_cache:
        cone = GeneratedCone(p, effective_generators(p))
        _extremal_cache[p] = extremal_generators(cone).generators
    return _extremal_cache[p]


def _unit(k: int, dim: int, s: int) -> list[int]:
    v = [0] * dim
    v[k] = s
    return v


def is_big(d: DivisorClass, p: Params, generators: Sequence[DivisorClass] | None = None) -> bool:
    """Interior test: D + t e and D - t e lie in Eff for some t > 0, for each basis vector e."""
    check_compatible(d, p)
    gens = effective_generators(p) if generators is None else list(generators)
    cols = [list(g.coords) for g in gens]
    dim = p.rank
    if lp.rank(cols) != dim:
        raise ConeError("effective cone is not full-dimensional")
    if not lp_member(gens, d).member:
        return False
    target = lp.as_fractions(d.coords)
    for k in range(dim):
        for s in (1, -1):
            # sum lambda G - s t e_k = D, maximise t
            A = [[g[i] for g in cols] + [-_unit(k, dim, s)[i]] for i in range(dim)]
            obj = [0] * len(cols) + [1]
            res = lp.solve(A, target, obj)
            if res.status == lp.OPTIMAL:
                lp.check_solution(A, target, res.x)
                if res.value <= 0:
                    return False
            elif res.status != lp.UNBOUNDED:
                raise InvariantViolation("member target became infeasible")
    return True


def _weyl_fixed(d: DivisorClass, p: Params) -> bool:
    return all(reflect(d, r, p) == d for r in simple_roots(p).simple_roots)


def _stabilizer_key(g: DivisorClass, d: DivisorClass) -> tuple:
    """Canonical form of g under point/factor permutations that fix d."""
    def blocks(gv, dv):
        out = []
        for val in sorted(set(dv)):
            out.append((val, tuple(sorted(x for x, y in zip(gv, dv) if y == val))))
        return tuple(out)
    return blocks(g.h, d.h), blocks(g.m, d.m)


def in_movable_cone(d: DivisorClass, p: Params) -> Membership:
    """D lies in Cone(G minus G_i) for every extremal generator G_i.

    Deletions related by a symmetry fixing D give the same answer, so one
    deletion per class is tested: a single one when D is Weyl-invariant,
    otherwise one per orbit of the point and factor permutations fixing D.
    The returned Membership carries the certificate of the last subcone
    tested, or the failing one.
    """
    check_compatible(d, p)
    gens = extremal_effective_generators(p)
    if _weyl_fixed(d, p):
        todo = [0]
    else:
        reps = {}
        for i, g in enumerate(gens):
            reps.setdefault(_stabilizer_key(g, d), i)
        todo = sorted(reps.values())
    last = None
    for i in todo:
        last = lp_member(gens[:i] + gens[i + 1:], d)
        if not last.member:
            return last
    return last


def orbit_sum_multiple(p: Params) -> Fraction:
    """The factor lambda with sum of all (-1)-divisors = lambda (-K)."""
    total = None
    for e in minus_one_divisors(p):
        total = e if total is None else total + e
    k = anticanonical(p)
    lam = Fraction(total.coords[0], k.coords[0])
    if any(Fraction(x) != lam * y for x, y in zip(total.coords, k.coords)):
        raise InvariantViolation(f"orbit sum {total} is not proportional to -K on X_{p}")
    if lam <= 0:
        raise InvariantViolation(f"orbit sum multiple {lam} is not positive")
    return lam
