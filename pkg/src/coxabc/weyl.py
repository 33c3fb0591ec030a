"""Weyl-group orbits on Pic(X_{a,b,c}) and the (-1)-divisors they produce."""
from __future__ import annotations

import hashlib
import logging
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .lattice import (
    DivisorClass,
    LatticeError,
    Params,
    anticanonical_degree,
    check_compatible,
    exceptional,
    format_divisor,
    mukai_pairing,
    pairing_coords,
    parse_divisor,
    require_mori_dream,
)
from .roots import reflect_coords, simple_roots

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 10**7


class OrbitLimitError(LatticeError):
    pass


class InvariantViolation(AssertionError):
    """An identity that must hold on every Mori dream input failed."""


@dataclass(frozen=True)
class OrbitSet:
    params: Params
    seed_class: DivisorClass
    elements: tuple[DivisorClass, ...]  # sorted by coordinates

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, d):
        return d in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.elements)
            object.__setattr__(self, "_idx", idx)
        return idx


def orbit(d: DivisorClass, p: Params, limit: int = DEFAULT_LIMIT) -> OrbitSet:
    """Closure of {d} under all simple reflections, by breadth-first search.

    Each frontier is expanded in sorted order, so the result does not depend
    on hashing order.
    """
    require_mori_dream(p)
    check_compatible(d, p)
    k, c = p.n_factors, p.c
    roots = [r.coords for r in simple_roots(p).simple_roots]
    seen = {d.coords}
    frontier = [d.coords]
    while frontier:
        nxt = set()
        for x in sorted(frontier):
            for alpha in roots:
                y = reflect_coords(x, alpha, c, k)
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if len(seen) > limit:
            raise OrbitLimitError(f"orbit of {d} on X_{p} exceeds {limit} elements")
        frontier = list(nxt)
    elements = tuple(DivisorClass.from_coords(x, p) for x in sorted(seen))
    return OrbitSet(p, d, elements)


def minus_one_divisors(p: Params, limit: int = DEFAULT_LIMIT) -> OrbitSet:
    """Weyl orbit of E_{b+c}; each element is checked to satisfy (D,D) = -1, deg D = 1."""
    orb = orbit(exceptional(p.n_points, p), p, limit)
    k, c = p.n_factors, p.c
    for e in orb:
        x = e.coords
        if pairing_coords(x, x, c, k) != -1 or c * sum(e.h) - sum(e.m) != 1:
            raise InvariantViolation(f"orbit element {e} is not a (-1)-class")
    return orb


def is_minus_one(d: DivisorClass, p: Params) -> bool:
    check_compatible(d, p)
    if mukai_pairing(d, d, p) != -1 or anticanonical_degree(d, p) != 1:
        return False
    return d in minus_one_divisors(p)


def canonical_form(d: DivisorClass, include_factor_symmetry: bool = False) -> DivisorClass:
    """Representative under permutations of the points (and optionally of the factors)."""
    h = tuple(sorted(d.h, reverse=True)) if include_factor_symmetry else d.h
    return DivisorClass(h, tuple(sorted(d.m, reverse=True)))


def classes_up_to_point_symmetry(
    s, include_factor_symmetry: bool = False
) -> list[tuple[DivisorClass, int]]:
    """Group classes by canonical form; returns (representative, count) pairs.

    Ordered by degree of the representative (sum of h) and then coordinates.
    """
    counts = Counter(canonical_form(d, include_factor_symmetry) for d in s)
    return sorted(counts.items(), key=lambda kv: (sum(kv[0].h), kv[0].coords))


def verify_sqm_duality(p: Params, limit: int = DEFAULT_LIMIT) -> dict:
    """Compare the (-1)-divisor census of X_{a,b,c} and X_{c,b,a}."""
    require_mori_dream(p)
    q = p.dual()
    sides = {}
    for key, params in (("abc", p), ("cba", q)):
        orb = minus_one_divisors(params, limit)
        self_pairings = Counter(mukai_pairing(e, e, params) for e in orb)
        degrees = Counter(anticanonical_degree(e, params) for e in orb)
        sides[key] = {
            "params": params.triple,
            "count": len(orb),
            "self_pairings": dict(self_pairings),
            "degrees": dict(degrees),
        }
    ok = (
        sides["abc"]["count"] == sides["cba"]["count"]
        and sides["abc"]["self_pairings"] == sides["cba"]["self_pairings"]
        and sides["abc"]["degrees"] == sides["cba"]["degrees"]
    )
    report = {"equal": ok, **sides}
    if not ok:
        raise InvariantViolation(f"(-1)-census differs between {p} and {q}: {report}")
    return report


# -- cache files ------------------------------------------------------------

def cache_path(directory: str | Path, p: Params, seed: DivisorClass) -> Path:
    digest = hashlib.sha1(format_divisor(seed).encode()).hexdigest()[:12]
    return Path(directory) / f"orbit_{p.a}_{p.b}_{p.c}_{digest}.txt"


_HEADER_RE = re.compile(r"^# params=(?P<params>\S+) seed=(?P<seed>\[.*\]) count=(?P<count>\d+)$")


def _header(p: Params, seed: DivisorClass, count: int) -> str:
    return f"# params={p.a},{p.b},{p.c} seed={format_divisor(seed)} count={count}"


def dumps_orbit(orb: OrbitSet) -> str:
    lines = [_header(orb.params, orb.seed_class, len(orb))]
    lines.extend(format_divisor(e) for e in orb.elements)
    return "\n".join(lines) + "\n"


def write_orbit(orb: OrbitSet, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_orbit(orb))
    return path


def read_orbit(path: str | Path, p: Params, seed: DivisorClass) -> OrbitSet:
    """Load a cache file, checking header, count, order and membership in the lattice."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("# "):
        raise LatticeError(f"{path}: missing header")
    match = _HEADER_RE.match(lines[0])
    if match is None:
        raise LatticeError(f"{path}: malformed header")
    if match["params"] != f"{p.a},{p.b},{p.c}":
        raise LatticeError(f"{path}: params mismatch")
    if match["seed"] != format_divisor(seed):
        raise LatticeError(f"{path}: seed mismatch")
    body = [parse_divisor(line, p) for line in lines[1:] if line.strip()]
    if int(match["count"]) != len(body):
        raise LatticeError(f"{path}: count mismatch")
    if [d.coords for d in body] != sorted(d.coords for d in body):
        raise LatticeError(f"{path}: not sorted")
    if seed not in set(body):
        raise LatticeError(f"{path}: seed class absent")
    return OrbitSet(p, seed, tuple(body))


def load_or_compute_minus_one(p: Params, directory: str | Path | None, limit: int = DEFAULT_LIMIT):
    """Return (orbit, source) where source is 'cache' or 'computed'."""
    seed = exceptional(p.n_points, p)
    if directory is None:
        return minus_one_divisors(p, limit), "computed"
    path = cache_path(directory, p, seed)
    if path.exists():
        try:
            return read_orbit(path, p, seed), "cache"
        except (LatticeError, ValueError) as exc:
            log.warning("ignoring corrupt cache %s: %s", path, exc)
    orb = minus_one_divisors(p, limit)
    write_orbit(orb, path)
    return orb, "computed"
