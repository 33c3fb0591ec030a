"""Finite check that Cox(X_{a,b,c}) is generated in anticanonical degree 1.

The pipeline:

1. lattice points of the degree-k slice of the effective cone (k times the
   convex hull of the (-1)-divisors), found by box enumeration over
   point-sorted multiplicities, cheap pairing inequalities, and an exact LP;
2. numeric effectivity of each candidate through interpolation;
3. all ways of writing a class D as a sum of degree-1 effective classes;
4. the rank of the span of all products of their sections, measured by
   evaluation at random points, compared with h0(D).
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import factorial

import numpy as np

from . import ffield
from .cones import lp_member
from .interp import InterpConfig, h0, sample_points, section_basis
from .lattice import (
    DivisorClass,
    LatticeError,
    Params,
    anticanonical_degree,
    check_compatible,
    format_divisor,
    gram_matrix,
    require_mori_dream,
)
from .weyl import canonical_form, minus_one_divisors

DEFAULT_CANDIDATE_CAP = 5_000_000
DEFAULT_DECOMPOSITION_CAP = 10**6


class ExplosionError(LatticeError):
    """An enumeration exceeded its configured cap."""


# -- lattice points of the degree-k slice -----------------------------------

def _nonincreasing(length: int, total: int, lo: int, hi: int):
    """Nonincreasing integer sequences in [lo, hi] with the given sum."""
    if length == 0:
        if total == 0:
            yield ()
        return
    top = min(hi, total - lo * (length - 1))
    bottom = max(lo, -((-total) // length))  # first entry is at least the mean
    for v in range(top, bottom - 1, -1):
        for rest in _nonincreasing(length - 1, total - v, lo, v):
            yield (v,) + rest


def _orbit_size(m: tuple[int, ...]) -> int:
    size = factorial(len(m))
    for count in Counter(m).values():
        size //= factorial(count)
    return size


def distinct_permutations(seq):
    """Distinct permutations of seq in lex-descending order of the input sorted descending."""
    items = sorted(Counter(seq).items(), reverse=True)
    n = len(seq)
    values = [v for v, _ in items]
    counts = [c for _, c in items]
    out: list = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for i, v in enumerate(values):
            if counts[i]:
                counts[i] -= 1
                prefix.append(v)
                rec(prefix)
                prefix.pop()
                counts[i] += 1

    rec([])
    return out


@dataclass
class SliceGeometry:
    """Bounds used to enumerate the degree-k slice, derived from the generators."""
    params: Params
    generators: np.ndarray  # (r, rank) coordinates
    gram: np.ndarray
    pair_min: np.ndarray  # min over generators G of (G, E) for each generator E
    h_lo: np.ndarray
    h_hi: np.ndarray
    m_lo: int
    m_hi: int

    @classmethod
    def from_generators(cls, p: Params, gens) -> SliceGeometry:
        x = np.array([g.coords for g in gens], dtype=np.int64)
        gram = np.array(gram_matrix(p), dtype=np.int64)
        pairs = x @ gram @ x.T
        k = p.n_factors
        return cls(
            p, x, gram, pairs.min(axis=0),
            x[:, :k].min(axis=0), x[:, :k].max(axis=0),
            int(x[:, k:].min()), int(x[:, k:].max()),
        )

    def prefilter(self, cands: np.ndarray, k: int) -> np.ndarray:
        """Keep rows D with (D, E) >= k * min_G (G, E) for every generator E."""
        if len(cands) == 0:
            return cands
        vals = cands @ self.gram @ self.generators.T
        return cands[(vals >= k * self.pair_min).all(axis=1)]


_geometry_cache: dict[Params, SliceGeometry] = {}


def slice_geometry(p: Params) -> SliceGeometry:
    if p not in _geometry_cache:
        _geometry_cache[p] = SliceGeometry.from_generators(p, list(minus_one_divisors(p)))
    return _geometry_cache[p]


def slice_representatives(p: Params, k: int, cap: int = DEFAULT_CANDIDATE_CAP) -> list[DivisorClass]:
    """Integral classes of degree k in Eff, one per orbit of point permutations.

    Representatives have multiplicities sorted in nonincreasing order.  The
    point permutations preserve the generator set, so this loses nothing.
    """
    require_mori_dream(p)
    if k < 1:
        raise ValueError("degree must be positive")
    geo = slice_geometry(p)
    gens = list(minus_one_divisors(p))
    npts = p.n_points
    ranges = [range(k * int(lo), k * int(hi) + 1) for lo, hi in zip(geo.h_lo, geo.h_hi)]
    survivors = []
    seen = 0
    for h in itertools.product(*ranges):
        total = p.c * sum(h) - k
        batch = [h + m for m in _nonincreasing(npts, total, k * geo.m_lo, k * geo.m_hi)]
        seen += len(batch)
        if seen > cap:
            raise ExplosionError(f"more than {cap} box candidates in degree {k} on X_{p}")
        if batch:
            survivors.extend(map(tuple, geo.prefilter(np.array(batch, dtype=np.int64), k)))
    out = []
    for coords in survivors:
        d = DivisorClass.from_coords([int(v) for v in coords], p)
        if lp_member(gens, d).member:
            out.append(d)
    return sorted(out, key=lambda d: d.coords)


def expand_point_orbit(d: DivisorClass) -> list[DivisorClass]:
    return [DivisorClass(d.h, m) for m in distinct_permutations(d.m)]


@dataclass
class SliceClass:
    representative: DivisorClass
    orbit_size: int
    h0: int


def effective_classes_up_to_degree(
    p: Params, k: int, cfg: InterpConfig | None = None, cap: int = DEFAULT_CANDIDATE_CAP
) -> list[SliceClass]:
    """Effective integral classes of degree exactly k, up to point permutations."""
    cfg = cfg or InterpConfig()
    out = []
    for d in slice_representatives(p, k, cap):
        dim = h0(p, d, cfg)
        if dim > 0:
            out.append(SliceClass(d, _orbit_size(d.m), dim))
    return out


# -- degree one -------------------------------------------------------------

@dataclass
class DegreeOneSet:
    params: Params
    classes: list[DivisorClass]
    h0: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def index(self) -> dict[DivisorClass, int]:
        return {d: i for i, d in enumerate(self.classes)}


def degree_one_effectives(p: Params, cfg: InterpConfig | None = None) -> DegreeOneSet:
    cfg = cfg or InterpConfig()
    classes, dims = [], {}
    for sc in effective_classes_up_to_degree(p, 1, cfg):
        for d in expand_point_orbit(sc.representative):
            classes.append(d)
            dims[d] = sc.h0
    classes.sort(key=lambda d: d.coords)
    return DegreeOneSet(p, classes, dims)


# -- decompositions ---------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    target: DivisorClass
    parts: tuple[int, ...]  # nonincreasing indices into a DegreeOneSet


def decompositions(d: DivisorClass, s: DegreeOneSet, cap: int = DEFAULT_DECOMPOSITION_CAP) -> list[Decomposition]:
    """All multisets of elements of s summing to d (exactly deg d of them)."""
    p = s.params
    check_compatible(d, p)
    k = anticanonical_degree(d, p)
    if k < 1:
        raise ValueError("target degree must be at least 1")
    if not s.classes:
        return []
    idx = s.index()
    geo = slice_geometry(p)
    parts = np.array([x.coords for x in s.classes], dtype=np.int64)
    # pairing of every degree-1 class with every (-1)-divisor, and its per-divisor minimum
    pair = parts @ geo.gram @ geo.generators.T
    pmin = pair.min(axis=0)
    lo = parts.min(axis=0)
    hi = parts.max(axis=0)
    memo: dict = {}
    count = 0

    def feasible(rem: np.ndarray, pr: np.ndarray, j: int) -> bool:
        return bool((rem >= j * lo).all() and (rem <= j * hi).all() and (pr >= j * pmin).all())

    def rec(rem: tuple, j: int, top: int) -> list[tuple[int, ...]]:
        nonlocal count
        key = (rem, j, top)
        if key in memo:
            return memo[key]
        out: list[tuple[int, ...]] = []
        if j == 1:
            i = idx.get(DivisorClass.from_coords(rem, p))
            if i is not None and i <= top:
                out.append((i,))
        else:
            arr = np.array(rem, dtype=np.int64)
            pr = arr @ geo.gram @ geo.generators.T
            for i in range(top, -1, -1):
                nrem = arr - parts[i]
                if not feasible(nrem, pr - pair[i], j - 1):
                    continue
                for tail in rec(tuple(int(v) for v in nrem), j - 1, i):
                    out.append((i,) + tail)
                    count += 1
                    if count > cap:
                        raise ExplosionError(f"more than {cap} decompositions of {d}")
        memo[key] = out
        return out

    found = rec(d.coords, k, len(s.classes) - 1)
    result = [Decomposition(d, t) for t in found]
    for dec in result:
        total = s.classes[dec.parts[0]]
        for i in dec.parts[1:]:
            total = total + s.classes[i]
        if total != d:
            raise AssertionError(f"decomposition {dec.parts} does not sum to {d}")
    return result


# -- multiplication map -----------------------------------------------------

def evaluation_points(p: Params, count: int, cfg: InterpConfig) -> np.ndarray:
    """Random affine points (flattened over factors), away from the blown-up points
    and from every coordinate hyperplane."""
    rng = np.random.default_rng([cfg.seed, p.a, p.b, p.c, 7919])
    blown = {tuple(row) for row in sample_points(p, cfg).reshape(p.n_points, -1)}
    pts = []
    while len(pts) < count:
        x = rng.integers(1, cfg.prime, size=p.dim, dtype=np.int64)
        if tuple(x) not in blown:
            pts.append(x)
    return np.array(pts, dtype=np.int64).reshape(count, p.dim)


def _reduce_rows(rows: np.ndarray, q: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    r, piv = ffield.rref(rows, q)
    return r[: len(piv)]


def multiplication_image_rank(
    p: Params,
    d: DivisorClass,
    decomps: list[Decomposition],
    cfg: InterpConfig | None = None,
    s: DegreeOneSet | None = None,
    target_h0: int | None = None,
    extra_points: int = 8,
) -> int:
    """Rank of the span of all products of sections over the given decompositions."""
    cfg = cfg or InterpConfig()
    if not decomps:
        return 0
    if s is None:
        s = degree_one_effectives(p, cfg)
    q = cfg.prime
    dim = h0(p, d, cfg) if target_h0 is None else target_h0
    pts = evaluation_points(p, dim + extra_points, cfg)
    values: dict[int, np.ndarray] = {}
    span = np.zeros((0, len(pts)), dtype=np.int64)
    pending: list[np.ndarray] = []
    for dec in decomps:
        if dec.target != d:
            raise ValueError("decomposition of a different class")
        factors = []
        for i in dec.parts:
            if i not in values:
                values[i] = section_basis(p, s.classes[i], cfg).evaluate(pts)
            factors.append(values[i])
        for choice in itertools.product(*(range(f.shape[0]) for f in factors)):
            row = np.ones(len(pts), dtype=np.int64)
            for f, t in zip(factors, choice):
                row = row * f[t] % q
            pending.append(row)
        if len(pending) >= 4 * len(pts):
            span = _reduce_rows(np.vstack([span] + pending), q)
            pending = []
    if pending:
        span = _reduce_rows(np.vstack([span] + pending), q)
    return span.shape[0]


def generated_in_degree(
    p: Params, d: DivisorClass, cfg: InterpConfig | None = None, s: DegreeOneSet | None = None
) -> bool:
    """Whether products of degree-1 sections span H^0(X, D)."""
    return _generation_row(p, d, cfg or InterpConfig(), s)["generated"]


def _generation_row(p: Params, d: DivisorClass, cfg: InterpConfig, s: DegreeOneSet | None) -> dict:
    dim = h0(p, d, cfg)
    if dim == 0:
        return {"h0": 0, "image_rank": 0, "generated": True, "decompositions": 0}
    if s is None:
        s = degree_one_effectives(p, cfg)
    decs = decompositions(d, s)
    rank = multiplication_image_rank(p, d, decs, cfg, s, target_h0=dim)
    if rank > dim:
        raise AssertionError(f"image rank {rank} exceeds h0 {dim} for {d}")
    return {"h0": dim, "image_rank": rank, "generated": rank == dim, "decompositions": len(decs)}


# -- degree bounds ----------------------------------------------------------

def regularity(p: Params) -> int:
    """Castelnuovo-Mumford regularity b(a-1)(c-1) - 1 of the Cox ring."""
    require_mori_dream(p)
    return p.b * (p.a - 1) * (p.c - 1) - 1


def generator_degree_bound(p: Params) -> int:
    """Upper bound b(a-1)(c-1) - 2 on the degree of a minimal generator."""
    return regularity(p) - 1


# -- report -----------------------------------------------------------------

REPORT_COLUMNS = ("params", "class", "degree", "h0", "image_rank", "generated", "seeds_agree", "wall_time_ms")


@dataclass
class ReportRow:
    params: str
    cls: str
    degree: int
    h0: int
    image_rank: int
    generated: bool
    seeds_agree: bool
    wall_time_ms: int
    orbit_size: int = 1
    decompositions: int = 0
    per_seed: list = field(default_factory=list)

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["class"] = rec.pop("cls")
        return rec


@dataclass
class CoxReport:
    params: Params
    max_degree: int
    prime: int
    seeds: list[int]
    rows: list[ReportRow]
    degree_one: list[dict]
    partial: bool = False

    @property
    def failures(self) -> list[ReportRow]:
        return [r for r in self.rows if not (r.generated and r.seeds_agree)]

    @property
    def verdict(self) -> bool:
        return not self.failures and not self.partial

    def to_dict(self) -> dict:
        return {
            "params": list(self.params.triple),
            "max_degree": self.max_degree,
            "prime": self.prime,
            "seeds": self.seeds,
            "partial": self.partial,
            "verdict": self.verdict,
            "degree_one": self.degree_one,
            "rows": [r.as_record() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for r in self.rows:
            writer.writerow(r.as_record())
        return buf.getvalue()


def cox_generation_report(
    p: Params,
    max_degree: int,
    cfg: InterpConfig | None = None,
    seeds=(0, 1, 2),
    time_limit: float | None = None,
    threads: int = 1,
) -> CoxReport:
    """Check surjectivity of the multiplication map for every effective class of
    degree 2..max_degree (one per orbit of point permutations), at each seed."""
    require_mori_dream(p)
    cfg = cfg or InterpConfig()
    seeds = list(seeds)
    start = time.monotonic()
    cfgs = [cfg.with_seed(sd) for sd in seeds]
    ones = [degree_one_effectives(p, c) for c in cfgs]
    if len({tuple(s.classes) for s in ones}) != 1:
        raise AssertionError("degree-one sets differ between seeds")
    degree_one = [
        {"class": format_divisor(sc.representative), "orbit_size": sc.orbit_size, "h0": sc.h0,
         "minus_one": canonical_form(sc.representative) in {canonical_form(e) for e in minus_one_divisors(p)}}
        for sc in effective_classes_up_to_degree(p, 1, cfgs[0])
    ]
    rows: list[ReportRow] = []
    partial = False

    def job(d: DivisorClass, k: int, orbit_size: int) -> ReportRow:
        t0 = time.monotonic()
        results = [_generation_row(p, d, c, s) for c, s in zip(cfgs, ones)]
        agree = len({(r["h0"], r["image_rank"], r["generated"]) for r in results}) == 1
        first = results[0]
        return ReportRow(
            str(p), format_divisor(d), k, first["h0"], first["image_rank"],
            all(r["generated"] for r in results), agree,
            int((time.monotonic() - t0) * 1000), orbit_size, first["decompositions"],
            [(r["h0"], r["image_rank"]) for r in results],
        )

    for k in range(2, max_degree + 1):
        if time_limit is not None and time.monotonic() - start > time_limit:
            partial = True
            break
        classes = effective_classes_up_to_degree(p, k, cfgs[0])
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            futures = [pool.submit(job, sc.representative, k, sc.orbit_size) for sc in classes]
            for fut in futures:
                if time_limit is not None and time.monotonic() - start > time_limit:
                    partial = True
                    fut.cancel()
                    continue
                rows.append(fut.result())
        if partial:
            break
    return CoxReport(p, max_degree, cfg.prime, seeds, rows, degree_one, partial)
