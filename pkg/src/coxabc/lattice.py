"""Picard lattice of X_{a,b,c}, the blow-up of (P^{c-1})^{a-1} at b+c points.

A class is stored as ``sum h_i H_i - sum m_j E_j``; ``m_j`` is the multiplicity
imposed at point ``j``.  All arithmetic is on Python ints, so coordinates never
overflow.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class LatticeError(ValueError):
    pass


class NotMoriDreamError(LatticeError):
    """Raised when an operation needs 1/a + 1/b + 1/c > 1."""


@dataclass(frozen=True)
class Params:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not isinstance(getattr(self, name), int):
                raise LatticeError(f"{name} must be an integer")
        if self.a < 2 or self.c < 2 or self.b < 1:
            raise LatticeError(f"invalid parameters {self.triple}: need a, c >= 2 and b >= 1")
        if self.c == 2 and self.a <= 2:
            raise LatticeError(f"invalid parameters {self.triple}: c = 2 requires a > 2")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def n_factors(self) -> int:
        return self.a - 1

    @property
    def n_points(self) -> int:
        return self.b + self.c

    @property
    def rank(self) -> int:
        """Picard rank (a-1) + (b+c)."""
        return self.a - 1 + self.b + self.c

    @property
    def dim(self) -> int:
        """Dimension (a-1)(c-1) of the ambient product of projective spaces."""
        return (self.a - 1) * (self.c - 1)

    @property
    def kappa(self) -> int:
        """Degree normalizer ac - a - c."""
        return self.a * self.c - self.a - self.c

    def dual(self) -> Params:
        return Params(self.c, self.b, self.a)

    def to_json(self) -> str:
        return json.dumps({"a": self.a, "b": self.b, "c": self.c})

    @classmethod
    def from_json(cls, text: str) -> Params:
        obj = json.loads(text)
        try:
            return cls(int(obj["a"]), int(obj["b"]), int(obj["c"]))
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"bad Params JSON: {text!r}") from exc

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class DivisorClass:
    h: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @classmethod
    def from_coords(cls, coords: Sequence[int], p: Params) -> DivisorClass:
        if len(coords) != p.rank:
            raise LatticeError(f"expected {p.rank} coordinates, got {len(coords)}")
        k = p.n_factors
        return cls(tuple(coords[:k]), tuple(coords[k:]))

    @property
    def coords(self) -> tuple[int, ...]:
        return self.h + self.m

    def __add__(self, other: DivisorClass) -> DivisorClass:
        _same_shape(self, other)
        return DivisorClass(
            tuple(x + y for x, y in zip(self.h, other.h)),
            tuple(x + y for x, y in zip(self.m, other.m)),
        )

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-x for x in self.h), tuple(-x for x in self.m))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(k * x for x in self.h), tuple(k * x for x in self.m))

    __rmul__ = __mul__

    def __str__(self):
        return format_divisor(self)

    def to_dict(self) -> dict:
        return {"h": list(self.h), "m": list(self.m)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str, p: Params | None = None) -> DivisorClass:
        obj = json.loads(text) if isinstance(text, str) else text
        d = cls(tuple(obj["h"]), tuple(obj["m"]))
        if p is not None:
            check_compatible(d, p)
        return d


def _same_shape(d1: DivisorClass, d2: DivisorClass):
    if len(d1.h) != len(d2.h) or len(d1.m) != len(d2.m):
        raise LatticeError("divisor classes live in different lattices")


def check_compatible(d: DivisorClass, p: Params):
    if len(d.h) != p.n_factors or len(d.m) != p.n_points:
        raise LatticeError(
            f"divisor has shape ({len(d.h)}|{len(d.m)}), "
            f"Params {p} needs ({p.n_factors}|{p.n_points})"
        )


# -- named classes ----------------------------------------------------------

def zero(p: Params) -> DivisorClass:
    return DivisorClass((0,) * p.n_factors, (0,) * p.n_points)


def hyperplane(i: int, p: Params) -> DivisorClass:
    """H_i, 1-based."""
    if not 1 <= i <= p.n_factors:
        raise LatticeError(f"H_{i} out of range for {p}")
    h = [0] * p.n_factors
    h[i - 1] = 1
    return DivisorClass(tuple(h), (0,) * p.n_points)


def exceptional(j: int, p: Params) -> DivisorClass:
    """E_j, 1-based.  Stored with multiplicity -1."""
    if not 1 <= j <= p.n_points:
        raise LatticeError(f"E_{j} out of range for {p}")
    m = [0] * p.n_points
    m[j - 1] = -1
    return DivisorClass((0,) * p.n_factors, tuple(m))


def make_class(h: Iterable[int], m: Iterable[int], p: Params) -> DivisorClass:
    d = DivisorClass(tuple(h), tuple(m))
    check_compatible(d, p)
    return d


# -- the Mukai form ---------------------------------------------------------

def gram_matrix(p: Params) -> list[list[int]]:
    """Gram matrix of the Mukai form in the basis H_1..H_{a-1}, E_1..E_{b+c}."""
    k, r = p.n_factors, p.rank
    g = [[0] * r for _ in range(r)]
    for i in range(k):
        for j in range(k):
            g[i][j] = (p.c - 1) - (1 if i == j else 0)
    for j in range(k, r):
        g[j][j] = -1
    return g


def pairing_coords(x: Sequence[int], y: Sequence[int], c: int, k: int) -> int:
    """Mukai pairing of two coordinate vectors (h..., m...) with k = a-1 factors.

    Uses (sum h)(sum h') (c-1) - h.h' - m.m'; the sign of m cancels.
    """
    sx = sum(x[:k])
    sy = sum(y[:k])
    hh = sum(u * v for u, v in zip(x[:k], y[:k]))
    mm = sum(u * v for u, v in zip(x[k:], y[k:]))
    return (c - 1) * sx * sy - hh - mm


def mukai_pairing(d1: DivisorClass, d2: DivisorClass, p: Params) -> int:
    check_compatible(d1, p)
    check_compatible(d2, p)
    return pairing_coords(d1.coords, d2.coords, p.c, p.n_factors)


def anticanonical(p: Params) -> DivisorClass:
    """-K = c * sum H_i - (ac - a - c) * sum E_j."""
    return DivisorClass((p.c,) * p.n_factors, (p.kappa,) * p.n_points)


def anticanonical_degree(d: DivisorClass, p: Params) -> int:
    """deg D = (D, -K) / (ac - a - c) = c * sum(h) - sum(m)."""
    check_compatible(d, p)
    num = mukai_pairing(d, anticanonical(p), p)
    q, rem = divmod(num, p.kappa)
    if rem:
        raise LatticeError(f"(D,-K) = {num} not divisible by {p.kappa}")
    return q


def is_mori_dream(p: Params) -> bool:
    return Fraction(1, p.a) + Fraction(1, p.b) + Fraction(1, p.c) > 1


def require_mori_dream(p: Params):
    if not is_mori_dream(p):
        raise NotMoriDreamError(f"X_{p} is not a Mori dream space (1/a+1/b+1/c <= 1)")


SPORADIC = frozenset({(2, 3, 4), (2, 3, 5), (3, 2, 3), (3, 2, 4), (3, 2, 5)})
CASE_LABELS = ("del-pezzo-surface", "two-extra-points", "one-extra-point", "sporadic")


def _match_case(a: int, b: int, c: int) -> str | None:
    if a == 2 and c == 3 and 1 <= b <= 5:
        return "del-pezzo-surface"
    if a == 2 and b == 2 and c >= 2:
        return "two-extra-points"
    if b == 1 and a >= c >= 2 and (a, c) != (2, 2):
        return "one-extra-point"
    if (a, b, c) in SPORADIC:
        return "sporadic"
    return None


def classify_case(p: Params) -> str:
    """Which of the four known families X_{a,b,c} belongs to.

    The triple is tried as given and then with a and c exchanged, and the
    first family that matches wins, in the order del Pezzo, two extra points,
    one extra point, sporadic.
    """
    require_mori_dream(p)
    for a, b, c in (p.triple, p.dual().triple):
        label = _match_case(a, b, c)
        if label is not None:
            return label
    raise LatticeError(f"no case matches {p}")  # unreachable for Mori dream triples


# -- text format ------------------------------------------------------------

_DIVISOR_RE = re.compile(r"^\s*\[(?P<h>[^|\]]*)\|(?P<m>[^|\]]*)\]\s*$")


def _ints(field: str) -> tuple[int, ...]:
    field = field.strip()
    if not field:
        return ()
    try:
        return tuple(int(tok) for tok in field.split(","))
    except ValueError as exc:
        raise LatticeError(f"malformed integer list {field!r}") from exc


def parse_divisor(text: str, p: Params) -> DivisorClass:
    """Parse ``"[d1,...,d_{a-1} | m1,...,m_{b+c}]"``."""
    match = _DIVISOR_RE.match(text)
    if match is None:
        raise LatticeError(f"malformed divisor text {text!r}")
    d = DivisorClass(_ints(match["h"]), _ints(match["m"]))
    check_compatible(d, p)
    return d


def format_divisor(d: DivisorClass, p: Params | None = None) -> str:
    if p is not None:
        check_compatible(d, p)
    return "[" + ",".join(map(str, d.h)) + " | " + ",".join(map(str, d.m)) + "]"
