import json
import random
from math import factorial

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from coxabc.cones import in_effective_cone
from coxabc.interp import (
    DEFAULT_PRIME,
    InterpConfig,
    InterpError,
    condition_matrix,
    condition_shape,
    h0,
    h0_consensus,
    homogeneous_monomials,
    is_effective_numeric,
    multidegree_monomials,
    sample_points,
    section_basis,
)
from coxabc.lattice import Params, anticanonical, exceptional, make_class, parse_divisor, zero
from coxabc.weyl import minus_one_divisors

CFG = InterpConfig()


def test_config_validation():
    for bad in (101, 10**6 + 1, 2**31 + 11, 2**32):
        with pytest.raises(InterpError):
            InterpConfig(prime=bad)
    assert InterpConfig(prime=1000003).prime == 1000003


def test_points_are_deterministic_and_nonzero():
    p = Params(3, 2, 3)
    a, b = sample_points(p, CFG), sample_points(p, CFG)
    assert a.shape == (5, 2, 2)
    assert (a == b).all() and (a > 0).all() and (a < DEFAULT_PRIME).all()
    assert not (sample_points(p, CFG.with_seed(1)) == a).all()


def test_monomial_counts():
    assert len(homogeneous_monomials(3, 3)) == 10
    assert len(multidegree_monomials(Params(3, 2, 3), (1, 1))) == 9
    assert homogeneous_monomials(2, 2) == ((2, 0), (1, 1), (0, 2))


@pytest.mark.parametrize("triple,text,shape", [
    ((2, 3, 3), "[3 | 1,1,1,1,1,1]", (6, 10)),
    ((3, 2, 3), "[1,1 | 1,1,1,1,1]", (5, 9)),
    ((2, 1, 3), "[2 | 2,0,0,0]", (3, 6)),
    ((2, 1, 3), "[2 | 3,0,0,0]", (6, 6)),
    ((2, 3, 4), "[2 | 1,1,1,1,1,1,1]", (7, 10)),
])
def test_condition_shapes(triple, text, shape):
    p = Params(*triple)
    d = parse_divisor(text, p)
    assert condition_matrix(p, d, CFG).shape == shape == condition_shape(p, d)


def _sympy_conditions(p, d, pts, q):
    """Rows (1/beta!) d^beta f at each point, by sympy differentiation, reduced mod q."""
    n_per = p.c - 1
    xs = sympy.symbols(f"x0:{p.dim}")
    monos = multidegree_monomials(p, d.h)
    exprs = []
    for mono in monos:
        e = sympy.Integer(1)
        for i, f in enumerate(mono):
            for v, ev in enumerate(f[1:]):
                e *= xs[i * n_per + v] ** ev
        exprs.append(e)
    rows = []
    for j, mj in enumerate(d.m):
        if mj <= 0:
            continue
        subs = dict(zip(xs, [int(v) for v in pts[j].reshape(-1)]))
        for total in range(mj):
            for beta in homogeneous_monomials(p.dim, total):
                row = []
                for e in exprs:
                    de = e
                    for v, bv in enumerate(beta):
                        if bv:
                            de = sympy.diff(de, xs[v], bv)
                    denom = 1
                    for bv in beta:
                        denom *= factorial(bv)
                    val = sympy.Integer(de.subs(subs)) / denom
                    assert val.q == 1
                    row.append(int(val) % q)
                rows.append(tuple(row))
    return rows


@pytest.mark.parametrize("triple,text", [
    ((2, 1, 3), "[3 | 2,1,1,0]"),
    ((3, 1, 3), "[1,2 | 2,1,0,0]"),
    ((2, 2, 3), "[4 | 3,1,1,1,0]"),
])
def test_condition_matrix_matches_sympy_derivatives(triple, text):
    p = Params(*triple)
    d = parse_divisor(text, p)
    mat = condition_matrix(p, d, CFG)
    ref = _sympy_conditions(p, d, sample_points(p, CFG), CFG.prime)
    assert sorted(map(tuple, mat.tolist())) == sorted(ref)


@pytest.mark.parametrize("triple,text,expected", [
    ((2, 3, 3), "[3 | 1,1,1,1,1,1]", 4),
    ((3, 2, 3), "[1,1 | 1,1,1,1,1]", 4),
    ((2, 1, 3), "[3 | 2,1,1,0]", 5),
    ((2, 2, 3), "[4 | 3,1,1,1,0]", 6),
])
def test_h0_matches_rational_rank(triple, text, expected):
    # integer points in a small box, rank over Q by sympy
    p = Params(*triple)
    d = parse_divisor(text, p)
    rng = np.random.default_rng(11)
    pts = rng.integers(2, 40, size=(p.n_points, p.n_factors, p.c - 1))
    big = 10**40  # no reduction: exact integers
    rows = _sympy_conditions(p, d, pts, big)
    ncols = len(multidegree_monomials(p, d.h))
    assert ncols - sympy.Matrix(rows).rank() == expected
    assert h0(p, d, CFG) == expected


@pytest.mark.parametrize("triple,text,expected", [
    ((2, 3, 3), "[3 | 1,1,1,1,1,1]", 4),
    ((2, 3, 3), "[1 | 1,1,0,0,0,0]", 1),
    ((2, 3, 4), "[2 | 1,1,1,1,1,1,1]", 3),
    ((2, 1, 3), "[2 | 3,0,0,0]", 0),
    ((2, 1, 3), "[3 | 1,1,1,1]", 6),
    ((2, 1, 3), "[-1 | 0,0,0,0]", 0),
    ((3, 2, 3), "[2,-1 | 0,0,0,0,0]", 0),
    ((2, 1, 3), "[0 | 0,0,0,0]", 1),
    ((2, 1, 3), "[0 | 0,-1,0,0]", 1),
])
def test_h0_goldens_three_seeds(triple, text, expected):
    p = Params(*triple)
    res = h0_consensus(p, parse_divisor(text, p), CFG, seeds=(0, 1, 2))
    assert res.unanimous and res.value == expected


def test_large_multiplicity_needs_large_prime():
    p = Params(2, 1, 3)
    # multiplicity check fires before the matrix is built
    cfg = InterpConfig(prime=1000003)
    with pytest.raises(InterpError):
        condition_matrix(p, make_class([0], [1000003, 0, 0, 0], p), cfg)


def test_section_basis_line_through_two_points():
    p = Params(2, 3, 3)
    d = parse_divisor("[1 | 1,1,0,0,0,0]", p)
    sb = section_basis(p, d, CFG)
    assert len(sb) == 1
    vals = sb.evaluate(sample_points(p, CFG).reshape(p.n_points, -1))[0]
    assert vals[0] == 0 and vals[1] == 0
    assert (vals[2:] != 0).all()


def test_section_basis_anticanonical():
    p = Params(2, 3, 3)
    sb = section_basis(p, anticanonical(p), CFG)
    assert len(sb) == 4
    data = json.loads(sb.to_json())
    assert len(data["basis"]) == 4 and len(data["monomials"]) == 10
    assert len(section_basis(p, parse_divisor("[1 | 1,1,1,0,0,0]", p), CFG)) == 0


def test_every_line_on_cubic_surface_has_one_section():
    p = Params(2, 3, 3)
    assert all(h0(p, e, CFG) == 1 for e in minus_one_divisors(p))
    assert not is_effective_numeric(p, -exceptional(1, p), CFG)


def test_explicit_points_and_permutation_symmetry():
    p = Params(2, 2, 3)
    pts = sample_points(p, CFG)
    d = parse_divisor("[4 | 2,2,1,1,1]", p)
    perm = [1, 0, 4, 2, 3]  # preserves the multiplicity pattern
    base = InterpConfig(points=tuple(map(tuple, pts.tolist())))
    moved = InterpConfig(points=tuple(map(tuple, pts[perm].tolist())))
    assert h0(p, d, base) == h0(p, d, moved) == h0(p, d, CFG)
    with pytest.raises(InterpError):
        h0(p, d, InterpConfig(points=((1, 2),)))


@st.composite
def classes(draw):
    p = Params(*draw(st.sampled_from([(2, 1, 3), (2, 2, 3), (3, 1, 3)])))
    h = draw(st.lists(st.integers(0, 3), min_size=p.a - 1, max_size=p.a - 1))
    m = draw(st.lists(st.integers(0, 3), min_size=p.n_points, max_size=p.n_points))
    return p, make_class(h, m, p)


@given(classes(), st.integers(0, 10))
def test_monotone_in_multiplicity(data, j):
    p, d = data
    j %= p.n_points
    if d.m[j] == 0:
        return
    relaxed = make_class(d.h, [v - (i == j) for i, v in enumerate(d.m)], p)
    assert h0(p, d, CFG) <= h0(p, relaxed, CFG)


@given(classes())
def test_numeric_effective_implies_cone_member(data):
    p, d = data
    if is_effective_numeric(p, d, CFG):
        assert in_effective_cone(d, p).member


def test_zero_class_constants():
    assert h0(Params(3, 2, 3), zero(Params(3, 2, 3)), CFG) == 1


def test_seeded_sample_of_minus_one_classes():
    rng = random.Random(3)
    for triple in [(2, 3, 4), (3, 2, 3), (2, 5, 3)]:
        p = Params(*triple)
        for e in rng.sample(list(minus_one_divisors(p)), 8):
            assert h0(p, e, CFG) == 1
