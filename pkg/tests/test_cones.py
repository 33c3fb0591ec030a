import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxabc.cones import (
    ConeError,
    GeneratedCone,
    extremal_effective_generators,
    extremal_generators,
    in_effective_cone,
    in_movable_cone,
    is_big,
    lp_member,
    orbit_sum_multiple,
)
from coxabc.lattice import (
    Params,
    anticanonical,
    exceptional,
    hyperplane,
    is_mori_dream,
    make_class,
    mukai_pairing,
    zero,
)
from coxabc.roots import reflect, simple_roots
from coxabc.weyl import minus_one_divisors
from oracles import float_cone_member

SMALL = [(2, 1, 3), (2, 2, 3), (2, 3, 3), (3, 1, 3), (3, 2, 3)]


def _check(m, gens, target):
    if m.member:
        total = [sum(Fraction(l) * g for l, g in zip(m.coefficients, col)) for col in zip(*gens)]
        assert total == [Fraction(t) for t in target]
        assert all(l >= 0 for l in m.coefficients)
    else:
        assert all(sum(s * v for s, v in zip(m.separator, g)) >= 0 for g in gens)
        assert sum(s * t for s, t in zip(m.separator, target)) < 0


# -- lp_member -------------------------------------------------------------------

def test_lp_member_trivial_cases():
    p = Params(2, 1, 3)
    gens = [exceptional(j, p) for j in range(1, 5)]
    m = lp_member(gens, gens[0])
    assert m.member and m.coefficients == [1, 0, 0, 0]
    m = lp_member(gens, zero(p))
    assert m.member and all(v == 0 for v in m.coefficients)


def test_lp_member_negative_with_certificate():
    p = Params(2, 1, 3)
    gens = [exceptional(j, p) for j in range(1, 5)]
    target = -gens[0]
    m = lp_member(gens, target)
    assert not m.member
    _check(m, [g.coords for g in gens], target.coords)


def test_lp_member_dimension_mismatch():
    with pytest.raises(ConeError):
        lp_member([[1, 0]], [1, 0, 0])


def test_certificate_json():
    p = Params(2, 3, 3)
    out = json.loads(in_effective_cone(-exceptional(1, p), p).to_json())
    assert out["member"] is False and all(isinstance(s, str) for s in out["separator"])
    out = json.loads(in_effective_cone(anticanonical(p), p).to_json())
    assert out["member"] is True and all(Fraction(s) >= 0 for s in out["coefficients"])


# -- effective cone ----------------------------------------------------------------

@pytest.mark.parametrize("triple", SMALL + [(2, 3, 4)])
def test_anticanonical_effective(triple):
    p = Params(*triple)
    m = in_effective_cone(anticanonical(p), p)
    assert m.member
    _check(m, [g.coords for g in minus_one_divisors(p)], anticanonical(p).coords)


@pytest.mark.parametrize("triple", SMALL)
def test_basic_memberships(triple):
    p = Params(*triple)
    assert in_effective_cone(hyperplane(1, p), p).member
    assert not in_effective_cone(-exceptional(1, p), p).member


@st.composite
def small_classes(draw, triples=("2,2,3", "2,3,3", "3,2,3")):
    p = Params(*map(int, draw(st.sampled_from(triples)).split(",")))
    h = draw(st.lists(st.integers(-1, 4), min_size=p.a - 1, max_size=p.a - 1))
    m = draw(st.lists(st.integers(-2, 4), min_size=p.n_points, max_size=p.n_points))
    return p, make_class(h, m, p)


@given(small_classes())
def test_effective_agrees_with_highs(data):
    p, d = data
    gens = [g.coords for g in minus_one_divisors(p)]
    m = in_effective_cone(d, p)
    _check(m, gens, d.coords)
    assert m.member == float_cone_member(gens, d.coords)


@given(small_classes(), st.integers(0, 100))
def test_weyl_invariance(data, k):
    p, d = data
    roots = simple_roots(p).simple_roots
    alpha = roots[k % len(roots)]
    e = reflect(d, alpha, p)
    assert in_effective_cone(d, p).member == in_effective_cone(e, p).member
    assert in_movable_cone(d, p).member == in_movable_cone(e, p).member


@given(small_classes())
def test_movable_implies_effective(data):
    p, d = data
    if in_movable_cone(d, p).member:
        assert in_effective_cone(d, p).member


def test_movable_symmetry_shortcut_is_result_equivalent():
    # compare against testing every deletion, on a sample of classes
    rng = random.Random(5)
    p = Params(2, 3, 3)
    gens = extremal_effective_generators(p)
    for _ in range(25):
        d = make_class([rng.randint(0, 4)], [rng.randint(-1, 2) for _ in range(6)], p)
        full = all(lp_member(gens[:i] + gens[i + 1:], d).member for i in range(len(gens)))
        assert in_movable_cone(d, p).member == full


# -- extremal pruning ----------------------------------------------------------------

def test_all_27_lines_extremal():
    p = Params(2, 3, 3)
    cone = extremal_generators(GeneratedCone(p, list(minus_one_divisors(p))))
    assert len(cone.generators) == 27 and cone.pruned == []


def test_duplicates_and_zero_pruned():
    p = Params(2, 1, 3)
    gens = list(minus_one_divisors(p))
    cone = extremal_generators(GeneratedCone(p, gens + gens[:3] + [zero(p)]))
    assert cone.generators == gens
    assert len(cone.pruned) == 4


def test_extremal_idempotent_and_span_preserving():
    p = Params(2, 2, 3)
    gens = list(minus_one_divisors(p)) + [anticanonical(p), hyperplane(1, p)]
    once = extremal_generators(GeneratedCone(p, gens))
    twice = extremal_generators(once)
    assert twice.generators == once.generators and twice.pruned == once.pruned
    rng = random.Random(1)
    for _ in range(20):
        lam = [rng.randint(0, 3) for _ in gens]
        ray = [sum(l * x for l, x in zip(lam, col)) for col in zip(*(g.coords for g in gens))]
        assert lp_member(once.generators, ray).member


def test_empty_cone_rejected():
    with pytest.raises(ConeError):
        GeneratedCone(Params(2, 1, 3), [])


@pytest.mark.slow
def test_anticanonical_pruned_on_253():
    p = Params(2, 5, 3)
    k = anticanonical(p)
    cone = extremal_generators(GeneratedCone(p, list(minus_one_divisors(p)) + [k]))
    assert cone.pruned == [k]
    assert len(cone.generators) == 240


# -- bigness and movability -------------------------------------------------------------

@pytest.mark.parametrize("triple", SMALL)
def test_anticanonical_movable_and_big(triple):
    p = Params(*triple)
    k = anticanonical(p)
    assert in_movable_cone(k, p).member
    assert is_big(k, p)


@pytest.mark.parametrize("triple", SMALL)
def test_exceptional_on_boundary(triple):
    p = Params(*triple)
    e = exceptional(1, p)
    assert not is_big(e, p)
    m = in_movable_cone(e, p)
    assert not m.member
    gens = [g.coords for g in extremal_effective_generators(p) if g != e]
    _check(m, gens, e.coords)


def test_zero_not_big():
    p = Params(2, 3, 3)
    assert not is_big(zero(p), p)


def test_hyperplane_movable_233():
    p = Params(2, 3, 3)
    assert in_movable_cone(hyperplane(1, p), p).member
    assert is_big(hyperplane(1, p), p)  # H^2 = 1 > 0


def test_is_big_needs_full_dimension():
    p = Params(2, 1, 3)
    with pytest.raises(ConeError):
        is_big(exceptional(1, p), p, generators=[exceptional(j, p) for j in range(1, 5)])


# -- orbit sums -------------------------------------------------------------------------

@pytest.mark.parametrize("triple,lam", [
    ((2, 1, 3), 2), ((2, 2, 3), 4), ((2, 3, 3), 9), ((3, 1, 3), Fraction(10, 3)),
    ((3, 2, 3), 24), ((2, 3, 4), 63),
])
def test_orbit_sum_values(triple, lam):
    assert orbit_sum_multiple(Params(*triple)) == lam


def test_orbit_sum_positive_everywhere_small():
    for a in range(2, 9):
        for b in range(1, 9):
            for c in range(2, 9):
                if a + b + c > 10 or (a == 2 and c == 2):
                    continue
                p = Params(a, b, c)
                if is_mori_dream(p):
                    assert orbit_sum_multiple(p) > 0


def test_lemma_pairing_with_L():
    for triple, factor in (((2, 3, 4), 2), ((3, 2, 3), 3)):
        p = Params(*triple)
        k = anticanonical(p)
        assert all(mukai_pairing(k, e, p) == factor for e in minus_one_divisors(p))
