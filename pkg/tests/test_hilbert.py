from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanohilbert.errors import PoleError
from fanohilbert.hilbert import (
    SimplicialCone,
    brion_check,
    brion_limit_count,
    cone_partial_sum,
    msy_eval,
    parallelepiped_points,
    sample_points,
    series_coefficient_check,
    simplicial_series_eval,
)
from fanohilbert.polytope import lattice_points

from conftest import polar_of

EX_CONE = SimplicialCone((0, 0), ((1, 1), (-1, 1)))


def closed_form(x, y):
    return (1 + y) / ((1 - x * y) * (1 - y / x))


def test_parallelepiped_of_example_cone():
    assert sorted(parallelepiped_points(EX_CONE)) == [(0, 0), (0, 1)]


def test_simplicial_examples():
    assert simplicial_series_eval(EX_CONE, (2, Fraction(1, 3))) == Fraction(24, 5)
    unit = SimplicialCone((0, 0), ((1, 0), (0, 1)))
    assert simplicial_series_eval(unit, (Fraction(1, 2), Fraction(1, 3))) == 3


nonpole = st.sampled_from([Fraction(1, 2), Fraction(2), Fraction(3), Fraction(1, 3), Fraction(5, 2), Fraction(-2), Fraction(-1, 3)])


@settings(max_examples=40, deadline=None)
@given(nonpole, nonpole)
def test_simplicial_matches_closed_form(x, y):
    if x * y == 1 or y == x:
        with pytest.raises(PoleError):
            simplicial_series_eval(EX_CONE, (x, y))
    else:
        assert simplicial_series_eval(EX_CONE, (x, y)) == closed_form(x, y)


def test_simplicial_pole_names_generator():
    with pytest.raises(PoleError) as info:
        simplicial_series_eval(EX_CONE, (1, 1))
    assert info.value.factor in ((1, 1), (-1, 1))


def test_msy_cp1_matches_example_cone():
    cp1 = polar_of("CP1")
    assert msy_eval(cp1, (2, Fraction(1, 3))) == Fraction(24, 5)


def test_msy_pole_on_torus():
    for name in ("CP1", "dP8", "D2"):
        polar = polar_of(name)
        with pytest.raises(PoleError):
            msy_eval(polar, (1,) * polar.m + (Fraction(1, 2),))


def test_msy_removable_singularity_not_handled():
    # the closed form is finite at x = 1, the vertex terms are not
    assert closed_form(Fraction(1), Fraction(1, 3)) == Fraction(4, 3) / Fraction(4, 9)
    with pytest.raises(PoleError):
        msy_eval(polar_of("CP1"), (1, Fraction(1, 3)))


@pytest.mark.parametrize("name", ["CP1", "dP8", "CP3", "D2"])
def test_msy_partial_sums_converge_monotonically(name):
    polar = polar_of(name)
    x = (Fraction(3, 2), Fraction(5, 4), Fraction(7, 5))[: polar.m] + (Fraction(1, 100),)
    target = msy_eval(polar, x)
    errors = [target - cone_partial_sum(polar, x, L) for L in range(0, 13 if polar.m < 3 else 5)]
    assert all(e > 0 for e in errors)
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_brion_examples(dp8):
    assert brion_check(polar_of("CP1"), 1, (2,))
    assert brion_check(dp8, 1, (2, 3))


def test_brion_d2_random_points():
    d2 = polar_of("D2")
    avoid = [e for vc in d2.vertex_cones for e in vc.edges]
    for l in (1, 2):
        for x in sample_points(3, 5, seed=11, avoid=avoid):
            assert brion_check(d2, l, x)


def test_brion_pole_is_signalled(dp8):
    with pytest.raises(PoleError):
        brion_check(dp8, 1, (1, 2))


def test_series_coefficient_examples(dp8):
    assert series_coefficient_check(dp8, 1)
    assert brion_limit_count(dp8, 1) == 9
    assert series_coefficient_check(polar_of("CP1"), 0)
    assert brion_limit_count(polar_of("CP1"), 3) == 7


def test_lattice_count_equals_limit_of_vertex_sum(entry):
    polar = entry.polar
    for l in (1, 2):
        assert brion_limit_count(polar, l) == len(lattice_points(polar, l))


def test_sample_points_avoid_poles():
    pts = sample_points(2, 8, seed=3, avoid=[(1, -1)])
    assert len(set(pts)) == 8
    assert all(x[0] != x[1] for x in pts)
