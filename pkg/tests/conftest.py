from fractions import Fraction

import pytest

from fanohilbert.catalog import catalog_get, catalog_list
from fanohilbert.polytope import FanoPolytope, polar_dual

THREEFOLDS = ["B2", "C2", "CP1^3", "CP2xCP1", "CP3", "D2"]


def polar_of(name):
    return catalog_get(name).polar


def fano(*verts):
    return FanoPolytope(tuple(tuple(v) for v in verts))


def fr(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(params=catalog_list())
def entry(request):
    return catalog_get(request.param)


@pytest.fixture
def dp8():
    return polar_of("dP8")
