"""Shared fixtures: small rational arrangements and Gaudin instances with
known, hand-checked properties."""

from fractions import Fraction

import pytest

from bethearr.arrangement import Hyperplane, WeightedArrangement
from bethearr.gaudin import CartanDatum, GaudinProblem

F = Fraction


def line(b0, b1, b2, label=""):
    return Hyperplane(F(b0), (F(b1), F(b2)), label)


def point_arrangement(zs, exponents=None):
    """k = 1 arrangement of points t = z."""
    hyperplanes = [Hyperplane(F(-z), (F(1),), f"t-{z}") for z in zs]
    if exponents is None:
        exponents = [F(1)] * len(zs)
    return WeightedArrangement(1, hyperplanes, exponents)


@pytest.fixture
def generic3():
    """Three generic lines in C^2: t1, t2, t1 + t2 - 1.  dims [1, 3, 3]."""
    return WeightedArrangement(
        2,
        [line(0, 1, 0, "H1"), line(0, 0, 1, "H2"), line(-1, 1, 1, "H3")],
        [F(1), F(1), F(1)],
    )


@pytest.fixture
def generic4():
    """Four generic lines: t1, t2, t1 + t2 - 1, t1 + 2 t2 - 3.  dims [1, 4, 6],
    chi = 3."""
    return WeightedArrangement(
        2,
        [line(0, 1, 0, "H1"), line(0, 0, 1, "H2"),
         line(-1, 1, 1, "H3"), line(-3, 1, 2, "H4")],
        [F(1), F(1), F(1), F(1)],
    )


@pytest.fixture
def concurrent3():
    """Three lines through the origin: t1, t2, t1 + t2.  dims [1, 3, 2]."""
    return WeightedArrangement(
        2,
        [line(0, 1, 0), line(0, 0, 1), line(0, 1, 1)],
        [F(1), F(1), F(1)],
    )


@pytest.fixture
def points3():
    """k = 1, points {0, 1, 3}, unit exponents.  Critical points are the
    roots of 3 t^2 - 8 t + 3."""
    return point_arrangement([0, 1, 3])


@pytest.fixture
def sl2():
    return CartanDatum.sl2()


@pytest.fixture
def gaudin_2x1(sl2):
    """n = 2, m = (1, 1), k = 1, z = (0, 1): the hand-solved singlet case."""
    return GaudinProblem(sl2, ((1,), (1,)), (1,), (F(0), F(1)))


@pytest.fixture
def gaudin_3x1(sl2):
    """n = 3, m = (1, 1, 1), k = 1, z = (0, 1, 3): dim Sing V[1] = 2."""
    return GaudinProblem(sl2, ((1,), (1,), (1,)), (1,), (F(0), F(1), F(3)))


@pytest.fixture
def gaudin_2x2(sl2):
    """n = 2, m = (2, 2), k = 2, z = (0, 1)."""
    return GaudinProblem(sl2, ((2,), (2,)), (2,), (F(0), F(1)))
