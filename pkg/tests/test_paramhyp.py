import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from leforge.errors import PreconditionError
from leforge.groebner import Ideal
from leforge.lecycles import CoordTuple
from leforge.paramhyp import (
    Parameterization,
    Unfolding,
    double_point_source_ideal,
    fiber_count,
    generic_fiber_count,
    image_equation,
    m_value,
    multiple_point_components,
    ndot_multiplicities,
    ndot_polar_from_unfolding,
    unfolding_shape,
)
from leforge.polyalg import VarRing, compose

TXY = VarRing(("t", "x", "y"))


def curve(*comps):
    return Parameterization.parse(["u"], ["x", "y"], list(comps))


def umbrella_family():
    return Parameterization.parse(["t", "u"], ["t", "x", "y"], ["t", "u^2 - t", "u*(u^2 - t)"])


def triple_planes():
    src = [["a", "b"]] * 3
    comps = [["0", "a", "b"], ["a", "0", "b"], ["a", "b", "0"]]
    return Parameterization.parse(src, ["x", "y", "z"], comps)


def cross_cap():
    return Parameterization.parse(["x", "y"], ["X", "Y", "Z"], ["x", "y^2", "x*y"])


def up_to_sign(f, text):
    g = f.ring.parse(text)
    return f == g or f == -g


def test_image_equations():
    assert up_to_sign(image_equation(umbrella_family()), "y^2 - x^3 - t*x^2")
    assert up_to_sign(image_equation(curve("u^2", "u^3")), "y^2 - x^3")
    assert up_to_sign(image_equation(curve("u", "u^3 + 2*u")), "y - x^3 - 2*x")


def test_image_of_three_planes():
    assert up_to_sign(image_equation(triple_planes()), "x*y*z")


def test_fiber_counts():
    assert fiber_count(curve("u^2", "u^3"), [0, 0]) == 1
    assert fiber_count(triple_planes(), [0, 0, 0]) == 3
    assert fiber_count(curve("u^2 - 1", "u^3 - u"), [0, 0]) == 2
    assert generic_fiber_count(cross_cap()) == 1


def test_m_values():
    assert m_value(curve("u^2", "u^3"), [0, 0]) == 0
    assert m_value(triple_planes(), [0, 0, 0]) == 2
    assert m_value(curve("u^2 - 1", "u^3 - u"), [0, 0]) == 1
    with pytest.raises(PreconditionError):
        m_value(curve("u^2", "u^3"), [1, 2])


def test_double_point_ideals():
    I = double_point_source_ideal(umbrella_family())
    R = I.ring
    assert I == Ideal.parse(R, [f"u + {R.vars[-1]}", f"u^2 + u*{R.vars[-1]} + {R.vars[-1]}^2 - t"])
    J = double_point_source_ideal(cross_cap())
    assert J == Ideal.parse(J.ring, ["x", f"y + {J.ring.vars[-1]}"])
    graph = Parameterization.parse(["x", "y"], ["X", "Y", "Z"], ["x", "y", "x^2 + y^3"])
    assert double_point_source_ideal(graph).is_unit()


def test_ndot_triple_point():
    nd = ndot_multiplicities(triple_planes(), CoordTuple.generic(VarRing(("x", "y", "z")), "ndot"))
    assert (nd.lambda0, nd.lambda1, nd.m_origin) == (1, 3, 2)


def test_ndot_cusp_and_umbrella():
    assert ndot_multiplicities(curve("u^2", "u^3"), CoordTuple.identity(VarRing(("x", "y")))).lambda0 == 0
    ring = VarRing(("X", "Y", "Z"))
    nd = ndot_multiplicities(cross_cap(), CoordTuple.generic(ring, "ndot"))
    assert (nd.lambda0, nd.lambda1) == (1, 1)
    (comp,) = multiple_point_components(cross_cap())
    assert comp[1:] == (1, 1)


def test_ndot_polar_from_unfolding():
    coords = CoordTuple.identity(TXY)
    assert ndot_polar_from_unfolding(Unfolding.from_parameterization(umbrella_family()), coords) == 1
    trivial = Parameterization.parse(["t", "u"], ["t", "x", "y"], ["t", "u^2", "u^3"])
    assert ndot_polar_from_unfolding(Unfolding.from_parameterization(trivial), coords) == 0


def test_unfolding_shape():
    assert unfolding_shape(umbrella_family())[0]
    assert not unfolding_shape(Parameterization.parse(["t", "u"], ["t", "x", "y"], ["t + u", "u^2", "u^3"]))[0]
    with pytest.raises(PreconditionError):
        Unfolding.from_parameterization(Parameterization.parse(["t", "u"], ["t", "x", "y"], ["t+u", "u^2", "u^3"]))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=200, deadline=None)
def test_image_equation_vanishes_on_the_curve(a, b, c, d):
    pi = curve(f"u^{a} + {c}*u^{b}", f"u^{b} + {d}*u")
    try:
        f = image_equation(pi)
    except PreconditionError:
        assume(False)
    branch = pi.branches[0]
    assert compose(f, list(branch.components), branch.source).is_zero()
