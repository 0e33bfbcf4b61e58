import pytest
from hypothesis import assume, given, settings

from leforge.errors import PreconditionError
from leforge.groebner import Ideal, colength_global
from leforge.lecycles import (
    CoordTuple,
    critical_dim,
    dynamic_intersection_check,
    ipa_check,
    is_ipa_deformation,
    is_ipa_tuple,
    jacobian_ideal,
    le_numbers,
    milnor_number,
    polar_ideal,
    polar_number,
    verify_slice_formula,
)
from leforge.polyalg import VarRing

from conftest import polys

XY = VarRing(("x", "y"))
YX = VarRing(("y", "x"))
TXY = VarRing(("t", "x", "y"))
XYZ = VarRing(("x", "y", "z"))

UMBRELLA = TXY.parse("y^2 - x^3 - t*x^2")
CUSP = XY.parse("y^2 - x^3")


def ident(ring):
    return CoordTuple.identity(ring)


def test_jacobian_ideals():
    assert jacobian_ideal(CUSP) == Ideal.parse(XY, ["-3*x^2", "2*y"])
    assert jacobian_ideal(UMBRELLA) == Ideal.parse(TXY, ["-x^2", "-3*x^2 - 2*t*x", "2*y"])
    assert jacobian_ideal(XY.parse("x")).is_unit()


def test_polar_curve_of_umbrella_family():
    assert polar_ideal(UMBRELLA, ident(TXY), 1) == Ideal.parse(TXY, ["3*x + 2*t", "y"])


def test_polar_ideal_edge_cases():
    assert polar_ideal(YX.parse("y^2"), ident(YX), 1).is_unit() is False
    assert polar_ideal(XY.parse("y^2"), ident(XY), 1).is_unit()
    assert polar_ideal(CUSP, ident(XY), 2).is_zero()


def test_polar_numbers():
    assert polar_number(UMBRELLA, ident(TXY), 1) == 1
    assert polar_number(CUSP, ident(XY), 1) == 1
    assert polar_number(XY.parse("y^2"), ident(XY), 1) == 0


def test_le_numbers_examples():
    assert le_numbers(CUSP, ident(XY)).values == {0: 2}
    assert le_numbers(XY.parse("y^2"), ident(XY)).values == {0: 0, 1: 1}
    assert le_numbers(UMBRELLA, ident(TXY)).get(1) == 1


def test_milnor_numbers():
    assert milnor_number(CUSP) == 2
    assert milnor_number(XY.parse("x*y")) == 1
    assert milnor_number(XY.parse("x")) == 0
    with pytest.raises(PreconditionError):
        milnor_number(XY.parse("y^2"))


def test_ipa_examples():
    assert is_ipa_deformation(UMBRELLA, ident(TXY))
    assert not is_ipa_deformation(YX.parse("y^2"), ident(YX))
    assert is_ipa_deformation(CUSP, ident(XY))
    assert ipa_check(UMBRELLA, ident(TXY))["agree"]


def test_ipa_tuples():
    assert is_ipa_tuple(UMBRELLA, ident(TXY), 2)
    assert is_ipa_tuple(UMBRELLA, ident(TXY), 0)
    assert not is_ipa_tuple(YX.parse("y^2"), ident(YX), 1)


@pytest.mark.parametrize("ring, text, coords", [
    (TXY, "y^2 - x^3 - t*x^2", None),
    (TXY, "x^2 + y^2 + t^2", None),
    (TXY, "x + t", ["t", "y", "x"]),
])
def test_slice_formula(ring, text, coords):
    c = CoordTuple.parse(ring, coords) if coords else ident(ring)
    verdicts = verify_slice_formula(ring.parse(text), c)
    assert verdicts and all(v.passed for v in verdicts)


def test_slice_formula_values_for_umbrella():
    (v,) = verify_slice_formula(UMBRELLA, ident(TXY))
    assert (v.lhs, v.rhs) == (2, 2)
    assert v.details == {"polar_number": 1, "lambda1_total": 1}


def test_dynamic_intersection():
    assert dynamic_intersection_check(UMBRELLA, ident(TXY), 1).passed


def test_generic_coordinates_are_seeded():
    a = CoordTuple.generic(XYZ, "t")
    assert a == CoordTuple.generic(XYZ, "t")
    assert all(all(c != 0 for c in f.coeffs) for f in a.forms)


@given(polys(XY, max_deg=4, max_terms=4, nonzero=True))
@settings(max_examples=200, deadline=None)
def test_isolated_lambda0_is_milnor_number(f):
    f = f - f.constant_term()
    assume(not f.is_zero() and critical_dim(f) == 0)
    assert le_numbers(f, CoordTuple.generic(XY, "prop")).values == {0: milnor_number(f)}


@given(polys(XYZ, max_deg=4, max_terms=3, nonzero=True))
@settings(max_examples=200, deadline=None)
def test_le_numbers_nonnegative(f):
    f = f - f.constant_term()
    assume(not f.is_zero())
    try:
        le = le_numbers(f, CoordTuple.generic(XYZ, "prop"))
    except PreconditionError:
        return
    assert all(v >= 0 for v in le.values.values())
    if le.sigma_dim == 0:
        assert le.get(0) <= colength_global(jacobian_ideal(f))
