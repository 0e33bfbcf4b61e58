import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from leforge.deform import (
    check_unfolding_shape,
    cross_cap_count,
    family_coords,
    icis_complex_link_euler,
    nodal_slice_data,
    surface_invariants,
    triple_point_data,
    verify_cor_surface,
    verify_eq2_curve,
    verify_ipaimplies2,
    verify_milnor_formula,
    verify_thm_main,
    verify_thm_surface,
)
from leforge.errors import PreconditionError
from leforge.groebner import Ideal
from leforge.lecycles import CoordTuple
from leforge.paramhyp import Parameterization
from leforge.polyalg import VarRing

TXY = VarRing(("t", "x", "y"))
TXYZ = VarRing(("t", "X", "Y", "Z"))


def family(*comps, source=("t", "u"), target=("t", "x", "y")):
    return Parameterization.parse(list(source), list(target), list(comps))


def surface(*comps):
    return family(*comps, source=("t", "x", "y"), target=("t", "X", "Y", "Z"))


CUSP_FAMILY = family("t", "u^2 - t", "u*(u^2 - t)")
CUSP_TRIVIAL = family("t", "u^2", "u^3")
SMOOTH_CURVE = family("t", "u", "0")
NODE_TRIVIAL = Parameterization.parse(["t", "u"], ["t", "x", "y"], [["t", "u", "0"], ["t", "0", "u"]])
TACNODE = Parameterization.parse(["t", "u"], ["t", "x", "y"], [["t", "u", "u^2"], ["t", "u", "t - u^2"]])
CROSS_CAP = surface("t", "x", "y^2", "x*y")
S1 = surface("t", "x", "y^2", "y^3 + x^2*y - t*y")


def passed(verdicts):
    return all(v.passed for v in verdicts)


# -- shapes -------------------------------------------------------------------

def test_unfolding_shape_checks():
    assert check_unfolding_shape(CUSP_FAMILY)["ok"]
    assert not check_unfolding_shape(Parameterization.parse(["u"], ["x", "y"], ["u^2", "u^3"]))["ok"]
    assert not check_unfolding_shape(family("t + u", "u^2", "u^3"))["ok"]


# -- Milnor's formula and its refinement ----------------------------------------

def test_milnor_formula_on_cusp_family():
    formula, image = verify_milnor_formula(CUSP_FAMILY)
    assert (formula.lhs, formula.rhs) == (2, 2)
    assert {k: formula.details[k] for k in ("mu", "delta", "r")} == {"mu": 2, "delta": 1, "r": 1}
    assert image.passed


def test_milnor_formula_smooth_and_multi_branch():
    assert passed(verify_milnor_formula(SMOOTH_CURVE))
    # a trivially unfolded node keeps its node in every slice: δ = 1, r = 2
    formula, image = verify_milnor_formula(NODE_TRIVIAL)
    assert formula.passed and formula.details["delta"] == 1 and formula.details["r"] == 2
    assert image.passed and image.lhs == 0
    formula, image = verify_milnor_formula(TACNODE)
    assert (formula.details["mu"], formula.details["delta"], formula.details["r"]) == (3, 2, 2)
    assert image.passed and image.lhs == 1


def test_milnor_formula_rejects_non_nodal_slices():
    with pytest.raises(PreconditionError):
        verify_milnor_formula(CUSP_TRIVIAL)


def test_nodal_slice_data():
    data = nodal_slice_data(CUSP_FAMILY, Fraction(1, 4))
    assert data["nodes"] == 1 and data["ordered_pairs"] == 2


@pytest.mark.parametrize("t0", ["1/4", "1/9"])
def test_eq2_on_cusp_family(t0):
    v = verify_eq2_curve(CUSP_FAMILY, t0)
    assert (v.lhs, v.rhs) == (2, 2)
    assert (v.details["m0"], v.details["sigma_mu"], v.details["sigma_m"]) == (0, 1, 1)


def test_eq2_on_smooth_family():
    v = verify_eq2_curve(SMOOTH_CURVE, "1/4")
    assert (v.lhs, v.rhs) == (0, 0)


@given(st.integers(1, 5), st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(1, 2), max_denominator=30)
       .filter(bool))
@settings(max_examples=200, deadline=None)
def test_eq2_independent_of_scaling_and_t0(a, t0):
    pi = family("t", f"u^2 - {a}*t", f"u*(u^2 - {a}*t)")
    v = verify_eq2_curve(pi, t0)
    assert v.passed and v.lhs == 2


# -- IPAimplies2 and the main chain -------------------------------------------

def test_ipaimplies2_on_curves():
    v = verify_ipaimplies2(CUSP_FAMILY, CoordTuple.identity(TXY))
    assert (v.lhs, v.rhs) == (0, 0)
    assert verify_ipaimplies2(SMOOTH_CURVE, CoordTuple.identity(TXY)).passed


@pytest.mark.parametrize("pi", [CUSP_FAMILY, CUSP_TRIVIAL, SMOOTH_CURVE, TACNODE],
                         ids=["cusp-family", "cusp-trivial", "smooth", "tacnode"])
def test_main_chain_on_curve_families(pi):
    verdicts = verify_thm_main(pi, CoordTuple.identity(TXY))
    assert passed(verdicts)
    names = {v.name for v in verdicts}
    assert {"main.a.slice[0]", "main.b.polar", "main.c.ipa-implies-2", "main.conservation[0]"} <= names


def test_main_chain_values_on_cusp_family():
    by_name = {}
    for v in verify_thm_main(CUSP_FAMILY, CoordTuple.identity(TXY)):
        by_name.setdefault(v.name, []).append((v.lhs, v.rhs))
    assert by_name["main.a.slice[0]"] == [(2, 2)]
    assert by_name["main.b.polar"] == [(1, 1)]
    assert by_name["main.d.lambda0-slice"] == [(1, 1), (1, 1)]
    assert by_name["main.conservation[0]"] == [(2, 2), (2, 2)]


def test_main_chain_on_hypersurfaces():
    assert passed(verify_thm_main(f=TXY.parse("y^2"), coords=CoordTuple.identity(TXY)))
    assert passed(verify_thm_main(f=TXY.parse("x + t"), coords=CoordTuple.parse(TXY, ["t", "y", "x"])))


def test_main_chain_requires_ipa_tuple():
    with pytest.raises(PreconditionError):
        verify_thm_main(f=TXY.parse("x + t"), coords=CoordTuple.identity(TXY))


# -- surfaces -----------------------------------------------------------------

def test_cross_cap_invariants():
    inv = surface_invariants(CROSS_CAP)
    assert {k: inv[k] for k in ("T", "C", "delta", "P")} == {"T": 0, "C": 1, "delta": 0, "P": 0}
    assert passed(verify_thm_surface(CROSS_CAP))


def test_cross_cap_corollary():
    verdicts = {v.name: v for v in verify_cor_surface(CROSS_CAP)}
    assert verdicts["corollary[icis]"].details["chi"] == 1
    assert (verdicts["corollary[icis]"].lhs, verdicts["corollary[icis]"].rhs) == (0, 0)
    assert verdicts["complex-link-routes"].passed


def test_s1_counts():
    assert cross_cap_count(S1) == 2
    assert triple_point_data(S1)["T"] == 0
    inv = surface_invariants(S1)
    assert inv["delta"] == inv["delta_slice"]


def test_smooth_graph_surface():
    graph = surface("t", "x", "y", "0")
    inv = surface_invariants(graph)
    assert {k: inv[k] for k in ("T", "C", "delta", "P")} == {"T": 0, "C": 0, "delta": 0, "P": 0}
    assert passed(verify_thm_surface(graph))


def test_family_coords_lead_with_t():
    coords = family_coords(TXYZ)
    assert str(coords.forms[0]) == "t"
    assert all(f.coeffs[0] == 0 for f in coords.forms[1:])


# -- complex links of ICIS surfaces ---------------------------------------------

W = VarRing(("w", "x", "y", "z"))
ELL = W.parse("x + 2*y + 3*z")


@pytest.mark.parametrize("gens, mu, chi", [
    (["z", "w"], 0, 1),
    (["w", "x^2 + y^2 + z^2"], 1, 0),
    (["w", "x^2 + y^2 + z^3"], 2, 0),
])
def test_icis_complex_link(gens, mu, chi):
    res = icis_complex_link_euler(Ideal.parse(W, gens), ELL)
    assert (res["mu_surface"], res["chi"]) == (mu, chi)


def test_icis_rejects_curves():
    with pytest.raises(PreconditionError):
        icis_complex_link_euler(Ideal.parse(W, ["w", "x", "y"]), ELL)
