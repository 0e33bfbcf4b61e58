import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from leforge.polyalg import Poly, VarRing

# fixed example streams keep the exact-arithmetic suites reproducible and bounded in time
settings.register_profile("leforge", derandomize=True, deadline=None, database=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("leforge")


def to_sympy(p: Poly):
    syms = sympy.symbols(p.ring.vars)
    env = dict(zip(p.ring.vars, syms))
    return sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals=env))


def small_coeff():
    return st.integers(-4, 4)


@st.composite
def polys(draw, ring: VarRing, max_deg=4, max_terms=4, nonzero=False):
    """Random sparse polynomials with small integer coefficients."""
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(1 if nonzero else 0, max_terms))):
        deg = draw(st.integers(0, max_deg))
        exp = [0] * n
        for _ in range(deg):
            exp[draw(st.integers(0, n - 1))] += 1
        terms[tuple(exp)] = draw(st.integers(-4, 4).filter(bool))
    p = Poly.from_terms(ring, terms)
    if nonzero and p.is_zero():
        p = ring.one()
    return p
