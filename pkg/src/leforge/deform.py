"""One-parameter unfoldings and the deformation formulas.

Every verification returns :class:`~leforge.report.Verdict` records that
carry both sides of an identity.  The two sides are always produced by
different computations; a record passes only on exact integer equality.

Slice aggregates over ``B_ε ∩ V(t - t0)`` are computed without locating
points.  Points of the nearby slice that belong to the central fiber are
isolated by saturating away the off-fiber part.  The count of those that
converge to the origin is cross-checked in two ways: the flat limit of the
family ideal at ``t = 0``, and agreement between two values of ``t0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .errors import PreconditionError
from .groebner import (
    INF, Ideal, colength_global, intersect, distinct_root_count, eliminate, is_finite, local_colength_origin,
    local_dim_origin, saturate,
)
from .lecycles import (
    CoordTuple, is_ipa_tuple, jacobian_ideal, le_numbers, milnor_number, polar_ideal, polar_number,
    verify_slice_formula,
)
from .paramhyp import (
    Branch, Parameterization, Unfolding, _cross_image, _pair_image, branch_image_ideal, corank1_split, double_point_source_ideal, fiber_count,
    generic_fiber_count, image_equation, multiple_point_components, multiple_point_cycle_number,
    ndot_multiplicities, ndot_polar_from_unfolding, origin_m, unfolding_shape,
)
from .polyalg import LinearForm, Poly, Q, VarRing, as_rational, compose, diff
from .report import Verdict

T0_CANDIDATES = (Fraction(1, 4), Fraction(1, 9), Fraction(1, 25))


# ---------------------------------------------------------------------------
# shape


def check_unfolding_shape(pi: Parameterization) -> dict:
    """Literal ``(t, π_t)`` shape plus a generic one-to-one check on the ``t = 0`` slice."""
    ok, why = unfolding_shape(pi)
    if not ok:
        return {"ok": False, "reason": why}
    if pi.source_dim < 2:
        return {"ok": False, "reason": "an unfolding needs a parameter and at least one more source variable"}
    count = generic_fiber_count(pi.restrict_parameter(0))
    if count != 1:
        return {"ok": False, "reason": f"central map is not generically one-to-one (fiber size {count})"}
    return {"ok": True, "reason": ""}


def _unfolding(pi) -> Unfolding:
    if isinstance(pi, Unfolding):
        return pi
    res = check_unfolding_shape(pi)
    if not res["ok"]:
        raise PreconditionError(res["reason"])
    return Unfolding.from_parameterization(pi)


# ---------------------------------------------------------------------------
# slices of a family


def slice_poly(f: Poly, coords: CoordTuple, t0) -> Poly:
    """``f`` on ``V(z_0 - t0)`` written in the remaining coordinates ``z_1..z_n``."""
    F, wring = coords.to_coords(f)
    t = wring.vars[0]
    g = F.subs({t: as_rational(t0)}) if t0 else F
    return g.restrict_zero([t])


def _on_fiber(K: Ideal, h: Poly) -> Ideal:
    """Primary components of ``K`` lying on ``V(h)`` (``K`` zero-dimensional or a family)."""
    off = saturate(K, Ideal(K.ring, [h]))
    if off.is_unit():
        return K
    return saturate(K, off)


def _on_fiber_colength(K: Ideal, h: Poly) -> int:
    """``colength_global`` of the part of ``K`` on ``V(h)``.

    Supports of the two parts are disjoint, so the colengths subtract; this
    avoids the second saturation of :func:`_on_fiber`.
    """
    total = colength_global(K)
    if not is_finite(total):
        return colength_global(_on_fiber(K, h))
    off = saturate(K, Ideal(K.ring, [h]))
    return total - (0 if off.is_unit() else colength_global(off))


def _flat_fibre(K: Ideal, t: Poly) -> Ideal:
    return saturate(K, Ideal(K.ring, [t])) + [t]


def _far_count(K: Ideal, t: Poly) -> int:
    """Points of the nearby fibres of ``K`` whose limit is not the origin.

    A global count on a rational slice ``t = t0`` includes these; the ball
    around the origin in the local statements does not.
    """
    if K.is_unit():
        return 0
    J = _flat_fibre(K, t)
    total = colength_global(J)
    if not is_finite(total):
        raise PreconditionError("flat fibre at t = 0 is not zero-dimensional")
    return total - local_colength_origin(J)


def _on_fiber_flat_limit(K: Ideal, F: Poly, t: Poly) -> tuple:
    """``(local, far)`` flat-limit counts for the part of ``K`` on ``V(F)``.

    Points converging to the origin split into those on and off the fibre, so
    the counts subtract. On-fibre critical curves of the family lie in
    ``V(∂F/∂t)``, which is the cheaper equation to saturate by.
    """
    whole = _flat_limit_colength(K, t)
    far = _far_count(K, t)
    off = saturate(K, Ideal(K.ring, [diff(F, F.ring.vars[0])]))
    if off.is_unit():
        return whole, far
    return whole - _flat_limit_colength(off, t), far - _far_count(off, t)


def _family_lambda_i_ideals(f: Poly, coords: CoordTuple, i: int) -> tuple:
    """Relative versions, over the whole family, of the two ideals in :func:`_slice_lambda_i_sum`."""
    F, wring = coords.to_coords(f)
    zs = wring.vars[1:]
    parts = [diff(F, v) for v in zs]
    jac = Ideal(wring, parts)

    def gamma(k):
        if k >= len(zs):
            return Ideal(wring)
        return saturate(Ideal(wring, parts[k:]), jac)

    cut = [wring.var(v) for v in zs[:i]]
    return gamma(i + 1) + [parts[i]] + cut, gamma(i) + cut, wring.var(wring.vars[0])


def slice_lambda0_ideal(g: Poly) -> Ideal:
    """``γ¹ + ⟨∂g/∂z_1⟩`` for ``g`` in its own coordinates; its points carry ``λ⁰_g``."""
    c = CoordTuple.identity(g.ring)
    return polar_ideal(g, c, 1) + [c.partial(g, 0)]


def family_lambda0_ideal(f: Poly, coords: CoordTuple) -> Ideal:
    """Relative version of :func:`slice_lambda0_ideal` over the whole family (``t`` is a parameter)."""
    F, wring = coords.to_coords(f)
    zs = wring.vars[1:]
    rel_jac = Ideal(wring, [diff(F, v) for v in zs])
    g1 = saturate(Ideal(wring, [diff(F, v) for v in zs[1:]]), rel_jac) if len(zs) > 1 else Ideal(wring)
    return g1 + [diff(F, zs[0])], F


def _flat_limit_colength(K: Ideal, t: Poly):
    """Local colength at the origin of the flat limit of a family ideal at ``t = 0``."""
    return local_colength_origin(saturate(K, Ideal(K.ring, [t])) + [t])


# ---------------------------------------------------------------------------
# Milnor's formula and the curve form of the main identity


def _fiber_product(pi: Parameterization, i: int, j: int) -> Ideal:
    """Pairs ``(a, b)`` with ``π_i(a) = π_j(b)`` for two branches of a curve parameterization."""
    bi, bj = pi.branches[i], pi.branches[j]
    R = VarRing(("a", "b"))
    ci = [compose(c, [R.var("a")], R) for c in bi.components]
    cj = [compose(c, [R.var("b")], R) for c in bj.components]
    return Ideal(R, [p - q for p, q in zip(ci, cj)])


def nodal_slice_data(pi: Unfolding, t0) -> dict:
    """Double-point data of the slice at ``t0``; raises unless every multiple point is a simple node.

    Ordered preimage pairs come from divided differences on each branch and
    from fiber products between branches.  The slice is nodal when every
    pair is a simple root and there are exactly half as many image points.
    """
    sl = pi.restrict_parameter(t0)
    pairs, simple, images = 0, 0, []
    for i in range(len(sl.branches)):
        dd = double_point_source_ideal(sl, i)
        if not dd.is_unit():
            n = colength_global(dd)
            if not is_finite(n):
                raise PreconditionError("slice has a non-isolated double-point locus")
            pairs += n
            simple += distinct_root_count(dd)
            images.append(_pair_image(sl, i))
    for i, j in itertools.combinations(range(len(sl.branches)), 2):
        fp = _fiber_product(sl, i, j)
        if fp.is_unit():
            continue
        n = colength_global(fp)
        if not is_finite(n):
            raise PreconditionError("two branches of the slice share a component")
        pairs += 2 * n
        simple += 2 * distinct_root_count(fp)
        images.append(_cross_image(sl, i, j))
    if pairs == 0:
        return {"ordered_pairs": 0, "nodes": 0}
    if simple != pairs:
        raise PreconditionError(f"non-nodal slice at t0={t0}: double-point pairs are not simple")
    union = images[0]
    for I in images[1:]:
        union = intersect(union, I)
    pts = distinct_root_count(union)
    if 2 * pts != pairs:
        raise PreconditionError(f"non-nodal slice at t0={t0}: points with more than two preimages")
    return {"ordered_pairs": pairs, "nodes": pts}


def _curve_family(pi) -> Unfolding:
    pi = _unfolding(pi)
    if pi.target.nvars != 3 or pi.source_dim != 2:
        raise PreconditionError("a one-parameter family of plane curves is required")
    return pi


def _t_coords(pi: Unfolding, coords: CoordTuple | None, steps: int = 1) -> CoordTuple:
    """Given coordinates, else the target variables if they form an IPA-tuple, else generic ones."""
    if coords is not None:
        return coords
    ident = CoordTuple.identity(pi.target)
    if is_ipa_tuple(image_equation(pi), ident, steps):
        return ident
    return family_coords(pi.target)


def _admissible_t0(pi: Unfolding, t0s=None) -> list:
    return list(t0s) if t0s else list(T0_CANDIDATES[:2])


def verify_milnor_formula(pi, t0=None) -> list:
    """``μ(f_0) = 2δ - r + 1`` with ``δ`` the node count of a nearby slice.

    The polar number ``(Γ¹_{f,t}·V(t))_0`` is the image Milnor number
    ``δ - r + 1``; it is reported as a second record, since it equals ``δ``
    only when the curve has a single branch.
    """
    pi = _curve_family(pi)
    t0 = as_rational(t0) if t0 is not None else T0_CANDIDATES[0]
    f = image_equation(pi)
    f0 = f.restrict_zero([pi.target.vars[0]])
    mu = milnor_number(f0)
    r = fiber_count(pi.central(), [0, 0])
    data = nodal_slice_data(pi, t0)
    delta = data["nodes"]
    sigma_mu = _on_fiber_milnor_sum(f, t0)
    if sigma_mu != delta:
        raise PreconditionError(f"slice at t0={t0} is not a nodal curve: Σμ = {sigma_mu}, nodes = {delta}")
    polar = ndot_polar_from_unfolding(pi, _t_coords(pi, None))
    det = {"mu": mu, "delta": delta, "r": r, "polar": polar, "t0": str(t0)}
    return [
        Verdict("milnor-formula", mu, 2 * delta - r + 1, det),
        Verdict("image-milnor-number", polar, delta - r + 1, det),
    ]


def _on_fiber_milnor_sum(f: Poly, t0) -> int:
    T = f.ring
    ft = f.subs({T.vars[0]: as_rational(t0)}).restrict_zero([T.vars[0]])
    J = jacobian_ideal(ft)
    return colength_global(J + [ft])


def verify_eq2_curve(pi, t0) -> Verdict:
    """``μ(f_0) = -m(0) + Σμ + Σm`` over the slice at ``t0``."""
    pi = _curve_family(pi)
    t0 = as_rational(t0)
    f = image_equation(pi)
    T = pi.target
    f0 = f.restrict_zero([T.vars[0]])
    mu = milnor_number(f0)
    ft = f.subs({T.vars[0]: t0}).restrict_zero([T.vars[0]])
    J = jacobian_ideal(ft)
    sigma_mu = colength_global(J + [ft])
    sigma_mu_on = colength_global(_on_fiber(J, ft))
    data = nodal_slice_data(pi, t0)
    sigma_m = data["ordered_pairs"] // 2
    m0 = origin_m(pi.central())
    det = {"t0": str(t0), "m0": m0, "sigma_mu": sigma_mu, "sigma_mu_on_fiber": sigma_mu_on,
           "sigma_m": sigma_m}
    if sigma_mu != sigma_mu_on:
        det["warning"] = "Tjurina-type and on-fiber Milnor aggregates differ"
    return Verdict("eq2", mu, -m0 + sigma_mu + sigma_m, det)


# ---------------------------------------------------------------------------
# IPAimplies2


def total_ndot(pi: Unfolding, coords: CoordTuple) -> dict:
    """Characteristic polar multiplicities of ``N•`` on the total space at the origin.

    ``λ⁰`` comes from the polar curve.  The top multiplicity is the
    multiple-point cycle cut by ``t, z_1, ...``.  For threefolds the middle
    one follows from the Euler relation ``λ⁰ - λ¹ + λ² = m(0)``.
    """
    n = pi.target.nvars
    comps = multiple_point_components(pi)
    lam0 = ndot_polar_from_unfolding(pi, coords)
    m0 = origin_m(pi)
    if n == 3:
        lam1, recs = multiple_point_cycle_number(pi, coords.leading(1), 1, comps)
        return {"lambda0": lam0, "lambda1": lam1, "m_origin": m0, "components": recs}
    if n == 4:
        lam2, recs = multiple_point_cycle_number(pi, coords.leading(2), 2, comps)
        return {"lambda0": lam0, "lambda1": lam0 + lam2 - m0, "lambda2": lam2, "m_origin": m0,
                "components": recs}
    raise PreconditionError("total spaces of curve or surface families only")


def family_coords(target: VarRing, tag: str = "family-coords") -> CoordTuple:
    """``(t, z_1..z_n)`` with ``t`` the first target variable and seeded generic ``z`` free of ``t``."""
    sub = CoordTuple.generic(VarRing(target.vars[1:]), tag)
    forms = [LinearForm.from_poly(target.var(target.vars[0]))]
    for fm in sub.forms:
        forms.append(LinearForm(target, [0] + list(fm.coeffs)))
    return CoordTuple(target, forms)


def _central_coords(coords: CoordTuple) -> CoordTuple:
    """``(z_1, ..., z_n)`` on ``V(t)``, where ``t = z_0`` is the first target variable."""
    ring = coords.ring
    t = ring.vars[0]
    if coords.forms[0].coeffs != tuple(Q(1) if i == 0 else Q(0) for i in range(ring.nvars)):
        raise PreconditionError("the first coordinate must be the parameter t")
    sub = VarRing(ring.vars[1:])
    forms = []
    for fm in coords.forms[1:]:
        if fm.coeffs[0]:
            raise PreconditionError("coordinates after t must not involve t")
        forms.append(Poly(sub, {tuple(1 if j == i else 0 for j in range(sub.nvars)): c
                                for i, c in enumerate(fm.coeffs[1:]) if c}))
    return CoordTuple(sub, forms)


def verify_ipaimplies2(pi, coords: CoordTuple | None = None) -> Verdict:
    """``λ⁰_{N•(f_0),z} = λ¹_{N•(f),(t,z)} - λ⁰_{N•(f),(t,z)}``."""
    pi = _unfolding(pi)
    coords = _t_coords(pi, coords)
    f = image_equation(pi)
    if not is_ipa_tuple(f, coords, 1):
        raise PreconditionError("(t, z) is not an IPA-tuple for f")
    central = pi.central()
    lhs = ndot_multiplicities(central, _central_coords(coords)).lambda0
    tot = total_ndot(pi, coords)
    det = {"lambda0_total": tot["lambda0"], "lambda1_total": tot["lambda1"], "m_origin": tot["m_origin"]}
    if "lambda2" in tot:
        det["lambda2_total"] = tot["lambda2"]
    return Verdict("ipa-implies-2", lhs, tot["lambda1"] - tot["lambda0"], det)


# ---------------------------------------------------------------------------
# the main theorem as a chain of links


def _slice_lambda0_sum(f: Poly, coords: CoordTuple, t0) -> int:
    g = slice_poly(f, coords, t0)
    K = slice_lambda0_ideal(g)
    if K.is_unit():
        return 0
    return _on_fiber_colength(K, g)


def _slice_lambda_i_sum(f: Poly, coords: CoordTuple, t0, i: int) -> int:
    """Global ``Σ_q λ^i_{f_{t0}}(q)`` over ``V(t - t0, z_1..z_i)``."""
    g = slice_poly(f, coords, t0)
    c = CoordTuple.identity(g.ring)
    cut = c.leading(i)
    a = colength_global(polar_ideal(g, c, i + 1) + [c.partial(g, i)] + cut)
    b = colength_global(polar_ideal(g, c, i) + cut)
    if not (is_finite(a) and is_finite(b)):
        raise PreconditionError(f"slice aggregate for λ^{i} is not zero-dimensional")
    return a - b


def verify_thm_main(pi=None, coords: CoordTuple | None = None, f: Poly | None = None, t0s=None) -> list:
    """All links of the main theorem with independently computed sides.

    ``pi`` may be omitted for a bare hypersurface family ``f``; then only the
    Lê-number links are checked.
    """
    if pi is not None:
        pi = _unfolding(pi)
        f_img = image_equation(pi)
        if f is None:
            f = f_img
        coords = _t_coords(pi, coords, max(1, pi.target.nvars - 1))
    if f is None:
        raise PreconditionError("need a parameterization or a hypersurface")
    coords = coords or CoordTuple.identity(f.ring)
    steps = max(1, f.ring.nvars - 1)
    if not is_ipa_tuple(f, coords, steps):
        raise PreconditionError("(t, z) is not an IPA-tuple for f")
    t0s = _admissible_t0(pi, t0s)
    out = []

    # (a) slice formula
    for v in verify_slice_formula(f, coords):
        v.name = "main.a." + v.name
        out.append(v)

    tot_le = le_numbers(f, coords)
    g0, sub0 = coords.restrict(f, 1)
    le0 = le_numbers(g0, sub0)

    # (d1) Σ_p λ⁰_{f_t0}(p) = λ¹_{f,(t,z)}(0), flat limit and two windows
    K, F = family_lambda0_ideal(f, coords)
    tvar = F.ring.var(F.ring.vars[0])
    flat, far0 = _on_fiber_flat_limit(K, F, tvar) if not K.is_unit() else (0, 0)
    for t0 in t0s:
        s = _slice_lambda0_sum(f, coords, t0)
        out.append(Verdict("main.d.lambda0-slice", s, tot_le.get(1) + far0,
                           {"t0": str(t0), "flat_limit": flat, "far": far0}))
    out.append(Verdict("main.d.lambda0-flat-limit", flat, tot_le.get(1)))

    # i >= 1: λ^i_{f_0} = λ^{i+1}_f, re-aggregated on the slice
    for i in range(1, max(le0.sigma_dim, 0) + 1):
        out.append(Verdict(f"main.i{i}.total", le0.get(i), tot_le.get(i + 1)))
        a, b, tv = _family_lambda_i_ideals(f, coords, i)
        far = _far_count(a, tv) - _far_count(b, tv)
        for t0 in t0s:
            out.append(Verdict(f"main.i{i}.slice", _slice_lambda_i_sum(f, coords, t0, i), le0.get(i) + far,
                               {"t0": str(t0), "far": far}))

    if pi is None:
        return out

    # (b) polar number against the image-equation path
    p_direct = polar_number(f, coords, 1)
    p_image = ndot_polar_from_unfolding(pi, coords)
    out.append(Verdict("main.b.polar", p_direct, p_image))

    # (c) IPAimplies2
    v = verify_ipaimplies2(pi, coords)
    v.name = "main.c." + v.name
    out.append(v)

    # (d2) N• slice aggregate
    tot = total_ndot(pi, coords)
    central = pi.central()
    nd0 = ndot_multiplicities(central, _central_coords(coords))
    if pi.target.nvars == 3:
        for t0 in t0s:
            try:
                nodes = nodal_slice_data(pi, t0)["nodes"]
            except PreconditionError:
                nodes = _cycle_slice_sum(tot["components"], pi.target, t0, 1)
            out.append(Verdict("main.d.ndot-slice", nodes, tot["lambda1"], {"t0": str(t0)}))
            lhs = le0.get(0) + nd0.lambda0 + far0
            rhs = _slice_lambda0_sum(f, coords, t0) + nodes
            out.append(Verdict("main.conservation[0]", lhs, rhs, {"t0": str(t0), "far": far0}))
    else:
        tv = pi.target.var(pi.target.vars[0])
        cut = coords.leading(2)[1:]
        far = sum(rec.m * _far_count(rec.ideal + cut, tv) for rec in tot["components"])
        for t0 in t0s:
            s = _cycle_slice_sum(tot["components"], pi.target, t0, 2, coords)
            out.append(Verdict("main.d.ndot-top-slice", s, tot["lambda2"] + far, {"t0": str(t0), "far": far}))
    return out


def _cycle_slice_sum(records, target: VarRing, t0, dim: int, coords: CoordTuple | None = None) -> int:
    """``Σ m_C · #(C ∩ V(t - t0, z_1..z_{dim-1}))`` counted globally."""
    tvar = target.var(target.vars[0])
    total = 0
    for rec in records:
        cut = [tvar - as_rational(t0)]
        if dim >= 2:
            cut += coords.leading(dim)[1:]
        n = colength_global(rec.ideal + cut)
        if not is_finite(n):
            raise PreconditionError("slice meets a multiple-point component improperly")
        total += rec.m * n
    return total


# ---------------------------------------------------------------------------
# stable invariants of surface unfoldings


def _minors(rows: list, k: int) -> list:
    """All ``k × k`` minors of a matrix of polynomials."""
    out = []
    nr, nc = len(rows), len(rows[0])
    for rs in itertools.combinations(range(nr), k):
        for cs in itertools.combinations(range(nc), k):
            out.append(_det([[rows[r][c] for c in cs] for r in rs]))
    return [m for m in out if m]


def _det(M: list):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0].ring.zero()


def _surface_family(pi) -> Unfolding:
    pi = _unfolding(pi)
    if pi.target.nvars != 4 or pi.source_dim != 3 or len(pi.branches) != 1:
        raise PreconditionError("a one-parameter unfolding of a mono-germ (C², 0) → (C³, 0) is required")
    b = pi.branches[0]
    src = b.source
    if b.components[1] != src.var(src.vars[1]):
        raise PreconditionError("corank-1 shape (t, x, p, q) with second component x required")
    return pi


def cross_cap_count(pi: Unfolding) -> int:
    """``C``: local colength of ``⟨∂p_0/∂y, ∂q_0/∂y⟩`` on the central germ."""
    b = _surface_family(pi).central().branches[0]
    y = b.source.vars[-1]
    return local_colength_origin(Ideal(b.source, [diff(c, y) for c in b.components[1:]]))


def _triple_ideal(b: Branch):
    """Second-order divided differences in ``(t, x, y1, y2, y3)``; diagonals saturated."""
    src = b.source
    y = src.vars[-1]
    names = tuple(src.vars[:-1]) + tuple(src.fresh(f"{y}{k}") for k in (1, 2, 3))
    R = VarRing(names)
    y1, y2, y3 = (R.var(v) for v in names[-3:])
    gens = []
    for c in b.components:
        if not c.degree_in(y) > 0:
            continue
        base = [compose(c, [R.var(v) for v in src.vars[:-1]] + [yy], R) for yy in (y1, y2, y3)]
        d12 = (base[0] - base[1]).exact_div(y1 - y2)
        d13 = (base[0] - base[2]).exact_div(y1 - y3)
        gens.append(d12)
        dd = d12 - d13
        if dd:
            gens.append(dd.exact_div(y2 - y3))
    I = Ideal(R, gens)
    if not gens or I.is_unit():
        return Ideal.unit(R)
    diag = Ideal(R, [(y1 - y2) * (y1 - y3) * (y2 - y3)])
    return saturate(I, diag)


def triple_point_data(pi: Unfolding, t0=None) -> dict:
    """``T`` from ordered triples: flat limit at the origin and the count in a nearby slice."""
    pi = _surface_family(pi)
    b = pi.branches[0]
    I = _triple_ideal(b)
    if I.is_unit():
        return {"T": 0, "triples_local": 0, "triples_slice": 0, "T_slice_points": 0}
    tvar = I.ring.var(I.ring.vars[0])
    local = _flat_limit_colength(I, tvar)
    if not is_finite(local) or local % 6:
        raise PreconditionError(f"ordered triple count {local} is not a multiple of 6")
    t0 = as_rational(t0) if t0 is not None else T0_CANDIDATES[0]
    sl = I + [tvar - t0]
    n = colength_global(sl)
    pts = distinct_root_count(sl) if is_finite(n) and n else 0
    # image-side count: points of the slice with three preimages
    img_pts = _triple_image_points(pi, I, t0)
    return {"T": local // 6, "triples_local": local, "triples_slice": pts, "T_slice_points": img_pts}


def _triple_image_points(pi: Unfolding, I: Ideal, t0) -> int:
    """Distinct image points of the slice triples; each should be a point with three preimages."""
    b = pi.branches[0]
    R = I.ring
    lift = [R.var(v) for v in R.vars[: b.source.nvars]]
    comps = tuple(compose(c, lift, R) for c in b.components)
    sl = I + [R.var(R.vars[0]) - as_rational(t0)]
    img = branch_image_ideal(Branch(R, comps), pi.target, sl)
    if img.is_unit():
        return 0
    return distinct_root_count(img)


def sigma_ideal(pi: Unfolding) -> Ideal:
    """Radical ideal of ``Σf`` (the multiple-point set of the total space)."""
    comps = multiple_point_components(pi)
    top = [C for C, m, d in comps if d == max(dd for _, _, dd in comps)]
    if not top:
        return Ideal.unit(pi.target)
    out = top[0]
    for C in top[1:]:
        out = intersect(out, C)
    return Ideal(pi.target, out.groebner())


def absolute_polar_ideal(S: Ideal, forms: list) -> Ideal:
    """Critical locus of ``forms`` restricted to the smooth part of ``V(S)``.

    ``S`` must define a reduced complete intersection surface; the
    rank-deficiency minors of the stacked Jacobian are saturated by the
    singular locus.
    """
    ring = S.ring
    gens = list(S.groebner())
    rows = [[diff(g, v) for v in ring.vars] for g in gens]
    codim = ring.nvars - 2
    sing = Ideal(ring, gens + _minors(rows, codim))
    rows_full = rows + [[diff(f, v) for v in ring.vars] for f in forms]
    crit = Ideal(ring, gens + _minors(rows_full, codim + len(forms)))
    if sing.is_unit():
        return crit
    return saturate(crit, sing)


def double_point_polar(pi: Unfolding, forms: list, cut: list) -> int:
    """``(Γ · V(cut))_0`` for the absolute polar curve of ``forms`` on ``Σf``, computed upstairs.

    The ordered double-point surface ``D²`` in ``(t, x, y, y')`` is cut out by
    two divided differences and maps 2:1 onto ``Σf`` with only the origin over
    the origin.  The critical locus of ``forms ∘ π`` on ``D²`` (its fold along
    the diagonal removed) therefore pushes forward to twice the polar curve.
    """
    b = pi.branches[0]
    raw = double_point_source_ideal(pi, 0, saturate_diagonal=False)
    R = raw.ring
    if raw.is_unit():
        return 0
    gens = list(raw.gens)
    if len(gens) != 2:
        raise PreconditionError("double-point surface is not cut out by two divided differences")
    lift = [R.var(v) for v in R.vars[: b.source.nvars]]

    def pull(g):
        return compose(compose(g, list(b.components), b.source), lift, R)

    rows = [[diff(g, v) for v in R.vars] for g in gens]
    crit_rows = rows + [[diff(pull(h), v) for v in R.vars] for h in forms]
    crit = Ideal(R, gens + _minors(crit_rows, len(crit_rows)))
    diag = Ideal(R, [R.var(R.vars[-2]) - R.var(R.vars[-1])])
    crit = saturate(crit, diag)
    sing = Ideal(R, gens + _minors(rows, 2))
    if not sing.is_unit():
        crit = saturate(crit, sing)
    if crit.is_unit():
        return 0
    val = local_colength_origin(crit + [pull(h) for h in cut])
    if not is_finite(val) or val % 2:
        raise PreconditionError(f"polar intersection upstairs is {val}, not an even finite number")
    return val // 2


def off_fiber_critical_count(f: Poly, coords: CoordTuple) -> int:
    """Critical points of ``f_{t0}`` off ``V(f_{t0})`` converging to the origin (flat limit)."""
    F, wring = coords.to_coords(f)
    rel = Ideal(wring, [diff(F, v) for v in wring.vars[1:]])
    off = saturate(rel, Ideal(wring, [F]))
    if off.is_unit():
        return 0
    return _flat_limit_colength(off, wring.var(wring.vars[0]))


def surface_invariants(pi, coords: CoordTuple | None = None, t0=None) -> dict:
    """``T, C, δ, P`` for an unfolding of a corank-1 germ, with the side data used."""
    pi = _surface_family(pi)
    coords = coords or family_coords(pi.target, "surface-coords")
    _central_coords(coords)
    C = cross_cap_count(pi)
    tp = triple_point_data(pi, t0)
    f = image_equation(pi)
    delta = polar_number(f, coords, 1)
    tvar = pi.target.var(pi.target.vars[0])
    z = coords.form(1)
    # polar points are counted in the slices V(t - t0), so the cut is V(t)
    P = double_point_polar(pi, [tvar, z], [tvar])
    P_z = double_point_polar(pi, [tvar, z], [z])
    return {"T": tp["T"], "C": C, "delta": delta, "delta_slice": off_fiber_critical_count(f, coords),
            "P": P, "P_with_z": P_z,
            "triple_data": tp, "coords": [str(fm) for fm in coords.forms]}


# ---------------------------------------------------------------------------
# surface theorem and corollary


def verify_thm_surface(pi, coords: CoordTuple | None = None) -> list:
    """``λ⁰_{N•(f_0),z} = T + C - δ + P``, plus the triple-point cross-check."""
    pi = _surface_family(pi)
    coords = coords or family_coords(pi.target, "surface-coords")
    f = image_equation(pi)
    if not is_ipa_tuple(f, coords, 1):
        raise PreconditionError("(t, z) is not an IPA-tuple for f")
    inv = surface_invariants(pi, coords)
    nd = ndot_multiplicities(pi.central(), _central_coords(coords))
    rhs = inv["T"] + inv["C"] - inv["delta"] + inv["P"]
    det = {k: inv[k] for k in ("T", "C", "delta", "delta_slice", "P", "P_with_z")}
    det.update({"lambda1_central": nd.lambda1, "m_origin": nd.m_origin})
    tp = inv["triple_data"]
    return [
        Verdict("surface-identity", nd.lambda0, rhs, det),
        Verdict("triple-point-count", tp["T"], tp["T_slice_points"], {"ordered_triples": tp["triples_local"]}),
        Verdict("a1-count", inv["delta"], inv["delta_slice"]),
    ]


def _lg_mu(gens: list) -> int:
    """Milnor number of the ICIS ``V(gens)`` by the Lê–Greuel colength chain."""
    mu = 0
    for k in range(1, len(gens) + 1):
        ring = gens[0].ring
        rows = [[diff(g, v) for v in ring.vars] for g in gens[:k]]
        I = Ideal(ring, list(gens[: k - 1]) + _minors(rows, k))
        val = local_colength_origin(I)
        if not is_finite(val):
            raise PreconditionError("not an isolated complete intersection singularity")
        mu = val - mu
    return mu


def _generic_sequence(gens: list, tag: str) -> list:
    """Triangular random combinations, so each partial intersection is an ICIS."""
    rng = config.rng(tag)
    out = []
    for i in range(len(gens)):
        h = gens[i]
        for j in range(i + 1, len(gens)):
            h = h + gens[j] * rng.randint(1, 7)
        out.append(h)
    return out


def icis_complex_link_euler(I: Ideal, ell: Poly) -> dict:
    """Euler characteristic of the complex link of an ICIS surface with respect to ``ell``.

    The Milnor fiber of ``ell`` on the surface is a smoothing of the ICIS
    curve ``V(I) ∩ V(ell)``, so ``χ = 1 - μ(V(I) ∩ V(ell))``.  The surface's
    own Milnor number and the Lê–Greuel sum are returned alongside.
    """
    gens = list(I.groebner())
    ring = I.ring
    if ring.nvars - len(gens) != 2:
        raise PreconditionError("expected a surface complete intersection (codimension = number of generators)")
    if local_dim_origin(I) != 2:
        raise PreconditionError("generators do not cut out a surface at the origin")
    seq = _generic_sequence(gens, "icis")
    mu_surface = _lg_mu(seq)
    mu_slice = _lg_mu([ell] + seq)
    return {"chi": 1 - mu_slice, "mu_surface": mu_surface, "mu_slice": mu_slice,
            "lg_sum": mu_surface + mu_slice}


def verify_cor_surface(pi, coords: CoordTuple | None = None) -> list:
    """``-m(0) = C - T - δ - χ(𝕃_{Σf,0})`` by the ICIS route when available, and by the altsum route."""
    pi = _surface_family(pi)
    coords = coords or family_coords(pi.target, "surface-coords")
    inv = surface_invariants(pi, coords)
    nd = ndot_multiplicities(pi.central(), _central_coords(coords))
    m0 = nd.m_origin
    chi_alt = nd.lambda1 - 2 * inv["T"] - inv["P"]
    out = []
    S = sigma_ideal(pi)
    tvar = pi.target.var(pi.target.vars[0])
    icis = None
    try:
        icis = icis_complex_link_euler(S, tvar)
    except PreconditionError as exc:
        icis_reason = str(exc)
    base = {"C": inv["C"], "T": inv["T"], "delta": inv["delta"], "P": inv["P"], "m_origin": m0}
    if icis is not None:
        chi = icis["chi"]
        out.append(Verdict("corollary[icis]", -m0, inv["C"] - inv["T"] - inv["delta"] - chi,
                           dict(base, chi=chi, route="icis", **{k: icis[k] for k in ("mu_surface", "mu_slice")})))
        out.append(Verdict("complex-link-routes", chi, chi_alt, {"icis": chi, "altsum": chi_alt}))
    out.append(Verdict("corollary[altsum]", -m0, inv["C"] - inv["T"] - inv["delta"] - chi_alt,
                       dict(base, chi=chi_alt, route="altsum",
                            note="algebraically dependent on the surface identity")))
    if icis is None:
        out[-1].details["icis_unavailable"] = icis_reason
    return out


__all__ = [
    "T0_CANDIDATES", "absolute_polar_ideal", "check_unfolding_shape", "cross_cap_count",
    "family_lambda0_ideal", "icis_complex_link_euler", "nodal_slice_data", "sigma_ideal", "slice_poly",
    "surface_invariants", "total_ndot", "triple_point_data", "verify_cor_surface", "verify_eq2_curve",
    "verify_ipaimplies2", "verify_milnor_formula", "verify_thm_main", "verify_thm_surface",
]
