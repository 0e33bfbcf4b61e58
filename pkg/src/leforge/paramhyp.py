"""Parameterized hypersurfaces: image equations, fibers and multiple-point data.

A :class:`Parameterization` is a finite union of branches, each a polynomial
map from its own affine source into a shared target.  A multi-germ such as
the three planes normalizing ``xyz`` is one parameterization with three
branches.

The comparison complex is handled only through its constructible function
``p ↦ m(p) = |π^{-1}(p)| - 1``.  Its top characteristic polar multiplicity
is the intersection of the multiple-point cycle ``Σ m_C [C]`` with generic
hyperplanes; the lower one follows from the Euler relation at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .errors import PreconditionError, SamplingError
from .groebner import (
    INF, Ideal, colength_global, distinct_root_count, eliminate, ideal_quotient, is_finite,
    local_colength_origin, local_dim_origin, saturate,
)
from .lecycles import CoordTuple, is_ipa_deformation, polar_number
from .polyalg import Poly, Q, VarRing, as_rational, compose


@dataclass(frozen=True)
class Branch:
    """One polynomial map ``source -> target`` given by its component polynomials."""

    source: VarRing
    components: tuple

    def __post_init__(self):
        for c in self.components:
            if c.ring != self.source:
                raise ValueError("branch component over the wrong ring")

    def pullback(self, g: Poly) -> Poly:
        """``g ∘ π`` for a polynomial ``g`` on the target."""
        return compose(g, list(self.components), self.source)

    def fiber_ideal(self, point) -> Ideal:
        return Ideal(self.source, [c - as_rational(p) for c, p in zip(self.components, point)])


class Parameterization:
    """A finite union of polynomial branches into ``target``."""

    def __init__(self, target: VarRing, branches):
        branches = list(branches)
        if not branches:
            raise PreconditionError("a parameterization needs at least one branch")
        for b in branches:
            if len(b.components) != target.nvars:
                raise PreconditionError(
                    f"branch has {len(b.components)} components, target has {target.nvars} variables")
        self.target = target
        self.branches = tuple(branches)

    @classmethod
    def single(cls, source: VarRing, target: VarRing, components) -> "Parameterization":
        comps = tuple(c if isinstance(c, Poly) else source.parse(c) for c in components)
        return cls(target, [Branch(source, comps)])

    @classmethod
    def parse(cls, source_vars, target_vars, components) -> "Parameterization":
        """``components`` is a list of strings, or a list of such lists for a multi-germ."""
        target = VarRing(target_vars)
        if components and isinstance(components[0], str):
            components = [components]
        svars = source_vars if source_vars and isinstance(source_vars[0], (list, tuple)) else \
            [source_vars] * len(components)
        branches = []
        for sv, comps in zip(svars, components):
            src = VarRing(sv)
            branches.append(Branch(src, tuple(src.parse(c) for c in comps)))
        return cls(target, branches)

    @property
    def source_dim(self) -> int:
        return self.branches[0].source.nvars

    def __repr__(self):
        parts = ["(" + ", ".join(str(c) for c in b.components) + ")" for b in self.branches]
        return f"Parameterization({' ∪ '.join(parts)} -> {self.target.vars})"

    def to_dict(self) -> dict:
        return {
            "target": list(self.target.vars),
            "branches": [{"source": list(b.source.vars), "components": [str(c) for c in b.components]}
                         for b in self.branches],
        }

    def restrict_parameter(self, value=0) -> "Parameterization":
        """The slice ``π_{t0}`` of an unfolding (first source and target variable fixed)."""
        tgt = VarRing(self.target.vars[1:])
        out = []
        for b in self.branches:
            t = b.source.vars[0]
            src = VarRing(b.source.vars[1:])
            comps = []
            for c in b.components[1:]:
                c = c.subs({t: value}) if value else c
                comps.append(c.restrict_zero([t]))
            out.append(Branch(src, tuple(comps)))
        return Parameterization(tgt, out)


class Unfolding(Parameterization):
    """A parameterization of shape ``π(t, z) = (t, π_t(z))``."""

    def __init__(self, target: VarRing, branches):
        super().__init__(target, branches)
        ok, why = unfolding_shape(self)
        if not ok:
            raise PreconditionError(why)

    @classmethod
    def from_parameterization(cls, p: Parameterization) -> "Unfolding":
        return cls(p.target, p.branches)

    def central(self) -> Parameterization:
        return self.restrict_parameter(0)


def unfolding_shape(p: Parameterization):
    for b in p.branches:
        t = b.source.var(b.source.vars[0])
        if b.components[0] != t:
            return False, "first component of every branch must equal the first source variable"
    return True, ""


# ---------------------------------------------------------------------------
# combined rings


def _graph_ring(branch: Branch, target: VarRing, extra=()):
    """A ring holding renamed source variables (plus ``extra``) followed by the target variables."""
    used = set(target.vars)
    rename = {}
    for v in tuple(branch.source.vars) + tuple(extra):
        name, k = v, 0
        while name in used:
            k += 1
            name = f"{v}_{k}"
        used.add(name)
        rename[v] = name
    src = VarRing([rename[v] for v in branch.source.vars] + [rename[v] for v in extra])
    big = VarRing(tuple(src.vars) + tuple(target.vars))
    return rename, src, big


def _lift_source(p: Poly, rename: dict, big: VarRing) -> Poly:
    return compose(p, [big.var(rename[v]) for v in p.ring.vars], big)


def branch_image_ideal(branch: Branch, target: VarRing, source_ideal: Ideal | None = None) -> Ideal:
    """Ideal of the closure of ``π(V(source_ideal))`` in the target (the whole image by default)."""
    rename, src, big = _graph_ring(branch, target)
    gens = [big.var(x) - _lift_source(c, rename, big) for x, c in zip(target.vars, branch.components)]
    if source_ideal is not None:
        gens += [_lift_source(g, rename, big) for g in source_ideal.gens]
    return eliminate(Ideal(big, gens), src.vars).to_ring(target)


def image_equation(pi: Parameterization) -> Poly:
    """Reduced equation of the image hypersurface.

    Each branch's elimination ideal is prime, so its generator is already
    squarefree; a multi-germ multiplies the distinct branch equations.
    """
    if pi.target.nvars != pi.source_dim + 1:
        raise PreconditionError("image of a map from n-space to (n+1)-space expected")
    factors = []
    for b in pi.branches:
        gb = branch_image_ideal(b, pi.target).groebner()
        if not gb:
            raise PreconditionError("image is not a hypersurface (elimination ideal is zero)")
        if len(gb) != 1:
            raise PreconditionError("elimination ideal is not principal")
        g = gb[0].content_normalized()
        if any(g == h for h in factors):
            raise PreconditionError("two branches have the same image; map is not generically one-to-one")
        factors.append(g)
    f = pi.target.one()
    for g in factors:
        f = f * g
    return f.content_normalized()


# ---------------------------------------------------------------------------
# fibers


def fiber_count(pi: Parameterization, point) -> int:
    """Number of distinct source points (over all branches) mapping to ``point``."""
    if len(point) != pi.target.nvars:
        raise ValueError("point has the wrong length")
    total = 0
    for b in pi.branches:
        I = b.fiber_ideal(point)
        n = colength_global(I)
        if not is_finite(n):
            raise PreconditionError(f"fiber over {tuple(str(p) for p in point)} is not finite")
        if n:
            total += distinct_root_count(I)
    return total


def m_value(pi: Parameterization, point) -> int:
    """``m(p) = |π^{-1}(p)| - 1``."""
    k = fiber_count(pi, point)
    if k == 0:
        raise PreconditionError("point is not in the image")
    return k - 1


def generic_fiber_count(pi: Parameterization, samples: int = 3) -> int:
    """Smallest fiber size over images of a few seeded random rational source points."""
    rng = config.rng("generic-fiber")
    best = None
    for _ in range(samples):
        b = pi.branches[rng.randrange(len(pi.branches))]
        pt = [Q(rng.choice([-1, 1]) * rng.randint(1, 29), rng.randint(1, 7)) for _ in b.source.vars]
        k = fiber_count(pi, [c.evaluate(pt) for c in b.components])
        best = k if best is None else min(best, k)
    return best


# ---------------------------------------------------------------------------
# double points


def corank1_split(branch: Branch):
    """``(shared, doubled)`` source variables if the branch has the divided-difference shape.

    Every source variable but the last must occur verbatim as a component.
    """
    src = branch.source
    shared = src.vars[:-1]
    for v in shared:
        if src.var(v) not in branch.components:
            return None
    return shared, src.vars[-1]


def double_point_source_ideal(pi: Parameterization, branch_index: int = 0, saturate_diagonal=True) -> Ideal:
    """Divided differences of the last source variable, in the ring ``(shared..., y, y')``."""
    b = pi.branches[branch_index]
    split = corank1_split(b)
    if split is None:
        raise PreconditionError("divided differences need the shape (x_1..x_{n-1}, y) with each x_i a component")
    shared, y = split
    y2 = b.source.fresh(y + "_")
    pair = VarRing(tuple(b.source.vars) + (y2,))
    diag = pair.var(y) - pair.var(y2)
    gens = []
    for c in b.components:
        a = c.to_ring(pair)
        swapped = a.subs({y: pair.var(y2)})
        d = a - swapped
        if d:
            gens.append(d.exact_div(diag))
    I = Ideal(pair, gens)
    if saturate_diagonal and gens:
        I = saturate(I, Ideal(pair, [diag]))
    return I


def _pair_image(pi: Parameterization, index: int) -> Ideal:
    """Image of the self double-point locus of one branch."""
    b = pi.branches[index]
    if corank1_split(b) is not None:
        dd = double_point_source_ideal(pi, index)
        if dd.is_unit():
            return Ideal.unit(pi.target)
        y2 = dd.ring.vars[-1]
        rename, src, big = _graph_ring(Branch(b.source, b.components), pi.target, extra=(y2,))
        gens = [big.var(x) - _lift_source(c, rename, big) for x, c in zip(pi.target.vars, b.components)]
        lift = {v: big.var(rename[v]) for v in dd.ring.vars}
        gens += [compose(g, [lift[v] for v in dd.ring.vars], big) for g in dd.gens]
        return eliminate(Ideal(big, gens), src.vars).to_ring(pi.target)
    # general fallback: pairs (u, u') with equal images, off the diagonal
    src = b.source
    primes = [src.fresh(v + "_") for v in src.vars]
    pair = VarRing(tuple(src.vars) + tuple(primes))
    comps = [c.to_ring(pair) for c in b.components]
    swapped = [c.subs({v: pair.var(p) for v, p in zip(src.vars, primes)}) for c in comps]
    I = Ideal(pair, [a - s for a, s in zip(comps, swapped)])
    diag = Ideal(pair, [pair.var(v) - pair.var(p) for v, p in zip(src.vars, primes)])
    I = saturate(I, diag)
    if I.is_unit():
        return Ideal.unit(pi.target)
    return branch_image_ideal(Branch(pair, tuple(comps)), pi.target, I)


def _cross_image(pi: Parameterization, i: int, j: int) -> Ideal:
    """Image of the fiber product of two branches."""
    bi, bj = pi.branches[i], pi.branches[j]
    names = [f"a{k}" for k in range(bi.source.nvars)] + [f"b{k}" for k in range(bj.source.nvars)]
    pair = VarRing(names)
    na = bi.source.nvars
    ci = [compose(c, [pair.var(names[k]) for k in range(na)], pair) for c in bi.components]
    cj = [compose(c, [pair.var(names[na + k]) for k in range(bj.source.nvars)], pair) for c in bj.components]
    I = Ideal(pair, [a - b for a, b in zip(ci, cj)])
    if I.is_unit():
        return Ideal.unit(pi.target)
    return branch_image_ideal(Branch(pair, tuple(ci)), pi.target, I)


def multiple_point_candidates(pi: Parameterization) -> list:
    """Ideals whose union is the multiple-point set ``D`` (possibly overlapping)."""
    out = []
    for i in range(len(pi.branches)):
        out.append(_pair_image(pi, i))
    for i in range(len(pi.branches)):
        for j in range(i + 1, len(pi.branches)):
            out.append(_cross_image(pi, i, j))
    return [I for I in out if not I.is_unit()]


def _split(cands: list) -> list:
    """Refine candidates so that distinct entries share no component through the origin."""
    items = [Ideal(c.ring, c.groebner()) for c in cands]
    changed = True
    while changed:
        changed = False
        for a in range(len(items)):
            for b in range(len(items)):
                if a == b:
                    continue
                A, B = items[a], items[b]
                if A == B:
                    items.pop(b)
                    changed = True
                    break
                if local_dim_origin(A + B) < 1:
                    continue
                outside = saturate(A, B)
                if outside == A:
                    continue
                inside = saturate(A, outside) if not outside.is_unit() else A
                items[a:a + 1] = [I for I in (outside, inside) if not I.is_unit()]
                changed = True
                break
            if changed:
                break
    return items


def _slice_ratio(pi: Parameterization, C: Ideal, tag: str, dim: int = 1):
    """Preimage points per image point over ``dim`` random affine hyperplane sections of ``C``."""
    rng = config.rng(tag)
    tgt = pi.target
    for attempt in range(config.current().retry_budget):
        cuts = []
        for _ in range(dim):
            coeffs = [rng.choice([c for c in range(-6, 7) if c]) for _ in tgt.vars]
            level = Q(rng.randint(1, 9), rng.randint(1, 4))
            cuts.append(Poly(tgt, {tuple(1 if m == k else 0 for m in range(tgt.nvars)): Q(c)
                                   for k, c in enumerate(coeffs)}) - level)
        S = C + cuts
        if not is_finite(colength_global(S)):
            continue
        pts = distinct_root_count(S)
        if pts == 0:
            continue
        pre = 0
        for b in pi.branches:
            P = Ideal(b.source, [b.pullback(g) for g in S.gens])
            if is_finite(colength_global(P)):
                pre += distinct_root_count(P)
            else:
                raise PreconditionError("map is not finite over the multiple-point set")
        return Fraction(pre, pts)
    raise SamplingError("no transverse hyperplane section of a multiple-point component found")


def component_m(pi: Parameterization, C: Ideal) -> int:
    """Generic value of ``m`` along ``C``, from two independent hyperplane sections."""
    d = max(1, local_dim_origin(C))
    r1 = _slice_ratio(pi, C, "m-slice-1", d)
    r2 = _slice_ratio(pi, C, "m-slice-2", d)
    if r1 != r2 or r1.denominator != 1:
        raise SamplingError(f"fiber size is not constant along a multiple-point component ({r1} vs {r2})")
    return int(r1) - 1


@dataclass
class MultiplePointComponent:
    ideal: Ideal
    m: int
    dim: int
    intersection: int

    def to_dict(self) -> dict:
        return {"ideal": [str(g) for g in self.ideal.groebner()], "m": self.m, "dim": self.dim,
                "intersection": self.intersection}


def multiple_point_components(pi: Parameterization) -> list:
    """Components of ``D`` through the origin with their generic ``m`` and local dimension."""
    comps = []
    for C in _split(multiple_point_candidates(pi)):
        d = local_dim_origin(C)
        if d < 0:
            continue
        m = component_m(pi, C) if d >= 1 else None
        comps.append((C, m, d))
    return comps


def multiple_point_cycle_number(pi: Parameterization, cut, dim: int, comps=None):
    """``Σ m_C · (C · V(cut))_0`` over components of dimension ``dim``; returns total and records."""
    comps = multiple_point_components(pi) if comps is None else comps
    total, records = 0, []
    for C, m, d in comps:
        if d != dim:
            continue
        loc = local_colength_origin(C + list(cut))
        if not is_finite(loc):
            raise PreconditionError("slicing hyperplanes meet the multiple-point set improperly")
        total += m * loc
        records.append(MultiplePointComponent(C, m, d, loc))
    return total, records


@dataclass
class NdotMultiplicities:
    lambda0: int
    lambda1: int | None
    m_origin: int
    components: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"lambda0": self.lambda0, "m_origin": self.m_origin,
             "components": [c.to_dict() for c in self.components]}
        if self.lambda1 is not None:
            d["lambda1"] = self.lambda1
        return d


def origin_m(pi: Parameterization) -> int:
    return m_value(pi, [0] * pi.target.nvars)


def ndot_multiplicities(pi: Parameterization, slicing: CoordTuple) -> NdotMultiplicities:
    """Characteristic polar multiplicities of the comparison complex at the origin."""
    n = pi.target.nvars
    if n == 2:
        m0 = origin_m(pi)
        return NdotMultiplicities(m0, None, m0, [])
    if n != 3:
        raise PreconditionError("ndot multiplicities cover plane curves and surfaces in 3-space")
    m0 = origin_m(pi)
    comps = multiple_point_components(pi)
    if any(d > 1 for _, _, d in comps):
        raise PreconditionError("multiple-point set has a component of dimension above 1")
    lam1, records = multiple_point_cycle_number(pi, slicing.leading(1), 1, comps)
    return NdotMultiplicities(lam1 - m0, lam1, m0, records)


def ndot_polar_from_unfolding(pi: Unfolding, coords: CoordTuple) -> int:
    """``(Γ¹_{f,t} · V(t))_0`` for the image equation ``f`` of an unfolding."""
    f = image_equation(pi)
    if not is_ipa_deformation(f, coords):
        raise PreconditionError("unfolding is not an IPA-deformation with respect to t")
    return polar_number(f, coords, 1)


__all__ = [
    "Branch", "MultiplePointComponent", "NdotMultiplicities", "Parameterization", "Unfolding",
    "branch_image_ideal", "component_m", "corank1_split", "double_point_source_ideal", "fiber_count",
    "generic_fiber_count", "image_equation", "m_value", "multiple_point_candidates",
    "multiple_point_components", "multiple_point_cycle_number", "ndot_multiplicities",
    "ndot_polar_from_unfolding", "origin_m", "unfolding_shape",
]
