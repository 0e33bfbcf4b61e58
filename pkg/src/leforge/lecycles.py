"""Relative polar ideals, Lê numbers and isolated-polar-activity tests.

All ideals are kept in the original variables.  A coordinate tuple
``z = (z_0, ..., z_n)`` of linear forms enters in two places only:

* partial derivatives ``∂f/∂z_k`` are the columns of the inverse coordinate
  matrix applied to the ordinary gradient, and
* hyperplanes ``V(z_0, ..., z_{k-1})`` are cut out by the forms themselves.

Restrictions ``f|V(z_0..z_{i-1})`` are the one place where the change of
coordinates is carried out literally, because the restricted function must
live in a smaller polynomial ring.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field

from . import config
from .errors import DecompositionError, PreconditionError
from .groebner import INF, Ideal, is_finite, local_colength_origin, local_dim_origin, saturate
from .polyalg import LinearForm, Poly, Q, VarRing, compose, diff, inverse_matrix
from .report import Verdict


class CoordTuple:
    """An ordered tuple of linearly independent linear forms ``(z_0, ..., z_n)``."""

    __slots__ = ("ring", "forms", "matrix", "inverse", "names")

    def __init__(self, ring: VarRing, forms):
        forms = [f if isinstance(f, LinearForm) else LinearForm.from_poly(f) for f in forms]
        if len(forms) != ring.nvars:
            raise PreconditionError(f"need {ring.nvars} coordinate forms, got {len(forms)}")
        for f in forms:
            if f.ring != ring:
                raise ValueError("coordinate form over a different ring")
        self.ring = ring
        self.forms = tuple(forms)
        self.matrix = [list(f.coeffs) for f in forms]
        try:
            self.inverse = inverse_matrix(self.matrix)
        except PreconditionError:
            raise PreconditionError("coordinate forms are linearly dependent") from None
        names = []
        for i, f in enumerate(forms):
            plain = [j for j, c in enumerate(f.coeffs) if c]
            if len(plain) == 1 and f.coeffs[plain[0]] == 1 and ring.vars[plain[0]] not in names:
                names.append(ring.vars[plain[0]])
            else:
                names.append(None)
        for i, nm in enumerate(names):
            if nm is None:
                cand, k = f"z{i}", 0
                while cand in names or cand in ring:
                    k += 1
                    cand = f"z{i}_{k}"
                names[i] = cand
        self.names = tuple(names)

    @classmethod
    def identity(cls, ring: VarRing) -> "CoordTuple":
        return cls(ring, [LinearForm.from_poly(v) for v in ring.gens()])

    @classmethod
    def parse(cls, ring: VarRing, texts) -> "CoordTuple":
        return cls(ring, [LinearForm.parse(t, ring) for t in texts])

    @classmethod
    def generic(cls, ring: VarRing, tag: str = "coords", fixed=()) -> "CoordTuple":
        """Seeded random coordinates; ``fixed`` forms (text or LinearForm) lead the tuple."""
        rng = config.rng(tag)
        forms = [f if isinstance(f, LinearForm) else LinearForm.parse(f, ring) for f in fixed]
        while len(forms) < ring.nvars:
            coeffs = [rng.choice((-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)) for _ in ring.vars]
            trial = forms + [LinearForm(ring, coeffs)]
            if _rank([f.coeffs for f in trial]) == len(trial):
                forms = trial
        return cls(ring, forms)

    def __eq__(self, other):
        return isinstance(other, CoordTuple) and other.ring == self.ring and other.forms == self.forms

    def __hash__(self):
        return hash((self.ring, self.forms))

    def __repr__(self):
        return f"CoordTuple({', '.join(str(f) for f in self.forms)})"

    def form(self, i: int) -> Poly:
        return self.forms[i].to_poly()

    def leading(self, k: int) -> list:
        """The polynomials ``z_0, ..., z_{k-1}``."""
        return [self.form(i) for i in range(k)]

    def partial(self, f: Poly, k: int) -> Poly:
        """``∂f/∂z_k`` written in the original variables."""
        out = f.ring.zero()
        for j, v in enumerate(self.ring.vars):
            c = self.inverse[j][k]
            if c:
                out = out + diff(f, v) * c
        return out

    def to_coords(self, f: Poly):
        """``f`` rewritten as a polynomial in the ``z`` variables; returns the new ring too."""
        wring = VarRing(self.names)
        images = []
        for j in range(self.ring.nvars):
            images.append(Poly(wring, {tuple(1 if m == k else 0 for m in range(wring.nvars)): c
                                       for k, c in enumerate(self.inverse[j]) if c}))
        return compose(f, images, wring), wring

    def restrict(self, f: Poly, i: int):
        """``f|V(z_0..z_{i-1})`` together with the coordinates ``(z_i, ..., z_n)`` on that slice."""
        if i == 0:
            return f, self
        F, wring = self.to_coords(f)
        g = F.restrict_zero(wring.vars[:i])
        return g, CoordTuple.identity(g.ring)


def _rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# polar data


def jacobian_ideal(f: Poly) -> Ideal:
    """``⟨∂f/∂v : v⟩``."""
    return Ideal(f.ring, [diff(f, v) for v in f.ring.vars])


@functools.lru_cache(maxsize=256)
def _polar_cached(f: Poly, coords: CoordTuple, k: int, method: str) -> Ideal:
    n1 = f.ring.nvars
    J = jacobian_ideal(f)
    if k == n1:
        return Ideal(f.ring) if J.gens else Ideal.unit(f.ring)
    Jk = Ideal(f.ring, [coords.partial(f, j) for j in range(k, n1)])
    if not J.gens:
        return Ideal.unit(f.ring)
    return saturate(Jk, J, method=method)


def polar_ideal(f: Poly, coords: CoordTuple, k: int) -> Ideal:
    """``γ_k``: the ideal of ``∂f/∂z_k, ..., ∂f/∂z_n`` saturated by the Jacobian ideal.

    ``k = n+1`` gives the zero ideal (the ambient space) unless ``f`` is
    constant, in which case everything lies in the critical locus.
    """
    if not 0 <= k <= f.ring.nvars:
        raise PreconditionError(f"polar index {k} outside 0..{f.ring.nvars}")
    return _polar_cached(f, coords, k, "quotient")


def polar_number(f: Poly, coords: CoordTuple, k: int) -> int:
    """``(Γ^k · V(z_0, ..., z_{k-1}))_0``."""
    val = local_colength_origin(polar_ideal(f, coords, k) + coords.leading(k))
    if not is_finite(val):
        raise PreconditionError(f"polar variety Γ^{k} meets V(z_0..z_{k-1}) improperly at the origin")
    return val


@dataclass
class PolarData:
    f: Poly
    coords: CoordTuple
    sigma_ideal: Ideal
    gamma: list

    def to_dict(self) -> dict:
        return {"gamma": [[str(g) for g in I.groebner()] for I in self.gamma]}


def polar_data(f: Poly, coords: CoordTuple) -> PolarData:
    return PolarData(f, coords, jacobian_ideal(f),
                     [polar_ideal(f, coords, k) for k in range(f.ring.nvars + 1)])


@dataclass
class LeNumbers:
    """Lê numbers at the origin, keyed by index, with the polar numbers used on the way."""

    values: dict
    polar_numbers: dict = field(default_factory=dict)
    sigma_dim: int = -1

    def get(self, i: int) -> int:
        return self.values.get(i, 0)

    def to_dict(self) -> dict:
        return {
            "sigma_dim": self.sigma_dim,
            "values": {str(i): v for i, v in sorted(self.values.items())},
            "polar_numbers": {str(k): v for k, v in sorted(self.polar_numbers.items())},
        }


def critical_dim(f: Poly) -> int:
    """Dimension of ``Σf`` at the origin (``-1`` when the origin is not critical)."""
    return local_dim_origin(jacobian_ideal(f))


def le_numbers(f: Poly, coords: CoordTuple) -> LeNumbers:
    """``λ^i_{f,z}(0)`` for ``0 <= i <= dim_0 Σf``.

    Each number is the difference of two local colengths coming from the
    decomposition ``Γ^{i+1} · V(∂f/∂z_i) = Γ^i + Λ^i``, both cut by
    ``V(z_0, ..., z_{i-1})``.
    """
    d = critical_dim(f)
    values, polars = {}, {}
    for i in range(d + 1):
        cut = coords.leading(i)
        a = local_colength_origin(polar_ideal(f, coords, i + 1) + [coords.partial(f, i)] + cut)
        b = local_colength_origin(polar_ideal(f, coords, i) + cut)
        if not (is_finite(a) and is_finite(b)):
            raise PreconditionError(f"improper intersection computing λ^{i}")
        if i >= 1:
            polars[i] = b
        lam = a - b
        if lam < 0:
            raise DecompositionError(f"λ^{i} came out negative ({a} - {b})")
        values[i] = lam
    if d >= 0:
        top = local_colength_origin(polar_ideal(f, coords, d + 1) + coords.leading(d + 1))
        if is_finite(top):
            polars[d + 1] = top
    return LeNumbers(values, polars, d)


def milnor_number(f: Poly) -> int:
    """Local colength of the Jacobian ideal; requires an isolated critical point."""
    val = local_colength_origin(jacobian_ideal(f))
    if not is_finite(val):
        raise PreconditionError("critical point at the origin is not isolated")
    return val


# ---------------------------------------------------------------------------
# isolated polar activity


def ipa_check(f: Poly, coords: CoordTuple) -> dict:
    """Both algebraic IPA tests for the first coordinate, with their outcomes."""
    g1 = polar_ideal(f, coords, 1)
    by_hyperplane = local_dim_origin(g1 + coords.leading(1)) <= 0
    by_fiber = local_dim_origin(g1 + [f - f.constant_term()]) <= 0
    return {"ipa": by_hyperplane, "item1": by_hyperplane, "item2": by_fiber,
            "agree": by_hyperplane == by_fiber}


def is_ipa_deformation(f: Poly, coords: CoordTuple) -> bool:
    """True iff ``Γ¹_{f,z_0} ∩ V(z_0)`` is at most zero-dimensional at the origin."""
    res = ipa_check(f, coords)
    if not res["agree"]:
        warnings.warn(f"IPA tests disagree for {f}: hyperplane test {res['item1']}, "
                      f"fiber test {res['item2']}", RuntimeWarning, stacklevel=2)
    return res["ipa"]


def is_ipa_tuple(f: Poly, coords: CoordTuple, k: int) -> bool:
    """Step ``i`` (``1 <= i <= k``) checks ``f|V(z_0..z_{i-2})`` against the next coordinate."""
    if k < 0 or k > f.ring.nvars:
        raise PreconditionError(f"tuple length {k} out of range")
    for i in range(1, k + 1):
        g, sub = coords.restrict(f, i - 1)
        if not is_ipa_deformation(g, sub):
            return False
    return True


# ---------------------------------------------------------------------------
# the slice formula


def verify_slice_formula(f: Poly, coords: CoordTuple) -> list:
    """Lê numbers of ``f|V(z_0)`` against the polar number and Lê numbers of ``f``.

    Index 0 compares ``λ⁰(f|V(z_0))`` with ``(Γ¹·V(z_0))_0 + λ¹(f)``; index
    ``i >= 1`` compares ``λ^i(f|V(z_0))`` with ``λ^{i+1}(f)``.
    """
    if f.ring.nvars < 2:
        raise PreconditionError("slice formula needs at least two variables")
    if not is_ipa_tuple(f, coords, 1):
        raise PreconditionError("coordinates are not an IPA-tuple for f")
    g, sub = coords.restrict(f, 1)
    left = le_numbers(g, sub)
    right = le_numbers(f, coords)
    p1 = polar_number(f, coords, 1)
    top = max(left.sigma_dim, right.sigma_dim - 1, 0)
    out = []
    for i in range(top + 1):
        if i == 0:
            rhs = p1 + right.get(1)
            det = {"polar_number": p1, "lambda1_total": right.get(1)}
        else:
            rhs = right.get(i + 1)
            det = {f"lambda{i + 1}_total": rhs}
        out.append(Verdict(f"slice[{i}]", left.get(i), rhs, det))
    return out


def dynamic_intersection_check(f: Poly, coords: CoordTuple, t0) -> Verdict:
    """``(Γ¹·V(z_0))_0`` against the global count of ``Γ¹ ∩ V(z_0 - t0)``.

    Valid when every point of the nearby slice limits to the origin; callers
    pick engineered families where that holds.
    """
    from .groebner import colength_global

    g1 = polar_ideal(f, coords, 1)
    local = local_colength_origin(g1 + coords.leading(1))
    glob = colength_global(g1 + [coords.form(0) - t0])
    return Verdict("dynamic-intersection", local, glob, {"t0": str(t0)})


__all__ = [
    "CoordTuple", "LeNumbers", "PolarData", "critical_dim", "dynamic_intersection_check", "ipa_check",
    "is_ipa_deformation", "is_ipa_tuple", "jacobian_ideal", "le_numbers", "milnor_number", "polar_data",
    "polar_ideal", "polar_number", "verify_slice_formula",
]
