"""Ideal engine: Buchberger bases and the ideal-theoretic queries built on them.

Internally a polynomial is a list of ``(nkey, exp, coeff)`` triples sorted by
``nkey`` ascending, where ``nkey`` is the *negated* weight-matrix key of the
monomial.  Every supported order is given by a nonsingular integer weight
matrix, so keys are linear in the exponent: the key of a product is the sum
of the keys.  Reduction therefore never recomputes a key from scratch.

Local questions at the origin (colength, dimension) go through Lazard's
homogenisation trick: a global Gröbner basis of the homogenised generators
under a degree order that prefers powers of the homogenising variable
dehomogenises to a standard basis for the local degree order ``ds``.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from operator import add, le, sub
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, config
from .errors import PreconditionError, ResourceCapError, SamplingError, StabilizationError
from .polyalg import Poly, Q, VarRing, as_rational


# ---------------------------------------------------------------------------
# the infinity flag


class _Infinite:
    """Colength of a non-zero-dimensional ideal.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = lambda self: "infinite"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("leforge-infinite")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinite()


def is_finite(value) -> bool:
    return value is not INF


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a weight matrix.

    ``kind`` is ``"grevlex"``, ``"lex"``, ``"elim"`` (grevlex on the first
    ``block`` variables, then grevlex on the rest) or ``"lazard"`` (internal:
    degree first, then more of variable 0 is larger, then revlex).
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim", "lazard"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    @classmethod
    def grevlex(cls) -> "TermOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "TermOrder":
        return cls("lex")

    @classmethod
    def elim(cls, block: int) -> "TermOrder":
        return cls("elim", block)

    def key(self, e: Sequence[int]) -> tuple:
        """Sort key: a larger key means a larger monomial."""
        n = len(e)
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-e[i] for i in range(n - 1, 0, -1))
        if self.kind == "elim":
            k = self.block
            return ((sum(e[:k]),) + tuple(-e[i] for i in range(k - 1, 0, -1))
                    + (sum(e[k:]),) + tuple(-e[i] for i in range(n - 1, k, -1)))
        return (sum(e), e[0]) + tuple(-e[i] for i in range(n - 1, 1, -1))

    def nkey(self, e: Sequence[int]) -> tuple:
        return tuple(-a for a in self.key(e))

    def leading_exp(self, p: Poly):
        return max(p.terms, key=self.key)

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


GREVLEX = TermOrder.grevlex()


# ---------------------------------------------------------------------------
# Buchberger core on internal term lists


def _to_internal(p: Poly, nkey) -> list:
    return sorted(((nkey(e), e, c) for e, c in p.terms.items()), key=lambda t: t[0])


def _monic(terms: list) -> list:
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, e, c * inv) for k, e, c in terms]


def _find_divisor(e, lts, active):
    for i in active:
        if all(map(le, lts[i], e)):
            return i
    return -1


def _reduce(terms: list, basis: list, lts: list, active: Sequence[int]) -> list:
    """Full reduction of ``terms`` modulo the monic polynomials ``basis[i]`` for ``i`` in ``active``."""
    coeffs = {}
    heap = []
    for k, e, c in terms:
        coeffs[e] = c
        heap.append((k, e))
    heapq.heapify(heap)
    rem = []
    while heap:
        nk, e = heapq.heappop(heap)
        c = coeffs.pop(e, None)
        if c is None:
            continue
        i = _find_divisor(e, lts, active)
        if i < 0:
            rem.append((nk, e, c))
            continue
        g = basis[i]
        gk, ge, _ = g[0]
        shift = tuple(map(sub, e, ge))
        skey = tuple(map(sub, nk, gk))
        for tk, te, tc in g[1:]:
            ne = tuple(map(add, te, shift))
            v = coeffs.get(ne)
            if v is None:
                coeffs[ne] = -c * tc
                heapq.heappush(heap, (tuple(map(add, tk, skey)), ne))
            else:
                v -= c * tc
                if v:
                    coeffs[ne] = v
                else:
                    del coeffs[ne]
    return rem


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    return all(map(le, a, b))


def _spoly(f: list, g: list, lcm, lcm_nkey) -> list:
    """S-polynomial of two monic term lists; the leading terms cancel and are skipped."""
    acc = {}
    keys = {}
    for src, sign in ((f, 1), (g, -1)):
        k0, e0, _ = src[0]
        shift = tuple(map(sub, lcm, e0))
        skey = tuple(map(sub, lcm_nkey, k0))
        for k, e, c in src[1:]:
            ne = tuple(map(add, e, shift))
            v = acc.get(ne, 0) + sign * c
            if v:
                acc[ne] = v
                keys[ne] = tuple(map(add, k, skey))
            else:
                acc.pop(ne, None)
    return sorted(((keys[e], e, c) for e, c in acc.items()), key=lambda t: t[0])


def _buchberger(polys: list, order: TermOrder, n: int) -> list:
    """Reduced monic Gröbner basis of nonzero ``polys`` (Poly values), as internal term lists."""
    cfg = config.current()
    nkey = order.nkey

    basis: list = []
    lts: list = []
    sugar: list = []
    active: list = []
    pairs: dict = {}

    def pair_entry(i, j):
        lcm = _lcm(lts[i], lts[j])
        d = sum(lcm)
        s = max(sugar[i] + d - sum(lts[i]), sugar[j] + d - sum(lts[j]))
        return (s, tuple(-a for a in nkey(lcm)), i, j), lcm

    def update(ih):
        nonlocal active, pairs
        mh = lts[ih]
        cand = list(active)
        keep = []
        for pos, ig in enumerate(cand):
            mg = lts[ig]
            l_hg = _lcm(mh, mg)
            coprime = all(a == 0 or b == 0 for a, b in zip(mh, mg))
            if coprime:
                keep.append((ig, True))
                continue
            redundant = False
            for other in cand[pos + 1:]:
                if _divides(_lcm(mh, lts[other]), l_hg):
                    redundant = True
                    break
            if not redundant:
                for other, _ in keep:
                    if _divides(_lcm(mh, lts[other]), l_hg):
                        redundant = True
                        break
            if not redundant:
                keep.append((ig, False))
        new_pairs = {}
        for (i, j), entry in pairs.items():
            lcm = entry[1]
            if (not _divides(mh, lcm) or _lcm(lts[i], mh) == lcm or _lcm(lts[j], mh) == lcm):
                new_pairs[(i, j)] = entry
        for ig, coprime in keep:
            if not coprime:
                new_pairs[(ig, ih)] = pair_entry(ig, ih)
        pairs = new_pairs
        active = [ig for ig in active if not _divides(mh, lts[ig])] + [ih]

    def add_poly(terms, s):
        lead = terms[0][1]
        if sum(lead) > cfg.max_degree:
            raise ResourceCapError(f"Gröbner basis element of degree {sum(lead)} exceeds cap {cfg.max_degree}")
        if len(basis) >= cfg.max_basis:
            raise ResourceCapError(f"Gröbner basis size exceeds cap {cfg.max_basis}")
        basis.append(_monic(terms))
        lts.append(lead)
        sugar.append(s)
        update(len(basis) - 1)

    inputs = [_to_internal(p, nkey) for p in polys]
    inputs.sort(key=lambda t: tuple(-a for a in t[0][0]))
    for terms in inputs:
        s = max(sum(e) for _, e, _ in terms)
        h = _reduce(terms, basis, lts, active)
        if h:
            if not any(h[0][1]):
                return [[(nkey(h[0][1]), h[0][1], Q(1))]]
            add_poly(h, s)

    while pairs:
        (i, j), (sel, lcm) = min(pairs.items(), key=lambda kv: kv[1][0])
        del pairs[(i, j)]
        sp = _spoly(basis[i], basis[j], lcm, nkey(lcm))
        if not sp:
            continue
        h = _reduce(sp, basis, lts, active)
        if h:
            if not any(h[0][1]):
                return [[(nkey(h[0][1]), h[0][1], Q(1))]]
            add_poly(h, sel[0])

    # the active set is minimal; reduce tails and sort by leading monomial
    final = []
    for i in active:
        others = [j for j in active if j != i]
        tail = _reduce(basis[i][1:], basis, lts, others)
        final.append([basis[i][0]] + tail)
    final.sort(key=lambda t: t[0][0], reverse=True)
    return final


def _from_internal(ring: VarRing, terms: list) -> Poly:
    return Poly(ring, {e: c for _, e, c in terms})


# ---------------------------------------------------------------------------
# Ideal


class Ideal:
    """Finitely generated ideal of a polynomial ring with cached Gröbner bases."""

    __hash__ = None

    def __init__(self, ring: VarRing, gens: Iterable[Poly] = ()):
        clean = []
        for g in gens:
            if not isinstance(g, Poly):
                g = ring.const(g)
            if g.ring != ring:
                raise ValueError(f"generator over {g.ring}, ideal over {ring}")
            if g:
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: VarRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def unit(cls, ring: VarRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: VarRing) -> "Ideal":
        return cls(ring, ring.gens())

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def groebner(self, order: TermOrder = GREVLEX) -> list:
        """Reduced monic Gröbner basis under ``order`` (memoised)."""
        with self._lock:
            hit = self._cache.get(order)
        if hit is not None:
            return hit
        internal = _buchberger(list(self.gens), order, self.ring.nvars) if self.gens else []
        result = [_from_internal(self.ring, t) for t in internal]
        with self._lock:
            self._cache.setdefault(order, result)
        return result

    def _internal(self, order: TermOrder):
        gb = self.groebner(order)
        terms = [_to_internal(g, order.nkey) for g in gb]
        return terms, [t[0][1] for t in terms]

    def leading_exps(self, order: TermOrder = GREVLEX) -> list:
        return [order.leading_exp(g) for g in self.groebner(order)]

    def reduce(self, p: Poly, order: TermOrder = GREVLEX) -> Poly:
        if p.ring != self.ring:
            raise ValueError("ring mismatch")
        if not p:
            return p
        terms, lts = self._internal(order)
        rem = _reduce(_to_internal(p, order.nkey), terms, lts, range(len(terms)))
        return _from_internal(self.ring, rem)

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: "Ideal") -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.groebner() == other.groebner()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        if isinstance(other, Poly):
            return Ideal(self.ring, self.gens + (other,))
        return Ideal(self.ring, self.gens + tuple(other))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def power(self, k: int) -> "Ideal":
        out = Ideal.unit(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def map(self, fn) -> "Ideal":
        gens = [fn(g) for g in self.gens]
        return Ideal(gens[0].ring, gens) if gens else Ideal(self.ring)

    def to_ring(self, ring: VarRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])


# ---------------------------------------------------------------------------
# operations


def groebner_basis(I: Ideal, order: TermOrder = GREVLEX) -> list:
    """Reduced Gröbner basis of ``I``.

    >>> R = VarRing(["x"])
    >>> [str(g) for g in groebner_basis(Ideal.parse(R, ["x^2-1", "x-1"]), TermOrder.lex())]
    ['x - 1']
    """
    return I.groebner(order)


def normal_form(p: Poly, I: Ideal, order: TermOrder = GREVLEX) -> Poly:
    return I.reduce(p, order)


def _ring_with(ring: VarRing, stem: str, front: bool = True):
    name = ring.fresh(stem)
    return name, VarRing((name,) + ring.vars) if front else VarRing(ring.vars + (name,))


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring of the variables not in ``drop``."""
    drop = list(dict.fromkeys(drop))
    for v in drop:
        I.ring.index(v)
    if not drop:
        return I
    keep = [v for v in I.ring.vars if v not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    big = VarRing(drop + keep)
    J = I.to_ring(big)
    small = VarRing(keep)
    k = len(drop)
    out = []
    for g in J.groebner(TermOrder.elim(k)):
        if all(not any(e[:k]) for e in g.terms):
            out.append(Poly(small, {e[k:]: c for e, c in g.terms.items()}))
    return Ideal(small, out)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` via ``s·I + (1-s)·J`` and elimination of ``s``."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    if not I.gens or not J.gens:
        return Ideal(I.ring)
    s, big = _ring_with(I.ring, "s")
    sv = big.var(s)
    gens = [sv * g.to_ring(big) for g in I.gens] + [(1 - sv) * g.to_ring(big) for g in J.gens]
    return eliminate(Ideal(big, gens), [s]).to_ring(I.ring)


def _quotient_by_poly(I: Ideal, g: Poly) -> Ideal:
    if not g:
        return Ideal.unit(I.ring)
    if g.is_constant():
        return I
    inter = intersect(I, Ideal(I.ring, [g]))
    return Ideal(I.ring, [h.exact_div(g) for h in inter.groebner()])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``(I : J) = {g : g·J ⊆ I}``."""
    if not J.gens:
        return Ideal.unit(I.ring)
    out = None
    for g in J.gens:
        q = _quotient_by_poly(I, g)
        out = q if out is None else intersect(out, q)
    return out


def _saturate_rabinowitsch(I: Ideal, g: Poly) -> Ideal:
    s, big = _ring_with(I.ring, "s")
    gens = [h.to_ring(big) for h in I.gens] + [1 - big.var(s) * g.to_ring(big)]
    return eliminate(Ideal(big, gens), [s]).to_ring(I.ring)


def saturate(I: Ideal, J: Ideal, method: str = "quotient") -> Ideal:
    """``(I : J^∞)``.

    ``method="quotient"`` iterates :func:`ideal_quotient` until the chain
    stops growing.  ``method="rabinowitsch"`` intersects the saturations by
    each generator of ``J``, each computed with one auxiliary variable.
    """
    if not J.gens:
        return Ideal.unit(I.ring)
    if method == "rabinowitsch":
        out = None
        for g in J.gens:
            q = _saturate_rabinowitsch(I, g) if not g.is_constant() else I
            out = q if out is None else intersect(out, q)
        return Ideal(I.ring, out.groebner())
    if method != "quotient":
        raise ValueError(f"unknown saturation method {method!r}")
    cur = I
    while True:
        nxt = ideal_quotient(cur, J)
        if nxt.issubset(cur):
            return Ideal(I.ring, cur.groebner())
        cur = Ideal(I.ring, nxt.groebner())


# ---------------------------------------------------------------------------
# colengths


def _pure_power_bounds(lts: list, n: int):
    bounds = [None] * n
    for e in lts:
        nz = [i for i, a in enumerate(e) if a]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    return bounds


def is_zero_dimensional(I: Ideal) -> bool:
    lts = I.leading_exps()
    if not lts:
        return False
    if not any(lts[0]) or any(not any(e) for e in lts):
        return True
    return all(b is not None for b in _pure_power_bounds(lts, I.ring.nvars))


def standard_monomials(I: Ideal, order: TermOrder = GREVLEX) -> list:
    """Exponents of the standard monomials of a zero-dimensional ideal, ascending in ``order``."""
    lts = I.leading_exps(order)
    n = I.ring.nvars
    if any(not any(e) for e in lts):
        return []
    bounds = _pure_power_bounds(lts, n)
    if not lts or any(b is None for b in bounds):
        raise PreconditionError("ideal is not zero-dimensional")
    grids = np.meshgrid(*[np.arange(b, dtype=np.int64) for b in bounds], indexing="ij")
    exps = np.stack([g.ravel() for g in grids], axis=1)
    keep = _kernels.standard_mask(lts, exps)
    out = [tuple(int(a) for a in row) for row in exps[keep]]
    out.sort(key=order.key)
    return out


def colength_global(I: Ideal):
    """Vector-space dimension of ``R/I``; :data:`INF` if ``I`` is not zero-dimensional.

    >>> R = VarRing(["x", "y"])
    >>> colength_global(Ideal.parse(R, ["x^2", "y^3"]))
    6
    """
    lts = I.leading_exps()
    n = I.ring.nvars
    if not lts:
        return INF
    if any(not any(e) for e in lts):
        return 0
    bounds = _pure_power_bounds(lts, n)
    if any(b is None for b in bounds):
        return INF
    return int(_kernels.degree_histogram(lts, bounds).sum())


@dataclass(frozen=True)
class LocalColength:
    """Outcome of a local colength computation at the origin.

    ``hilbert_samuel[k]`` is the colength of ``I + m^k``.  ``stabilized_at``
    is the first ``k`` with ``HS(k) = HS(k+1) = HS(k+2)``; ``None`` when the
    value is infinite.
    """

    value: object
    stabilized_at: int | None
    hilbert_samuel: tuple
    local_leading: tuple

    def to_dict(self) -> dict:
        return {
            "value": self.value if is_finite(self.value) else "infinite",
            "stabilized_at": self.stabilized_at,
        }


def local_leading_exps(I: Ideal) -> list:
    """Leading exponents (order ``ds``) of a local standard basis of ``I`` at the origin."""
    ring = I.ring
    if not I.gens:
        return []
    hname = ring.fresh("h")
    big = VarRing((hname,) + ring.vars)
    homog = []
    for g in I.gens:
        d = g.total_degree()
        homog.append(Poly(big, {(d - sum(e),) + e: c for e, c in g.terms.items()}))
    H = Ideal(big, homog)
    lazard = TermOrder("lazard")
    seen = set()
    out = []
    for e in H.leading_exps(lazard):
        x = e[1:]
        if x not in seen:
            seen.add(x)
            out.append(x)
    # keep minimal generators only
    minimal = [a for a in out if not any(b != a and _divides(b, a) for b in out)]
    return sorted(minimal, key=GREVLEX.key)


def local_colength_details(I: Ideal) -> LocalColength:
    cfg = config.current()
    n = I.ring.nvars
    lts = local_leading_exps(I)
    if not lts:
        counts = _kernels.graded_counts([], n, min(cfg.k_max, 8) + 2)
        return LocalColength(INF, None, tuple(int(x) for x in np.cumsum(np.concatenate([[0], counts]))), ())
    if any(not any(e) for e in lts):
        return LocalColength(0, 1, (0, 0, 0), (tuple(lts[0]),))
    bounds = _pure_power_bounds(lts, n)
    if any(b is None for b in bounds):
        counts = _kernels.graded_counts(lts, n, min(cfg.k_max, 8) + 2)
        hs = tuple(int(x) for x in np.cumsum(np.concatenate([[0], counts])))
        return LocalColength(INF, None, hs, tuple(lts))
    hist = _kernels.degree_histogram(lts, bounds)
    nz = np.nonzero(hist)[0]
    top = int(nz[-1]) if len(nz) else -1
    stabilized = top + 1
    hs = tuple(int(x) for x in np.cumsum(np.concatenate([[0], hist[: top + 1], [0, 0]])))
    if stabilized > cfg.k_max:
        raise StabilizationError(
            f"colength sequence settles at k={stabilized}, beyond the window k_max={cfg.k_max}")
    return LocalColength(int(hist.sum()), stabilized, hs, tuple(lts))


def local_colength_origin(I: Ideal):
    """Length of the local ring ``O_0 / I`` at the origin; :data:`INF` if the origin is not isolated.

    >>> R = VarRing(["x", "y"])
    >>> local_colength_origin(Ideal.parse(R, ["x*(x-1)", "y"]))
    1
    """
    return local_colength_details(I).value


def local_colength_truncated(I: Ideal) -> LocalColength:
    """Literal m-adic truncation: global colengths of ``I + m^k`` for ``k = 1, 2, ...``.

    Slower than :func:`local_colength_details`; kept as an independent
    cross-check of the standard-basis route.
    """
    cfg = config.current()
    m = Ideal.maximal(I.ring)
    seq = [0]
    mk = m
    for k in range(1, cfg.k_max + 3):
        seq.append(colength_global(I + mk))
        if k >= 3 and seq[k - 2] == seq[k - 1] == seq[k]:
            return LocalColength(seq[k - 2], k - 2, tuple(seq), ())
        mk = mk * m
    return LocalColength(INF, None, tuple(seq), ())


def local_dim_origin(I: Ideal) -> int:
    """Dimension of ``V(I)`` at the origin; ``-1`` if the origin is not on ``V(I)``.

    Read off the local leading ideal, which has the same Hilbert-Samuel degree.
    """
    base = local_colength_origin(I)
    if base == 0:
        return -1
    if is_finite(base):
        return 0
    return local_dim_leading(I)


def local_dim_sliced(I: Ideal, attempts: int = 3) -> int:
    """Local dimension by adding seeded random linear forms until the colength is finite.

    An independent cross-check of :func:`local_dim_origin`.  An unlucky form
    (one vanishing on a component) can only overestimate, so the minimum over
    ``attempts`` independent sequences is kept.
    """
    base = local_colength_origin(I)
    if base == 0:
        return -1
    if is_finite(base):
        return 0
    ring = I.ring
    rng = config.rng("local-dim")
    best = None
    for _ in range(attempts):
        forms = []
        for k in range(1, (best or ring.nvars + 1)):
            coeffs = [rng.choice([c for c in range(-7, 8) if c]) for _ in ring.vars]
            forms.append(Poly(ring, {tuple(1 if j == i else 0 for j in range(ring.nvars)): Q(c)
                                     for i, c in enumerate(coeffs)}))
            if is_finite(local_colength_origin(I + forms)):
                best = k
                break
    if best is None:
        raise PreconditionError("local dimension search exhausted the ambient dimension")
    return best


def local_dim_leading(I: Ideal) -> int:
    """Local dimension read off the local leading ideal (combinatorial route)."""
    lts = local_leading_exps(I)
    if not lts:
        return I.ring.nvars
    return _kernels.ideal_dimension(lts, I.ring.nvars)


# ---------------------------------------------------------------------------
# root counting


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate polynomials given as coefficient lists, low degree first."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= q * c
            trim(r)
        a, b = b, r
    lc = a[-1]
    return [c / lc for c in a]


def _squarefree_degree(coeffs: list) -> int:
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    if not any(deriv):
        return len(coeffs) - 1
    g = _poly_gcd(coeffs, deriv)
    return (len(coeffs) - 1) - (len(g) - 1)


def _minimal_poly_degree(I: Ideal, form: Poly, basis_exps: list) -> int:
    """Degree of the squarefree part of the minimal polynomial of multiplication by ``form``."""
    index = {e: i for i, e in enumerate(basis_exps)}
    N = len(basis_exps)
    # reduced echelon rows over the coordinate space, with their power combinations
    rows = []  # (pivot, vector, combo)
    p = I.ring.one()
    for j in range(N + 1):
        vec = [Q(0)] * N
        for e, c in p.terms.items():
            vec[index[e]] = c
        combo = [Q(0)] * (j + 1)
        combo[j] = Q(1)
        for piv, rv, rc in rows:
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, rv)]
                combo = [a - f * (rc[i] if i < len(rc) else 0) for i, a in enumerate(combo)]
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            return _squarefree_degree(combo)
        inv = 1 / vec[piv]
        vec = [v * inv for v in vec]
        combo = [c * inv for c in combo]
        new_rows = []
        for opiv, rv, rc in rows:
            f = rv[piv]
            if f:
                rv = [a - f * b for a, b in zip(rv, vec)]
                rc = [(rc[i] if i < len(rc) else 0) - f * combo[i] for i in range(len(combo))]
            new_rows.append((opiv, rv, rc))
        rows = new_rows + [(piv, vec, combo)]
        p = I.reduce(p * form)
    raise AssertionError("minimal polynomial search exceeded the algebra dimension")


def distinct_root_count(I: Ideal) -> int:
    """Number of distinct complex points of a zero-dimensional ``V(I)``.

    Each trial takes a seeded random linear form and counts the distinct
    roots of its minimal polynomial on ``R/I``.  A form that fails to
    separate points undercounts, so the largest count seen is accepted once
    it has been reproduced by a second, independent form.
    """
    if colength_global(I) is INF:
        raise PreconditionError("distinct_root_count needs a zero-dimensional ideal")
    basis_exps = standard_monomials(I)
    if not basis_exps:
        return 0
    ring = I.ring
    rng = config.rng("roots")
    budget = 2 + 2 * config.current().retry_budget
    seen: dict = {}
    best = -1
    height = 3
    for trial in range(budget):
        coeffs = [rng.randint(-height, height) for _ in ring.vars]
        if not any(coeffs):
            coeffs[0] = 1
        form = Poly(ring, {tuple(1 if j == i else 0 for j in range(ring.nvars)): Q(c)
                           for i, c in enumerate(coeffs) if c})
        count = _minimal_poly_degree(I, form, basis_exps)
        seen[count] = seen.get(count, 0) + 1
        best = max(best, count)
        if seen[best] >= 2:
            return best
        height += 2
    raise SamplingError(f"random linear forms disagreed on the root count: {sorted(seen)}")


def random_linear_form(ring: VarRing, tag: str, height: int = 5) -> Poly:
    rng = config.rng(tag)
    coeffs = [rng.choice([c for c in range(-height, height + 1) if c]) for _ in ring.vars]
    return Poly(ring, {tuple(1 if j == i else 0 for j in range(ring.nvars)): Q(c)
                       for i, c in enumerate(coeffs)})


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal (Seidenberg: add squarefree parts of univariate eliminants)."""
    if colength_global(I) is INF:
        raise PreconditionError("radical_zero_dim needs a zero-dimensional ideal")
    gens = list(I.gens)
    for v in I.ring.vars:
        elim = eliminate(I, [w for w in I.ring.vars if w != v]) if I.ring.nvars > 1 else I
        gb = elim.groebner()
        if not gb:
            continue
        g = gb[0]
        coeffs = [Q(0)] * (g.total_degree() + 1)
        for e, c in g.terms.items():
            coeffs[e[0]] = c
        deriv = [i * c for i, c in enumerate(coeffs)][1:]
        gcd = _poly_gcd(coeffs, deriv) if any(deriv) else [Q(1)]
        # squarefree part = g / gcd, computed in the one-variable ring
        sub = VarRing([v])
        gp = Poly(sub, {(i,): c for i, c in enumerate(coeffs) if c})
        dp = Poly(sub, {(i,): c for i, c in enumerate(gcd) if c})
        sq = gp.exact_div(dp)
        gens.append(sq.to_ring(I.ring))
    return Ideal(I.ring, gens)


__all__ = [
    "INF", "Ideal", "LocalColength", "TermOrder", "colength_global", "distinct_root_count",
    "eliminate", "groebner_basis", "ideal_quotient", "intersect", "is_finite", "is_zero_dimensional",
    "local_colength_details", "local_colength_origin", "local_colength_truncated", "local_dim_leading",
    "local_dim_origin", "local_dim_sliced", "normal_form", "radical_zero_dim", "random_linear_form", "saturate",
    "standard_monomials",
]
