"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is a map from exponent tuples to nonzero rational
coefficients over a fixed :class:`VarRing`.  Values are immutable; every
operation returns a new polynomial.  Coefficients use ``gmpy2.mpq`` when it
is importable and :class:`fractions.Fraction` otherwise; both are exact.

The text grammar accepted by :func:`parse_poly` is::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | '(' expr ')'

where ``NUMBER`` is ``INT`` or ``INT/INT``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import config
from .errors import ParseError, PreconditionError, ResourceCapError, UnknownVariableError

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _mpq

    def Q(a=0, b=1):
        return _mpq(a, b)

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    Q = Fraction
    RATIONAL_BACKEND = "fractions"

Exp = tuple  # exponent vector, one nonnegative int per ring variable

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def as_rational(x):
    """Coerce ints, Fractions, mpq values and ``"a/b"`` strings to the coefficient type."""
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return Q(int(a), int(b))
        return Q(int(s))
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    return Q(x)


def format_rational(c) -> str:
    c = as_rational(c)
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


class VarRing:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("vars", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for v in names:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.vars = names
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, VarRing) and other.vars == self.vars

    def __hash__(self) -> int:
        return hash(self.vars)

    def __repr__(self) -> str:
        return f"VarRing({', '.join(self.vars)})"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = as_rational(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): Q(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp: Sequence[int], coeff=1) -> "Poly":
        if len(exp) != self.nvars:
            raise ValueError("exponent length mismatch")
        c = as_rational(coeff)
        return Poly(self, {tuple(int(a) for a in exp): c} if c else {})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def drop(self, names: Iterable[str]) -> "VarRing":
        names = set(names)
        return VarRing(v for v in self.vars if v not in names)

    def extend(self, names: Iterable[str]) -> "VarRing":
        return VarRing(self.vars + tuple(names))

    def fresh(self, stem: str) -> str:
        """A variable name not already in the ring."""
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name


def _check_degree(d: int) -> None:
    cap = config.current().max_degree
    if d > cap:
        raise ResourceCapError(f"total degree {d} exceeds cap {cap}")


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VarRing, terms: Mapping[Exp, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_terms(cls, ring: VarRing, terms: Mapping) -> "Poly":
        clean = {}
        n = ring.nvars
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != n or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e}")
            c = as_rational(c)
            if c:
                clean[e] = c
        return cls(ring, clean)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Q(0))

    def total_degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used[i] = True
        return [v for v, u in zip(self.ring.vars, used) if u]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_rational(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        _check_degree(self.total_degree() + other.total_degree())
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if k and self.terms:
            _check_degree(self.total_degree() * k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def mul_term(self, exp: Exp, coeff) -> "Poly":
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()})

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide ``self``."""
        from .groebner import TermOrder  # local import: groebner depends on this module

        order = TermOrder.grevlex()
        key = order.key
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e = max(other.terms, key=key)
        lt_c = other.terms[lt_e]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=key)
            shift = tuple(a - b for a, b in zip(e, lt_e))
            if min(shift) < 0:
                raise ValueError("inexact polynomial division")
            q = rem[e] / lt_c
            quot[shift] = q
            for oe, oc in other.terms.items():
                ne = tuple(a + b for a, b in zip(oe, shift))
                v = rem.get(ne, 0) - q * oc
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return Poly(self.ring, quot)

    # calculus and substitution ---------------------------------------------

    def diff(self, name: str) -> "Poly":
        return diff(self, name)

    def evaluate(self, point: Sequence) -> object:
        return evaluate(self, point)

    def subs(self, mapping: Mapping[str, object], ring: VarRing | None = None) -> "Poly":
        """Substitute polynomials (or constants) for variables.

        Images must live in ``ring`` (default: this polynomial's ring).
        Variables not mentioned are mapped to the same-named variable of the
        target ring, which must then contain them.
        """
        target = ring or self.ring
        images = []
        for v in self.ring.vars:
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Poly) else target.const(img))
            else:
                images.append(target.var(v))
        return compose(self, images, target)

    def restrict_zero(self, names: Iterable[str]) -> "Poly":
        """Set the named variables to zero and drop them from the ring."""
        names = list(names)
        idx = [self.ring.index(v) for v in names]
        keep = [i for i in range(self.ring.nvars) if i not in idx]
        ring = self.ring.drop(names)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in idx):
                continue
            out[tuple(e[i] for i in keep)] = c
        return Poly(ring, out)

    def to_ring(self, ring: VarRing) -> "Poly":
        """Re-express in a ring that contains all variables actually used."""
        pos = []
        for v in self.ring.vars:
            pos.append(ring.index(v) if v in ring else None)
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.vars[i]} not in target ring")
                    ne[pos[i]] = a
            out[tuple(ne)] = c
        return Poly(ring, out)

    def content_normalized(self) -> "Poly":
        """Scale to integer coprime coefficients with positive leading coefficient (grevlex)."""
        from math import gcd, lcm
        from .groebner import TermOrder

        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(as_rational(c).denominator))
        nums = [int(as_rational(c) * den) for c in self.terms.values()]
        g = 0
        for a in nums:
            g = gcd(g, a)
        lead = max(self.terms, key=TermOrder.grevlex().key)
        sign = -1 if self.terms[lead] < 0 else 1
        return self * Q(den * sign, g)

    # printing ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, {self.ring!r})"


# ---------------------------------------------------------------------------
# module-level operations


def diff(p: Poly, name: str) -> Poly:
    """Formal partial derivative of ``p`` with respect to variable ``name``."""
    i = p.ring.index(name)
    out = {}
    for e, c in p.terms.items():
        a = e[i]
        if a:
            ne = e[:i] + (a - 1,) + e[i + 1:]
            out[ne] = c * a
    return Poly(p.ring, out)


def evaluate(p: Poly, point: Sequence) -> object:
    """Exact value of ``p`` at a rational point."""
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has length {len(point)}, ring has {p.ring.nvars} variables")
    pt = [as_rational(x) for x in point]
    total = Q(0)
    for e, c in p.terms.items():
        v = c
        for x, a in zip(pt, e):
            if a:
                v *= x ** a
        total += v
    return total


def compose(p: Poly, images: Sequence[Poly], ring: VarRing) -> Poly:
    """Substitute ``images[i]`` for the i-th variable of ``p``; result lives in ``ring``."""
    if len(images) != p.ring.nvars:
        raise ValueError("one image per variable is required")
    powers: list[dict[int, Poly]] = [{0: ring.one()} for _ in images]

    def power(i: int, a: int) -> Poly:
        cache = powers[i]
        if a not in cache:
            best = max(k for k in cache if k <= a)
            val = cache[best]
            for k in range(best + 1, a + 1):
                val = val * images[i]
                cache[k] = val
        return cache[a]

    acc: dict = {}
    for e, c in p.terms.items():
        term = ring.const(c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        for te, tc in term.terms.items():
            v = acc.get(te)
            acc[te] = tc if v is None else v + tc
    return Poly(ring, {e: c for e, c in acc.items() if c})


def _invert_matrix(M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    A = [[as_rational(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise PreconditionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def linear_change(p: Poly, M: Sequence[Sequence]) -> Poly:
    """Substitute ``x_i -> sum_j M[i][j] x_j`` for every variable.

    ``M`` must be square of the ring's size and invertible; composing with
    the inverse matrix recovers ``p``.
    """
    n = p.ring.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"matrix must be {n}x{n}")
    _invert_matrix(M)  # invertibility check
    ring = p.ring
    images = []
    for row in M:
        images.append(Poly(ring, {tuple(1 if k == j else 0 for k in range(n)): as_rational(c)
                                  for j, c in enumerate(row) if as_rational(c)}))
    return compose(p, images, ring)


def inverse_matrix(M: Sequence[Sequence]) -> list[list]:
    return _invert_matrix(M)


class LinearForm:
    """A nonzero homogeneous linear form ``sum c_i x_i`` over a ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: VarRing, coeffs: Sequence):
        coeffs = tuple(as_rational(c) for c in coeffs)
        if len(coeffs) != ring.nvars:
            raise ValueError("coefficient vector length mismatch")
        if not any(coeffs):
            raise ValueError("linear form must not vanish identically")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, p: Poly) -> "LinearForm":
        n = p.ring.nvars
        coeffs = [Q(0)] * n
        for e, c in p.terms.items():
            if sum(e) != 1:
                raise ParseError(f"{format_poly(p)!r} is not a homogeneous linear form")
            coeffs[e.index(1)] = c
        return cls(p.ring, coeffs)

    @classmethod
    def parse(cls, text: str, ring: VarRing) -> "LinearForm":
        return cls.from_poly(parse_poly(text, ring))

    def to_poly(self) -> Poly:
        n = self.ring.nvars
        return Poly(self.ring, {tuple(1 if k == j else 0 for k in range(n)): c
                                for j, c in enumerate(self.coeffs) if c})

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and other.ring == self.ring and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __str__(self) -> str:
        return format_poly(self.to_poly())

    def __repr__(self) -> str:
        return f"LinearForm({self})"


# ---------------------------------------------------------------------------
# printing


def _grevlex_key(e: Exp):
    return (sum(e), tuple(-a for a in reversed(e)))


def format_poly(p: Poly) -> str:
    """Canonical text: descending grevlex, ``a/b`` coefficients, ``x^2*y`` monomials."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(p.ring.vars, e) if a)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, ring: VarRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"{msg}, found {what}", tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() [0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            q = self.unary()
            return -q if tok[1] == "-" else q
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            ex = self.peek()
            if ex[0] != "num" or "/" in ex[1]:
                self.fail("expected a nonnegative integer exponent")
            self.take()
            return base ** int(ex[1])
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return self.ring.const(as_rational(tok[1]))
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.ring:
                raise UnknownVariableError(f"unknown variable {tok[1]!r}", tok[2], self.text)
            return self.ring.var(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.fail("expected ')'")
            self.take()
            return p
        self.fail("expected a number, variable or '('")


def parse_poly(text: str, ring: VarRing) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` over ``ring``.

    >>> str(parse_poly("u*(u^2-t)", VarRing(["t", "u"])))
    'u^3 - t*u'
    """
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    return _Parser(text, ring).parse()
