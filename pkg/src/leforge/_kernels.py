"""Monomial-combinatorics kernels.

Staircase counting and monomial-ideal dimension run in tight integer loops,
so they are compiled with numba when it is available.  Setting
``LEFORGE_DISABLE_NUMBA=1`` (or running without numba installed) selects the
vectorised numpy versions instead; both return identical results.

Only these monomial routines are compiled.  Polynomial arithmetic works on
arbitrary-precision rationals, which numba cannot represent.

All routines take leading exponents as an ``int64`` array of shape
``(m, n)``: one row per leading monomial, one column per variable.
"""

import os

import numpy as np

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return decorator


def use_numba():
    """True when the compiled kernels are active."""
    return NUMBA_AVAILABLE and os.environ.get("LEFORGE_DISABLE_NUMBA", "") not in ("1", "true", "yes")


# =============================================================================
# numba kernels
# =============================================================================

@njit(cache=True)
def _divisible_nb(lts, e):
    m, n = lts.shape
    for i in range(m):
        ok = True
        for j in range(n):
            if lts[i, j] > e[j]:
                ok = False
                break
        if ok:
            return True
    return False


@njit(cache=True)
def _degree_histogram_nb(lts, bounds):
    """Histogram by total degree of exponents in the box ``e < bounds`` avoiding ``lts``."""
    n = bounds.shape[0]
    maxdeg = 0
    for j in range(n):
        maxdeg += bounds[j] - 1
    hist = np.zeros(maxdeg + 1, dtype=np.int64)
    e = np.zeros(n, dtype=np.int64)
    while True:
        if not _divisible_nb(lts, e):
            d = 0
            for j in range(n):
                d += e[j]
            hist[d] += 1
        # odometer increment
        j = 0
        while j < n:
            e[j] += 1
            if e[j] < bounds[j]:
                break
            e[j] = 0
            j += 1
        if j == n:
            break
    return hist


@njit(cache=True)
def _graded_counts_nb(lts, n, kmax):
    """Standard monomials of each degree ``0..kmax`` (no finiteness assumed)."""
    counts = np.zeros(kmax + 1, dtype=np.int64)
    e = np.zeros(n, dtype=np.int64)
    for d in range(kmax + 1):
        # enumerate compositions of d into n parts
        for j in range(n):
            e[j] = 0
        e[n - 1] = d
        while True:
            if not _divisible_nb(lts, e):
                counts[d] += 1
            # next composition: move one unit leftwards
            k = n - 1
            while k > 0 and e[k] == 0:
                k -= 1
            if k == 0:
                break
            v = e[k]
            e[k] = 0
            e[k - 1] += 1
            e[n - 1] = v - 1
    return counts


@njit(cache=True)
def _ideal_dimension_nb(lts, n):
    """Largest size of a variable subset containing no leading monomial's support."""
    m = lts.shape[0]
    best = -1
    for mask in range(1 << n):
        ok = True
        for i in range(m):
            inside = True
            for j in range(n):
                if lts[i, j] > 0 and not (mask >> j) & 1:
                    inside = False
                    break
            if inside:
                ok = False
                break
        if ok:
            size = 0
            for j in range(n):
                size += (mask >> j) & 1
            if size > best:
                best = size
    return best


# =============================================================================
# numpy fallbacks
# =============================================================================

_CHUNK = 1 << 16


def _standard_mask_np(lts, exps):
    out = np.ones(len(exps), dtype=bool)
    if len(lts) == 0:
        return out
    for start in range(0, len(exps), _CHUNK):
        block = exps[start:start + _CHUNK]
        div = (lts[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
        out[start:start + _CHUNK] = ~div
    return out


def _degree_histogram_np(lts, bounds):
    grids = np.meshgrid(*[np.arange(b, dtype=np.int64) for b in bounds], indexing="ij")
    exps = np.stack([g.ravel() for g in grids], axis=1)
    keep = _standard_mask_np(lts, exps)
    deg = exps[keep].sum(axis=1)
    return np.bincount(deg, minlength=int(bounds.sum() - len(bounds) + 1)).astype(np.int64)


def _compositions(d, n):
    if n == 1:
        return np.array([[d]], dtype=np.int64)
    rows = []
    for first in range(d, -1, -1):
        rest = _compositions(d - first, n - 1)
        rows.append(np.concatenate([np.full((len(rest), 1), first, dtype=np.int64), rest], axis=1))
    return np.concatenate(rows, axis=0)


def _graded_counts_np(lts, n, kmax):
    counts = np.zeros(kmax + 1, dtype=np.int64)
    for d in range(kmax + 1):
        counts[d] = _standard_mask_np(lts, _compositions(d, n)).sum()
    return counts


def _ideal_dimension_np(lts, n):
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    if len(lts) == 0:
        return n
    support = lts > 0
    # a subset fails if some leading monomial has support inside it
    inside = (~support[None, :, :] | bits[:, None, :]).all(axis=2).any(axis=1)
    sizes = bits.sum(axis=1)
    ok = ~inside
    return int(sizes[ok].max()) if ok.any() else -1


# =============================================================================
# public entry points
# =============================================================================

def _as_array(lts, n):
    arr = np.asarray(lts, dtype=np.int64)
    return arr.reshape(len(lts), n)


def degree_histogram(lts, bounds):
    """Standard monomials in a box, bucketed by total degree.

    Parameters
    ----------
    lts : sequence of exponent tuples
        Leading monomials of a Gröbner or standard basis.
    bounds : sequence of int
        Exclusive per-variable exponent bounds.  For a zero-dimensional
        leading ideal these are the pure-power exponents, and the box then
        contains every standard monomial.

    Returns
    -------
    ndarray of int64
        ``hist[d]`` is the number of standard monomials of degree ``d``.
    """
    b = np.asarray(bounds, dtype=np.int64)
    arr = _as_array(lts, len(b))
    if use_numba():
        return _degree_histogram_nb(arr, b)
    return _degree_histogram_np(arr, b)


def graded_counts(lts, n, kmax):
    """Number of standard monomials of each degree ``0..kmax``."""
    arr = _as_array(lts, n)
    if use_numba():
        return _graded_counts_nb(arr, n, kmax)
    return _graded_counts_np(arr, n, kmax)


def ideal_dimension(lts, n):
    """Krull dimension of the monomial ideal generated by ``lts``; -1 for the unit ideal."""
    arr = _as_array(lts, n)
    if use_numba():
        return int(_ideal_dimension_nb(arr, n))
    return _ideal_dimension_np(arr, n)


def standard_mask(lts, exps):
    """Boolean mask of the rows of ``exps`` divisible by no row of ``lts``."""
    e = np.asarray(exps, dtype=np.int64)
    arr = _as_array(lts, e.shape[1]) if len(e) else np.zeros((0, 0), dtype=np.int64)
    return _standard_mask_np(arr, e)
