"""Hot inner loops for Gram-block computation over encoded n-gram profiles.

Profiles are CSR-encoded: per-document sorted id arrays plus aligned count
arrays. Pairwise intersection is a two-pointer merge, JIT-compiled with
numba when available. Setting SATKIT_DISABLE_NUMBA=1 (or any of
"1/true/yes") forces the pure-numpy path; the same switch is what
benchmarks/bench_gram.py flips to compare the two.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ArgumentError

_DISABLED = os.environ.get("SATKIT_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
}

try:
    from numba import njit, prange

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap

    prange = range

USE_NUMBA = NUMBA_AVAILABLE and not _DISABLED


def _pair_intersect_py(ids_a, cnt_a, ids_b, cnt_b, presence):
    # Pure-numpy pair kernel; ids are sorted and unique within a profile.
    common, ia, ib = np.intersect1d(ids_a, ids_b, assume_unique=True, return_indices=True)
    if presence:
        return float(common.size)
    return float(np.minimum(cnt_a[ia], cnt_b[ib]).sum())


def _gram_rect_py(indptr_a, ids_a, cnt_a, indptr_b, ids_b, cnt_b, presence, out):
    for i in range(indptr_a.size - 1):
        sa, ea = indptr_a[i], indptr_a[i + 1]
        for j in range(indptr_b.size - 1):
            sb, eb = indptr_b[j], indptr_b[j + 1]
            out[i, j] = _pair_intersect_py(
                ids_a[sa:ea], cnt_a[sa:ea], ids_b[sb:eb], cnt_b[sb:eb], presence
            )


def _gram_sym_py(indptr, ids, cnt, presence, out):
    m = indptr.size - 1
    for i in range(m):
        sa, ea = indptr[i], indptr[i + 1]
        for j in range(i, m):
            sb, eb = indptr[j], indptr[j + 1]
            v = _pair_intersect_py(
                ids[sa:ea], cnt[sa:ea], ids[sb:eb], cnt[sb:eb], presence
            )
            out[i, j] = v
            out[j, i] = v


@njit(cache=True)
def _pair_intersect_nb(ids_a, cnt_a, sa, ea, ids_b, cnt_b, sb, eb, presence):
    total = 0.0
    i, j = sa, sb
    while i < ea and j < eb:
        ga = ids_a[i]
        gb = ids_b[j]
        if ga == gb:
            if presence:
                total += 1.0
            else:
                total += min(cnt_a[i], cnt_b[j])
            i += 1
            j += 1
        elif ga < gb:
            i += 1
        else:
            j += 1
    return total


@njit(cache=True, parallel=True)
def _gram_rect_nb(indptr_a, ids_a, cnt_a, indptr_b, ids_b, cnt_b, presence, out):
    m = indptr_a.size - 1
    r = indptr_b.size - 1
    for i in prange(m):
        sa, ea = indptr_a[i], indptr_a[i + 1]
        for j in range(r):
            out[i, j] = _pair_intersect_nb(
                ids_a, cnt_a, sa, ea, ids_b, cnt_b, indptr_b[j], indptr_b[j + 1], presence
            )


@njit(cache=True, parallel=True)
def _gram_sym_nb(indptr, ids, cnt, presence, out):
    m = indptr.size - 1
    for i in prange(m):
        sa, ea = indptr[i], indptr[i + 1]
        for j in range(i, m):
            v = _pair_intersect_nb(
                ids, cnt, sa, ea, ids, cnt, indptr[j], indptr[j + 1], presence
            )
            out[i, j] = v
            out[j, i] = v


def _resolve(backend: str | None) -> bool:
    """Map a backend name to use-numba; None follows the env flag."""
    if backend is None or backend == "auto":
        return USE_NUMBA
    if backend == "numba":
        if not NUMBA_AVAILABLE:
            raise ArgumentError("numba backend requested but numba is not importable")
        return True
    if backend == "numpy":
        return False
    raise ArgumentError(f"unknown backend {backend!r}")


def gram_rect(indptr_a, ids_a, cnt_a, indptr_b, ids_b, cnt_b, presence, backend=None):
    """Dense (m x r) Gram block between two encoded profile sets."""
    out = np.empty((indptr_a.size - 1, indptr_b.size - 1), dtype=np.float64)
    if _resolve(backend):
        _gram_rect_nb(indptr_a, ids_a, cnt_a, indptr_b, ids_b, cnt_b, presence, out)
    else:
        _gram_rect_py(indptr_a, ids_a, cnt_a, indptr_b, ids_b, cnt_b, presence, out)
    return out


def gram_sym(indptr, ids, cnt, presence, backend=None):
    """Dense symmetric Gram over one encoded profile set.

    Only the upper triangle is computed; the mirrored lower triangle is
    written from the same value, so the result is bitwise symmetric.
    """
    out = np.empty((indptr.size - 1, indptr.size - 1), dtype=np.float64)
    if _resolve(backend):
        _gram_sym_nb(indptr, ids, cnt, presence, out)
    else:
        _gram_sym_py(indptr, ids, cnt, presence, out)
    return out
