"""Hot loops: codeword enumeration and the column-dependence search.

Each kernel has a numba implementation and a pure-numpy implementation with
identical results (including the witness and the number of rank tests).
Numba is used when it imports and ``LRC_FORGE_NO_JIT`` is unset; set
``LRC_FORGE_NO_JIT=1`` to force the numpy path.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

JIT_DISABLED = os.environ.get("LRC_FORGE_NO_JIT", "").strip().lower() in ("1", "true", "yes", "on")
HAVE_NUMBA = numba is not None
USE_JIT = HAVE_NUMBA and not JIT_DISABLED


def default_backend() -> str:
    return "numba" if USE_JIT else "numpy"


def _resolve(backend):
    backend = backend or default_backend()
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


# -- minimum nonzero weight by enumeration -------------------------------------

def _min_weight_py(G, add, sub, mul, q):
    k, n = G.shape
    digits = np.zeros(k, np.int64)
    cw = np.zeros(n, np.int64)
    best = n + 1
    total = q**k
    for _ in range(1, total):
        i = 0
        while True:
            old = digits[i]
            new = old + 1
            if new == q:
                new = 0
            delta = sub[new, old]
            for j in range(n):
                cw[j] = add[cw[j], mul[delta, G[i, j]]]
            digits[i] = new
            if new != 0:
                break
            i += 1
        wgt = 0
        for j in range(n):
            if cw[j] != 0:
                wgt += 1
        if 0 < wgt < best:
            best = wgt
    return best


def _min_weight_numpy(G, add, sub, mul, q, chunk=1 << 14):
    k, n = G.shape
    total = q**k
    best = n + 1
    if k == 0:
        return best
    pw = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // pw) % q
        cw = np.zeros((idx.size, n), dtype=np.int64)
        for i in range(k):
            cw = add[cw, mul[digits[:, i:i + 1], G[i][None, :]]]
        wgt = (cw != 0).sum(axis=1)
        wgt = wgt[wgt > 0]
        if wgt.size:
            best = min(best, int(wgt.min()))
    return best


# -- first dependent w-subset of columns ---------------------------------------

def _first_dependent_py(H, w, add, mul, neg, inv):
    rows, n = H.shape
    red = np.zeros((w, rows), np.int64)
    piv = np.zeros(w, np.int64)
    idx = np.zeros(w, np.int64)
    vec = np.zeros(rows, np.int64)
    tests = 0
    d = 0
    idx[0] = -1
    while d >= 0:
        idx[d] += 1
        if idx[d] > n - w + d:
            d -= 1
            continue
        j = idx[d]
        for r in range(rows):
            vec[r] = H[r, j]
        for t in range(d):
            c = vec[piv[t]]
            if c != 0:
                f = neg[c]
                for r in range(rows):
                    vec[r] = add[vec[r], mul[f, red[t, r]]]
        if d == w - 1:
            tests += 1
        p = -1
        for r in range(rows):
            if vec[r] != 0:
                p = r
                break
        if p < 0:
            # a dependent prefix: its first extension is the first dependent w-subset
            out = np.zeros(w, np.int64)
            for t in range(w):
                out[t] = idx[t] if t <= d else out[t - 1] + 1
            if d < w - 1:
                tests += 1
            return out, tests
        if d == w - 1:
            continue
        ic = inv[vec[p]]
        for r in range(rows):
            red[d, r] = mul[ic, vec[r]]
        piv[d] = p
        d += 1
        idx[d] = idx[d - 1]
    return np.zeros(0, np.int64), tests


def _batched_rank(M, add, sub, mul, inv):
    """Row-reduce a stack of matrices ``(B, rows, w)``; return their ranks."""
    B, rows, w = M.shape
    used = np.zeros((B, rows), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for c in range(w):
        nz = (M[:, :, c] != 0) & ~used
        has = nz.any(axis=1)
        if not has.any():
            continue
        pr = nz.argmax(axis=1)
        b = ar[has]
        pr = pr[has]
        prow = mul[inv[M[b, pr, c]][:, None], M[b, pr, :]]
        f = M[b, :, c].copy()
        f[np.arange(b.size), pr] = 0
        M[b] = sub[M[b], mul[f[:, :, None], prow[:, None, :]]]
        M[b, pr, :] = prow
        used[b, pr] = True
        rank[b] += 1
    return rank


def _first_dependent_numpy(H, w, add, mul, neg, inv, sub=None, chunk=1 << 13):
    rows, n = H.shape
    if sub is None:
        sub = add[:, neg]
    combos = itertools.combinations(range(n), w)
    tests = 0
    while True:
        block = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, chunk)), dtype=np.int64
        )
        if block.size == 0:
            return np.zeros(0, np.int64), tests
        block = block.reshape(-1, w)
        M = np.ascontiguousarray(H[:, block].transpose(1, 0, 2))
        ranks = _batched_rank(M, add, sub, mul, inv)
        dep = np.nonzero(ranks < w)[0]
        if dep.size:
            first = int(dep[0])
            return block[first].copy(), tests + first + 1
        tests += block.shape[0]


if HAVE_NUMBA:
    _min_weight_jit = numba.njit(cache=True, nogil=True)(_min_weight_py)
    _first_dependent_jit = numba.njit(cache=True, nogil=True)(_first_dependent_py)
else:  # pragma: no cover
    _min_weight_jit = _first_dependent_jit = None


def min_nonzero_weight(G, gf, backend=None):
    """Minimum weight over all nonzero ``m @ G``; ``None`` if G has no rows."""
    backend = _resolve(backend)
    G = np.ascontiguousarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return None
    if backend == "numba":
        best = _min_weight_jit(G, gf.add, gf.sub, gf.mul, gf.q)
    else:
        best = _min_weight_numpy(G, gf.add, gf.sub, gf.mul, gf.q)
    n = G.shape[1]
    return None if best > n else int(best)


def first_dependent_subset(H, w, gf, backend=None):
    """Lexicographically first ``w``-subset of linearly dependent columns of H.

    Returns ``(subset, rank_tests)``; ``subset`` is empty when every
    ``w``-subset is independent.
    """
    backend = _resolve(backend)
    H = np.ascontiguousarray(H, dtype=np.int64)
    if w < 1 or w > H.shape[1]:
        return np.zeros(0, np.int64), 0
    if backend == "numba":
        subset, tests = _first_dependent_jit(H, w, gf.add, gf.mul, gf.neg, gf.inv)
    else:
        subset, tests = _first_dependent_numpy(H, w, gf.add, gf.mul, gf.neg, gf.inv, gf.sub)
    return np.asarray(subset, dtype=np.int64), int(tests)
