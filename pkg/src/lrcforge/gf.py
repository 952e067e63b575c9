"""Vectorized GF(q) arithmetic on canonical element indices.

Codewords, parity-check matrices and messages are numpy integer arrays whose
entries are canonical indices of GF(q) elements (see :mod:`lrcforge.field`).
All arithmetic goes through dense ``q x q`` lookup tables so that prime and
prime-power alphabets share one code path, including inside the JIT kernels.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import SizeOverflow
from .field import FiniteField

#: largest alphabet for which lookup tables are built
TABLE_Q_CAP = 2048


class GFq:
    """Lookup tables and small dense linear algebra over GF(q)."""

    def __init__(self, field: FiniteField):
        q = field.order
        if q > TABLE_Q_CAP:
            raise SizeOverflow(f"alphabet size {q} exceeds table cap {TABLE_Q_CAP}")
        self.field = field
        self.q = q
        self.p = field.p
        idx = np.arange(q, dtype=np.int64)
        if field.m == 1:
            self.add = (idx[:, None] + idx[None, :]) % q
            self.sub = (idx[:, None] - idx[None, :]) % q
        else:
            pw = field.p ** np.arange(field.m, dtype=np.int64)
            dig = (idx[:, None] // pw) % field.p
            self.add = (((dig[:, None, :] + dig[None, :, :]) % field.p) * pw).sum(-1)
            self.sub = (((dig[:, None, :] - dig[None, :, :]) % field.p) * pw).sum(-1)
        g = field.generator
        exp = np.zeros(q - 1, dtype=np.int64)
        x = field.one
        for i in range(q - 1):
            exp[i] = int(x)
            x = x * g
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul = mul
        self.neg = self.sub[0].copy()
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        self.inv = inv
        for name in ("add", "sub", "mul", "neg", "inv"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            setattr(self, name, arr)

    # vector helpers ------------------------------------------------------------
    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        squeeze = B.ndim == 1
        if squeeze:
            B = B[:, None]
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for l in range(A.shape[1]):
            out = self.add[out, self.mul[A[:, l, None], B[None, l, :]]]
        return out[:, 0] if squeeze else out

    def scale(self, c, v):
        return self.mul[c, np.asarray(v, dtype=np.int64)]

    def axpy(self, c, x, y):
        """``y + c*x`` elementwise."""
        return self.add[np.asarray(y, dtype=np.int64), self.mul[c, np.asarray(x, dtype=np.int64)]]

    def poly_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.size == 0 or b.size == 0:
            return np.zeros(0, dtype=np.int64)
        out = np.zeros(a.size + b.size - 1, dtype=np.int64)
        for i, c in enumerate(a):
            if c:
                out[i:i + b.size] = self.add[out[i:i + b.size], self.mul[c, b]]
        return out

    def poly_mod(self, a, g):
        """Remainder of ``a`` modulo monic ``g`` (length ``len(g)-1``)."""
        rem = np.array(a, dtype=np.int64)
        dg = len(g) - 1
        g = np.asarray(g, dtype=np.int64)
        for shift in range(rem.size - 1 - dg, -1, -1):
            c = rem[shift + dg]
            if c:
                rem[shift:shift + dg + 1] = self.sub[rem[shift:shift + dg + 1], self.mul[c, g]]
        out = np.zeros(dg, dtype=np.int64)
        m = min(dg, rem.size)
        out[:m] = rem[:m]
        return out

    # linear algebra --------------------------------------------------------------
    def rref(self, M):
        """Reduced row echelon form; returns ``(R, pivot_columns)``."""
        R = np.array(M, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise ValueError("rref expects a matrix")
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + nz[0]
            if pr != r:
                R[[r, pr]] = R[[pr, r]]
            R[r] = self.mul[self.inv[R[r, c]], R[r]]
            f = R[:, c].copy()
            f[r] = 0
            nzr = np.nonzero(f)[0]
            if nzr.size:
                R[nzr] = self.sub[R[nzr], self.mul[f[nzr, None], R[r][None, :]]]
            pivots.append(c)
            r += 1
        return R[:r], pivots

    def rank(self, M) -> int:
        M = np.asarray(M)
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])

    def nullspace(self, M):
        """Basis (as rows) of ``{x : M @ x == 0}``."""
        M = np.asarray(M, dtype=np.int64)
        cols = M.shape[1]
        if M.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        R, piv = self.rref(M)
        free = [c for c in range(cols) if c not in set(piv)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for r, pc in enumerate(piv):
                basis[i, pc] = self.neg[R[r, f]]
        return basis

    def solve(self, A, b):
        """Unique solution of ``A x = b``; ``None`` if A lacks full column rank
        or the system is inconsistent."""
        A = np.asarray(A, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        cols = A.shape[1]
        R, piv = self.rref(np.concatenate([A, b[:, None]], axis=1))
        if cols in piv or len(piv) != cols:
            return None
        return R[:cols, cols].copy()


@lru_cache(maxsize=None)
def gf_tables(field: FiniteField) -> GFq:
    return GFq(field)
