"""Cyclic codes: zero sets, parity checks, encoding and exact minimum distance."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import (
    InfeasibleBudget,
    LengthMismatch,
    NonMonicGenerator,
    NotADivisor,
    NotCoprime,
    OracleDisagreement,
    RootCollision,
)
from .field import FieldElement, FiniteField, build_field, multiplicative_order, primitive_nth_root
from .gf import GFq, gf_tables
from .poly import Polynomial, divides_xn_minus_1, embed_polynomial

DEFAULT_BUDGET = 5_000_000
#: codeword enumeration runs only when q**k is at most this
ENUMERATION_CAP = 2**20


def rank_test_budget() -> int:
    """Cap on rank tests per weight stratum; ``LRC_FORGE_BUDGET`` overrides."""
    raw = os.environ.get("LRC_FORGE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class AboveCeiling(NamedTuple):
    """Minimum distance exceeds ``ceiling``."""

    ceiling: int


@dataclass(frozen=True, eq=False)
class CyclicCode:
    n: int
    base: FiniteField
    generator: Polynomial
    ext: FiniteField
    s: int
    xi: FieldElement
    zeros: frozenset
    k: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "k", self.n - int(self.generator.degree))

    @property
    def q(self) -> int:
        return self.base.order

    @cached_property
    def gf(self) -> GFq:
        return gf_tables(self.base)

    @cached_property
    def generator_indices(self) -> np.ndarray:
        return np.array([int(c) for c in self.generator.coeffs], dtype=np.int64)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """k x n matrix whose rows are the shifts ``x**i g(x)``."""
        g = self.generator_indices
        G = np.zeros((self.k, self.n), dtype=np.int64)
        for i in range(self.k):
            G[i, i:i + g.size] = g
        G.setflags(write=False)
        return G

    @cached_property
    def parity_check(self) -> ExpandedParityCheck:
        return ExpandedParityCheck.of(self)

    def contains(self, word) -> bool:
        """Membership by divisibility of the word polynomial by g(x)."""
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            raise LengthMismatch(f"word length {word.size} != n={self.n}")
        return not self.gf.poly_mod(word, self.generator_indices).any()

    def encode(self, message, mode: str = "multiplicative") -> np.ndarray:
        return encode(self, message, mode)

    def __repr__(self):
        return f"CyclicCode(q={self.q}, n={self.n}, k={self.k}, deg g={self.generator.degree})"


@dataclass(frozen=True, eq=False)
class ExpandedParityCheck:
    """GF(q) parity check obtained by expanding ``xi**(e*j)`` over GF(q)."""

    matrix: np.ndarray  # (s*|Z|, n)
    reduced: np.ndarray  # independent rows spanning the same space
    gf: GFq

    @classmethod
    def of(cls, code: CyclicCode) -> ExpandedParityCheck:
        n, s = code.n, code.s
        sub = code.ext.subfield(code.q)
        coords = np.zeros((n, s), dtype=np.int64)
        x = code.ext.one
        for i in range(n):
            coords[i] = [int(c) for c in sub.coordinates(x)]
            x = x * code.xi
        zeros = sorted(code.zeros)
        H = np.zeros((s * len(zeros), n), dtype=np.int64)
        j = np.arange(n)
        for zi, e in enumerate(zeros):
            H[zi * s:(zi + 1) * s] = coords[(e * j) % n].T
        reduced, _ = code.gf.rref(H)
        H.setflags(write=False)
        reduced.setflags(write=False)
        return cls(H, reduced, code.gf)

    def syndrome(self, word):
        return self.gf.matmul(self.reduced, np.asarray(word, dtype=np.int64))

    def is_codeword(self, word) -> bool:
        return not self.syndrome(word).any()

    @property
    def rank(self) -> int:
        return self.reduced.shape[0]

    def kernel(self) -> np.ndarray:
        return self.gf.nullspace(self.reduced)


def from_generator(base: FiniteField, n: int, g: Polynomial) -> CyclicCode:
    """Cyclic code of length n over ``base`` generated by monic ``g``."""
    q = base.order
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd(n={n}, q={q}) != 1")
    if g.field != base:
        g = Polynomial(base, g.coeffs)
    if not g.is_monic:
        raise NonMonicGenerator("generator polynomial must be monic")
    if not divides_xn_minus_1(g, n):
        raise NotADivisor(f"g does not divide x^{n} - 1")
    s = multiplicative_order(q, n)
    ext = build_field(base.p, base.m * s)
    xi = primitive_nth_root(ext, n)
    g_ext = embed_polynomial(g, ext)
    zeros = set()
    x = ext.one
    for e in range(n):
        if g_ext(x).is_zero:
            zeros.add(e)
        x = x * xi
    if len(zeros) != g.degree:
        raise RootCollision(f"g has {len(zeros)} distinct n-th-root zeros but degree {g.degree}")
    return CyclicCode(n, base, g, ext, s, xi, frozenset(zeros))


def encode(code: CyclicCode, message, mode: str = "multiplicative") -> np.ndarray:
    """Encode a length-k message of GF(q) indices.

    ``multiplicative`` returns the coefficients of ``m(x) g(x)``;
    ``systematic`` places the message in the last k positions.
    """
    msg = np.asarray(message, dtype=np.int64)
    if msg.shape != (code.k,):
        raise LengthMismatch(f"message length {msg.size} != k={code.k}")
    gf, n, k = code.gf, code.n, code.k
    out = np.zeros(n, dtype=np.int64)
    if mode == "multiplicative":
        prod = gf.poly_mul(msg, code.generator_indices)
        out[:prod.size] = prod[:n]
    elif mode == "systematic":
        shifted = np.zeros(n, dtype=np.int64)
        shifted[n - k:] = msg
        rem = gf.poly_mod(shifted, code.generator_indices)
        out = shifted
        out[:n - k] = gf.neg[rem]
    else:
        raise ValueError(f"unknown encoding mode {mode!r}")
    return out


# -- minimum distance ------------------------------------------------------------

def distance_by_enumeration(code: CyclicCode, backend=None):
    """Oracle (a): minimum weight over all q**k - 1 nonzero codewords."""
    if code.q**code.k > ENUMERATION_CAP:
        raise InfeasibleBudget(f"q^k = {code.q}^{code.k} exceeds enumeration cap {ENUMERATION_CAP}")
    return _kernels.min_nonzero_weight(code.generator_matrix, code.gf, backend)


@dataclass(frozen=True)
class ColumnSearch:
    distance: int | None  # None: no dependent set up to ``ceiling``
    witness: tuple
    rank_tests: int
    ceiling: int


def distance_by_columns(H, gf: GFq, ceiling: int, budget: int | None = None, backend=None) -> ColumnSearch:
    """Oracle (b): smallest w such that some w columns of H are dependent."""
    budget = rank_test_budget() if budget is None else budget
    n = H.shape[1]
    top = min(ceiling, n)
    for w in range(1, top + 1):
        if math.comb(n, w) > budget:
            raise InfeasibleBudget(
                f"C({n},{w}) = {math.comb(n, w)} column subsets exceed the budget of {budget}"
            )
    total = 0
    for w in range(1, top + 1):
        subset, tests = _kernels.first_dependent_subset(H, w, gf, backend)
        total += tests
        if subset.size:
            return ColumnSearch(w, tuple(int(i) for i in subset), total, ceiling)
    return ColumnSearch(None, (), total, ceiling)


def min_distance_exact(code: CyclicCode, ceiling: int, method: str = "auto",
                       budget: int | None = None, backend=None):
    """Exact minimum distance, or :class:`AboveCeiling` if it exceeds ``ceiling``.

    ``method`` is ``"enumerate"``, ``"columns"`` or ``"auto"``; ``auto`` runs
    every oracle that is within budget and cross-checks them.
    """
    if ceiling < 1:
        raise ValueError("ceiling must be >= 1")
    if method not in ("auto", "enumerate", "columns"):
        raise ValueError(f"unknown method {method!r}")
    results = {}
    if method in ("auto", "enumerate"):
        if method == "enumerate" or code.q**code.k <= ENUMERATION_CAP:
            d = distance_by_enumeration(code, backend)
            results["enumerate"] = AboveCeiling(ceiling) if d is None or d > ceiling else d
    if method in ("auto", "columns"):
        # Singleton: a dependent set always exists at w = n - k + 1 when k >= 1
        top = min(ceiling, code.n - code.k + 1) if code.k else ceiling
        try:
            search = distance_by_columns(code.parity_check.reduced, code.gf, top, budget, backend)
        except InfeasibleBudget:
            if method == "columns" or not results:
                raise
        else:
            results["columns"] = search.distance if search.distance is not None else AboveCeiling(ceiling)
    values = set(results.values())
    if len(values) > 1:
        raise OracleDisagreement(f"distance oracles disagree: {results}")
    return values.pop()


def bch_lower_bound(code: CyclicCode) -> int:
    """1 + longest progression ``u, u+b, ...`` (mod n, gcd(b, n) = 1) inside Z."""
    return bch_bound_from_zeros(code.zeros, code.n)


def bch_bound_from_zeros(zeros, n: int) -> int:
    Z = set(zeros)
    if not Z:
        return 1
    if len(Z) == n:
        return n + 1
    best = 0
    steps = [b for b in range(1, n) if math.gcd(b, n) == 1] or [1]
    for b in steps:
        for u in Z:
            if (u - b) % n in Z:
                continue  # not the start of a maximal run
            length, e = 0, u
            while e in Z:
                length += 1
                e = (e + b) % n
            best = max(best, length)
    return best + 1
