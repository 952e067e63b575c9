"""Optimal cyclic (r, delta)-LRC constructions, locality checks and verdicts.

Four generator families are built over the splitting field GF(q^s) of
x^n - 1 and then descended to GF(q):

* ``t1``: (x-1) * prod_{i=1}^{delta-1} (x^rho - alpha^i), distance delta+1
* ``t2``: t1 times (x - gamma) with gamma^rho = alpha^delta, distance delta+2
* ``remark3`` (target d): t1 times prod_{j=delta}^{d-2} (x - gamma^j) with
  gamma^rho = alpha, distance d; ``t3`` is the d = 2*delta member
* ``t4`` (delta = 3): (x-1)(x^rho - alpha)(x^rho - alpha^-1)(x - gamma^2)(x - gamma^-2),
  distance 6, with alpha of order r+2 dividing q+1

where rho = n/(r+delta-1) and alpha = xi^rho for the primitive n-th root xi.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cyclic import (
    ENUMERATION_CAP,
    AboveCeiling,
    CyclicCode,
    bch_lower_bound,
    from_generator,
    min_distance_exact,
)
from .errors import InfeasibleBudget, InvalidParams, PreconditionFailed, RootCollision
from .field import FieldElement, build_field, multiplicative_order, prime_power, primitive_nth_root
from .poly import Polynomial, descend_coefficients, sparse_binomial


class Kind(str, enum.Enum):
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"
    REMARK3 = "remark3"
    T4 = "t4"


@dataclass(frozen=True)
class ConstructionKind:
    tag: Kind
    target_d: int | None = None  # remark3 only

    def __post_init__(self):
        object.__setattr__(self, "tag", Kind(self.tag))
        if self.tag is Kind.REMARK3 and self.target_d is None:
            raise InvalidParams("remark3 needs a target distance d")
        if self.tag is not Kind.REMARK3 and self.target_d is not None:
            raise InvalidParams(f"{self.tag.value} takes no target distance")

    @classmethod
    def parse(cls, tag: str, d: int | None = None) -> ConstructionKind:
        return cls(Kind(tag.lower()), d)

    def __str__(self):
        if self.tag is Kind.REMARK3:
            return f"remark3(d={self.target_d})"
        return self.tag.value


@dataclass(frozen=True)
class LrcParams:
    q: int
    n: int
    r: int
    delta: int

    @property
    def group_size(self) -> int:
        return self.r + self.delta - 1

    @property
    def rho(self) -> int:
        return self.n // self.group_size


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    return a, x0, y0


def bezout_for(rho: int, L: int, target: int) -> tuple[int, int]:
    """``(a, b)`` with ``a*rho + b*L == target`` and ``0 <= a < L``."""
    g, x, _ = bezout(rho, L)
    if target % g:
        raise PreconditionFailed(f"gcd(rho, r+delta-1) | {target}", f"gcd({rho},{L})={g}")
    a = (x * (target // g)) % L
    b, rem = divmod(target - a * rho, L)
    assert rem == 0
    return a, b


def singleton_bound(n: int, k: int, r: int, delta: int) -> int:
    """``n - k + 1 - (ceil(k/r) - 1)(delta - 1)``."""
    # r > k is allowed: it occurs for the shortest codes of a family (n=5, k=2, r=3)
    if not (1 <= k <= n and r >= 1 and delta >= 2):
        raise InvalidParams(f"need 1 <= k <= n, r >= 1, delta >= 2 (n={n}, k={k}, r={r}, delta={delta})")
    return n - k + 1 - (-(-k // r) - 1) * (delta - 1)


def expected_dimension(params: LrcParams, kind: ConstructionKind) -> int:
    r, rho, delta = params.r, params.rho, params.delta
    return {
        Kind.T1: r * rho - 1,
        Kind.T2: r * rho - 2,
        Kind.T3: r * rho - delta,
        Kind.REMARK3: r * rho - ((kind.target_d or 0) - delta),
        Kind.T4: r * rho - 3,
    }[kind.tag]


def target_distance(params: LrcParams, kind: ConstructionKind) -> int:
    delta = params.delta
    return {
        Kind.T1: delta + 1,
        Kind.T2: delta + 2,
        Kind.T3: 2 * delta,
        Kind.REMARK3: kind.target_d,
        Kind.T4: 6,
    }[kind.tag]


def check_preconditions(params: LrcParams, kind: ConstructionKind) -> None:
    """Raise :class:`PreconditionFailed` naming the first violated hypothesis."""
    q, n, r, delta = params.q, params.n, params.r, params.delta
    try:
        prime_power(q)
    except InvalidParams:
        raise PreconditionFailed("q must be a prime power", f"q={q}") from None
    if n < 1:
        raise PreconditionFailed("n must be positive", f"n={n}")
    if math.gcd(n, q) != 1:
        raise PreconditionFailed("gcd(n,q) ≠ 1", f"gcd({n},{q})={math.gcd(n, q)}")
    if r < 1:
        raise PreconditionFailed("r >= 1", f"r={r}")
    if delta < 2:
        raise PreconditionFailed("delta >= 2", f"delta={delta}")
    L = params.group_size
    tag = kind.tag
    if tag is Kind.T4:
        if delta != 3:
            raise PreconditionFailed("delta must be 3", f"delta={delta}")
        if r < 4:
            raise PreconditionFailed("r >= 4", f"r={r}")
        if n % 2 == 0:
            raise PreconditionFailed("n must be odd", f"n={n}")
        if L % 2 == 0:
            raise PreconditionFailed(
                "(r+2) | n", f"r+2={L} is even, which is impossible for odd n={n}")
        if math.gcd(n, q + 1) % L:
            raise PreconditionFailed("(r+2) | gcd(n, q+1)", f"r+2={L}, gcd={math.gcd(n, q + 1)}")
        if math.gcd(n // L, L) != 1:
            raise PreconditionFailed("gcd(rho, r+2) = 1", f"rho={n // L}")
        return
    if tag is Kind.T1 and r < 2:
        raise PreconditionFailed("r >= 2", f"r={r}")
    if tag is Kind.T2 and r < 3:
        raise PreconditionFailed("r >= 3", f"r={r}")
    if tag is Kind.T3 and r < delta + 1:
        raise PreconditionFailed("r >= delta+1", f"r={r}, delta={delta}")
    if tag is Kind.REMARK3:
        d = kind.target_d
        if not delta + 1 <= d <= 2 * delta:
            raise PreconditionFailed("delta+1 <= d <= 2*delta", f"d={d}, delta={delta}")
        if r < d - delta + 1:
            raise PreconditionFailed("r >= d-delta+1", f"r={r}, d={d}, delta={delta}")
    if math.gcd(n, q - 1) % L:
        raise PreconditionFailed(
            "(r+delta-1) | gcd(n, q-1)", f"r+delta-1={L}, gcd={math.gcd(n, q - 1)}")
    rho = n // L
    if tag is Kind.T2 and delta % math.gcd(rho, L):
        raise PreconditionFailed("gcd(rho, r+delta-1) | delta", f"gcd({rho},{L})={math.gcd(rho, L)}")
    if tag in (Kind.T3, Kind.REMARK3) and math.gcd(rho, L) != 1:
        raise PreconditionFailed("gcd(rho, r+delta-1) = 1", f"gcd({rho},{L})={math.gcd(rho, L)}")


def applicable(params: LrcParams, kind: ConstructionKind) -> bool:
    try:
        check_preconditions(params, kind)
    except PreconditionFailed:
        return False
    return True


@dataclass(frozen=True, eq=False)
class Derivation:
    """Intermediate objects of a construction, before descent to GF(q)."""

    params: LrcParams
    kind: ConstructionKind
    s: int
    xi: FieldElement
    alpha: FieldElement
    gamma: FieldElement | None
    bezout_a: int | None
    bezout_b: int | None
    ext_generator: Polynomial
    roots: tuple  # exponents e with xi^e a root, in factor order


def derive(params: LrcParams, kind: ConstructionKind) -> Derivation:
    """Build the generator over GF(q^s) following the chosen family."""
    check_preconditions(params, kind)
    q, n, delta = params.q, params.n, params.delta
    p, t = prime_power(q)
    L, rho = params.group_size, params.rho
    s = multiplicative_order(q, n)
    ext = build_field(p, t * s)
    xi = primitive_nth_root(ext, n)
    alpha = xi**rho
    x_minus = lambda c: sparse_binomial(1, c)  # noqa: E731

    factors = [x_minus(ext.one)]
    roots = [0]
    # exponents of xi^e with (xi^e)^rho = alpha^i: e = i + j*L
    for i in _coset_labels(kind, delta, L):
        factors.append(sparse_binomial(rho, alpha**i))
        roots.extend((i + j * L) % n for j in range(rho))

    gamma = a = b = None
    if kind.tag is Kind.T2:
        a, b = bezout_for(rho, L, delta)
    elif kind.tag in (Kind.T3, Kind.REMARK3, Kind.T4):
        a, b = bezout_for(rho, L, 1)
    if a is not None:
        gamma = alpha**a
        # gamma = xi^(rho*a)
        g_exp = (rho * a) % n
        if kind.tag is Kind.T2:
            extra = [1]
        elif kind.tag is Kind.T4:
            extra = [2, -2]
        else:
            d = target_distance(params, kind)
            extra = list(range(delta, d - 1))
        for j in extra:
            factors.append(x_minus(gamma**j))
            roots.append((g_exp * j) % n)

    if len(set(roots)) != len(roots):
        raise RootCollision(f"generator roots collide for {params} {kind}")
    g = Polynomial(ext, [ext.one])
    for f in factors:
        g = g * f
    return Derivation(params, kind, s, xi, alpha, gamma, a, b, g, tuple(roots))


def _coset_labels(kind: ConstructionKind, delta: int, L: int):
    if kind.tag is Kind.T4:
        return [1, L - 1]
    return list(range(1, delta))


def construct(params: LrcParams, kind: ConstructionKind) -> CyclicCode:
    """Cyclic code over GF(q) for ``params`` using construction ``kind``."""
    der = derive(params, kind)
    g = descend_coefficients(der.ext_generator, params.q)
    code = from_generator(g.field, params.n, g)
    if code.zeros != frozenset(der.roots):
        raise RootCollision("zero set of the descended generator differs from the construction")
    return code


# -- locality ------------------------------------------------------------------

@dataclass(frozen=True)
class DefiningSetWitness:
    ells: tuple  # progression ell_1 < ... < ell_{delta-1}
    step: int  # common difference, coprime to n


@dataclass(frozen=True)
class LocalityVerdict:
    holds: bool
    witness: DefiningSetWitness | None = None


def full_residues(zeros, n: int, L: int) -> set:
    """Residues l mod L whose whole class ``{e : e = l mod L}`` lies in Z."""
    Z = set(zeros)
    return {l for l in range(L) if all(e in Z for e in range(l, n, L))}


def locality_check_defining_set(code: CyclicCode, r: int, delta: int) -> LocalityVerdict:
    """Sufficient condition for (r, delta)-locality read off the zero set.

    Looks for delta-1 residues mod r+delta-1 in arithmetic progression (step
    coprime to n) whose full residue classes lie in the zero set.  A negative
    answer is inconclusive.
    """
    L = r + delta - 1
    n = code.n
    if r < 1 or delta < 2:
        raise InvalidParams(f"need r >= 1 and delta >= 2 (r={r}, delta={delta})")
    if n % L:
        return LocalityVerdict(False)  # no coset structure to read off
    full = full_residues(code.zeros, n, L)
    seen = set()
    for b in range(1, max(n, 2)):
        if math.gcd(b, n) != 1 or b % L in seen:
            continue
        seen.add(b % L)
        for u in list(range(1, L)) + [0]:
            if all((u + i * b) % L in full for i in range(delta - 1)):
                u0 = u if u <= L // 2 else u - L
                return LocalityVerdict(True, DefiningSetWitness(
                    tuple(u0 + i * b for i in range(delta - 1)), b))
    return LocalityVerdict(False)


def punctured_distance(G: np.ndarray, positions, gf, backend=None):
    """Minimum distance of the code spanned by G restricted to ``positions``.

    Returns ``None`` for the zero code.
    """
    sub = np.asarray(G)[:, list(positions)]
    R, _ = gf.rref(sub) if sub.shape[0] else (sub, [])
    if R.shape[0] == 0:
        return None
    if gf.q ** R.shape[0] > ENUMERATION_CAP:
        raise InfeasibleBudget(f"punctured code has q^{R.shape[0]} codewords")
    return _kernels.min_nonzero_weight(R, gf, backend)


def locality_check_direct(code: CyclicCode, r: int, delta: int, backend=None) -> bool:
    """Every coordinate has a repair set of size <= r+delta-1 whose punctured
    code has distance >= delta.

    Uses the residue-class repair groups when (r+delta-1) | n; otherwise
    searches all candidate sets containing each coordinate.
    """
    from .repair import repair_groups

    L = r + delta - 1
    n, G, gf = code.n, code.generator_matrix, code.gf

    def ok(positions):
        d = punctured_distance(G, positions, gf, backend)
        return d is None or d >= delta

    if n % L == 0:
        return all(ok(grp.positions) for grp in repair_groups(n, r, delta))
    for i in range(n):
        others = [j for j in range(n) if j != i]
        found = False
        for size in range(delta, min(L, n) + 1):
            if math.comb(n - 1, size - 1) > 10**6:
                raise InfeasibleBudget(f"too many candidate repair sets of size {size}")
            if any(ok((i,) + c) for c in itertools.combinations(others, size - 1)):
                found = True
                break
        if not found:
            return False
    return True


# -- verification -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LrcReport:
    params: LrcParams
    kind: ConstructionKind
    code: CyclicCode
    k: int
    d_exact: int | AboveCeiling
    d_bch_lower: int
    bound: int
    defining_set: LocalityVerdict
    direct: bool

    @property
    def optimal(self) -> bool:
        return self.direct and self.d_exact == self.bound


def verify(params: LrcParams, kind: ConstructionKind, method: str = "auto", backend=None) -> LrcReport:
    """Construct and measure: dimension, exact distance, bounds and locality."""
    code = construct(params, kind)
    k = code.k
    bound = singleton_bound(params.n, k, params.r, params.delta)
    d = min_distance_exact(code, bound + 1, method=method, backend=backend)
    return LrcReport(
        params=params,
        kind=kind,
        code=code,
        k=k,
        d_exact=d,
        d_bch_lower=bch_lower_bound(code),
        bound=bound,
        defining_set=locality_check_defining_set(code, params.r, params.delta),
        direct=locality_check_direct(code, params.r, params.delta, backend),
    )


def candidate_kinds(delta: int):
    yield ConstructionKind(Kind.T1)
    yield ConstructionKind(Kind.T2)
    yield ConstructionKind(Kind.T3)
    for d in range(delta + 1, 2 * delta + 1):
        yield ConstructionKind(Kind.REMARK3, d)
    if delta == 3:
        yield ConstructionKind(Kind.T4)


def search_params(q_range, n_range, r_range, delta_range):
    """All ``(LrcParams, [kinds])`` whose construction hypotheses hold.

    Ordered by q, then n, then r, then delta.
    """
    out = []
    for q in sorted(set(q_range)):
        try:
            prime_power(q)
        except InvalidParams:
            continue
        for n in sorted(set(n_range)):
            for r in sorted(set(r_range)):
                for delta in sorted(set(delta_range)):
                    if n < 1 or r < 1 or delta < 2 or n % (r + delta - 1):
                        continue
                    params = LrcParams(q, n, r, delta)
                    kinds = [kd for kd in candidate_kinds(delta) if applicable(params, kd)]
                    if kinds:
                        out.append((params, kinds))
    return out
