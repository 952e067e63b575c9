"""Arithmetic in GF(p^m), subfield towers and roots of unity.

Elements are stored in the polynomial basis over GF(p): ``coeffs[i]`` is the
coefficient of ``X**i`` where ``X`` is the class of the indeterminate modulo
the field's defining polynomial.  The canonical integer index of an element
reads the coefficient vector as a base-``p`` number, low degree least
significant, and is the ordering used whenever a deterministic "smallest"
element is needed.
"""
from __future__ import annotations

import itertools
import math
from functools import cached_property, lru_cache

from .errors import (
    CoefficientNotInBaseField,
    FieldMismatch,
    InvalidParams,
    NonPrimeCharacteristic,
    NoSuchRoot,
    NotASubfield,
    NotCoprime,
    SizeOverflow,
)

FIELD_SIZE_CAP = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, t)`` with ``q == p**t``; raise if q is not a prime power."""
    if q < 2:
        raise InvalidParams(f"q={q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise InvalidParams(f"q={q} is not a prime power")
    ((p, t),) = fac.items()
    return p, t


def multiplicative_order(q: int, n: int) -> int:
    """Least ``s >= 1`` with ``n | q**s - 1``."""
    if n < 1 or q < 2:
        raise InvalidParams("need q >= 2 and n >= 1")
    if math.gcd(n, q) != 1:
        raise NotCoprime(f"gcd(n={n}, q={q}) != 1")
    if n == 1:
        return 1
    s, acc = 1, q % n
    while acc != 1:
        acc = (acc * q) % n
        s += 1
    return s


# -- polynomials over GF(p) as lists, low degree first -----------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = [x % p for x in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _pmod(prod, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _peval(f, t, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * t + c) % p
    return acc


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: ``gcd(f, X^(p^i) - X) == 1`` for ``i <= deg f // 2``."""
    f = _trim([x % p for x in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (low degree first)."""
    if m == 1:
        return (0, 1)
    # c0 = 0 means x | f; skipping that block keeps the scan short
    for c0 in range(1, p):
        for mid in itertools.product(range(p), repeat=m - 1):
            f = [c0, *mid, 1]
            if any(_peval(f, t, p) == 0 for t in range(p)):
                continue
            if is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FiniteField:
    """GF(p**m) with a fixed monic irreducible modulus.

    Use :func:`build_field` rather than constructing directly; it caches and
    validates.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**m
        self.group_order = self.order - 1
        self.group_factors = factorize(self.group_order) if self.group_order > 1 else {}
        self._key = (p, m, self.modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __reduce__(self):
        return (build_field, (self.p, self.m))

    # construction -----------------------------------------------------------
    def element(self, coeffs) -> FieldElement:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.m:
            if any(c[self.m:]):
                c = _pmod(c, list(self.modulus), self.p)
            c = c[: self.m]
        c += [0] * (self.m - len(c))
        return FieldElement(self, tuple(c))

    def from_index(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for {self}")
        c = []
        for _ in range(self.m):
            index, d = divmod(index, self.p)
            c.append(d)
        return FieldElement(self, tuple(c))

    def scalar(self, c: int) -> FieldElement:
        return FieldElement(self, (int(c) % self.p,) + (0,) * (self.m - 1))

    @cached_property
    def zero(self) -> FieldElement:
        return self.scalar(0)

    @cached_property
    def one(self) -> FieldElement:
        return self.scalar(1)

    @cached_property
    def x(self) -> FieldElement:
        """The class of the indeterminate (the polynomial-basis generator)."""
        if self.m == 1:
            return self.scalar(-self.modulus[0])
        return self.element([0, 1])

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)

    def from_json(self, value) -> FieldElement:
        if isinstance(value, int):
            if self.m != 1:
                raise ValueError(f"{self} elements serialize as integer arrays")
            if not 0 <= value < self.p:
                raise ValueError(f"{value} is not a canonical element of {self}")
            return self.scalar(value)
        if len(value) != self.m or any(not 0 <= int(v) < self.p for v in value):
            raise ValueError(f"{value!r} is not a canonical element of {self}")
        return self.element(value)

    # raw coefficient-tuple arithmetic ---------------------------------------
    def _mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                base = d - m
                for i in range(m):
                    prod[base + i] -= c * mod[i]
        return tuple(v % p for v in prod[:m])

    def _pow(self, a, e):
        result = self.one.coeffs
        while e:
            if e & 1:
                result = self._mul(result, a)
            a = self._mul(a, a)
            e >>= 1
        return result

    # structure ----------------------------------------------------------------
    @cached_property
    def generator(self) -> FieldElement:
        """Smallest (by canonical index) generator of the multiplicative group."""
        N = self.group_order
        if N == 1:
            return self.one
        exps = [N // t for t in self.group_factors]
        one = self.one.coeffs
        for idx in range(2, self.order):
            c = self.from_index(idx).coeffs
            if all(self._pow(c, e) != one for e in exps):
                return FieldElement(self, c)
        raise AssertionError("multiplicative group has no generator")

    def subfield(self, q: int) -> Subfield:
        return _subfield(self, q)


class FieldElement:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.coeffs
        if isinstance(other, int):
            return self.field.scalar(other).coeffs
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, b)))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        p = self.field.p
        return FieldElement(self.field, tuple((x - y) % p for x, y in zip(self.coeffs, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._mul(self.coeffs, b))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.field, self.field._pow(self.coeffs, self.field.order - 2))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.field, b).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_zero:
            return self.field.one if e == 0 else self
        e %= self.field.group_order
        return FieldElement(self.field, self.field._pow(self.coeffs, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field.scalar(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def __int__(self):
        p, out = self.field.p, 0
        for c in reversed(self.coeffs):
            out = out * p + c
        return out

    index = property(__int__)

    def order(self) -> int:
        """Multiplicative order (brute force over divisors of the group order)."""
        if self.is_zero:
            raise ZeroDivisionError("zero has no multiplicative order")
        e = self.field.group_order
        for t, k in self.field.group_factors.items():
            for _ in range(k):
                if (self ** (e // t)) == self.field.one:
                    e //= t
                else:
                    break
        return e

    def to_json(self):
        if self.field.m == 1:
            return self.coeffs[0]
        return list(self.coeffs)

    def __repr__(self):
        if self.field.m == 1:
            return f"{self.coeffs[0]}"
        return f"{self.field}{list(self.coeffs)}"


@lru_cache(maxsize=None)
def build_field(p: int, m: int = 1) -> FiniteField:
    """GF(p**m) with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise InvalidParams("extension degree must be >= 1")
    if p**m > FIELD_SIZE_CAP:
        raise SizeOverflow(f"field size {p}^{m} exceeds {FIELD_SIZE_CAP}")
    return FiniteField(p, m, smallest_irreducible(p, m))


def field_of_order(q: int) -> FiniteField:
    p, t = prime_power(q)
    return build_field(p, t)


def primitive_nth_root(field: FiniteField, n: int) -> FieldElement:
    """``g**((|F|-1)/n)`` for the canonical generator ``g``."""
    if n < 1:
        raise InvalidParams("n must be positive")
    if field.group_order % n:
        raise NoSuchRoot(f"{n} does not divide {field.group_order}")
    return field.generator ** (field.group_order // n)


def _solve_gfp_inverse(mat, p):
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class Subfield:
    """GF(q) sitting inside an extension GF(q**s), with explicit embedding.

    The canonical copy of GF(q) is ``build_field(p, t)``; it is identified
    with the fixed field of ``x -> x**q`` by sending the canonical
    indeterminate to the smallest root (by index) of its modulus.
    """

    def __init__(self, ext: FiniteField, q: int):
        p, t = prime_power(q)
        if p != ext.p or ext.m % t:
            raise NotASubfield(f"GF({q}) is not a subfield of {ext}")
        self.ext = ext
        self.q = q
        self.t = t
        self.s = ext.m // t
        self.base = build_field(p, t)
        if t == 1:
            self._beta = ext.one
        else:
            step = ext.group_order // (q - 1)
            g = ext.generator ** step
            cands = [ext.zero] + [g**k for k in range(q - 1)]
            mod = self.base.modulus

            def val(y):
                acc = ext.zero
                for c in reversed(mod):
                    acc = acc * y + c
                return acc

            self._beta = min((y for y in cands if val(y).is_zero), key=int)

    @cached_property
    def _beta_powers(self):
        return [self._beta**j for j in range(self.t)]

    def embed(self, y: FieldElement) -> FieldElement:
        if y.field != self.base:
            raise FieldMismatch(f"{y.field} is not {self.base}")
        if self.t == 1:
            return self.ext.scalar(y.coeffs[0])
        acc = self.ext.zero
        for c, b in zip(y.coeffs, self._beta_powers):
            if c:
                acc = acc + b * c
        return acc

    def contains(self, x: FieldElement) -> bool:
        if x.field != self.ext:
            raise FieldMismatch(f"{x.field} is not {self.ext}")
        return x**self.q == x

    @cached_property
    def _restrict_table(self):
        return {int(self.embed(y)): y for y in self.base.elements()}

    def restrict(self, x: FieldElement) -> FieldElement:
        if x.field != self.ext:
            raise FieldMismatch(f"{x.field} is not {self.ext}")
        if self.t == 1:
            if any(x.coeffs[1:]):
                raise CoefficientNotInBaseField(f"{x!r} is not in GF({self.q})")
            return self.base.scalar(x.coeffs[0])
        y = self._restrict_table.get(int(x))
        if y is None:
            raise CoefficientNotInBaseField(f"{x!r} is not in GF({self.q})")
        return y

    @cached_property
    def _coord_inverse(self):
        # columns: beta^j * X^i, (i, j) in row-major order
        ext, cols = self.ext, []
        xp = [ext.x**i for i in range(self.s)]
        for i in range(self.s):
            for b in self._beta_powers:
                cols.append((xp[i] * b).coeffs)
        mat = [[cols[c][r] for c in range(len(cols))] for r in range(ext.m)]
        return _solve_gfp_inverse(mat, ext.p)

    def coordinates(self, x: FieldElement) -> list[FieldElement]:
        """Coordinates of x over GF(q) in the basis ``1, X, ..., X**(s-1)``."""
        if x.field != self.ext:
            raise FieldMismatch(f"{x.field} is not {self.ext}")
        if self.t == 1:
            return [self.base.scalar(c) for c in x.coeffs]
        p = self.ext.p
        flat = [sum(a * b for a, b in zip(row, x.coeffs)) % p for row in self._coord_inverse]
        t = self.t
        return [self.base.element(flat[i * t:(i + 1) * t]) for i in range(self.s)]


@lru_cache(maxsize=None)
def _subfield(ext: FiniteField, q: int) -> Subfield:
    return Subfield(ext, q)


def in_base_field(x: FieldElement, q: int) -> tuple[bool, FieldElement | None]:
    """Frobenius test ``x**q == x``; on success also return the GF(q) image."""
    sub = x.field.subfield(q)
    if not sub.contains(x):
        return False, None
    return True, sub.restrict(x)
