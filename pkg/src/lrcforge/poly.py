"""Dense univariate polynomials over a :class:`~lrcforge.field.FiniteField`."""
from __future__ import annotations

import math

from .errors import (
    CoefficientNotInBaseField,
    DivisionByZeroPolynomial,
    FieldMismatch,
    NonMonicGenerator,
)
from .field import FieldElement, FiniteField

#: degree of the zero polynomial
NEG_INF = -math.inf


class Polynomial:
    """Coefficients low degree first, stored without trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = field.scalar(c)
            elif c.field != field:
                raise FieldMismatch(f"coefficient from {c.field}, expected {field}")
            cs.append(c)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def monomial(cls, field, degree, coeff=None):
        c = field.one if coeff is None else coeff
        return cls(field, [field.zero] * degree + [c])

    @classmethod
    def x_n_minus_1(cls, field, n):
        return cls(field, [-field.one] + [field.zero] * (n - 1) + [field.one])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.lead == self.field.one

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other):
        if isinstance(other, FieldElement):
            other = Polynomial(self.field, [other])
        elif isinstance(other, int):
            other = Polynomial(self.field, [self.field.scalar(other)])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return Polynomial(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        inv_lead = other.lead.inverse()
        quot = [self.field.zero] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - 1 - dd, -1, -1):
            c = rem[shift + dd]
            if c.is_zero:
                continue
            c = c * inv_lead
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
        return Polynomial(self.field, quot), Polynomial(self.field, rem[:dd] if dd else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t: FieldElement) -> FieldElement:
        if isinstance(t, int):
            t = self.field.scalar(t)
        if t.field != self.field:
            raise FieldMismatch(f"{t.field} vs {self.field}")
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        inv = self.lead.inverse()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other) -> Polynomial:
        """Monic gcd (zero if both are zero)."""
        a, b = self, self._check(other)
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, field, data):
        return cls(field, [field.from_json(v) for v in data])

    def __repr__(self):
        if self.is_zero:
            return f"Polynomial({self.field}, 0)"
        return f"Polynomial({self.field}, {[c.to_json() for c in self.coeffs]})"


def sparse_binomial(rho: int, c: FieldElement) -> Polynomial:
    """``x**rho - c``."""
    if rho < 1:
        raise ValueError("rho must be >= 1")
    f = c.field
    return Polynomial(f, [-c] + [f.zero] * (rho - 1) + [f.one])


def divides_xn_minus_1(g: Polynomial, n: int) -> bool:
    if not g.is_monic:
        raise NonMonicGenerator("generator polynomial must be monic")
    if g.degree > n:
        return False
    return (Polynomial.x_n_minus_1(g.field, n) % g).is_zero


def descend_coefficients(g: Polynomial, q: int) -> Polynomial:
    """Rewrite ``g`` (over GF(q^s)) with coefficients in the canonical GF(q)."""
    sub = g.field.subfield(q)
    out = []
    for c in g.coeffs:
        if not sub.contains(c):
            raise CoefficientNotInBaseField(f"coefficient {c!r} is not fixed by x -> x^{q}")
        out.append(sub.restrict(c))
    return Polynomial(sub.base, out)


def embed_polynomial(g: Polynomial, ext: FiniteField) -> Polynomial:
    """Inverse of :func:`descend_coefficients`."""
    if g.field == ext:
        return g
    sub = ext.subfield(g.field.order)
    return Polynomial(ext, [sub.embed(c) for c in g.coeffs])
