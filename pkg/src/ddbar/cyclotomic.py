"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

An element is stored as the reduced residue of a rational polynomial in
``zeta_N`` modulo the N-th cyclotomic polynomial, so two elements are equal
exactly when their coefficient tuples are equal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZero, OrderMismatch

__all__ = ["CyclotomicNumber", "cyclo_poly", "poly_divmod"]


# -- dense rational polynomials, coefficient lists from low to high degree --

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim(Fraction(x) - y for x, y in zip(a, b))


def poly_divmod(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b`` over Q."""
    a = _trim(Fraction(x) for x in a)
    b = _trim(Fraction(x) for x in b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclo_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, cyclo_poly(d))
            assert not rem
    return tuple(num)


class _FieldData:
    """Per-order tables: degree, and the reduction of x^k for 0 <= k < 2*deg - 1."""

    def __init__(self, order):
        self.order = order
        self.phi = cyclo_poly(order)
        self.degree = len(self.phi) - 1
        d = self.degree
        self.reduce_table = []
        for k in range(max(2 * d - 1, 1)):
            self.reduce_table.append(self._reduce_power(k))
        # zeta^k for 0 <= k < order
        self.powers = [self._reduce_power(k) for k in range(order)]

    def _reduce_power(self, k):
        _, r = poly_divmod([0] * k + [1], self.phi)
        return tuple(r) + (Fraction(0),) * (self.degree - len(r))

    def reduce(self, poly):
        d = self.degree
        if len(poly) <= d:
            return tuple(poly) + (Fraction(0),) * (d - len(poly))
        if len(poly) <= len(self.reduce_table):
            out = list(poly[:d])
            for k in range(d, len(poly)):
                c = poly[k]
                if c:
                    for i, r in enumerate(self.reduce_table[k]):
                        if r:
                            out[i] += c * r
            return tuple(out)
        _, r = poly_divmod(poly, self.phi)
        return tuple(r) + (Fraction(0),) * (d - len(r))


@lru_cache(maxsize=None)
def _field(order) -> _FieldData:
    return _FieldData(order)


class CyclotomicNumber:
    """Immutable element of Q(zeta_N).

    >>> z = CyclotomicNumber.zeta(3)
    >>> (z * z * z) == 1
    True
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        field = _field(order)
        coeffs = [Fraction(c) for c in coeffs]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", field.reduce(_trim(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def _raw(cls, order, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- constructors --

    @classmethod
    def from_rational(cls, order: int, value) -> CyclotomicNumber:
        d = _field(order).degree
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (d - 1))

    @classmethod
    def zero(cls, order: int) -> CyclotomicNumber:
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> CyclotomicNumber:
        return cls.from_rational(order, 1)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> CyclotomicNumber:
        """``zeta_N ** power``; negative powers are allowed."""
        field = _field(order)
        return cls._raw(order, field.powers[power % order])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    # -- predicates --

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    # -- coercion --

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cannot combine elements of Q(zeta_{self.order}) "
                    f"and Q(zeta_{other.order})")
            return other
        if isinstance(other, (int, Rational)):
            return CyclotomicNumber.from_rational(self.order, other)
        return NotImplemented

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return CyclotomicNumber._raw(self.order, (a[0] * b[0],))
        if other.is_rational():
            c = b[0]
            return CyclotomicNumber._raw(self.order, tuple(x * c for x in a))
        if self.is_rational():
            c = a[0]
            return CyclotomicNumber._raw(self.order, tuple(c * y for y in b))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(self.order, _field(self.order).reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.order, 1 / self.coeffs[0])
        # invariant: s_i * self == r_i  (mod phi)
        r0, r1 = list(_field(self.order).phi), _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        c = r1[0]
        return CyclotomicNumber(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> CyclotomicNumber:
        """Complex conjugation, zeta_N -> zeta_N^(N-1)."""
        if self.is_rational():
            return self
        field = _field(self.order)
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(self.coeffs):
            if c:
                for i, r in enumerate(field.powers[(-k) % self.order]):
                    if r:
                        out[i] += c * r
        return CyclotomicNumber._raw(self.order, tuple(out))

    # -- comparison / hashing --

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        """Render as ``a + b*z + c*z^2``; the output re-parses in the manifest DSL."""
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                zp = "z" if k == 1 else f"z^{k}"
                body = zp if abs(c) == 1 else f"{abs(c)}*{zp}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out
