"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as coefficient vectors in the power basis
1, z, ..., z^(phi(N)-1) reduced modulo the N-th cyclotomic polynomial, so
two elements of the same order are equal iff their coefficients are.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Scalar = Union[int, Fraction, "CycNumber"]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], lead)
        assert r == 0
        out[k] = q
        for t, c in enumerate(den):
            num[k + t] -= q * c
    assert not any(num[: len(den) - 1])
    return out


class _FieldData:
    """Per-order tables: phi, the reduction of x^k for k < 2*phi, powers of zeta."""

    __slots__ = ("order", "phi", "modulus", "reduce_table", "zeta_powers")

    def __init__(self, order: int):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.phi = len(self.modulus) - 1
        phi = self.phi
        # x^phi = -(m_0 + m_1 x + ... + m_{phi-1} x^{phi-1}) since Phi is monic
        table: list[tuple[int, ...]] = []
        cur = [0] * phi
        if phi:
            cur = [-c for c in self.modulus[:phi]]
        for _ in range(max(phi - 1, 0)):
            table.append(tuple(cur))
            # multiply by x
            top = cur[-1]
            cur = [0] + cur[:-1]
            for t in range(phi):
                cur[t] -= top * self.modulus[t]
        self.reduce_table = table  # table[k] is x^(phi+k)
        powers = []
        for k in range(order):
            vec = [0] * phi
            if k < phi:
                vec[k] = 1
            else:
                vec = list(self._reduce_int([0] * k + [1]))
            powers.append(tuple(vec))
        self.zeta_powers = powers

    def _reduce_int(self, poly: list[int]) -> list[int]:
        poly = list(poly)
        phi = self.phi
        for k in range(len(poly) - 1, phi - 1, -1):
            c = poly[k]
            if c:
                poly[k] = 0
                for t in range(phi):
                    poly[k - phi + t] -= c * self.modulus[t]
        return poly[:phi] + [0] * (phi - len(poly))


@lru_cache(maxsize=None)
def field_data(order: int) -> _FieldData:
    return _FieldData(order)


def _as_fraction_tuple(values) -> tuple[Fraction, ...]:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


class CycNumber:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        fd = field_data(order)
        coeffs = _as_fraction_tuple(coeffs)
        if len(coeffs) != fd.phi:
            raise ValueError(f"expected {fd.phi} coefficients for order {order}")
        self.order = order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CycNumber":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, value, order: int = 1) -> "CycNumber":
        phi = field_data(order).phi
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, order: int = 1) -> "CycNumber":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycNumber":
        return cls.rational(1, order)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycNumber":
        """zeta_order ** k."""
        fd = field_data(order)
        return cls._raw(order, _as_fraction_tuple(fd.zeta_powers[k % order]))

    # -- field embedding ------------------------------------------------
    def embed(self, order: int) -> "CycNumber":
        """Image under Q(zeta_self.order) -> Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into {order}")
        step = order // self.order
        fd = field_data(order)
        out = [Fraction(0)] * fd.phi
        for k, c in enumerate(self.coeffs):
            if c:
                for t, z in enumerate(fd.zeta_powers[(k * step) % order]):
                    if z:
                        out[t] += c * z
        return CycNumber._raw(order, tuple(out))

    def _coerce(self, other) -> tuple["CycNumber", "CycNumber"]:
        if isinstance(other, CycNumber):
            if other.order == self.order:
                return self, other
            n = lcm(self.order, other.order)
            return self.embed(n), other.embed(n)
        if isinstance(other, (int, Fraction)):
            return self, CycNumber.rational(other, self.order)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNumber._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNumber._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._raw(self.order, tuple(x * other for x in self.coeffs))
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNumber._raw(a.order, _mul_coeffs(a.order, a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        fd = field_data(self.order)
        if fd.phi == 1:
            return CycNumber._raw(self.order, (1 / self.coeffs[0],))
        inv = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in fd.modulus])
        return CycNumber._raw(self.order, tuple(inv) + (Fraction(0),) * (fd.phi - len(inv)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycNumber._raw(self.order, tuple(x / other for x in self.coeffs))
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycNumber.rational(other, self.order) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            a, b = self._coerce(other)
            return a.coeffs == b.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        # consistent with == against rationals; mixed orders should be normalized first
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CycNumber({self.order}, {self!s})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z({self.order},{k})"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t.replace("-", " - ", 1) if t.startswith("-") else " + " + t
        return out

    def to_complex(self) -> complex:
        """Floating-point value, for display only."""
        import cmath

        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * w**k for k, c in enumerate(self.coeffs))


def _mul_coeffs(order: int, a: tuple, b: tuple) -> tuple:
    fd = field_data(order)
    phi = fd.phi
    if phi == 1:
        return (a[0] * b[0],)
    prod = [Fraction(0)] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = prod[:phi]
    for k, c in enumerate(prod[phi:]):
        if c:
            for t, r in enumerate(fd.reduce_table[k]):
                if r:
                    out[t] += c * r
    return tuple(out)


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for t, bt in enumerate(b):
                a[k + t] -= c * bt
    return q, _poly_trim(a[: len(b) - 1])


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_inverse_mod(a: list, m: list) -> list:
    """Inverse of a modulo m over Q via the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element not invertible")
    c = r1[0]
    _, s1 = _poly_divmod(s1, m)
    return [x / c for x in s1]


def as_cyc(value: Scalar, order: int) -> CycNumber:
    """Coerce an int/Fraction/CycNumber to a CycNumber of the given order."""
    if isinstance(value, CycNumber):
        return value.embed(order)
    return CycNumber.rational(value, order)
