"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every element remembers the smallest order ``n`` it was built in; mixed
arithmetic lifts both operands to ``lcm(n1, n2)``.  Lifting beyond the
configured cap raises :class:`CyclotomicOverflow`.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import cyclotomic_poly, integer_nthroot
from sympy.functions.combinatorial.numbers import mobius, totient

from .errors import CyclotomicOverflow

_CAP = [360]


def max_cyclotomic() -> int:
    return _CAP[0]


def set_max_cyclotomic(n: int) -> None:
    if n < 1:
        raise ValueError("cyclotomic cap must be positive")
    _CAP[0] = int(n)


@contextlib.contextmanager
def cyclotomic_cap(n: int):
    old = _CAP[0]
    set_max_cyclotomic(n)
    try:
        yield
    finally:
        _CAP[0] = old


def _lcm(a, b):
    return a * b // gcd(a, b)


def _check_order(n):
    if n > _CAP[0]:
        raise CyclotomicOverflow(
            f"cyclotomic order {n} exceeds the configured maximum {_CAP[0]}")


@lru_cache(maxsize=None)
def _phi(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    coeffs = cyclotomic_poly(n, polys=True).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _dim(n):
    return len(_phi(n)) - 1


def _reduce(coeffs, n):
    """Reduce a coefficient list (low first) modulo Phi_n, in place."""
    phi = _phi(n)
    deg = len(phi) - 1
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    coeffs[base + j] -= c * phi[j]
            coeffs[i] = 0
    del coeffs[deg:]
    while len(coeffs) < deg:
        coeffs.append(Fraction(0))
    return coeffs


@lru_cache(maxsize=None)
def _monomial(n, k):
    """t^k reduced modulo Phi_n as a tuple."""
    k %= n
    vec = [Fraction(0)] * (k + 1)
    vec[k] = Fraction(1)
    return tuple(_reduce(vec, n))


@lru_cache(maxsize=None)
def _trace_weights(n):
    out = []
    for k in range(_dim(n)):
        m = n // gcd(n, k)
        out.append(Fraction(int(mobius(m)), int(totient(m))))
    return tuple(out)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a field element")


class FieldElem:
    """An element of Q(zeta_n) stored on the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.c = tuple(coeffs)

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, value) -> "FieldElem":
        return cls(1, (Fraction(value),))

    @classmethod
    def coerce(cls, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, str):
            return cls.rational(Fraction(value))
        return cls.rational(_as_fraction(value))

    @classmethod
    def from_terms(cls, n: int, terms) -> "FieldElem":
        """Sum of ``a * zeta_n**k`` over ``(a, k)`` pairs."""
        _check_order(n)
        acc = [Fraction(0)] * _dim(n)
        for a, k in terms:
            a = Fraction(a)
            if a:
                for i, v in enumerate(_monomial(n, k)):
                    if v:
                        acc[i] += a * v
        return cls(n, acc)._shrink()

    # -- helpers ----------------------------------------------------------
    def _shrink(self):
        if self.n > 1 and not any(self.c[1:]):
            return FieldElem(1, (self.c[0],))
        return self

    def lift(self, m: int, check: bool = True) -> "FieldElem":
        """Same element viewed inside Q(zeta_m); ``n`` must divide ``m``."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift order {self.n} into {m}")
        if check:
            _check_order(m)
        step = m // self.n
        acc = [Fraction(0)] * _dim(m)
        for k, a in enumerate(self.c):
            if a:
                for i, v in enumerate(_monomial(m, k * step)):
                    if v:
                        acc[i] += a * v
        return FieldElem(m, acc)

    def _pair(self, other, check=True):
        if not isinstance(other, FieldElem):
            other = FieldElem.coerce(other)
        if self.n == other.n:
            return self, other, self.n
        m = _lcm(self.n, other.n)
        return self.lift(m, check), other.lift(m, check), m

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def is_one(self) -> bool:
        return self.is_rational() and self.c[0] == 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            a, b, m = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElem(m, [x + y for x, y in zip(a.c, b.c)])._shrink()

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.n, [-x for x in self.c])

    def __sub__(self, other):
        try:
            a, b, m = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElem(m, [x - y for x, y in zip(a.c, b.c)])._shrink()

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FieldElem.rational(0)
            return FieldElem(self.n, [x * other for x in self.c])
        try:
            a, b, m = self._pair(other)
        except TypeError:
            return NotImplemented
        if m == 1:
            return FieldElem(1, (a.c[0] * b.c[0],))
        if b.is_rational():
            s = b.c[0]
            return FieldElem(m, [x * s for x in a.c])._shrink()
        if a.is_rational():
            s = a.c[0]
            return FieldElem(m, [x * s for x in b.c])._shrink()
        prod = [Fraction(0)] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return FieldElem(m, _reduce(prod, m))._shrink()

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return FieldElem(1, (1 / self.c[0],))
        u = _poly_inverse_mod(list(self.c), [Fraction(v) for v in _phi(self.n)])
        return FieldElem(self.n, _reduce(u, self.n))._shrink()

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElem.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElem.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison and hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        if self.n == other.n:
            return self.c == other.c
        a, b, _ = self._pair(other, check=False)
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        w = _trace_weights(self.n)
        return hash(sum((a * x for a, x in zip(self.c, w)), Fraction(0)))

    def sort_key(self):
        return (self.n, self.c)

    # -- roots --------------------------------------------------------
    def unit_decomposition(self):
        """Return ``(b, N, K)`` with ``self == b * zeta_N**K``, ``b`` a positive
        rational, or ``None`` when no such decomposition exists."""
        if self.is_zero():
            return None
        if self.is_rational():
            b = self.c[0]
            return (b, 1, 0) if b > 0 else (-b, 2, 1)
        n = self.n
        for k in range(n):
            cand = self * root_of_unity(n, -k)
            if cand.is_rational():
                b = cand.to_fraction()
                if b > 0:
                    return b, n, k
                return -b, 2 * n, 2 * k + n
        return None

    def nth_roots(self, m: int):
        """All ``m``-th roots when they live in a cyclotomic field, else ``None``."""
        if m < 1:
            raise ValueError("root index must be positive")
        if self.is_zero():
            return [FieldElem.rational(0)] * m
        dec = self.unit_decomposition()
        if dec is None:
            return None
        b, N, K = dec
        num, ok1 = integer_nthroot(b.numerator, m)
        den, ok2 = integer_nthroot(b.denominator, m)
        if not (ok1 and ok2):
            return None
        r = Fraction(int(num), int(den))
        return [root_of_unity(N * m, K + N * j) * r for j in range(m)]

    # -- presentation ---------------------------------------------------
    def terms(self):
        """Nonzero ``(coefficient, power)`` pairs on the power basis."""
        return [(a, k) for k, a in enumerate(self.c) if a]

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        parts = []
        for a, k in self.terms():
            if k == 0:
                parts.append(str(a))
                continue
            z = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
            if a == 1:
                parts.append(z)
            elif a == -1:
                parts.append(f"-{z}")
            else:
                parts.append(f"{a}*{z}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"

    def __repr__(self):
        return f"FieldElem({self})"


@lru_cache(maxsize=None)
def root_of_unity(n: int, k: int = 1) -> FieldElem:
    """zeta_n**k, stored in the smallest cyclotomic field containing it."""
    k %= n
    g = gcd(n, k) if k else n
    n, k = n // g, k // g
    if n == 1:
        return FieldElem.rational(1)
    _check_order(n)
    return FieldElem(n, _monomial(n, k))._shrink()


ZERO = FieldElem.rational(0)
ONE = FieldElem.rational(1)


# -- polynomial helpers over Q (coefficient lists, low degree first) -------

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, v in enumerate(b):
            a[shift + i] -= f * v
        _trim(a)
    return _trim(q), a


def _sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_inverse_mod(a, m):
    """Inverse of ``a`` modulo the irreducible polynomial ``m`` over Q."""
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [v / c for v in s1]
