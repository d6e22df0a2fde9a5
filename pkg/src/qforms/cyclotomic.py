"""Exact arithmetic in cyclotomic fields.

A :class:`CycField` is the field ``Q[x] / Phi_N(x)`` where ``Phi_N`` is the
N-th cyclotomic polynomial and ``N = 2 * varpi * l``.  Elements are vectors of
rationals of length ``phi(N)`` (:class:`CycNum`); all arithmetic is exact.

The distinguished root of unity is ``zeta = xi**k`` where ``xi`` is the class
of ``x``; its fractional powers ``zeta**q`` are defined whenever ``2*varpi*q``
is an integer.  Two fields with the same ``l`` and ``varpi`` but different
``k`` share the same underlying polynomial ring, so dimension counts computed
in one can be compared against the other.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError, ParameterError

Coeffs = tuple[Fraction, ...]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    out = [ai - bj for ai, bj in zip(a, b + [Fraction(0)] * (n - len(b)))]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _frac_poly_divmod(
    a: list[Fraction], b: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder in Q[x]; b must be nonzero, low degree first."""
    r = list(a)
    if len(a) < len(b):
        return [Fraction(0)], r
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    while len(r) > 1 and not r[-1]:
        r.pop()
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first.

    Computed by the divisor recursion: ``x**n - 1`` divided by the product of
    ``Phi_d`` over proper divisors ``d | n``.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ParameterError(f"cyclotomic index must be positive, got {n}")
    rem = [0] * (n + 1)
    rem[0], rem[n] = -1, 1
    for d in _divisors(n):
        if d < n:
            rem = _int_poly_div(rem, list(cyclotomic_poly(d)))
    return tuple(rem)


class CycField:
    """The cyclotomic field attached to the parameters ``(l, k, varpi)``.

    ``N = 2 * varpi * l`` and the field is ``Q[x]/Phi_N``.  The root used by
    all bracket and twist formulas is ``zeta = xi**k``; ``k`` must be coprime
    to ``l`` so that ``zeta`` still has the right order properties.
    """

    def __init__(self, l: int, k: int = 1, varpi: int = 1):
        if l < 2:
            raise ParameterError(f"order parameter l must be >= 2, got {l}")
        if varpi < 1:
            raise ParameterError(f"varpi must be a positive integer, got {varpi}")
        if gcd(k, l) != 1:
            raise ParameterError(f"k={k} must be coprime to l={l}")
        self.l = l
        self.k = k % (2 * varpi * l)
        self.varpi = varpi
        self.N = 2 * varpi * l
        phi = cyclotomic_poly(self.N)
        self.modulus = phi
        self.degree = len(phi) - 1
        # x**m mod Phi_N for degree <= m < 2*degree - 1, used to fold products.
        self._tails: list[tuple[int, ...]] = []
        tail = [-c for c in phi[:-1]]
        self._tails.append(tuple(tail))
        for _ in range(self.degree - 2):
            tail = [0] + tail
            lead = tail.pop()
            if lead:
                for j, c in enumerate(phi[:-1]):
                    tail[j] -= lead * c
            self._tails.append(tuple(tail))
        self._zero = CycNum(self, (Fraction(0),) * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self._one = CycNum(self, tuple(one))
        self._xi_cache: dict[int, CycNum] = {}

    # -- constructors -------------------------------------------------------

    def num(self, value) -> CycNum:
        """Coerce an integer, Fraction, or coefficient sequence to a CycNum."""
        if isinstance(value, CycNum):
            if value.field.N != self.N:
                raise ParameterError("CycNum belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            coeffs = [Fraction(0)] * self.degree
            coeffs[0] = Fraction(value)
            return CycNum(self, tuple(coeffs))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) > self.degree:
            raise ParameterError(
                f"coefficient vector longer than field degree {self.degree}"
            )
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return CycNum(self, tuple(coeffs))

    @property
    def zero(self) -> CycNum:
        return self._zero

    @property
    def one(self) -> CycNum:
        return self._one

    def xi_pow(self, m: int) -> CycNum:
        """The m-th power of the primitive N-th root ``xi`` (any integer m)."""
        m %= self.N
        cached = self._xi_cache.get(m)
        if cached is not None:
            return cached
        if m < self.degree:
            coeffs = [Fraction(0)] * self.degree
            coeffs[m] = Fraction(1)
            out = CycNum(self, tuple(coeffs))
        else:
            # xi**N = 1, so m < N; reduce x**m step by step from the top.
            out = self.xi_pow(m - 1) * self.xi_pow(1)
        self._xi_cache[m] = out
        return out

    def zeta_pow(self, q) -> CycNum:
        """``zeta**q`` for rational q, defined when ``2*varpi*q`` is integral.

        ``zeta = xi**k``, so this is ``xi**(k * 2*varpi*q)`` on the grid of
        allowed exponents.
        """
        e = Fraction(2 * self.varpi) * Fraction(q)
        if e.denominator != 1:
            raise DomainError(
                f"zeta**q needs 2*varpi*q integral; got q={q} with varpi={self.varpi}"
            )
        return self.xi_pow(int(e) * self.k % self.N)

    def q_bracket(self, a: int, d: int = 1) -> CycNum:
        """The bracket ``1 - zeta**(-2*a*d)``.

        ``d`` is the symmetrizing multiplier of a colour (1 for simply-laced
        colours); ``d=1`` gives the plain bracket.
        """
        return self.one - self.zeta_pow(-2 * a * d)

    # -- misc ---------------------------------------------------------------

    def same_numbers(self, other: CycField) -> bool:
        """True when elements of the two fields are directly comparable."""
        return self.N == other.N

    def __repr__(self) -> str:
        return f"CycField(l={self.l}, k={self.k}, varpi={self.varpi}; N={self.N})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycField)
            and (self.l, self.k, self.varpi) == (other.l, other.k, other.varpi)
        )

    def __hash__(self) -> int:
        return hash((self.l, self.k, self.varpi))


class CycNum:
    """An element of a :class:`CycField`, stored as rational coordinates."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CycField, coeffs: Coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "CycNum | None":
        if isinstance(other, CycNum):
            if other.field.N != self.field.N:
                raise ParameterError("mixing CycNums from incompatible fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.num(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.field.degree
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:n]
        for m in range(n, 2 * n - 1):
            c = prod[m]
            if c:
                for j, t in enumerate(self.field._tails[m - n]):
                    if t:
                        out[j] += c * t
        return CycNum(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # Extended Euclid in Q[x] on (Phi_N, self), tracking only the
        # cofactor t with  r = s*Phi + t*self;  Phi_N is irreducible, so the
        # loop ends at a nonzero constant r1 and t1/r1 is the inverse.
        r0 = [Fraction(c) for c in self.field.modulus]
        r1 = [c for c in self.coeffs]
        while not r1[-1]:
            r1.pop()
        t0: list[Fraction] = [Fraction(0)]
        t1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _frac_poly_sub(t0, _frac_poly_mul(q, t1))
        c = r1[0]
        return self.field.num([x / c for x in t1][: self.field.degree])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.N, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = "xi" if i == 1 else f"xi^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")
