"""Exact arithmetic: Farey fractions and real/imaginary quadratic surds.

Everything is integer-backed; no floating point enters any comparison.
Conventions:

* a :class:`Farey` is a reduced fraction ``num/den`` with ``den >= 0``;
  infinity is ``1/0`` (``-1/0`` is identified with it, negative infinity
  is not representable).
* a :class:`Surd` stores ``(p + q*sqrt(D))/r`` with ``r > 0`` and
  ``gcd(p, q, r) = 1``.  ``D`` is kept as given, not reduced to its
  squarefree part; a single radicand is fixed per computation.  A perfect
  square ``D >= 0`` is folded into ``p``, so ``q != 0`` implies the value
  is irrational (``D > 0``) or lives off the real axis (``D < 0``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

BigRational = Fraction


class NotNeighbors(ValueError):
    """The two fractions are not Farey neighbors (|ad - bc| != 1)."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Farey:
    """Reduced fraction with the sign carried by the numerator."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            if num == 0:
                raise ZeroDivisionError("0/0 is not a Farey fraction")
            num = 1
        elif den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.den == 0:
            raise ZeroDivisionError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Farey)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self) -> "Farey":
        if self.den == 0:
            return self
        return Farey(-self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Farey({self.num}, {self.den})"


INFINITY = Farey(1, 0)


def _det(a: Farey, b: Farey) -> int:
    return a.num * b.den - b.num * a.den


def mediant(a: Farey, b: Farey) -> Farey:
    """Farey sum (a.num + b.num)/(a.den + b.den) of two neighbors."""
    if abs(_det(a, b)) != 1:
        raise NotNeighbors(f"{a} and {b} are not Farey neighbors")
    return Farey(a.num + b.num, a.den + b.den)


def farey_sub(a: Farey, b: Farey) -> Farey:
    """Farey difference (a.num - b.num)/(a.den - b.den), sign on the numerator."""
    if abs(_det(a, b)) != 1:
        raise NotNeighbors(f"{a} and {b} are not Farey neighbors")
    return Farey(a.num - b.num, a.den - b.den)


class Surd:
    """Exact element (p + q*sqrt(D))/r of a quadratic field."""

    __slots__ = ("p", "q", "r", "D")

    def __init__(self, p: int, q: int, r: int, D: int):
        if r == 0:
            raise ZeroDivisionError("surd denominator must be nonzero")
        if r < 0:
            p, q, r = -p, -q, -r
        if q != 0 and D >= 0:
            s = isqrt(D)
            if s * s == D:
                p += q * s
                q = 0
        g = gcd(gcd(p, q), r)
        if g > 1:
            p //= g
            q //= g
            r //= g
        self.p = p
        self.q = q
        self.r = r
        self.D = D

    # -- decomposition used by the exact comparisons ---------------------
    def re(self) -> Fraction:
        """Rational part p/r of the (re, im^2) decomposition."""
        return Fraction(self.p, self.r)

    def im_sq(self) -> Fraction:
        """Squared imaginary part, nonzero only for D < 0."""
        if self.D < 0 and self.q:
            return Fraction(self.q * self.q * (-self.D), self.r * self.r)
        return Fraction(0)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.p, self.r)

    def reflect(self) -> "Surd":
        """Mirror across the imaginary axis: z -> -conj(z) (reals: z -> -z)."""
        if self.D < 0:
            return Surd(-self.p, self.q, self.r, self.D)
        return Surd(-self.p, -self.q, self.r, self.D)

    def real_sign(self) -> int:
        """Sign of the real part; for real surds the sign of the value."""
        if self.q == 0 or self.D < 0:
            return _sign(self.p)
        # sign of p + q*sqrt(D), D > 0 nonsquare
        if self.p == 0:
            return _sign(self.q)
        sp, sq = _sign(self.p), _sign(self.q)
        if sp == sq:
            return sp
        return sp if self.p * self.p > self.q * self.q * self.D else sq

    def cmp_fraction(self, f: Farey | Fraction) -> int:
        """Exact sign of (self - f) for a real surd against a finite fraction."""
        if isinstance(f, Farey):
            n, d = f.num, f.den
        else:
            n, d = f.numerator, f.denominator
        if d == 0:
            raise ZeroDivisionError("cannot compare against infinity")
        if self.D < 0 and self.q != 0:
            raise ValueError("cmp_fraction needs a real surd")
        a = self.p * d - n * self.r  # sign of a + b*sqrt(D)
        b = self.q * d
        if b == 0 or a == 0:
            return _sign(a) or _sign(b)
        sa, sb = _sign(a), _sign(b)
        if sa == sb:
            return sa
        return sa if a * a > b * b * self.D else sb

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Surd)
            and (self.p, self.q, self.r, self.D) == (other.p, other.q, other.r, other.D)
        )

    def __hash__(self):
        return hash((self.p, self.q, self.r, self.D))

    def __str__(self) -> str:
        return f"{self.p}+{self.q}√{self.D}/{self.r}"

    def __repr__(self) -> str:
        return f"Surd({self.p}, {self.q}, {self.r}, {self.D})"


def re(z: Surd) -> Fraction:
    return z.re()


def im_sq(z: Surd) -> Fraction:
    return z.im_sq()


def sgn(z: Surd) -> int:
    """Sign of the real part of z."""
    return z.real_sign()


def chi(z: Surd) -> int:
    """1 if the real part of z is negative, else 0."""
    return 1 if z.real_sign() < 0 else 0


def inside_semicircle(z: Surd, a: Farey, b: Farey) -> bool:
    """Exact test |z - (a+b)/2| < (b-a)/2 for z in the closed upper half-plane.

    For b = infinity the condition degenerates to Re(z) > a.  Real values of
    z reduce to the strict interval test a < z < b.
    """
    if b.den == 0:
        if z.q == 0 or z.D < 0:
            return z.p * a.den > a.num * z.r
        return z.cmp_fraction(a) > 0
    if z.q != 0 and z.D < 0:
        # ((p/r - c)^2 + q^2|D|/r^2 < rho^2) cleared of denominators,
        # with c = cn/d2 and rho = rn/d2
        cn = a.num * b.den + b.num * a.den
        rn = b.num * a.den - a.num * b.den
        d2 = 2 * a.den * b.den
        lhs = (z.p * d2 - cn * z.r) ** 2 + z.q * z.q * (-z.D) * d2 * d2
        return lhs < rn * rn * z.r * z.r
    if z.q == 0:
        return z.p * a.den > a.num * z.r and z.p * b.den < b.num * z.r
    return z.cmp_fraction(a) > 0 and z.cmp_fraction(b) < 0
