"""Trivariate Laurent polynomials with exact coefficients.

A polynomial is a map from exponent triples (possibly negative) to nonzero
coefficients; the empty map is zero and representation is canonical, so
equality is map equality.  Coefficients are arbitrary-precision integers
(Fractions also work; operations never leave the coefficient ring of their
inputs).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # (e1, e2, e3), integers of either sign


class EvalAtZero(ZeroDivisionError):
    """A coordinate with a negative exponent was evaluated at zero."""


class InexactDivision(ArithmeticError):
    """The quotient is not a Laurent polynomial over the coefficient ring."""


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({(0, 0, 0): c} if c else {})

    @classmethod
    def gen(cls, i: int) -> "LaurentPoly":
        """The variable x_i, i in {1, 2, 3}."""
        e = [0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, exponents: Iterable[int], coeff=1) -> "LaurentPoly":
        return cls({tuple(exponents): coeff})

    # -- ring structure ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out: dict[Monomial, object] = {}
        for (a1, a2, a3), ca in self.terms.items():
            for (b1, b2, b3), cb in other.terms.items():
                m = (a1 + b1, a2 + b2, a3 + b3)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only via explicit monomials")
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- evaluation and rendering ------------------------------------------
    def eval(self, point):
        """Substitute the scalar triple `point`; exact over any ring."""
        v1, v2, v3 = point
        total = 0
        for (e1, e2, e3), c in self.terms.items():
            num = c
            den = 1
            for v, e in ((v1, e1), (v2, e2), (v3, e3)):
                if e > 0:
                    num = num * v**e
                elif e < 0:
                    if v == 0:
                        raise EvalAtZero("negative exponent at a zero coordinate")
                    den = den * v ** (-e)
            total = total + _scalar_quot(num, den)
        return total

    def min_exponents(self) -> Monomial:
        if not self.terms:
            return (0, 0, 0)
        ms = list(self.terms)
        return tuple(min(m[i] for m in ms) for i in range(3))

    def shifted(self, by: Monomial) -> "LaurentPoly":
        b1, b2, b3 = by
        return LaurentPoly({(m1 + b1, m2 + b2, m3 + b3): c for (m1, m2, m3), c in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(m) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = render

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.constant(x)


def _scalar_quot(num, den):
    if den == 1:
        return num
    if isinstance(num, int) and isinstance(den, int):
        q, rem = divmod(num, den)
        return q if rem == 0 else Fraction(num, den)
    return num / den


def _coeff_quot(a, b):
    """Exact coefficient quotient a/b in the ring of the operands."""
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem:
            raise InexactDivision(f"coefficient {a} not divisible by {b}")
        return q
    return a / b


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def eval_at(p: LaurentPoly, point):
    return p.eval(point)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return d with d*q = p, or raise InexactDivision.

    Both operands are cleared of their minimal monomials, which reduces the
    problem to exact division in the ordinary polynomial ring; ordinary
    division by the divisor's lex-leading term then either terminates with
    zero remainder or proves non-divisibility.
    """
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return LaurentPoly.zero()
    sp = p.min_exponents()
    sq = q.min_exponents()
    f = {tuple(a - b for a, b in zip(m, sp)): c for m, c in p.terms.items()}
    g = {tuple(a - b for a, b in zip(m, sq)): c for m, c in q.terms.items()}
    lt = max(g)
    ltc = g[lt]
    quot: dict[Monomial, object] = {}
    while f:
        m = max(f)
        d = tuple(a - b for a, b in zip(m, lt))
        if any(e < 0 for e in d):
            raise InexactDivision("nonzero remainder")
        c = _coeff_quot(f[m], ltc)
        quot[d] = c
        for gm, gc in g.items():
            key = tuple(a + b for a, b in zip(d, gm))
            s = f.get(key, 0) - c * gc
            if s:
                f[key] = s
            else:
                f.pop(key, None)
    shift = tuple(a - b for a, b in zip(sp, sq))
    return LaurentPoly(quot).shifted(shift)


x1, x2, x3 = LaurentPoly.gen(1), LaurentPoly.gen(2), LaurentPoly.gen(3)
