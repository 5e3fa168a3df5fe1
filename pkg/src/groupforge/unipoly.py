"""Dense univariate polynomials over an exact field.

Coefficients may be ``Fraction`` or ``NumberFieldElement`` (anything with
field arithmetic, truthiness for zero tests and exact equality).
Coefficients are stored lowest degree first and the leading coefficient
is always nonzero.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


class UniPoly:
    """Univariate polynomial; immutable after construction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, ints):
        return cls([Fraction(c) for c in ints])

    @property
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        if not self.coeffs:
            return -1
        return len(self.coeffs) - 1

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly([])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                p = a * b
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        zero = self.coeffs[0] * 0
        return UniPoly([zero if c is None else c for c in out])

    def __rmul__(self, other):
        return self * other

    def scale(self, c):
        return UniPoly([a * c for a in self.coeffs])

    def shift_up(self, k):
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        zero = self.coeffs[0] * 0
        return UniPoly([zero] * k + list(self.coeffs))

    def divmod(self, other):
        """Exact field division with remainder; ``other`` nonzero."""
        if other.is_zero:
            raise DomainError("division by the zero polynomial")
        if self.degree() < other.degree():
            return UniPoly([]), self
        rem = list(self.coeffs)
        dq = self.degree() - other.degree()
        lead = other.leading()
        quot = [self.coeffs[0] * 0] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[other.degree() + k]
            if not top:
                continue
            q = top / lead
            quot[k] = q
            for i, c in enumerate(other.coeffs):
                rem[i + k] = rem[i + k] - q * c
        return UniPoly(quot), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise DomainError("polynomial division is not exact")
        return q

    def monic(self):
        if self.is_zero:
            return self
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs])

    def derivative(self):
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        return acc

    def compose_linear(self, a, b):
        """self(a*x + b) for scalars a, b of the coefficient field."""
        acc = UniPoly([])
        lin = UniPoly([b, a])
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly([c])
        return acc

    def map_coeffs(self, fn):
        return UniPoly([fn(c) for c in self.coeffs])

    def to_string(self, var="x"):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                body = str(c)
            elif k == 1:
                body = f"{c}*{var}" if c != 1 else var
            else:
                body = f"{c}*{var}^{k}" if c != 1 else f"{var}^{k}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({self.to_string()})"


def poly_gcd(f, g):
    """Monic greatest common divisor over the coefficient field."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


def extended_gcd(f, g):
    """(g, u, v) with u*f + v*g = gcd, gcd monic."""
    zero, one = UniPoly([]), UniPoly([Fraction(1)])
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead = r0.leading()
    inv = Fraction(1) / lead if isinstance(lead, Fraction) else lead ** 0 / lead
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_part(f):
    """``f / gcd(f, f')`` made monic; has no repeated roots.

    Valid over any field of characteristic zero; raises on zero input.
    """
    if f.is_zero:
        raise DomainError("square-free part of the zero polynomial")
    if f.degree() == 0:
        return UniPoly([f.coeffs[0] / f.coeffs[0]])
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g).monic()


def resultant_with_monic(g, h):
    """Product of ``h`` over the roots of the monic polynomial ``g``.

    Equals the resultant Res(g, h) when ``g`` is monic, for any ``h``
    (degree drops in ``h`` are handled).  Computed by Euclidean steps.
    """
    if g.is_zero:
        raise DomainError("resultant against the zero polynomial")
    one = g.leading() / g.leading()

    def rec(a, b):
        # a monic; returns prod of b over roots of a
        if a.degree() == 0:
            return one
        r = b % a
        if r.is_zero:
            return one * 0
        if r.degree() == 0:
            return r.coeffs[0] ** a.degree()
        lead = r.leading()
        rm = r.monic()
        sign = -one if (a.degree() * r.degree()) % 2 else one
        return sign * lead ** a.degree() * rec(rm, a)

    return rec(g.monic(), h)
