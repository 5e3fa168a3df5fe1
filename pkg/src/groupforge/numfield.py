"""Field towers over the rationals and arithmetic in them.

A ``FieldTower`` is a chain of simple extensions Q = F0 < F1 < ... < Fd,
each level given by a generator name and a monic irreducible minimal
polynomial over the level below.  Elements are represented recursively:
a depth-0 element is a ``Fraction``; a depth-k element is a tuple of
depth-(k-1) elements, one per power of the level-k generator.

Factorization over a tower reduces to rational factorization through
norms (resultants against the top minimal polynomial); the rational base
case is delegated to sympy's exact factorizer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .unipoly import UniPoly, poly_gcd, extended_gcd, squarefree_part, \
    resultant_with_monic


class FieldTower:
    """Tower of successive simple extensions of the rationals."""

    __slots__ = ("levels", "degree", "_level_degrees")

    def __init__(self, levels=()):
        # levels: tuple of (name, minpoly_coeff_data) where the minimal
        # polynomial of level k (1-based) is monic with coefficients given
        # as depth-(k-1) element data, lowest degree first.
        self.levels = tuple(levels)
        degs = []
        for _, mcoeffs in self.levels:
            degs.append(len(mcoeffs) - 1)
        self._level_degrees = tuple(degs)
        d = 1
        for k in degs:
            d *= k
        self.degree = d

    @property
    def depth(self):
        return len(self.levels)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        names = ", ".join(name for name, _ in self.levels)
        return f"FieldTower(degree={self.degree}, generators=[{names}])"

    # -- raw element data ------------------------------------------------------

    def _zero(self, depth):
        if depth == 0:
            return Fraction(0)
        return tuple(self._zero(depth - 1)
                     for _ in range(self._level_degrees[depth - 1]))

    def _from_rational(self, q, depth):
        if depth == 0:
            return Fraction(q)
        first = self._from_rational(q, depth - 1)
        rest = [self._zero(depth - 1)
                for _ in range(self._level_degrees[depth - 1] - 1)]
        return tuple([first] + rest)

    def _add(self, a, b, depth):
        if depth == 0:
            return a + b
        return tuple(self._add(x, y, depth - 1) for x, y in zip(a, b))

    def _neg(self, a, depth):
        if depth == 0:
            return -a
        return tuple(self._neg(x, depth - 1) for x in a)

    def _is_zero(self, a, depth):
        if depth == 0:
            return not a
        return all(self._is_zero(x, depth - 1) for x in a)

    def _mul(self, a, b, depth):
        if depth == 0:
            return a * b
        d = self._level_degrees[depth - 1]
        prod = [self._zero(depth - 1) for _ in range(2 * d - 1)]
        for i, x in enumerate(a):
            if self._is_zero(x, depth - 1):
                continue
            for j, y in enumerate(b):
                prod[i + j] = self._add(prod[i + j],
                                        self._mul(x, y, depth - 1), depth - 1)
        mcoeffs = self.levels[depth - 1][1]
        # reduce modulo the (monic) minimal polynomial of this level
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if self._is_zero(c, depth - 1):
                continue
            for i in range(d):
                prod[k - d + i] = self._add(
                    prod[k - d + i],
                    self._neg(self._mul(c, mcoeffs[i], depth - 1), depth - 1),
                    depth - 1)
            prod[k] = self._zero(depth - 1)
        return tuple(prod[:d])

    def _inv(self, a, depth):
        if depth == 0:
            if not a:
                raise ZeroDivisionError("inverse of zero field element")
            return Fraction(1) / a
        if self._is_zero(a, depth):
            raise ZeroDivisionError("inverse of zero field element")
        sub = NumberFieldElement
        apoly = UniPoly([sub(self, c, depth - 1) for c in a])
        mpoly = UniPoly([sub(self, c, depth - 1)
                         for c in self.levels[depth - 1][1]])
        g, _, v = extended_gcd(mpoly, apoly)
        if g.degree() != 0:
            raise DomainError(
                "minimal polynomial is reducible; invalid field tower")
        inv = (v % mpoly).scale(g.coeffs[0] ** 0 / g.coeffs[0])
        d = self._level_degrees[depth - 1]
        out = [c.data for c in inv.coeffs]
        out += [self._zero(depth - 1)] * (d - len(out))
        return tuple(out)

    def _flatten(self, a, depth, out):
        if depth == 0:
            out.append(a)
        else:
            for x in a:
                self._flatten(x, depth - 1, out)

    def _unflatten(self, vec, depth):
        if depth == 0:
            return Fraction(vec[0])
        d = self._level_degrees[depth - 1]
        step = len(vec) // d
        return tuple(self._unflatten(vec[i * step:(i + 1) * step], depth - 1)
                     for i in range(d))

    # -- public element constructors -------------------------------------------

    def zero(self):
        return NumberFieldElement(self, self._zero(self.depth), self.depth)

    def one(self):
        return self.from_rational(1)

    def from_rational(self, q):
        return NumberFieldElement(self, self._from_rational(Fraction(q), self.depth),
                                  self.depth)

    def generator(self, level=None):
        """The generator of the given level (default: top) as an element."""
        if self.depth == 0:
            raise DomainError("the trivial tower has no generators")
        level = self.depth if level is None else level
        data = self._zero(self.depth)

        def build(depth):
            if depth == level:
                d = self._level_degrees[depth - 1]
                one = self._from_rational(1, depth - 1)
                zr = self._zero(depth - 1)
                return tuple([zr, one] + [zr] * (d - 2))
            inner = build(depth - 1)
            d = self._level_degrees[depth - 1]
            return tuple([inner] + [self._zero(depth - 1)] * (d - 1))

        data = build(self.depth)
        return NumberFieldElement(self, data, self.depth)

    def from_coords(self, vec):
        if len(vec) != self.degree:
            raise DomainError("coordinate vector length does not match degree")
        return NumberFieldElement(
            self, self._unflatten([Fraction(v) for v in vec], self.depth),
            self.depth)

    def extend(self, name, minpoly):
        """New tower with one more level; ``minpoly`` monic irreducible
        over this tower, given as UniPoly over this tower's elements."""
        coeffs = []
        for c in minpoly.coeffs:
            if isinstance(c, NumberFieldElement):
                if c.depth != self.depth:
                    raise DomainError("minimal polynomial coefficients have wrong depth")
                coeffs.append(c.data)
            else:
                coeffs.append(self._from_rational(Fraction(c), self.depth))
        lead = coeffs[-1]
        if not self._is_zero(self._add(lead, self._neg(
                self._from_rational(1, self.depth), self.depth), self.depth),
                self.depth):
            raise DomainError("minimal polynomial must be monic")
        return FieldTower(self.levels + ((name, tuple(coeffs)),))

    def lift(self, elem, source):
        """Embed an element of a prefix tower into this tower."""
        if isinstance(elem, (int, Fraction)):
            return self.from_rational(elem)
        if source.levels != self.levels[:source.depth]:
            raise DomainError("element does not belong to a prefix of this tower")
        data = elem.data
        for k in range(source.depth, self.depth):
            d = self._level_degrees[k]
            data = tuple([data] + [self._zero(k)] * (d - 1))
        return NumberFieldElement(self, data, self.depth)


class NumberFieldElement:
    """Element of a (sub-level of a) field tower; immutable value."""

    __slots__ = ("tower", "data", "depth")

    def __init__(self, tower, data, depth):
        self.tower = tower
        self.data = data
        self.depth = depth

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.tower.levels[:other.depth] != self.tower.levels[:self.depth] \
                    or other.depth != self.depth:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(
                self.tower, self.tower._from_rational(Fraction(other), self.depth),
                self.depth)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return NumberFieldElement(
            self.tower, self.tower._add(self.data, other.data, self.depth),
            self.depth)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(
            self.tower, self.tower._neg(self.data, self.depth), self.depth)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return NumberFieldElement(
            self.tower, self.tower._mul(self.data, other.data, self.depth),
            self.depth)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        inv = NumberFieldElement(
            self.tower, self.tower._inv(other.data, self.depth), self.depth)
        return self * inv

    def __rtruediv__(self, other):
        inv = NumberFieldElement(
            self.tower, self.tower._inv(self.data, self.depth), self.depth)
        return self._coerce(other) * inv

    def __pow__(self, k):
        if k < 0:
            return (self ** (-k)).__rtruediv__(1)
        result = NumberFieldElement(
            self.tower, self.tower._from_rational(Fraction(1), self.depth),
            self.depth)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return not self.tower._is_zero(self.data, self.depth)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.data == other.data

    def __hash__(self):
        return hash((self.depth, self.data))

    def coords_key(self):
        """Deterministic sort key: the flattened coordinate tuple."""
        return tuple(field_coords(self))

    def as_rational(self):
        """The value as a Fraction; only valid for rational elements."""
        vec = field_coords(self)
        if any(vec[1:]):
            raise DomainError("element is not rational")
        return vec[0]

    def __repr__(self):
        return f"NumberFieldElement({field_coords(self)})"


def field_coords(a):
    """Coordinates of an element over the canonical product basis of its
    tower (lowest level fastest); round-trips exactly via ``from_coords``."""
    out = []
    a.tower._flatten(a.data, a.depth, out)
    return out


# -- factorization ---------------------------------------------------------------


def _poly_sort_key(p):
    # degree first, then coefficient comparison (by magnitude, then sign,
    # coordinatewise) so e.g. x-1 < x+1 and x^2-2 < x^2-3
    key = []
    for c in p.coeffs:
        coords = field_coords(c) if isinstance(c, NumberFieldElement) else [Fraction(c)]
        key.append(tuple((abs(q), q) for q in coords))
    return (p.degree(), tuple(key))


def _factor_rational_sqfree(f):
    """Irreducible monic factors of a squarefree monic rational UniPoly."""
    import sympy

    x = sympy.Symbol("x")
    expr_coeffs = [sympy.Rational(c.numerator, c.denominator)
                   for c in reversed(f.coeffs)]
    poly = sympy.Poly(expr_coeffs, x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [Fraction(sympy.Rational(c).p, sympy.Rational(c).q)
                  for c in reversed(fac.all_coeffs())]
        up = UniPoly(coeffs).monic()
        out.extend([up] * mult)
    out.sort(key=_poly_sort_key)
    return out


def _norm_poly(f, tower):
    """Norm of f (UniPoly over top-level elements) down one tower level."""
    depth = tower.depth
    d = tower._level_degrees[depth - 1]
    sub_depth = depth - 1
    mpoly = UniPoly([NumberFieldElement(tower, c, sub_depth)
                     for c in tower.levels[depth - 1][1]])
    bound = f.degree() * d
    xs, values = [], []
    point = 0
    while len(xs) <= bound:
        p = tower._from_rational(Fraction(point), depth)
        val = f.eval(NumberFieldElement(tower, p, depth))
        h = UniPoly([NumberFieldElement(tower, c, sub_depth)
                     for c in val.data])
        values.append(resultant_with_monic(mpoly, h))
        xs.append(Fraction(point))
        point = -point if point > 0 else -point + 1
    # Lagrange interpolation over the sub-tower
    one = NumberFieldElement(tower, tower._from_rational(Fraction(1), sub_depth),
                             sub_depth)
    acc = UniPoly([])
    for i, (xi, yi) in enumerate(zip(xs, values)):
        num = UniPoly([one])
        den = one
        for j, xj in enumerate(xs):
            if i == j:
                continue
            num = num * UniPoly([one * (-xj), one])
            den = den * (one * (xi - xj))
        acc = acc + num.scale(yi / den)
    return acc


def _factor_tower_sqfree(f, tower):
    """Irreducible monic factors of a squarefree monic f over a tower."""
    if tower.depth == 0:
        return _factor_rational_sqfree(
            UniPoly([c.as_rational() if isinstance(c, NumberFieldElement) else c
                     for c in f.coeffs]))
    if f.degree() <= 1:
        return [f.monic()]
    theta = tower.generator()
    one = tower.one()
    sub_tower = FieldTower(tower.levels[:-1])
    shift = 0
    while True:
        fs = f.compose_linear(one, theta * (-shift))
        norm = _norm_poly(fs, tower)
        if poly_gcd(norm, norm.derivative()).degree() == 0:
            break
        shift = -shift if shift > 0 else -shift + 1
    sub_factors = _factor_tower_sqfree(
        UniPoly([NumberFieldElement(sub_tower, c.data, tower.depth - 1)
                 for c in norm.monic().coeffs]), sub_tower)
    out = []
    for nf in sub_factors:
        lifted = UniPoly([tower.lift(c, sub_tower) for c in nf.coeffs])
        g = poly_gcd(fs, lifted)
        if g.degree() > 0:
            out.append(g.compose_linear(one, theta * shift).monic())
    out.sort(key=_poly_sort_key)
    return out


def factor_over_field(f, K):
    """Factor ``f`` into irreducibles over the tower ``K``.

    Returns ``[(irreducible monic factor, multiplicity), ...]`` in a
    deterministic order (by degree, then coefficient comparison); the
    product of the factors with multiplicity equals ``f`` up to a unit.
    """
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    promote = (lambda c: K.lift(c, FieldTower()) if not isinstance(c, NumberFieldElement)
               else c) if K.depth > 0 else (lambda c: c if not isinstance(c, NumberFieldElement) else c.as_rational())
    f = UniPoly([promote(c) for c in f.coeffs]).monic()
    if f.degree() == 0:
        return []
    sqf = squarefree_part(f)
    irreducibles = _factor_tower_sqfree(sqf, K)
    out = []
    for p in irreducibles:
        mult = 0
        rest = f
        while True:
            q, r = rest.divmod(p)
            if r.is_zero:
                mult += 1
                rest = q
            else:
                break
        out.append((p, mult))
    out.sort(key=lambda pm: _poly_sort_key(pm[0]))
    return out


def splitting_field(f, degree_cap=64):
    """Tower containing every root of the squarefree rational polynomial
    ``f``, together with the roots in a deterministic order.

    Raises ``ResourceLimitError`` naming the degree that would be attained
    if the tower degree were to exceed ``degree_cap``.
    """
    if f.is_zero:
        raise DomainError("cannot split the zero polynomial")
    fq = UniPoly([Fraction(c) if not isinstance(c, NumberFieldElement) else c.as_rational()
                  for c in f.coeffs])
    if poly_gcd(fq, fq.derivative()).degree() != 0:
        raise DomainError("polynomial must be squarefree")
    tower = FieldTower()
    level = 0
    while True:
        factors = [p for p, _ in factor_over_field(fq, tower)]
        nonlinear = [p for p in factors if p.degree() > 1]
        if not nonlinear:
            roots = []
            for p in factors:
                if p.degree() == 1:
                    roots.append(-p.coeffs[0] if isinstance(p.coeffs[0], NumberFieldElement)
                                 else tower.from_rational(-p.coeffs[0]))
            roots.sort(key=lambda r: r.coords_key(), reverse=True)
            return tower, roots
        h = nonlinear[0]
        attained = tower.degree * h.degree()
        if attained > degree_cap:
            raise ResourceLimitError(
                "degree_cap",
                f"splitting field degree would reach {attained}, cap is {degree_cap}")
        level += 1
        coeffs = [c if isinstance(c, NumberFieldElement) else tower.from_rational(c)
                  for c in h.coeffs] if tower.depth > 0 else list(h.coeffs)
        tower = tower.extend(f"a{level}", UniPoly(coeffs) if tower.depth > 0
                             else UniPoly([Fraction(c) for c in h.coeffs]))
