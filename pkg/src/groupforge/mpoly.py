"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials are immutable maps from exponent vectors to nonzero
``Fraction`` coefficients, relative to a fixed tuple of variable names.
Monomial orders (graded reverse lexicographic, lexicographic, and block
elimination orders) are provided as key functions usable with ``max``/
``sorted``.  The module also owns the shared term grammar used by the
command line: terms joined by ``+``/``-``, a term being
``coeff*var^e*...`` with variables named like ``T0``, ``x_1_1`` or ``y``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _grevlex_key(exp):
    # Higher total degree wins; ties broken by the reversed, negated
    # exponent vector (the rightmost variable with a differing exponent
    # decides, smaller exponent winning).
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MonomialOrder:
    """Total order on exponent vectors of a fixed variable tuple.

    ``kind`` is one of ``"grevlex"``, ``"lex"`` or ``"block"``.  A block
    order lists variable-index blocks compared lexicographically from the
    first block, with grevlex inside each block; with the eliminated
    block first it is an elimination order for that block.
    """

    __slots__ = ("kind", "nvars", "blocks")

    def __init__(self, kind, nvars, blocks=None):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        if kind == "block":
            if not blocks:
                raise ValueError("block order needs at least one block")
            seen = [i for block in blocks for i in block]
            if sorted(seen) != list(range(nvars)):
                raise ValueError("blocks must partition the variable indices")
            self.blocks = tuple(tuple(b) for b in blocks)
        else:
            self.blocks = None

    @classmethod
    def grevlex(cls, nvars):
        return cls("grevlex", nvars)

    @classmethod
    def lex(cls, nvars):
        return cls("lex", nvars)

    @classmethod
    def elimination(cls, nvars, drop_indices):
        """Block order that eliminates the given variable indices."""
        drop = tuple(sorted(drop_indices))
        keep = tuple(i for i in range(nvars) if i not in set(drop))
        return cls("block", nvars, blocks=(drop, keep))

    def key(self, exp):
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        if self.kind == "lex":
            return exp
        return tuple(_grevlex_key(tuple(exp[i] for i in block))
                     for block in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and (self.kind, self.nvars, self.blocks)
                == (other.kind, other.nvars, other.blocks))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, blocks={self.blocks})"
        return f"MonomialOrder({self.kind}, nvars={self.nvars})"


class MultiPoly:
    """Immutable sparse polynomial over the rationals.

    ``vars`` is the tuple of variable names of the ambient ring; ``terms``
    maps exponent tuples (same length as ``vars``) to nonzero ``Fraction``
    coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        clean = {}
        width = len(self.vars)
        for exp, c in terms.items():
            if len(exp) != width:
                raise ValueError("exponent width does not match variable count")
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = clean

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def constant(cls, vars, c):
        c = Fraction(c)
        if not c:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        exp = [0] * len(vars)
        exp[i] = 1
        return cls(vars, {tuple(exp): Fraction(1)})

    # -- ring operations -------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        self._check(other)
        res = dict(self.terms)
        for exp, c in other.terms.items():
            s = res.get(exp, Fraction(0)) + c
            if s:
                res[exp] = s
            elif exp in res:
                del res[exp]
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = res
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {exp: -c for exp, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.vars)
            out = MultiPoly.__new__(MultiPoly)
            out.vars = self.vars
            out.terms = {exp: k * c for exp, k in self.terms.items()}
            return out
        self._check(other)
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(exp, Fraction(0)) + c1 * c2
                if s:
                    res[exp] = s
                elif exp in res:
                    del res[exp]
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = res
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def used_vars(self):
        """Names of variables occurring with positive exponent."""
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(self.vars[i])
        return used

    # -- leading data ----------------------------------------------------------

    def leading_monomial(self, order):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order):
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self * (Fraction(1) / lc)

    # -- evaluation and substitution -------------------------------------------

    def eval(self, point):
        """Evaluate at a full rational point given as name -> Fraction."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    v *= Fraction(point[self.vars[i]]) ** e
            total += v
        return total

    def derivative(self, name):
        i = self.vars.index(name)
        res = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e:
                nexp = exp[:i] + (e - 1,) + exp[i + 1:]
                res[nexp] = res.get(nexp, Fraction(0)) + c * e
        return MultiPoly(self.vars, res)

    def compose(self, mapping, target_vars):
        """Substitute a polynomial for every variable of this ring.

        ``mapping`` sends each variable name used by ``self`` to a
        ``MultiPoly`` over ``target_vars``; the result lives there.
        """
        target_vars = tuple(target_vars)
        result = MultiPoly.zero(target_vars)
        pow_cache = {}
        for exp, c in self.terms.items():
            term = MultiPoly.constant(target_vars, c)
            for i, e in enumerate(exp):
                if not e:
                    continue
                name = self.vars[i]
                key = (name, e)
                if key not in pow_cache:
                    pow_cache[key] = mapping[name] ** e
                term = term * pow_cache[key]
            result = result + term
        return result

    def rename(self, target_vars, name_map=None):
        """Re-express in another ring by renaming variables.

        ``name_map`` sends old names to new ones (identity by default);
        every used variable must map to a variable of the target ring.
        """
        target_vars = tuple(target_vars)
        name_map = name_map or {}
        index = {}
        for i, old in enumerate(self.vars):
            new = name_map.get(old, old)
            index[i] = target_vars.index(new) if new in target_vars else None
        width = len(target_vars)
        res = {}
        for exp, c in self.terms.items():
            nexp = [0] * width
            for i, e in enumerate(exp):
                if e:
                    j = index[i]
                    if j is None:
                        raise ValueError(
                            f"variable {self.vars[i]!r} has no image in target ring")
                    nexp[j] += e
            key = tuple(nexp)
            res[key] = res.get(key, Fraction(0)) + c
        return MultiPoly(target_vars, res)

    # -- canonical text form ---------------------------------------------------

    def to_string(self, order=None):
        if not self.terms:
            return "0"
        order = order or MonomialOrder.grevlex(len(self.vars))
        parts = []
        for exp in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(self.vars[i])
                elif e > 1:
                    factors.append(f"{self.vars[i]}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{_frac_str(mag)}*{body}"
            else:
                body = _frac_str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


def _frac_str(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    """Parse ``p`` or ``p/q`` (optional sign) into a Fraction."""
    text = text.strip()
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
    if not m:
        raise ParseError(f"malformed number {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_poly(text, vars):
    """Parse one polynomial in the shared term grammar.

    Terms are joined by ``+``/``-``; a term is ``coeff*var^e*...`` where
    the coefficient and the exponents are optional.  Raises ``ParseError``
    on unknown variables or malformed syntax.
    """
    vars = tuple(vars)
    var_index = {name: i for i, name in enumerate(vars)}
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty polynomial string")
    terms = {}
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while pos < len(s):
        coeff = Fraction(sign)
        exp = [0] * len(vars)
        saw_factor = False
        while True:
            if pos < len(s) and s[pos].isdigit():
                m = re.match(r"\d+(?:/\d+)?", s[pos:])
                coeff *= parse_rational(m.group(0))
                pos += m.end()
                saw_factor = True
            elif pos < len(s) and (s[pos].isalpha() or s[pos] == "_"):
                m = _VAR_RE.match(s, pos)
                name = m.group(0)
                if name not in var_index:
                    raise ParseError(
                        f"unknown variable {name!r} at position {pos} in {text!r}")
                pos = m.end()
                e = 1
                if pos < len(s) and s[pos] == "^":
                    m2 = re.match(r"\^(\d+)", s[pos:])
                    if not m2:
                        raise ParseError(f"malformed exponent at position {pos} in {text!r}")
                    e = int(m2.group(1))
                    pos += m2.end()
                exp[var_index[name]] += e
                saw_factor = True
            else:
                raise ParseError(f"unexpected character at position {pos} in {text!r}")
            if pos < len(s) and s[pos] == "*":
                pos += 1
                continue
            break
        if not saw_factor:
            raise ParseError(f"empty term in {text!r}")
        key = tuple(exp)
        val = terms.get(key, Fraction(0)) + coeff
        if val:
            terms[key] = val
        elif key in terms:
            del terms[key]
        if pos < len(s):
            if s[pos] == "+":
                sign = 1
            elif s[pos] == "-":
                sign = -1
            else:
                raise ParseError(f"expected '+' or '-' at position {pos} in {text!r}")
            pos += 1
            if pos >= len(s):
                raise ParseError(f"dangling sign in {text!r}")
    return MultiPoly(vars, terms)


def matrix_variables(n, prefix="x"):
    """Variable names for the entries of an n-by-n matrix, row major."""
    return tuple(f"{prefix}_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1))
