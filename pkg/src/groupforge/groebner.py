"""Buchberger engine: reduced Groebner bases, elimination, ideal equality.

The engine is deterministic: identical input produces an identical
(reduced, monic, canonically sorted) basis.  Internally polynomials are
kept in integer-primitive form with exponent vectors packed into single
integers (10 bits per variable with a guard bit), so monomial products
are integer additions and divisibility tests are masked subtractions;
reductions are fraction free.  Emitted generators are monic with
rational coefficients.

Resource control: every S-pair reduction (and every generator rewrite
performed by the linear-substitution pre-pass of ``eliminate``, which
replaces the reductions Buchberger would otherwise do) is charged against
``GroebnerLimits.max_spairs``; intermediate polynomial degrees are capped
by ``max_degree`` and the basis size by ``max_basis``.  Exceeding a cap
raises ``ResourceLimitError`` naming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd

from .errors import ResourceLimitError
from .mpoly import MonomialOrder, MultiPoly


@dataclass(frozen=True)
class GroebnerLimits:
    max_spairs: int = 2_000_000
    max_degree: int = 100
    max_basis: int = 50_000


DEFAULT_LIMITS = GroebnerLimits()


class _Budget:
    """Mutable spend tracker for one top-level computation."""

    __slots__ = ("limits", "spairs")

    def __init__(self, limits):
        self.limits = limits or DEFAULT_LIMITS
        self.spairs = 0

    def spend_spair(self):
        self.spairs += 1
        if self.spairs > self.limits.max_spairs:
            raise ResourceLimitError(
                "max_spairs",
                f"S-pair reduction cap of {self.limits.max_spairs} exceeded")

    def check_degree(self, deg):
        if deg > self.limits.max_degree:
            raise ResourceLimitError(
                "max_degree",
                f"polynomial degree {deg} exceeds cap {self.limits.max_degree}")

    def check_basis(self, size):
        if size > self.limits.max_basis:
            raise ResourceLimitError(
                "max_basis",
                f"basis size {size} exceeds cap {self.limits.max_basis}")


# -- packed monomials -------------------------------------------------------------

_BITS = 10
_FIELD = 1 << _BITS
_GUARD = 1 << (_BITS - 1)
_EXP_MASK = _GUARD - 1  # exponents must stay below the guard bit


class _Packing:
    """Exponent tuples packed into one integer, plus cached order data."""

    __slots__ = ("nvars", "order", "high", "low", "cache")

    def __init__(self, nvars, order):
        self.nvars = nvars
        self.order = order
        self.high = 0
        self.low = 0
        for i in range(nvars):
            self.high |= _GUARD << (_BITS * i)
            self.low |= 1 << (_BITS * i)
        # packed monomial -> (key, neg_key, degree)
        self.cache = {}

    def pack(self, exp):
        m = 0
        for i, e in enumerate(exp):
            if e:
                if e > _EXP_MASK:
                    raise ResourceLimitError(
                        "max_degree", f"exponent {e} exceeds packed-field capacity")
                m |= e << (_BITS * i)
        return m

    def unpack(self, m):
        return tuple((m >> (_BITS * i)) & (_FIELD - 1) for i in range(self.nvars))

    def info(self, m):
        data = self.cache.get(m)
        if data is None:
            exp = self.unpack(m)
            key = self.order.key(exp)
            data = (key, _negate_key(key), sum(exp))
            self.cache[m] = data
        return data

    def key(self, m):
        return self.info(m)[0]

    def neg_key(self, m):
        return self.info(m)[1]

    def degree(self, m):
        return self.info(m)[2]

    def divides(self, a, b):
        """Whether monomial a divides monomial b."""
        return (((b | self.high) - a) & self.high) == self.high

    def lcm(self, a, b):
        g = ((b | self.high) - a) & self.high  # guard set where b >= a
        full = (g - (g >> (_BITS - 1))) | g
        return (b & full) | (a & ~full)


def _negate_key(key):
    return tuple(-x if isinstance(x, int) else _negate_key(x) for x in key)


def _to_packed_terms(poly, pk):
    """MultiPoly -> primitive dict packed-exp -> int (sign not normalized)."""
    if not poly.terms:
        return {}
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {pk.pack(e): int(c * den) for e, c in poly.terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {e: v // g for e, v in ints.items()}
    return ints


def _content(terms):
    g = 0
    for v in terms.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _strip_content(terms):
    g = _content(terms)
    if g > 1:
        return {e: v // g for e, v in terms.items()}
    return terms


class _Reducers:
    """Basis bookkeeping for fast divisor lookup during reduction.

    ``find`` returns the index of the first (smallest leading monomial)
    basis element dividing the given monomial, memoized; negative-result
    cache entries are flushed whenever the basis grows.
    """

    __slots__ = ("pk", "polys", "lms", "lcs", "degs", "order_pos",
                 "hits", "misses")

    def __init__(self, pk):
        self.pk = pk
        self.polys = []
        self.lms = []
        self.lcs = []
        self.degs = []
        self.order_pos = []   # basis indices sorted by ascending lm key
        self.hits = {}
        self.misses = set()

    def insert(self, terms):
        pk = self.pk
        lm = max(terms, key=pk.key)
        idx = len(self.polys)
        self.polys.append(terms)
        self.lms.append(lm)
        self.lcs.append(terms[lm])
        self.degs.append(pk.degree(lm))
        key = pk.key(lm)
        lo, hi = 0, len(self.order_pos)
        while lo < hi:
            mid = (lo + hi) // 2
            if pk.key(self.lms[self.order_pos[mid]]) < key:
                lo = mid + 1
            else:
                hi = mid
        self.order_pos.insert(lo, idx)
        self.misses.clear()
        return idx

    def find(self, m, deg, skip=None):
        if skip is None:
            k = self.hits.get(m)
            if k is not None:
                return k
            if m in self.misses:
                return -1
        degs = self.degs
        lms = self.lms
        high = self.pk.high
        mh = m | high
        for k in self.order_pos:
            if k == skip or degs[k] > deg:
                continue
            if ((mh - lms[k]) & high) == high:
                if skip is None:
                    self.hits[m] = k
                return k
        if skip is None:
            self.misses.add(m)
        return -1


def _nf_packed(p, red, budget, skip=None):
    """Fraction-free full normal form of p against the reducer basis.

    Returns a primitive dict with positive leading coefficient (or ``{}``).
    Terms are processed strictly descending through a lazy heap; the
    reducer is the dividing basis element with the smallest leading
    monomial, which makes the division deterministic.
    """
    if not p:
        return {}
    pk = red.pk
    neg_key = pk.neg_key
    work = dict(p)
    rem = {}
    heap = [(neg_key(e), e) for e in work]
    heapify(heap)
    steps = 0
    while heap:
        lt = heappop(heap)[1]
        c = work.get(lt)
        if not c:
            work.pop(lt, None)
            continue
        del work[lt]
        deg = pk.degree(lt)
        budget.check_degree(deg)
        k = red.find(lt, deg, skip)
        if k < 0:
            rem[lt] = c
            continue
        g = red.polys[k]
        lm = red.lms[k]
        lcg = red.lcs[k]
        d = gcd(lcg, c)
        a = lcg // d
        b = c // d
        if a != 1:
            for e in work:
                work[e] *= a
            for e in rem:
                rem[e] *= a
        shift = lt - lm
        for e, v in g.items():
            if e == lm:
                continue
            ne = e + shift
            old = work.get(ne)
            if old is None:
                work[ne] = -b * v
                heappush(heap, (neg_key(ne), ne))
            else:
                nv = old - b * v
                if nv:
                    work[ne] = nv
                else:
                    del work[ne]
        steps += 1
        if steps % 64 == 0:
            cg = gcd(_content(work), _content(rem))
            if cg > 1:
                work = {e: v // cg for e, v in work.items()}
                rem = {e: v // cg for e, v in rem.items()}
    rem = _strip_content(rem)
    if rem and rem[max(rem, key=pk.key)] < 0:
        return {e: -v for e, v in rem.items()}
    return rem


def _spoly_packed(f, lmf, lcf, g, lmg, lcg, pk):
    l = pk.lcm(lmf, lmg)
    d = gcd(lcf, lcg)
    mf = lcg // d
    mg = lcf // d
    sf = l - lmf
    sg = l - lmg
    res = {}
    for e, v in f.items():
        res[e + sf] = mf * v
    for e, v in g.items():
        ne = e + sg
        old = res.get(ne)
        if old is None:
            res[ne] = -mg * v
        else:
            nv = old - mg * v
            if nv:
                res[ne] = nv
            else:
                del res[ne]
    return res


def _buchberger_packed(packed_gens, pk, budget):
    """Run Buchberger to completion; returns the reduced packed basis."""
    red = _Reducers(pk)
    pending = set()
    heap = []

    def push_pairs(t):
        lmt = red.lms[t]
        key = pk.key
        lcm = pk.lcm
        for i in range(t):
            l = lcm(red.lms[i], lmt)
            pending.add((i, t))
            heappush(heap, (key(l), i, t, l))

    seed = [p for p in packed_gens if p]
    seed.sort(key=lambda q: pk.key(max(q, key=pk.key)))
    for p in seed:
        r = _nf_packed(p, red, budget)
        if r:
            push_pairs(red.insert(r))
            budget.check_basis(len(red.polys))

    lms = red.lms
    divides = pk.divides
    while heap:
        _, i, j, l = heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        # product criterion: disjoint leading monomials
        if l == lms[i] + lms[j]:
            continue
        # chain criterion: some k divides the lcm and both side pairs are done
        skip = False
        for k in range(len(red.polys)):
            if k == i or k == j:
                continue
            if divides(lms[k], l):
                pi = (i, k) if i < k else (k, i)
                pj = (j, k) if j < k else (k, j)
                if pi not in pending and pj not in pending:
                    skip = True
                    break
        if skip:
            continue
        budget.spend_spair()
        s = _spoly_packed(red.polys[i], lms[i], red.lcs[i],
                          red.polys[j], lms[j], red.lcs[j], pk)
        r = _nf_packed(s, red, budget)
        if r:
            push_pairs(red.insert(r))
            budget.check_basis(len(red.polys))

    # minimalize: drop generators whose lm is divisible by another's lm
    keep = []
    for i in red.order_pos:
        lm = lms[i]
        if not any(divides(lms[j], lm) for j in keep):
            keep.append(i)

    # interreduce tails to the unique reduced basis
    polys = [red.polys[i] for i in keep]
    changed = True
    while changed:
        changed = False
        rr = _Reducers(pk)
        for q in polys:
            rr.insert(q)
        out = []
        for i in range(len(polys)):
            r = _nf_packed(polys[i], rr, budget, skip=i)
            if r != polys[i]:
                changed = True
            if r:
                out.append(r)
        polys = out
    polys.sort(key=lambda q: pk.key(max(q, key=pk.key)))
    return polys


def _packed_to_monic(terms, vars, pk):
    lm = max(terms, key=pk.key)
    lc = terms[lm]
    return MultiPoly(vars, {pk.unpack(e): Fraction(v, lc)
                            for e, v in terms.items()})


class GroebnerBasis:
    """A reduced Groebner basis: monic, inter-reduced, canonically sorted."""

    __slots__ = ("vars", "order", "generators")

    def __init__(self, vars, order, generators):
        self.vars = tuple(vars)
        self.order = order
        self.generators = tuple(generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.vars == other.vars
                and self.generators == other.generators)

    def __repr__(self):
        polys = ", ".join(g.to_string(self.order) for g in self.generators)
        return f"GroebnerBasis([{polys}])"

    def reduce(self, f):
        return normal_form(f, self)


def reduced_groebner(gens, order=None, limits=None):
    """Unique reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one polynomial to fix the ring")
    vars = gens[0].vars
    for g in gens[1:]:
        if g.vars != vars:
            raise ValueError("generators live in different rings")
    order = order or MonomialOrder.grevlex(len(vars))
    budget = _Budget(limits)
    pk = _Packing(len(vars), order)
    packed = [_to_packed_terms(g, pk) for g in gens]
    polys = _buchberger_packed(packed, pk, budget)
    out = [_packed_to_monic(p, vars, pk) for p in polys]
    return GroebnerBasis(vars, order, out)


def s_polynomial(f, g, order):
    """S-polynomial of two nonzero polynomials under the given order."""
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    lcm_ = tuple(max(a, b) for a, b in zip(lmf, lmg))
    mf = MultiPoly(f.vars, {tuple(a - b for a, b in zip(lcm_, lmf)):
                            Fraction(1) / f.terms[lmf]})
    mg = MultiPoly(g.vars, {tuple(a - b for a, b in zip(lcm_, lmg)):
                            Fraction(1) / g.terms[lmg]})
    return mf * f - mg * g


def normal_form(f, basis, with_quotients=False):
    """Remainder of multivariate division of ``f`` by a Groebner basis.

    Zero iff ``f`` lies in the ideal.  With ``with_quotients`` the
    quotients are returned as well, so that
    ``f == sum(q*g) + remainder`` exactly.
    """
    if f.vars != basis.vars:
        raise ValueError("polynomial and basis live in different rings")
    order = basis.order
    okey = order.key
    gens = basis.generators
    lms = [g.leading_monomial(order) for g in gens]
    quots = [MultiPoly.zero(f.vars) for _ in gens] if with_quotients else None
    work = dict(f.terms)
    rem = {}
    while work:
        lt = max(work, key=okey)
        c = work.pop(lt)
        if not c:
            continue
        red = -1
        for k, lm in enumerate(lms):
            for a, b in zip(lm, lt):
                if a > b:
                    break
            else:
                red = k
                break
        if red < 0:
            rem[lt] = c
            continue
        g = gens[red]
        lm = lms[red]
        shift = tuple(a - b for a, b in zip(lt, lm))
        coeff = c / g.terms[lm]
        if with_quotients:
            quots[red] = quots[red] + MultiPoly(f.vars, {shift: coeff})
        for e, v in g.terms.items():
            if e == lm:
                continue
            ne = tuple(a + b for a, b in zip(e, shift))
            s = work.get(ne, Fraction(0)) - coeff * v
            if s:
                work[ne] = s
            elif ne in work:
                del work[ne]
    r = MultiPoly(f.vars, rem)
    if with_quotients:
        return r, quots
    return r


def _presubstitute(gens, drop_names, budget):
    """Eliminate drop variables occurring linearly with constant coefficient.

    For a generator of the form ``c*z + q`` (``z`` a drop variable not
    occurring in ``q``, ``c`` a nonzero rational) the ideal satisfies
    ``I ∩ F[V\\{z}] = <gens with z := -q/c, generator removed>``, so the
    substitution is an exact elimination step.  Every substitution event
    and every generator rewrite is charged against the S-pair budget; they
    replace reductions Buchberger would otherwise perform.  Returns
    (new_gens, remaining_drop_names).
    """
    gens = [g for g in gens if g]
    drop = [v for v in gens[0].vars if v in set(drop_names)] if gens else []
    progress = True
    while progress and gens:
        progress = False
        for z in list(drop):
            zi = gens[0].vars.index(z)
            chosen = None
            for idx, g in enumerate(gens):
                zterms = [(e, c) for e, c in g.terms.items() if e[zi] > 0]
                if len(zterms) == 1:
                    e, c = zterms[0]
                    if e[zi] == 1 and sum(e) == 1:
                        chosen = (idx, c)
                        break
            if chosen is None:
                continue
            idx, c = chosen
            budget.spend_spair()
            g = gens[idx]
            rest = MultiPoly(g.vars,
                             {e: v for e, v in g.terms.items() if e[zi] == 0})
            repl = rest * (Fraction(-1) / c)
            new_gens = []
            for k, h in enumerate(gens):
                if k == idx:
                    continue
                if any(e[zi] > 0 for e in h.terms):
                    budget.spend_spair()
                    parts = {}
                    for e, v in h.terms.items():
                        base = e[:zi] + (0,) + e[zi + 1:]
                        bucket = parts.setdefault(e[zi], {})
                        bucket[base] = bucket.get(base, Fraction(0)) + v
                    acc = MultiPoly.zero(h.vars)
                    for zdeg, sub in parts.items():
                        piece = MultiPoly(h.vars, sub)
                        if zdeg:
                            piece = piece * repl ** zdeg
                        acc = acc + piece
                    budget.check_degree(acc.total_degree())
                    h = acc
                if h:
                    new_gens.append(h)
            gens = new_gens
            drop.remove(z)
            progress = True
    return gens, drop


def eliminate(gens, drop_names, limits=None):
    """Generators of the ideal's intersection with the subring without
    ``drop_names``; the result is a reduced Groebner basis there.
    """
    return list(_eliminate_basis(gens, drop_names, limits).generators)


def _single_var_eliminate(gens, z, budget):
    """Eliminate one variable by a block Groebner run; the survivors are
    returned over the ring without that variable (a reduced grevlex basis
    there, since a reduced basis restricts to one on the subring)."""
    ring = gens[0].vars
    zi = ring.index(z)
    small = tuple(v for v in ring if v != z)
    order = MonomialOrder.elimination(len(ring), [zi])
    pk = _Packing(len(ring), order)
    packed = [_to_packed_terms(g, pk) for g in gens]
    polys = _buchberger_packed(packed, pk, budget)
    z_mask = (_FIELD - 1) << (_BITS * zi)
    out = [_packed_to_monic(p, ring, pk).rename(small)
           for p in polys if all(e & z_mask == 0 for e in p)]
    return out


def _eliminate_basis(gens, drop_names, limits=None):
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one polynomial to fix the ring")
    vars = gens[0].vars
    drop_names = list(drop_names)
    unknown = set(drop_names) - set(vars)
    if unknown:
        raise ValueError(f"unknown variables to eliminate: {sorted(unknown)}")
    keep_vars = tuple(v for v in vars if v not in set(drop_names))
    keep_order = MonomialOrder.grevlex(len(keep_vars))
    budget = _Budget(limits)

    # Variables are eliminated one at a time (in ring order), with the
    # linear-substitution pass re-run in between: each single elimination
    # is far cheaper than one block elimination of the whole set, and the
    # composite is the same ideal since elimination is compositional.
    cur = gens
    drop = drop_names
    while True:
        cur, drop = _presubstitute(cur, drop, budget)
        if not cur:
            return GroebnerBasis(keep_vars, keep_order, ())
        if not drop:
            break
        z = drop[0]
        cur = _single_var_eliminate(cur, z, budget)
        drop = drop[1:]
        if not drop and cur:
            out = [g.rename(keep_vars) for g in cur]
            out.sort(key=lambda g: keep_order.key(g.leading_monomial(keep_order)))
            return GroebnerBasis(keep_vars, keep_order, out)

    # every remaining drop variable was substituted away; the survivors
    # need completing to a reduced basis in the keep ring
    renamed = [g.rename(keep_vars) for g in cur]
    pk = _Packing(len(keep_vars), keep_order)
    packed = [_to_packed_terms(g, pk) for g in renamed]
    polys = _buchberger_packed(packed, pk, budget)
    out = [_packed_to_monic(p, keep_vars, pk) for p in polys]
    return GroebnerBasis(keep_vars, keep_order, out)


def ideal_equal(gens_a, gens_b, limits=None):
    """Whether two generator lists span the same ideal.

    Reduced Groebner bases are unique for a fixed order, so equality of
    the canonical bases decides ideal equality.
    """
    a = list(gens_a)
    b = list(gens_b)
    if not a or not b:
        if not a and not b:
            return True
        nonempty = a or b
        return all(g.is_zero for g in nonempty)
    if a[0].vars != b[0].vars:
        raise ValueError("ideals live in different rings")
    ga = reduced_groebner(a, limits=limits)
    gb = reduced_groebner(b, limits=limits)
    return ga.generators == gb.generators
