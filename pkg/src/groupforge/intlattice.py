"""Integer matrices: Smith normal form, Hermite form, lattice saturation.

All transforms are tracked exactly; ``smith_normal_form`` returns the
unimodular P, Q with P*B*Q = S together with their inverses, and
``saturate_lattice`` turns a basis of a rational row space into a basis
of its integer saturation (all elementary divisors 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError


@dataclass(frozen=True)
class SmithForm:
    """P*B*Q = S with P, Q unimodular and S diagonal-rectangular.

    ``d`` lists the nonzero elementary divisors, each dividing the next;
    ``p_inv`` and ``q_inv`` are the exact inverses of P and Q.
    """
    P: tuple
    Q: tuple
    S: tuple
    d: tuple
    p_inv: tuple
    q_inv: tuple


@dataclass(frozen=True)
class Lattice:
    """Integer row basis inside an ambient Z^n."""
    n: int
    basis: tuple

    def dim(self):
        return len(self.basis)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(B):
    """Smith normal form of an integer matrix by exact row/column ops.

    Pivots on the least-absolute-value nonzero entry; divisibility of the
    trailing block by the pivot is enforced before moving on, so the
    diagonal automatically satisfies d_1 | d_2 | ...
    """
    A = [[int(x) for x in row] for row in B]
    if not A or not A[0]:
        raise DomainError("empty matrix")
    m, n = len(A), len(A[0])
    P, Pinv = _identity(m), _identity(m)
    Q, Qinv = _identity(n), _identity(n)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]
        for r in Pinv:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, c):
        # row i += c * row j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for r in Pinv:
            r[j] -= c * r[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        P[i] = [-a for a in P[i]]
        for r in Pinv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def col_add(i, j, c):
        # col i += c * col j
        for r in A:
            r[i] += c * r[j]
        for r in Q:
            r[i] += c * r[j]
        Qinv[j] = [a - c * b for a, b in zip(Qinv[j], Qinv[i])]

    def col_neg(i):
        for r in A:
            r[i] = -r[i]
        for r in Q:
            r[i] = -r[i]
        Qinv[i] = [-a for a in Qinv[i]]

    for s in range(min(m, n)):
        while True:
            # move least-|nonzero| entry of the trailing block to (s, s)
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    v = abs(A[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != s:
                row_swap(s, bi)
            if bj != s:
                col_swap(s, bj)
            if A[s][s] < 0:
                row_neg(s)
            # clear the edging
            dirty = False
            for i in range(s + 1, m):
                if A[i][s]:
                    q = A[i][s] // A[s][s]
                    row_add(i, s, -q)
                    if A[i][s]:
                        dirty = True
            for j in range(s + 1, n):
                if A[s][j]:
                    q = A[s][j] // A[s][s]
                    col_add(j, s, -q)
                    if A[s][j]:
                        dirty = True
            if dirty:
                continue
            # enforce pivot | trailing block
            offender = None
            for i in range(s + 1, m):
                for j in range(s + 1, n):
                    if A[i][j] % A[s][s]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(s, offender, 1)
    d = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    return SmithForm(P=tuple(map(tuple, P)), Q=tuple(map(tuple, Q)),
                     S=tuple(map(tuple, A)), d=d,
                     p_inv=tuple(map(tuple, Pinv)), q_inv=tuple(map(tuple, Qinv)))


def hermite_normal_form(rows, n=None):
    """Canonical row Hermite form of an integer row family.

    Pivots positive, entries above each pivot reduced into [0, pivot);
    zero rows dropped.  Two row families generate the same lattice iff
    their Hermite forms coincide.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return ()
    n = n or len(rows[0])
    basis = [r for r in rows if any(r)]
    out = []
    col = 0
    while basis and col < n:
        sel = [r for r in basis if r[col]]
        rest = [r for r in basis if not r[col]]
        if not sel:
            col += 1
            continue
        # Euclid on the column entries
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(r[col]))
            p = sel[0]
            nxt = []
            for r in sel[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            sel = [p] + nxt
        pivot = sel[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        out.append(pivot)
        basis = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(out) - 1, -1, -1):
        pc = next(j for j, v in enumerate(out[i]) if v)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return tuple(tuple(r) for r in out)


def rows_to_primitive_integer(rational_rows):
    """Scale rational rows to integer rows with content 1."""
    out = []
    for row in rational_rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(tuple(ints))
    return out


def saturate_lattice(lat):
    """Basis of the integer saturation of the row span of ``lat``.

    Via the Smith form P*B*Q = S: replacing each elementary divisor by 1
    gives A = P^-1 * S' * Q^-1, whose rows span the same rational space
    and form a basis of the saturation (their Smith form is the identity
    block).  The result is returned in canonical Hermite form.
    """
    if isinstance(lat, Lattice):
        rows, n = lat.basis, lat.n
    else:
        rows = tuple(tuple(int(x) for x in r) for r in lat)
        if not rows:
            raise DomainError("empty basis")
        n = len(rows[0])
    if not rows:
        return Lattice(n=n, basis=())
    m = len(rows)
    sf = smith_normal_form(rows)
    if len(sf.d) != m:
        raise DomainError("basis rows are linearly dependent")
    # A = Pinv * S' * Qinv with S' the unit version of S
    a_rows = []
    for i in range(m):
        # row i of S'*Qinv is row i of Qinv (unit pivot)
        row = [0] * n
        for k in range(m):
            c = sf.p_inv[i][k]
            if c:
                row = [a + c * b for a, b in zip(row, sf.q_inv[k])]
        a_rows.append(row)
    return Lattice(n=n, basis=hermite_normal_form(a_rows, n))
