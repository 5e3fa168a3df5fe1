"""Exact dense linear algebra over the rationals and number-field towers.

Matrices are immutable grids of ``Fraction`` (or ``NumberFieldElement``)
entries.  Kernels are returned in a canonical reduced-echelon-derived
form so that everything downstream is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .unipoly import UniPoly, poly_gcd, extended_gcd, squarefree_part


class MatrixQ:
    """Immutable exact matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise DomainError("matrix must have at least one row and column")
        width = len(entries[0])
        for row in entries:
            if len(row) != width:
                raise DomainError("ragged matrix")
        self.entries = entries
        self.rows = len(entries)
        self.cols = width

    @classmethod
    def from_rows(cls, rows):
        return cls([[Fraction(x) if isinstance(x, (int, str, Fraction)) else x
                     for x in row] for row in rows])

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, MatrixQ) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        return MatrixQ([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return MatrixQ([[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return MatrixQ([[-a for a in row] for row in self.entries])

    def scale(self, c):
        return MatrixQ([[a * c for a in row] for row in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DomainError("matrix dimensions do not match")
        bt = list(zip(*other.entries))
        return MatrixQ([[sum(a * b for a, b in zip(row, col))
                         for col in bt] for row in self.entries])

    def __pow__(self, k):
        if self.rows != self.cols:
            raise DomainError("power of a non-square matrix")
        result = MatrixQ.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self):
        return MatrixQ(list(zip(*self.entries)))

    def trace(self):
        return sum(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    @property
    def is_zero(self):
        return all(not x for row in self.entries for x in row)

    def flatten(self):
        """Entries as one row-major tuple."""
        return tuple(x for row in self.entries for x in row)

    def commutator(self, other):
        return self @ other - other @ self

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"MatrixQ([{body}])"


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column indices).

    Works over any exact field (entries need +,-,*,/ and truthiness).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    return len(rref(rows)[0])


def kernel(M):
    """Canonical basis of the right null space of M.

    Built from the reduced row echelon form: one vector per free column,
    with entry 1 at the free column and the negated pivot-column
    coefficients elsewhere.  Empty list for injective M.
    """
    if isinstance(M, MatrixQ):
        rows = M.entries
        ncols = M.cols
    else:
        rows = [tuple(Fraction(x) if isinstance(x, int) else x for x in r)
                for r in M]
        if not rows:
            return []
        ncols = len(rows[0])
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    one = Fraction(1)
    zero = Fraction(0)
    if red:
        one = red[0][pivots[0]]  # normalized pivot, the field's 1
        zero = one * 0
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def solve_in_span(vectors, target):
    """Coefficients expressing ``target`` in the span of ``vectors``.

    Returns the coefficient tuple or None if the target is outside.
    """
    if not vectors:
        return None if any(target) else ()
    ncols = len(vectors[0])
    aug = [list(v) + [t] for v, t in zip(zip(*vectors), target)]
    red, pivots = rref(aug)
    nvec = len(vectors)
    if nvec in pivots:
        return None
    coeffs = [Fraction(0) if isinstance(target[0], (int, Fraction)) else target[0] * 0] * nvec
    for r, pc in enumerate(pivots):
        coeffs[pc] = red[r][-1]
    return tuple(coeffs)


def char_poly(X):
    """Characteristic polynomial det(xI - X), monic, exact."""
    if X.rows != X.cols:
        raise DomainError("characteristic polynomial of a non-square matrix")
    n = X.rows
    # Faddeev-LeVerrier iteration
    coeffs = [Fraction(1)]  # descending: x^n first
    M = MatrixQ.zero(n)
    for k in range(1, n + 1):
        M = X @ M + MatrixQ.identity(n).scale(coeffs[-1])
        c = -(X @ M).trace() / k
        coeffs.append(c)
    return UniPoly(list(reversed(coeffs)))


def minimal_polynomial(X):
    """Monic least-degree polynomial annihilating X; divides char_poly."""
    if X.rows != X.cols:
        raise DomainError("minimal polynomial of a non-square matrix")
    powers = [MatrixQ.identity(X.rows).flatten()]
    current = MatrixQ.identity(X.rows)
    while True:
        current = current @ X
        flat = current.flatten()
        coeffs = solve_in_span(powers, flat)
        if coeffs is not None:
            k = len(powers)
            # X^k = sum coeffs[i] X^i  ->  x^k - sum coeffs[i] x^i
            poly = [-c for c in coeffs] + [Fraction(1)]
            return UniPoly(poly)
        powers.append(flat)


def eval_poly_at_matrix(f, X):
    """f(X) for a rational UniPoly f and square matrix X (Horner)."""
    n = X.rows
    acc = MatrixQ.zero(n)
    for c in reversed(f.coeffs):
        acc = acc @ X + MatrixQ.identity(n).scale(c)
    return acc


@dataclass(frozen=True)
class JordanPair:
    """Additive decomposition X = s + n, s semisimple, n nilpotent, sn = ns."""
    s: MatrixQ
    n: MatrixQ


def jordan_decomposition(X):
    """Exact semisimple/nilpotent splitting of a square rational matrix.

    Newton iteration on the squarefree part f of the characteristic
    polynomial: Y <- Y - f(Y) * v(Y) with u*f + v*f' = 1, which converges
    quadratically in the nilpotent ideal; s is a polynomial in X.
    """
    if X.rows != X.cols:
        raise DomainError("Jordan decomposition of a non-square matrix")
    n = X.rows
    f = squarefree_part(char_poly(X))
    g, _, v = extended_gcd(f, f.derivative())
    if g.degree() != 0:
        raise DomainError("squarefree part has a repeated root; invalid input")
    v = v.scale(Fraction(1) / g.coeffs[0])
    Y = X
    for _ in range(n.bit_length() + 2):
        fY = eval_poly_at_matrix(f, Y)
        if fY.is_zero:
            break
        Y = Y - fY @ eval_poly_at_matrix(v, Y)
    else:
        raise DomainError("Jordan iteration failed to converge")
    s = Y
    nil = X - s
    if not (nil ** n).is_zero or not (s @ nil - nil @ s).is_zero:
        raise DomainError("Jordan decomposition invariants failed")
    return JordanPair(s=s, n=nil)


def classify(X):
    """One of 'nilpotent', 'semisimple', 'mixed'.

    Nilpotent iff X^n = 0; semisimple iff the minimal polynomial is
    squarefree; mixed otherwise.
    """
    if X.rows != X.cols:
        raise DomainError("classification of a non-square matrix")
    if (X ** X.rows).is_zero:
        return "nilpotent"
    m = minimal_polynomial(X)
    if poly_gcd(m, m.derivative()).degree() == 0:
        return "semisimple"
    return "mixed"


def exp_nilpotent(X):
    """Exact exponential of a nilpotent rational matrix."""
    n = X.rows
    acc = MatrixQ.identity(n)
    term = MatrixQ.identity(n)
    for k in range(1, n + 1):
        term = (term @ X).scale(Fraction(1, k))
        if term.is_zero:
            break
        acc = acc + term
    else:
        if not (X ** n).is_zero:
            raise DomainError("matrix is not nilpotent")
    return acc
