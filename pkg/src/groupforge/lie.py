"""Structure algorithms for matrix Lie algebras over the rationals.

Covers structure constants, centralizers, the solvable radical (trace-form
orthogonal complement of the derived subalgebra, valid for matrix Lie
algebras in characteristic zero), Levi subalgebras (cohomological lifting
along the derived series of the radical), Cartan subalgebras, Fitting
components and the splitting of an algebraic Lie algebra into a Levi
part, a toral part and a nilpotent ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .linalg import (MatrixQ, jordan_decomposition, kernel, rank, rref,
                     solve_in_span)


class LieAlgebra:
    """Matrix Lie algebra given by a basis with verified bracket closure."""

    __slots__ = ("n", "basis", "structure")

    def __init__(self, n, basis, structure):
        self.n = n
        self.basis = tuple(basis)
        self.structure = structure

    @property
    def dim(self):
        return len(self.basis)

    def bracket_coords(self, u, v):
        """Coordinates of [x, y] for x, y given in basis coordinates."""
        d = self.dim
        out = [Fraction(0)] * d
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                cij = self.structure[i][j]
                if cij is None:
                    continue
                ab = a * b
                for k, c in cij:
                    out[k] += ab * c
        return tuple(out)

    def matrix_from_coords(self, u):
        M = MatrixQ.zero(self.n)
        for c, b in zip(u, self.basis):
            if c:
                M = M + b.scale(c)
        return M

    def coords_of(self, M):
        """Coordinates of a matrix in this basis, or None if outside."""
        return solve_in_span([b.flatten() for b in self.basis], M.flatten())

    def __repr__(self):
        return f"LieAlgebra(n={self.n}, dim={self.dim})"


def canonical_subspace_basis(matrices):
    """Deterministic basis of the span of the given matrices.

    Rows of the reduced echelon form of the flattened family, restored to
    matrix shape.
    """
    mats = [m for m in matrices if not m.is_zero]
    if not mats:
        return []
    n = mats[0].rows
    red, _ = rref([m.flatten() for m in mats])
    out = []
    for row in red:
        out.append(MatrixQ([[row[i * n + j] for j in range(n)] for i in range(n)]))
    return out


def in_span(matrices, M):
    if M.is_zero:
        return True
    if not matrices:
        return False
    return solve_in_span([b.flatten() for b in matrices], M.flatten()) is not None


def structure_constants(basis):
    """Build a LieAlgebra from a linearly independent matrix basis.

    Raises DomainError (naming the offending pair) if some bracket of two
    basis elements leaves the span.  The Jacobi identity is asserted on
    all basis triples.
    """
    basis = list(basis)
    if not basis:
        raise DomainError("empty basis")
    n = basis[0].rows
    for b in basis:
        if b.rows != n or b.cols != n:
            raise DomainError("basis matrices have mixed sizes")
    flat = [b.flatten() for b in basis]
    if rank(flat) != len(basis):
        raise DomainError("basis matrices are linearly dependent")
    d = len(basis)
    structure = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            br = basis[i].commutator(basis[j])
            coords = solve_in_span(flat, br.flatten())
            if coords is None:
                raise DomainError(
                    f"not closed under bracket: [basis[{i}], basis[{j}]] leaves the span")
            structure[i][j] = tuple((k, c) for k, c in enumerate(coords) if c)
    L = LieAlgebra(n=n, basis=basis, structure=structure)
    _assert_jacobi(L)
    return L


def _assert_jacobi(L):
    d = L.dim
    for i in range(d):
        ei = tuple(Fraction(int(t == i)) for t in range(d))
        for j in range(i + 1, d):
            ej = tuple(Fraction(int(t == j)) for t in range(d))
            bij = L.bracket_coords(ei, ej)
            for k in range(j + 1, d):
                ek = tuple(Fraction(int(t == k)) for t in range(d))
                s1 = L.bracket_coords(bij, ek)
                s2 = L.bracket_coords(L.bracket_coords(ej, ek), ei)
                s3 = L.bracket_coords(L.bracket_coords(ek, ei), ej)
                if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                    raise DomainError(
                        f"Jacobi identity fails on basis triple ({i}, {j}, {k})")


def subalgebra_from_matrices(L, matrices):
    """LieAlgebra on the canonical basis of the span of ``matrices``."""
    mats = canonical_subspace_basis(matrices)
    if not mats:
        return LieAlgebra(n=L.n, basis=(), structure=[])
    return structure_constants(mats)


def derived_subalgebra_matrices(mats):
    out = []
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            br = a.commutator(b)
            if not br.is_zero:
                out.append(br)
    return canonical_subspace_basis(out)


def is_solvable(mats):
    cur = canonical_subspace_basis(mats)
    for _ in range(len(cur) + 1):
        if not cur:
            return True
        nxt = derived_subalgebra_matrices(cur)
        if len(nxt) == len(cur):
            return False
        cur = nxt
    return not cur


def is_nilpotent_algebra(mats):
    """Whether the span is nilpotent as a Lie algebra (lower central series)."""
    base = canonical_subspace_basis(mats)
    cur = base
    for _ in range(len(base) + 1):
        if not cur:
            return True
        nxt = []
        for a in base:
            for b in cur:
                br = a.commutator(b)
                if not br.is_zero:
                    nxt.append(br)
        nxt = canonical_subspace_basis(nxt)
        if len(nxt) == len(cur):
            return False
        cur = nxt
    return not cur


def solvable_radical(L):
    """Maximal solvable ideal: the trace-form orthogonal of [L, L].

    For a matrix Lie algebra over Q the radical is exactly
    {x in L : trace(x*y) = 0 for all y in [L, L]}.
    """
    derived = derived_subalgebra_matrices(list(L.basis))
    if not derived:
        return subalgebra_from_matrices(L, list(L.basis))
    rows = []
    for y in derived:
        rows.append([ (b @ y).trace() for b in L.basis ])
    coeff_vectors = kernel(rows)
    mats = [L.matrix_from_coords(v) for v in coeff_vectors]
    rad = subalgebra_from_matrices(L, mats)
    if not is_solvable(list(rad.basis)):
        raise DomainError("radical candidate is not solvable; input is not a Lie algebra over Q")
    return rad


# -- Levi subalgebra ---------------------------------------------------------------


def _project_coords(vec, ideal_rref, ideal_pivots, comp_positions):
    """Coordinates in the quotient by the ideal, w.r.t. the complement
    spanned by the unit vectors at ``comp_positions``."""
    v = list(vec)
    for row, p in zip(ideal_rref, ideal_pivots):
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v[p] for p in comp_positions)


def _levi_coords(L, rad_coords):
    """Coordinates (in L's basis) of a Levi subalgebra basis."""
    dim = L.dim
    if not rad_coords:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]

    # last nonzero term of the derived series of the radical: abelian ideal
    def derived_coords(coords):
        out = []
        for i, u in enumerate(coords):
            for v in coords[i + 1:]:
                w = L.bracket_coords(u, v)
                if any(w):
                    out.append(w)
        red, _ = rref(out)
        return [tuple(r) for r in red]

    chain = [list(rad_coords)]
    while True:
        nxt = derived_coords(chain[-1])
        if not nxt:
            break
        chain.append(nxt)
    abelian = chain[-1]

    ideal_rref, ideal_pivots = rref(abelian)
    ideal_rref = [tuple(r) for r in ideal_rref]
    pivot_set = set(ideal_pivots)
    comp_positions = [i for i in range(dim) if i not in pivot_set]
    qdim = len(comp_positions)

    # quotient algebra Lbar on the complement coordinates
    def qbracket(u, v):
        # u, v are quotient coordinate tuples
        full_u = [Fraction(0)] * dim
        full_v = [Fraction(0)] * dim
        for c, p in zip(u, comp_positions):
            full_u[p] = c
        for c, p in zip(v, comp_positions):
            full_v[p] = c
        w = L.bracket_coords(tuple(full_u), tuple(full_v))
        return _project_coords(w, ideal_rref, ideal_pivots, comp_positions)

    qstruct = [[None] * qdim for _ in range(qdim)]
    for i in range(qdim):
        ei = tuple(Fraction(int(t == i)) for t in range(qdim))
        for j in range(qdim):
            if i == j:
                continue
            ej = tuple(Fraction(int(t == j)) for t in range(qdim))
            w = qbracket(ei, ej)
            qstruct[i][j] = tuple((k, c) for k, c in enumerate(w) if c)
    Lbar = LieAlgebra(n=0, basis=(None,) * qdim, structure=qstruct)

    rad_bar = [
        _project_coords(v, ideal_rref, ideal_pivots, comp_positions)
        for v in rad_coords
    ]
    red, _ = rref([r for r in rad_bar if any(r)])
    rad_bar = [tuple(r) for r in red]

    levi_bar = _levi_coords(Lbar, rad_bar)
    if not levi_bar:
        return []

    # lift: representatives in L of the quotient Levi basis
    reps = []
    for u in levi_bar:
        full = [Fraction(0)] * dim
        for c, p in zip(u, comp_positions):
            full[p] = c
        reps.append(tuple(full))

    # structure constants of the quotient Levi
    r = len(reps)
    cbar = {}
    for i in range(r):
        for j in range(i + 1, r):
            w = Lbar.bracket_coords(levi_bar[i], levi_bar[j])
            cc = solve_in_span(levi_bar, w)
            if cc is None:
                raise DomainError("Levi lift failed: quotient is not closed")
            cbar[(i, j)] = cc

    if not abelian:
        return reps

    # solve for corrections a_i in the abelian ideal:
    # [x_i, a_j] + [a_i, x_j] - sum_k c_ij^k a_k = -d_ij
    adim = len(abelian)
    nunk = r * adim

    def unknown(i, p):
        return i * adim + p

    rows, rhs = [], []
    for i in range(r):
        for j in range(i + 1, r):
            defect = list(L.bracket_coords(reps[i], reps[j]))
            for k in range(r):
                c = cbar[(i, j)][k]
                if c:
                    defect = [a - c * b for a, b in zip(defect, reps[k])]
            dc = solve_in_span(abelian, tuple(defect))
            if dc is None:
                raise DomainError("Levi lift failed: defect outside the abelian ideal")
            # one linear equation per abelian-ideal coordinate
            coeff = [[Fraction(0)] * nunk for _ in range(adim)]
            for p in range(adim):
                # [x_i, f_p] contributes to a_j-part? careful with placement:
                # term [x_i, a_j]: a_j = sum_p mu_{j p} f_p
                w = solve_in_span(abelian, L.bracket_coords(reps[i], abelian[p]))
                if w is None:
                    raise DomainError("abelian ideal is not an ideal")
                for q in range(adim):
                    coeff[q][unknown(j, p)] += w[q]
                w = solve_in_span(abelian, L.bracket_coords(abelian[p], reps[j]))
                if w is None:
                    raise DomainError("abelian ideal is not an ideal")
                for q in range(adim):
                    coeff[q][unknown(i, p)] += w[q]
                for k in range(r):
                    c = cbar[(i, j)][k]
                    if c:
                        coeff[p][unknown(k, p)] -= c
            for q in range(adim):
                rows.append(coeff[q])
                rhs.append(-dc[q])
    sol = _solve_linear_system(rows, rhs, nunk)
    if sol is None:
        raise DomainError("Levi correction system is inconsistent")
    out = []
    for i in range(r):
        full = list(reps[i])
        for p in range(adim):
            c = sol[unknown(i, p)]
            if c:
                full = [a + c * b for a, b in zip(full, abelian[p])]
        out.append(tuple(full))
    return out


def _solve_linear_system(rows, rhs, nunk):
    """One solution of rows*x = rhs (free variables set to zero)."""
    if not rows:
        return tuple([Fraction(0)] * nunk)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if nunk in pivots:
        return None
    sol = [Fraction(0)] * nunk
    for r, p in zip(red, pivots):
        sol[p] = r[-1]
    return tuple(sol)


def levi_subalgebra(L):
    """Semisimple complement to the solvable radical."""
    rad = solvable_radical(L)
    if rad.dim == L.dim:
        return subalgebra_from_matrices(L, [])
    rad_coords = [L.coords_of(b) for b in rad.basis]
    coords = _levi_coords(L, [tuple(c) for c in rad_coords])
    mats = [L.matrix_from_coords(c) for c in coords]
    levi = subalgebra_from_matrices(L, mats)
    if levi.dim + rad.dim != L.dim:
        raise DomainError("Levi subalgebra has wrong dimension")
    if levi.dim and _killing_form_singular(levi):
        raise DomainError("Levi candidate has degenerate Killing form")
    return levi


def _ad_matrix(L, u):
    cols = []
    d = L.dim
    for j in range(d):
        ej = tuple(Fraction(int(t == j)) for t in range(d))
        cols.append(L.bracket_coords(u, ej))
    return MatrixQ(list(zip(*cols))) if d else None


def _killing_form_singular(L):
    d = L.dim
    ads = []
    for i in range(d):
        ei = tuple(Fraction(int(t == i)) for t in range(d))
        ads.append(_ad_matrix(L, ei))
    gram = [[(ads[i] @ ads[j]).trace() for j in range(d)] for i in range(d)]
    return rank(gram) != d


# -- Cartan subalgebras and Fitting components ---------------------------------------


def cartan_subalgebra(S):
    """A nilpotent self-normalizing subalgebra.

    For a candidate element h, the generalized null space of ad h is a
    self-normalizing subalgebra; once it is nilpotent it is a Cartan
    subalgebra.  Candidates are the basis elements followed by pseudo-
    random rational combinations from a fixed seed (range widened on
    degenerate draws), so the output is reproducible.
    """
    d = S.dim
    if d == 0:
        return S
    candidates = []
    for i in range(d):
        candidates.append(tuple(Fraction(int(t == i)) for t in range(d)))
    rng = random.Random(1729)
    for spread in (3, 10, 100):
        for _ in range(40):
            candidates.append(tuple(Fraction(rng.randint(-spread, spread))
                                    for _ in range(d)))
    for h in candidates:
        if not any(h):
            continue
        ad = _ad_matrix(S, h)
        null = kernel((ad ** d))
        mats = [S.matrix_from_coords(v) for v in null]
        if is_nilpotent_algebra(mats):
            H = subalgebra_from_matrices(S, mats)
            _assert_self_normalizing(S, H)
            return H
    raise DomainError("failed to locate a Cartan subalgebra (no regular element found)")


def _assert_self_normalizing(S, H):
    if H.dim == 0:
        raise DomainError("Cartan candidate is zero in a nonzero algebra")
    if len(_subspace_coords_solutions(S, H)) != H.dim:
        raise DomainError("Cartan candidate is not self-normalizing")


def _subspace_coords_solutions(S, H):
    """Coordinates of the normalizer of H in S."""
    span_flat = [b.flatten() for b in H.basis]
    rows = []
    d = S.dim
    red, pivots = rref(span_flat)
    red = [tuple(r) for r in red]

    def residual(flat):
        v = list(flat)
        for row, p in zip(red, pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    conditions = []
    for hb in H.basis:
        cols = []
        for i in range(d):
            br = S.basis[i].commutator(hb)
            cols.append(residual(br.flatten()))
        # condition: sum_i x_i * residual([b_i, h]) = 0
        for pos in range(len(cols[0])):
            row = [cols[i][pos] for i in range(d)]
            if any(row):
                conditions.append(row)
    if not conditions:
        return [tuple(Fraction(int(t == i)) for t in range(d)) for i in range(d)]
    return kernel(conditions)


def fitting_one(S, H):
    """Fitting 1-component of S under the adjoint action of the nilpotent
    subalgebra H: the stable value of the descending chain [H^i, S].

    For zero-dimensional H the chain is empty and the component is 0.
    """
    h_basis = list(H.basis) if isinstance(H, LieAlgebra) else list(H)
    if not is_nilpotent_algebra(h_basis):
        raise DomainError("H must be a nilpotent subalgebra")
    if not h_basis:
        return []
    current = canonical_subspace_basis(list(S.basis))
    while True:
        nxt = []
        for h in h_basis:
            for s in current:
                br = h.commutator(s)
                if not br.is_zero:
                    nxt.append(br)
        nxt = canonical_subspace_basis(nxt)
        # the chain is nested descending, so equal dimension means stable
        if len(nxt) == len(current):
            return nxt
        if not nxt:
            return []
        current = nxt


def centralizer(L, A):
    """Subalgebra {x in L : [x, a] = 0 for a spanning A}."""
    a_basis = list(A.basis) if isinstance(A, LieAlgebra) else list(A)
    d = L.dim
    if not a_basis or d == 0:
        return subalgebra_from_matrices(L, list(L.basis))
    conditions = []
    for a in a_basis:
        cols = [L.basis[i].commutator(a).flatten() for i in range(d)]
        for pos in range(len(cols[0])):
            row = [cols[i][pos] for i in range(d)]
            if any(row):
                conditions.append(row)
    if not conditions:
        coords = [tuple(Fraction(int(t == i)) for t in range(d)) for i in range(d)]
    else:
        coords = kernel(conditions)
    mats = [L.matrix_from_coords(v) for v in coords]
    return subalgebra_from_matrices(L, mats)


# -- decomposition of an algebraic Lie algebra ----------------------------------------


@dataclass(frozen=True)
class ReductiveSplit:
    """g = l + d + n: Levi part, commuting toral part, nilpotent ideal.

    d + n is the solvable radical, [l, d] = 0, d is abelian with
    semisimple elements, n is the ideal of all nilpotent elements of the
    radical.
    """
    l: LieAlgebra
    d: LieAlgebra
    n: LieAlgebra


def reductive_decomposition(g):
    """Split g into Levi part, toral part and nilpotent ideal.

    Requires g to be the Lie algebra of an algebraic group; the Jordan
    parts of a Cartan basis of the radical must then stay inside g, which
    is the only failure mode detected (raised as DomainError).
    """
    rad = solvable_radical(g)
    levi = levi_subalgebra(g)
    cartan = cartan_subalgebra(rad) if rad.dim else rad
    s_parts, n_parts = [], []
    for a in cartan.basis:
        jp = jordan_decomposition(a)
        for part in (jp.s, jp.n):
            if not part.is_zero and g.coords_of(part) is None:
                raise DomainError(
                    "not algebraic: Jordan part of a radical element leaves the algebra")
        s_parts.append(jp.s)
        n_parts.append(jp.n)
    d_alg = subalgebra_from_matrices(g, s_parts)
    fit = fitting_one(rad, cartan) if rad.dim else []
    n_alg = subalgebra_from_matrices(g, n_parts + list(fit))
    split = ReductiveSplit(l=levi, d=d_alg, n=n_alg)
    _assert_reductive_split(g, split)
    return split


def _assert_reductive_split(g, split):
    from .linalg import classify

    levi, d_alg, n_alg = split.l, split.d, split.n
    if levi.dim + d_alg.dim + n_alg.dim != g.dim:
        raise DomainError("decomposition dimensions do not sum")
    for x in levi.basis:
        for y in d_alg.basis:
            if not x.commutator(y).is_zero:
                raise DomainError("Levi part does not commute with the toral part")
    for i, x in enumerate(d_alg.basis):
        if classify(x) != "semisimple":
            raise DomainError("toral part contains a non-semisimple element")
        for y in d_alg.basis[i + 1:]:
            if not x.commutator(y).is_zero:
                raise DomainError("toral part is not abelian")
    for x in n_alg.basis:
        if not (x ** x.rows).is_zero:
            raise DomainError("nilpotent ideal contains a non-nilpotent element")
    # n is an ideal of g
    for x in g.basis:
        for y in n_alg.basis:
            if not in_span(list(n_alg.basis), x.commutator(y)):
                raise DomainError("nilpotent part is not an ideal")
