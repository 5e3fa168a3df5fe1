"""Defining equations for connected algebraic matrix groups.

The constructions: the group of a nilpotent matrix Lie algebra through a
symbolic exponential and elimination; the group of a single semisimple
matrix through integer relations among its eigenvalues (a saturated
lattice turned into monomial equations on the associative hull); the
smallest group containing two given groups by iterating Zariski closures
of products; and the full pipeline from an algebraic Lie algebra,
together with its maximal-reductive / unipotent-radical group parts.

All closures are taken in affine n^2-space: the vanishing ideal of a set
of matrices equals that of its affine closure, and multiplying by a fixed
invertible matrix is a linear automorphism of the ambient space, so the
product-closure iteration is unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .groebner import GroebnerBasis, reduced_groebner, _eliminate_basis
from .intlattice import Lattice, rows_to_primitive_integer, saturate_lattice
from .lie import LieAlgebra, canonical_subspace_basis, in_span, \
    reductive_decomposition, structure_constants, subalgebra_from_matrices
from .linalg import MatrixQ, char_poly, classify, jordan_decomposition, \
    kernel, minimal_polynomial, rref
from .mpoly import MonomialOrder, MultiPoly, matrix_variables
from .numfield import field_coords, splitting_field
from .unipoly import UniPoly


def x_ring(n):
    return matrix_variables(n, "x")


def identity_point(n):
    vars = x_ring(n)
    point = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            point[f"x_{i}_{j}"] = Fraction(int(i == j))
    return point


def matrix_point(M):
    point = {}
    for i in range(M.rows):
        for j in range(M.cols):
            point[f"x_{i + 1}_{j + 1}"] = M.entries[i][j]
    return point


class AlgebraicGroup:
    """Ambient size plus the canonical reduced basis of a defining ideal.

    The identity matrix satisfies every generator; this is checked at
    construction time.
    """

    __slots__ = ("n", "ideal", "provenance")

    def __init__(self, n, ideal, provenance=""):
        self.n = n
        self.ideal = ideal
        self.provenance = provenance
        point = identity_point(n)
        for g in ideal.generators:
            if g.eval(point):
                raise DomainError(
                    "identity matrix does not satisfy a defining polynomial")

    @property
    def generators(self):
        return self.ideal.generators

    def satisfied_by(self, M):
        """Whether a rational matrix lies on the defining variety."""
        point = matrix_point(M)
        return all(not g.eval(point) for g in self.generators)

    def serialize(self):
        lines = [f"n={self.n}"]
        for g in self.generators:
            lines.append(g.to_string(self.ideal.order))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (isinstance(other, AlgebraicGroup) and self.n == other.n
                and self.ideal == other.ideal)

    def __repr__(self):
        return (f"AlgebraicGroup(n={self.n}, generators={len(self.generators)}, "
                f"provenance={self.provenance!r})")


def group_from_generators(n, gens, provenance="", limits=None):
    """Normalize arbitrary generators in the x-ring to an AlgebraicGroup."""
    vars = x_ring(n)
    gens = [g for g in gens if g]
    if not gens:
        ideal = GroebnerBasis(vars, MonomialOrder.grevlex(len(vars)), ())
        return AlgebraicGroup(n, ideal, provenance)
    basis = reduced_groebner(gens, limits=limits)
    return AlgebraicGroup(n, basis, provenance)


def trivial_group(n, limits=None):
    """The one-point group {I}."""
    vars = x_ring(n)
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = MultiPoly.variable(vars, f"x_{i}_{j}")
            gens.append(v - int(i == j))
    return group_from_generators(n, gens, provenance="trivial", limits=limits)


# -- nilpotent case -------------------------------------------------------------


def exp_nilpotent_symbolic(N_basis):
    """exp(T_1 N_1 + ... + T_r N_r) as a matrix of polynomials in the T_i.

    The series is finite: it is truncated at the nilpotency index of the
    symbolic sum (at most the ambient size).  Each basis matrix must be
    nilpotent and the span closed under the commutator.
    """
    N_basis = list(N_basis)
    if not N_basis:
        raise DomainError("need at least one nilpotent matrix")
    n = N_basis[0].rows
    for i, N in enumerate(N_basis):
        if not (N ** n).is_zero:
            raise DomainError(f"basis element {i} is not nilpotent")
    structure_constants(N_basis)  # verifies independence and bracket closure
    r = len(N_basis)
    tvars = tuple(f"T{i}" for i in range(1, r + 1))
    zero = MultiPoly.zero(tvars)
    A = [[zero for _ in range(n)] for _ in range(n)]
    for k, N in enumerate(N_basis):
        tk = MultiPoly.variable(tvars, tvars[k])
        for i in range(n):
            for j in range(n):
                if N.entries[i][j]:
                    A[i][j] = A[i][j] + tk * N.entries[i][j]

    def mat_mul(P, Q):
        return [[sum((P[i][k] * Q[k][j] for k in range(n)), zero)
                 for j in range(n)] for i in range(n)]

    M = [[MultiPoly.constant(tvars, int(i == j)) for j in range(n)]
         for i in range(n)]
    term = [[MultiPoly.constant(tvars, int(i == j)) for j in range(n)]
            for i in range(n)]
    for k in range(1, n + 1):
        term = mat_mul(term, A)
        term = [[p * Fraction(1, k) for p in row] for row in term]
        if all(p.is_zero for row in term for p in row):
            break
        M = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(M, term)]
    return M


def nilpotent_group(N_basis, limits=None):
    """Vanishing ideal of the group of a nilpotent matrix Lie algebra.

    Generators x_ij - exp(sum T_k N_k)_ij are formed and the parameters
    eliminated; the result is the full vanishing ideal of the group.
    """
    N_basis = list(N_basis)
    if not N_basis:
        raise DomainError("empty basis: ambient size is undetermined")
    n = N_basis[0].rows
    M = exp_nilpotent_symbolic(N_basis)
    r = len(N_basis)
    tvars = tuple(f"T{i}" for i in range(1, r + 1))
    full_vars = tvars + x_ring(n)
    gens = []
    for i in range(n):
        for j in range(n):
            xv = MultiPoly.variable(full_vars, f"x_{i + 1}_{j + 1}")
            gens.append(xv - M[i][j].rename(full_vars))
    basis = _eliminate_basis(gens, tvars, limits)
    return AlgebraicGroup(n, basis, provenance=f"nilpotent_group(dim={r})")


def log_star_equations(N_basis, n=None):
    """Alternative defining set for the nilpotent case (cross-check only).

    Returns the entries of (X - I)^n together with every linear form
    vanishing on the span of the basis, applied to the truncated
    logarithm log*(X) = -sum_{i=1}^{n-1} (1-X)^i / i.  Practical only for
    small ambient sizes.
    """
    N_basis = list(N_basis)
    if n is None:
        if not N_basis:
            raise DomainError("ambient size needed for an empty basis")
        n = N_basis[0].rows
    vars = x_ring(n)
    zero = MultiPoly.zero(vars)
    X = [[MultiPoly.variable(vars, f"x_{i + 1}_{j + 1}") for j in range(n)]
         for i in range(n)]
    U = [[(MultiPoly.constant(vars, int(i == j)) - X[i][j]) for j in range(n)]
         for i in range(n)]  # I - X

    def mat_mul(P, Q):
        return [[sum((P[i][k] * Q[k][j] for k in range(n)), zero)
                 for j in range(n)] for i in range(n)]

    logstar = [[zero for _ in range(n)] for _ in range(n)]
    power = [[MultiPoly.constant(vars, int(i == j)) for j in range(n)]
             for i in range(n)]
    for i in range(1, n):
        power = mat_mul(power, U)
        logstar = [[a - b * Fraction(1, i) for a, b in zip(r1, r2)]
                   for r1, r2 in zip(logstar, power)]
    # (X - I)^n entries
    XmI = [[-u for u in row] for row in U]
    pw = [[MultiPoly.constant(vars, int(i == j)) for j in range(n)]
          for i in range(n)]
    for _ in range(n):
        pw = mat_mul(pw, XmI)
    eqs = [p for row in pw for p in row if p]
    # linear forms vanishing exactly on the span of the basis
    if N_basis:
        span_rows = [N.flatten() for N in N_basis]
    else:
        span_rows = []
    if span_rows:
        forms = kernel(span_rows)
    else:
        forms = [tuple(Fraction(int(t == k)) for t in range(n * n))
                 for k in range(n * n)]
    for form in forms:
        poly = zero
        for pos, c in enumerate(form):
            if c:
                poly = poly + logstar[pos // n][pos % n] * c
        if poly:
            eqs.append(poly)
    return eqs


# -- semisimple case --------------------------------------------------------------


@dataclass(frozen=True)
class AssociativeHull:
    """Unital associative algebra generated by X, with coordinates.

    ``powers`` spans it; ``membership_constraints`` are linear polynomials
    in the matrix entries that vanish exactly on the span; for each power
    index k, ``coordinate_maps[k]`` is a vector over the n^2 entry
    positions recovering the k-th coordinate of any member.
    """
    X: MatrixQ
    t: int
    powers: tuple
    membership_constraints: tuple
    coordinate_maps: tuple


def associative_hull(X):
    n = X.rows
    m = minimal_polynomial(X)
    t = m.degree() - 1
    powers = [MatrixQ.identity(n)]
    for _ in range(t):
        powers.append(powers[-1] @ X)
    W = [p.flatten() for p in powers]
    vars = x_ring(n)
    order = MonomialOrder.grevlex(len(vars))
    constraints = []
    for vec in kernel(W):
        poly = MultiPoly(vars, {
            tuple(int(p == pos) for p in range(n * n)): c
            for pos, c in enumerate(vec) if c})
        constraints.append(poly.monic(order))
    # choose the lexicographically first entry positions on which the
    # powers have full rank, then invert that square system
    selected = []
    rows = []
    for pos in range(n * n):
        cand = rows + [[W[k][pos] for k in range(t + 1)]]
        if len(rref(cand)[0]) == len(cand):
            rows = cand
            selected.append(pos)
            if len(selected) == t + 1:
                break
    inv = _invert_square(rows)
    maps = []
    for k in range(t + 1):
        vec = [Fraction(0)] * (n * n)
        for r, pos in enumerate(selected):
            vec[pos] = inv[k][r]
        maps.append(tuple(vec))
    return AssociativeHull(X=X, t=t, powers=tuple(powers),
                           membership_constraints=tuple(constraints),
                           coordinate_maps=tuple(maps))


def _invert_square(rows):
    k = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(k)):
        raise DomainError("matrix is singular")
    return [row[k:] for row in red]


def lambda_basis(roots, n):
    """Saturated integer lattice of relations sum_k e_k * alpha_k = 0.

    The eigenvalue coordinates over the tower basis are stacked into a
    rational matrix whose kernel is the rational relation space; an
    integer basis of it is saturated through the Smith form.
    """
    if len(roots) != n:
        raise DomainError("need exactly n eigenvalues (with multiplicity)")
    coord_cols = [field_coords(r) for r in roots]
    depth = len(coord_cols[0])
    rows = [[coord_cols[k][b] for k in range(n)] for b in range(depth)]
    rational = kernel(rows)
    if not rational:
        return Lattice(n=n, basis=())
    integer_rows = rows_to_primitive_integer(rational)
    return saturate_lattice(Lattice(n=n, basis=tuple(integer_rows)))


@dataclass(frozen=True)
class LatticeEquations:
    """For each lattice basis row e, the split into nonnegative parts
    (e', e'') with e = e' - e''."""
    lattice: Lattice
    monomial_pairs: tuple


def lattice_monomial_pairs(lat):
    pairs = []
    for e in lat.basis:
        e_plus = tuple(max(v, 0) for v in e)
        e_minus = tuple(p - v for p, v in zip(e_plus, e))
        pairs.append((e_plus, e_minus))
    return LatticeEquations(lattice=lat, monomial_pairs=tuple(pairs))


def _nfe_poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if e in out:
                out[e] = out[e] + c1 * c2
            else:
                out[e] = c1 * c2
    return {e: c for e, c in out.items() if c}


def torus_relations(roots, lat, t):
    """Polynomials over T0..Tt cutting out the diagonalizable-part group.

    For each lattice row e: prod_k y_k^{e'_k} = prod_k y_k^{e''_k} with
    y_k = sum_i T_i alpha_k^i; the difference is expanded and its
    coefficients (elements of the splitting tower) are split into
    rational coordinates, one polynomial per nonzero coordinate.
    """
    n = len(roots)
    tvars = tuple(f"T{i}" for i in range(t + 1))
    width = t + 1
    tower = roots[0].tower if roots else None
    pairs = lattice_monomial_pairs(lat)
    y_polys = []
    for alpha in roots:
        terms = {}
        p = alpha ** 0
        for i in range(width):
            exp = tuple(int(j == i) for j in range(width))
            terms[exp] = p
            p = p * alpha
        y_polys.append(terms)
    one = {(0,) * width: roots[0] ** 0} if roots else {}
    out = []
    seen = set()
    for e_plus, e_minus in pairs.monomial_pairs:
        lhs = dict(one)
        rhs = dict(one)
        for k in range(n):
            for _ in range(e_plus[k]):
                lhs = _nfe_poly_mul(lhs, y_polys[k])
            for _ in range(e_minus[k]):
                rhs = _nfe_poly_mul(rhs, y_polys[k])
        diff = dict(lhs)
        for e, c in rhs.items():
            if e in diff:
                diff[e] = diff[e] - c
            else:
                diff[e] = -c
        diff = {e: c for e, c in diff.items() if c}
        if not diff:
            continue
        degree = tower.degree if tower else 1
        for coord in range(degree):
            terms = {}
            for e, c in diff.items():
                q = field_coords(c)[coord]
                if q:
                    terms[e] = q
            if terms:
                poly = MultiPoly(tvars, terms)
                key = tuple(sorted(poly.terms.items()))
                if key not in seen:
                    seen.add(key)
                    out.append(poly)
    return out


def semisimple_group(X, degree_cap=64, limits=None):
    """Defining ideal of the smallest group whose Lie algebra contains the
    semisimple matrix X.

    Linear constraints cut out the associative hull of X; the saturated
    eigenvalue-relation lattice supplies monomial equations which are
    rewritten in the matrix entries through the hull coordinates.
    """
    if classify(X) != "semisimple":
        raise DomainError("matrix is not semisimple")
    m = minimal_polynomial(X)
    tower, distinct = splitting_field(m, degree_cap=degree_cap)
    cp = char_poly(X)
    eigenvalues = _eigenvalues_with_multiplicity(cp, tower, distinct, X.rows)
    return semisimple_group_from_eigenvalues(X, eigenvalues, limits=limits)


def _eigenvalues_with_multiplicity(cp, tower, distinct_roots, n):
    if tower.depth == 0:
        lifted = UniPoly([Fraction(c) for c in cp.coeffs])
        promote = tower.from_rational
    else:
        lifted = UniPoly([tower.from_rational(c) for c in cp.coeffs])
        promote = None
    eigen = []
    for root in distinct_roots:
        r = root
        linear = UniPoly([-r, r ** 0])
        mult = 0
        rest = lifted
        while True:
            q, rem = rest.divmod(linear)
            if rem.is_zero:
                mult += 1
                rest = q
            else:
                break
        if mult == 0:
            raise DomainError("eigenvalue does not divide the characteristic polynomial")
        eigen.extend([root] * mult)
    if len(eigen) != n:
        raise DomainError("eigenvalue multiplicities do not sum to the ambient size")
    return eigen


def semisimple_group_from_eigenvalues(X, eigenvalues, limits=None):
    """Core of the semisimple construction with an explicit eigenvalue
    list (with multiplicity); exposed so the independence of the result
    from the eigenvalue enumeration order can be exercised directly."""
    n = X.rows
    hull = associative_hull(X)
    lat = lambda_basis(eigenvalues, n)
    rels = torus_relations(eigenvalues, lat, hull.t)
    vars = x_ring(n)
    mapping = {}
    for k in range(hull.t + 1):
        vec = hull.coordinate_maps[k]
        mapping[f"T{k}"] = MultiPoly(vars, {
            tuple(int(p == pos) for p in range(n * n)): c
            for pos, c in enumerate(vec) if c})
    gens = list(hull.membership_constraints)
    for r in rels:
        gens.append(r.compose(mapping, vars))
    return group_from_generators(
        n, gens, provenance=f"semisimple_group(t={hull.t}, lattice_dim={lat.dim()})",
        limits=limits)


# -- products and generated groups --------------------------------------------------


def product_closure_step(A, G1, limits=None):
    """Vanishing ideal of the closure of {a*g : a in V(A), g in V(G1)}.

    Built in 3n^2 variables (u for A, v for G1, x for the product) and
    eliminated down to the x block.
    """
    if A.n != G1.n:
        raise DomainError("groups live in different ambient sizes")
    n = A.n
    uvars = matrix_variables(n, "u")
    vvars = matrix_variables(n, "v")
    xvars = x_ring(n)
    full = uvars + vvars + xvars
    gens = []
    umap = {f"x_{i}_{j}": f"u_{i}_{j}" for i in range(1, n + 1)
            for j in range(1, n + 1)}
    vmap = {f"x_{i}_{j}": f"v_{i}_{j}" for i in range(1, n + 1)
            for j in range(1, n + 1)}
    for g in A.generators:
        gens.append(g.rename(full, umap))
    for g in G1.generators:
        gens.append(g.rename(full, vmap))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            prod = MultiPoly.zero(full)
            for k in range(1, n + 1):
                prod = prod + (MultiPoly.variable(full, f"u_{i}_{k}")
                               * MultiPoly.variable(full, f"v_{k}_{j}"))
            gens.append(MultiPoly.variable(full, f"x_{i}_{j}") - prod)
    basis = _eliminate_basis(gens, uvars + vvars, limits)
    return AlgebraicGroup(n, basis, provenance="product_closure_step")


def generated_group(G1, G2, max_rounds=50, limits=None, trace=None):
    """Smallest algebraic group containing both inputs.

    Starting from the trivial group, alternately replaces the current
    group by the closure of its product with G1 and with G2 until the
    ideal stabilizes; stabilization is detected by equality of canonical
    reduced bases.  Exceeding ``max_rounds`` raises a resource error
    distinct from the Groebner caps.
    """
    if G1.n != G2.n:
        raise DomainError("groups live in different ambient sizes")
    G = trivial_group(G1.n, limits=limits)
    for round_no in range(1, max_rounds + 1):
        Gp = product_closure_step(G, G1, limits=limits)
        if trace:
            trace(round_no, "after-first-factor", Gp)
        Gp = product_closure_step(Gp, G2, limits=limits)
        if trace:
            trace(round_no, "after-second-factor", Gp)
        if Gp.ideal == G.ideal:
            return AlgebraicGroup(G.n, G.ideal,
                                  provenance=f"generated_group(rounds={round_no})")
        G = Gp
    raise ResourceLimitError(
        "max_rounds", f"closure iteration did not stabilize in {max_rounds} rounds")


def tangent_space_at_identity(G):
    """Canonical basis of the linearization of the ideal at the identity."""
    n = G.n
    point = identity_point(n)
    for g in G.generators:
        if g.eval(point):
            raise DomainError("identity does not lie on the variety")
    rows = []
    names = x_ring(n)
    for g in G.generators:
        row = [g.derivative(name).eval(point) for name in names]
        if any(row):
            rows.append(row)
    if not rows:
        vecs = [tuple(Fraction(int(t == k)) for t in range(n * n))
                for k in range(n * n)]
    else:
        vecs = kernel(rows)
    out = []
    for v in vecs:
        out.append(MatrixQ([[v[i * n + j] for j in range(n)] for i in range(n)]))
    return out


def group_of_lie_algebra(g, max_rounds=50, degree_cap=64, limits=None, trace=None):
    """Defining ideal of the connected group whose Lie algebra is ``g``.

    Each basis element is Jordan-split (both parts must stay inside the
    algebra, otherwise it is not algebraic and a DomainError is raised);
    the nilpotent parts and semisimple parts generate one-generator
    groups which are folded together, nilpotent parts first, skipping
    generators already inside the current tangent space.
    """
    n = g.n
    nilpotents, semis = [], []
    for a in g.basis:
        jp = jordan_decomposition(a)
        for part in (jp.s, jp.n):
            if not part.is_zero and g.coords_of(part) is None:
                raise DomainError(
                    "not algebraic: Jordan part of a basis element leaves the algebra")
        if not jp.n.is_zero and jp.n not in nilpotents:
            nilpotents.append(jp.n)
        if not jp.s.is_zero and jp.s not in semis:
            semis.append(jp.s)
    G = None
    for X in nilpotents + semis:
        if G is not None and in_span(tangent_space_at_identity(G), X):
            continue
        if (X ** n).is_zero:
            H = nilpotent_group([X], limits=limits)
        else:
            H = semisimple_group(X, degree_cap=degree_cap, limits=limits)
        G = H if G is None else generated_group(G, H, max_rounds=max_rounds,
                                                limits=limits, trace=trace)
    if G is None:
        G = trivial_group(n, limits=limits)
    tangent = tangent_space_at_identity(G)
    if len(tangent) != g.dim or not all(in_span(tangent, b) for b in g.basis):
        raise DomainError(
            "constructed group tangent space does not match the input algebra; "
            "the input is likely not algebraic")
    return AlgebraicGroup(G.n, G.ideal,
                          provenance=f"group_of_lie_algebra(dim={g.dim})")


def reductive_group_parts(g, max_rounds=50, degree_cap=64, limits=None):
    """Groups of the maximal reductive part and the unipotent radical.

    The algebra is split as l + d + n; H is the group of l + d and U the
    group of the nilpotent ideal n, with tangent spaces verified against
    the split."""
    split = reductive_decomposition(g)
    n_ambient = g.n
    if split.n.dim:
        U = nilpotent_group(list(split.n.basis), limits=limits)
    else:
        U = trivial_group(n_ambient, limits=limits)
    hd_mats = list(split.l.basis) + list(split.d.basis)
    if hd_mats:
        hd = structure_constants(canonical_subspace_basis(hd_mats))
        H = group_of_lie_algebra(hd, max_rounds=max_rounds,
                                 degree_cap=degree_cap, limits=limits)
    else:
        H = trivial_group(n_ambient, limits=limits)
    u_tangent = tangent_space_at_identity(U)
    if len(u_tangent) != split.n.dim or \
            not all(in_span(u_tangent, b) for b in split.n.basis):
        raise DomainError("unipotent-radical group has the wrong tangent space")
    h_tangent = tangent_space_at_identity(H)
    if len(h_tangent) != split.l.dim + split.d.dim or \
            not all(in_span(h_tangent, b) for b in hd_mats):
        raise DomainError("reductive-part group has the wrong tangent space")
    return H, U
