import random
from fractions import Fraction

import pytest

from groupforge.errors import DomainError, ResourceLimitError
from groupforge.groebner import ideal_equal, normal_form
from groupforge.groups import (associative_hull, exp_nilpotent_symbolic,
                               generated_group, group_of_lie_algebra,
                               lambda_basis, lattice_monomial_pairs,
                               log_star_equations, nilpotent_group,
                               product_closure_step, reductive_group_parts,
                               semisimple_group,
                               semisimple_group_from_eigenvalues,
                               tangent_space_at_identity, trivial_group,
                               x_ring)
from groupforge.intlattice import hermite_normal_form
from groupforge.lie import canonical_subspace_basis, in_span, structure_constants
from groupforge.linalg import MatrixQ, exp_nilpotent
from groupforge.mpoly import parse_poly
from groupforge.numfield import FieldTower, splitting_field
from groupforge.unipoly import UniPoly

from conftest import frac_matrix, unit_matrix as E


def xp(text, n):
    return parse_poly(text, x_ring(n))


def ideal_strings(G):
    return [g.to_string(G.ideal.order) for g in G.generators]


def same_span(a, b):
    return canonical_subspace_basis(list(a)) == canonical_subspace_basis(list(b))


class TestExpNilpotentSymbolic:
    def test_single_unit(self):
        M = exp_nilpotent_symbolic([E(2, 1, 2)])
        assert [[p.to_string() for p in row] for row in M] == \
            [["1", "T1"], ["0", "1"]]

    def test_heisenberg(self):
        M = exp_nilpotent_symbolic([E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)])
        # oracle: direct series expansion, the square term halves
        tvars = ("T1", "T2", "T3")
        t1, t2, t3 = (parse_poly(v, tvars) for v in tvars)
        one = parse_poly("1", tvars)
        zero = t1 - t1
        expected = [[one, t1, t2 + t1 * t3 * Fraction(1, 2)],
                    [zero, one, t3],
                    [zero, zero, one]]
        assert M == expected

    def test_single_jordan_chain(self):
        M = exp_nilpotent_symbolic([E(3, 1, 2) + E(3, 2, 3)])
        tvars = ("T1",)
        t1 = parse_poly("T1", tvars)
        assert M[0][2] == t1 * t1 * Fraction(1, 2)
        assert M[0][1] == t1 and M[1][2] == t1

    def test_non_nilpotent_rejected(self):
        with pytest.raises(DomainError):
            exp_nilpotent_symbolic([MatrixQ.identity(2)])

    def test_not_closed_rejected(self):
        with pytest.raises(DomainError):
            exp_nilpotent_symbolic([E(2, 1, 2), E(2, 2, 1)])


class TestNilpotentGroup:
    def test_one_parameter_line(self):
        G = nilpotent_group([E(2, 1, 2)])
        assert ideal_equal(list(G.generators),
                           [xp("x_1_1-1", 2), xp("x_2_2-1", 2), xp("x_2_1", 2)])

    def test_heisenberg_gives_unitriangular(self):
        G = nilpotent_group([E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)])
        expected = [xp(s, 3) for s in
                    ("x_1_1-1", "x_2_2-1", "x_3_3-1", "x_2_1", "x_3_1", "x_3_2")]
        assert ideal_equal(list(G.generators), expected)

    def test_jordan_chain_curve(self):
        G = nilpotent_group([E(3, 1, 2) + E(3, 2, 3)])
        assert normal_form(xp("x_1_2-x_2_3", 3), G.ideal).is_zero
        assert normal_form(xp("2*x_1_3-x_1_2^2", 3), G.ideal).is_zero

    def test_identity_on_variety(self):
        G = nilpotent_group([E(4, 1, 2), E(4, 1, 3)])
        assert G.satisfied_by(MatrixQ.identity(4))

    def test_sampling_closure(self):
        basis = [E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)]
        G = nilpotent_group(basis)
        rng = random.Random(41)

        def sample():
            M = MatrixQ.zero(3)
            for N in basis:
                M = M + N.scale(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            return exp_nilpotent(M)

        pts = [sample() for _ in range(20)]
        assert all(G.satisfied_by(q) for q in pts)
        assert all(G.satisfied_by(a @ b) for a in pts[:5] for b in pts[:5])

    def test_tangent_equals_input_span(self):
        basis = [E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)]
        G = nilpotent_group(basis)
        assert same_span(tangent_space_at_identity(G), basis)


class TestLogStarEquations:
    def test_single_unit_gl2(self):
        eqs = log_star_equations([E(2, 1, 2)])
        texts = set(e.to_string() for e in eqs)
        # log*(X) = X - I for n = 2; the span-cutting forms give these
        for expected in ("x_2_1", "x_1_1-1", "x_2_2-1"):
            assert expected in texts

    def test_all_in_nilpotent_ideal(self):
        for basis, n in [([E(2, 1, 2)], 2),
                         ([E(3, 1, 2), E(3, 1, 3), E(3, 2, 3)], 3),
                         ([E(3, 1, 3)], 3)]:
            G = nilpotent_group(basis)
            for e in log_star_equations(basis, n):
                assert normal_form(e, G.ideal).is_zero

    def test_e13_constraints(self):
        # equations vanish on exp(c*E13) = I + c*E13 but exclude unipotent
        # points with off-line entries such as I + E12
        eqs = log_star_equations([E(3, 1, 3)])

        def point(M):
            return {f"x_{i+1}_{j+1}": M.entries[i][j]
                    for i in range(3) for j in range(3)}

        on = MatrixQ.identity(3) + E(3, 1, 3).scale(Fraction(5, 3))
        assert all(not e.eval(point(on)) for e in eqs)
        off = MatrixQ.identity(3) + E(3, 1, 2)
        assert any(e.eval(point(off)) for e in eqs)

    def test_empty_basis_forces_identity(self):
        eqs = log_star_equations([], n=2)
        point_id = {"x_1_1": Fraction(1), "x_1_2": Fraction(0),
                    "x_2_1": Fraction(0), "x_2_2": Fraction(1)}
        assert all(not e.eval(point_id) for e in eqs)
        # a non-identity unipotent point violates the constraints
        point_u = dict(point_id, x_1_2=Fraction(1))
        assert any(e.eval(point_u) for e in eqs)


class TestLambdaBasis:
    def test_conjugate_pair(self):
        tower, roots = splitting_field(UniPoly.from_ints([1, 0, 1]))
        lat = lambda_basis(roots, 2)
        assert lat.basis == ((1, 1),)

    def test_integers_one_two(self):
        Q = FieldTower()
        lat = lambda_basis([Q.from_rational(1), Q.from_rational(2)], 2)
        assert lat.basis == ((2, -1),)

    def test_equal_pair(self):
        Q = FieldTower()
        lat = lambda_basis([Q.from_rational(1), Q.from_rational(1)], 2)
        assert lat.basis == ((1, -1),)

    def test_monomial_pairs_split(self):
        Q = FieldTower()
        lat = lambda_basis([Q.from_rational(1), Q.from_rational(2)], 2)
        pairs = lattice_monomial_pairs(lat)
        ((e_plus, e_minus),) = pairs.monomial_pairs
        assert e_plus == (2, 0) and e_minus == (0, 1)
        assert tuple(a - b for a, b in zip(e_plus, e_minus)) == lat.basis[0]
        assert all(v >= 0 for v in e_plus + e_minus)


class TestAssociativeHull:
    def test_rotation_hull(self):
        X = frac_matrix([[0, 1], [-1, 0]])
        hull = associative_hull(X)
        assert hull.t == 1
        texts = set(g.to_string() for g in hull.membership_constraints)
        assert texts == {"x_1_2+x_2_1", "x_1_1-x_2_2"}
        # coordinate maps recover T_k from the entries of T0*I + T1*X
        assert hull.coordinate_maps[0][0] == 1  # T0 = x_1_1
        assert hull.coordinate_maps[1][1] == 1  # T1 = x_1_2


class TestSemisimpleGroup:
    def test_rotation_circle(self):
        G = semisimple_group(frac_matrix([[0, 1], [-1, 0]]))
        expected = [xp("x_2_1+x_1_2", 2), xp("x_1_1-x_2_2", 2),
                    xp("x_1_1^2+x_1_2^2-1", 2)]
        assert ideal_equal(list(G.generators), expected)

    def test_identity_scalar_group(self):
        G = semisimple_group(MatrixQ.identity(2))
        expected = [xp("x_1_2", 2), xp("x_2_1", 2), xp("x_1_1-x_2_2", 2)]
        assert ideal_equal(list(G.generators), expected)

    def test_diag_1_2(self):
        G = semisimple_group(frac_matrix([[1, 0], [0, 2]]))
        expected = [xp("x_1_2", 2), xp("x_2_1", 2), xp("x_1_1^2-x_2_2", 2)]
        assert ideal_equal(list(G.generators), expected)
        # sampling both directions: diag(c, c^2) lies on the variety
        rng = random.Random(9)
        for _ in range(20):
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            assert G.satisfied_by(frac_matrix([[c, 0], [0, c * c]]))

    def test_rejects_non_semisimple(self):
        with pytest.raises(DomainError):
            semisimple_group(frac_matrix([[1, 1], [0, 1]]))

    def test_tangent_contains_generator(self):
        X = frac_matrix([[0, 1], [-1, 0]])
        G = semisimple_group(X)
        assert in_span(tangent_space_at_identity(G), X)

    def test_order_independence(self):
        # the ideal must not depend on the eigenvalue enumeration order
        X = frac_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 2]])
        Q = FieldTower()
        eigen = [Q.from_rational(1), Q.from_rational(2), Q.from_rational(2)]
        base = semisimple_group_from_eigenvalues(X, eigen)
        perms = [[eigen[1], eigen[0], eigen[2]], [eigen[2], eigen[1], eigen[0]]]
        for pm in perms:
            other = semisimple_group_from_eigenvalues(X, pm)
            assert ideal_equal(list(base.generators), list(other.generators))

    def test_lattice_order_independence(self):
        tower, roots = splitting_field(UniPoly.from_ints([1, 0, 1]))
        a = lambda_basis(roots, 2)
        b = lambda_basis(list(reversed(roots)), 2)
        assert hermite_normal_form(a.basis, 2) == hermite_normal_form(b.basis, 2)

    def test_degree_cap_propagates(self):
        # companion matrix of an irreducible octic with a large splitting field
        coeffs = [2, 0, 0, 4, -3, 2, 1, -1]  # x^8 - x^7 + x^6 + 2x^5 - 3x^4 + 4x^3 + 2
        n = 8
        comp = [[Fraction(0)] * n for _ in range(n)]
        for i in range(1, n):
            comp[i][i - 1] = Fraction(1)
        for i in range(n):
            comp[i][n - 1] = Fraction(-coeffs[i])
        X = MatrixQ(comp)
        with pytest.raises(ResourceLimitError) as exc:
            semisimple_group(X, degree_cap=16)
        assert exc.value.limit == "degree_cap"


class TestProductClosure:
    def test_left_multiplication_by_identity(self):
        up = nilpotent_group([E(2, 1, 2)])
        P = product_closure_step(trivial_group(2), up)
        assert P.ideal == up.ideal

    def test_upper_times_lower(self):
        up = nilpotent_group([E(2, 1, 2)])
        low = nilpotent_group([E(2, 2, 1)])
        P = product_closure_step(up, low)
        # oracle: the product set is [[1+ts, t], [s, 1]]
        expected = [xp("x_2_2-1", 2), xp("x_1_1-x_1_2*x_2_1-1", 2)]
        assert ideal_equal(list(P.generators), expected)
        assert normal_form(xp("x_1_1*x_2_2-x_1_2*x_2_1-1", 2), P.ideal).is_zero

    def test_torus_is_closed_under_products(self):
        torus = semisimple_group(frac_matrix([[1, 0], [0, -1]]))
        assert ideal_equal(list(torus.generators),
                           [xp("x_1_2", 2), xp("x_2_1", 2), xp("x_1_1*x_2_2-1", 2)])
        P = product_closure_step(torus, torus)
        assert P.ideal == torus.ideal

    def test_ideal_shrinks_or_stays(self):
        up = nilpotent_group([E(2, 1, 2)])
        low = nilpotent_group([E(2, 2, 1)])
        A = product_closure_step(trivial_group(2), up)
        B = product_closure_step(A, low)
        # descending chain: every new generator reduces to zero mod the old
        for g in B.generators:
            assert normal_form(g, A.ideal).is_zero
        # and not the reverse (the product strictly grew the variety here)
        assert not all(normal_form(g, B.ideal).is_zero for g in A.generators)


class TestGeneratedGroup:
    def test_torus_self(self):
        torus = semisimple_group(frac_matrix([[1, 0], [0, -1]]))
        G = generated_group(torus, torus)
        assert G.ideal == torus.ideal

    def test_root_groups_generate_determinant_one(self):
        up = nilpotent_group([E(2, 1, 2)])
        low = nilpotent_group([E(2, 2, 1)])
        G = generated_group(up, low)
        assert ideal_equal(list(G.generators),
                           [xp("x_1_1*x_2_2-x_1_2*x_2_1-1", 2)])
        assert len(tangent_space_at_identity(G)) == 3

    def test_monotone_ideal_chain(self):
        up = nilpotent_group([E(2, 1, 2)])
        low = nilpotent_group([E(2, 2, 1)])
        G = trivial_group(2)
        for _ in range(3):
            Gp = product_closure_step(G, up)
            for g in Gp.generators:
                assert normal_form(g, G.ideal).is_zero
            Gp2 = product_closure_step(Gp, low)
            for g in Gp2.generators:
                assert normal_form(g, Gp.ideal).is_zero
            if Gp2.ideal == G.ideal:
                break
            G = Gp2

    def test_max_rounds(self):
        up = nilpotent_group([E(2, 1, 2)])
        low = nilpotent_group([E(2, 2, 1)])
        with pytest.raises(ResourceLimitError) as exc:
            generated_group(up, low, max_rounds=1)
        assert exc.value.limit == "max_rounds"


class TestTangentSpace:
    def test_unipotent_line(self):
        G = nilpotent_group([E(2, 1, 2)])
        assert same_span(tangent_space_at_identity(G), [E(2, 1, 2)])

    def test_determinant_one(self):
        from groupforge.groups import group_from_generators
        G = group_from_generators(2, [xp("x_1_1*x_2_2-x_1_2*x_2_1-1", 2)])
        basis = tangent_space_at_identity(G)
        assert len(basis) == 3
        assert all(not b.trace() for b in basis)

    def test_circle_tangent(self):
        G = semisimple_group(frac_matrix([[0, 1], [-1, 0]]))
        basis = tangent_space_at_identity(G)
        assert same_span(basis, [frac_matrix([[0, 1], [-1, 0]])])

    def test_identity_off_variety_rejected(self):
        from groupforge.groebner import GroebnerBasis, reduced_groebner
        from groupforge.groups import AlgebraicGroup
        with pytest.raises(DomainError):
            AlgebraicGroup(2, reduced_groebner([xp("x_1_1", 2)]))


class TestGroupOfLieAlgebra:
    def test_unipotent_line(self):
        g = structure_constants([E(2, 1, 2)])
        G = group_of_lie_algebra(g)
        assert ideal_equal(list(G.generators),
                           [xp("x_1_1-1", 2), xp("x_2_2-1", 2), xp("x_2_1", 2)])

    def test_sl2(self):
        g = structure_constants([frac_matrix([[1, 0], [0, -1]]),
                                 E(2, 1, 2), E(2, 2, 1)])
        G = group_of_lie_algebra(g)
        assert ideal_equal(list(G.generators),
                           [xp("x_1_1*x_2_2-x_1_2*x_2_1-1", 2)])
        assert len(tangent_space_at_identity(G)) == 3

    def test_zero_algebra_note(self):
        # empty generating set would be a zero algebra; structure_constants
        # rejects an empty basis, so the pipeline starts at dimension 1
        with pytest.raises(DomainError):
            structure_constants([])

    def test_mixed_elements_jordan_split(self):
        # basis elements neither nilpotent nor semisimple are Jordan-split
        g = structure_constants([E(2, 1, 1) + E(2, 1, 2), E(2, 1, 2)])
        G = group_of_lie_algebra(g)
        tangent = tangent_space_at_identity(G)
        assert same_span(tangent, list(g.basis))


class TestReductiveGroupParts:
    def test_unipotent_line(self):
        g = structure_constants([E(2, 1, 2)])
        H, U = reductive_group_parts(g)
        assert ideal_equal(list(H.generators), [
            xp("x_1_1-1", 2), xp("x_1_2", 2), xp("x_2_1", 2), xp("x_2_2-1", 2)])
        assert ideal_equal(list(U.generators), [
            xp("x_1_1-1", 2), xp("x_2_2-1", 2), xp("x_2_1", 2)])

    def test_upper_triangular(self):
        g = structure_constants([E(2, 1, 1), E(2, 2, 2), E(2, 1, 2)])
        H, U = reductive_group_parts(g)
        assert ideal_equal(list(H.generators), [xp("x_1_2", 2), xp("x_2_1", 2)])
        assert ideal_equal(list(U.generators), [
            xp("x_1_1-1", 2), xp("x_2_2-1", 2), xp("x_2_1", 2)])
        assert same_span(tangent_space_at_identity(H),
                         [E(2, 1, 1), E(2, 2, 2)])
        assert same_span(tangent_space_at_identity(U), [E(2, 1, 2)])

    def test_gl2(self):
        g = structure_constants([E(2, 1, 1), E(2, 1, 2), E(2, 2, 1), E(2, 2, 2)])
        H, U = reductive_group_parts(g)
        assert len(U.generators) == 4  # the trivial group {I}
        assert len(tangent_space_at_identity(H)) == 4
