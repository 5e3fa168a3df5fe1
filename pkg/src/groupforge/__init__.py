"""Exact construction of defining equations for connected algebraic
matrix groups from their Lie algebras, with the supporting computer
algebra: rational and number-field arithmetic, exact linear algebra,
integer lattices, and a Groebner-basis elimination engine."""

from .errors import DomainError, ForgeError, ParseError, ResourceLimitError
from .groebner import (GroebnerBasis, GroebnerLimits, eliminate, ideal_equal,
                       normal_form, reduced_groebner, s_polynomial)
from .groups import (AlgebraicGroup, AssociativeHull, LatticeEquations,
                     associative_hull, exp_nilpotent_symbolic, generated_group,
                     group_of_lie_algebra, lambda_basis, log_star_equations,
                     nilpotent_group, product_closure_step,
                     reductive_group_parts, semisimple_group,
                     tangent_space_at_identity, trivial_group)
from .intlattice import (Lattice, SmithForm, hermite_normal_form,
                         saturate_lattice, smith_normal_form)
from .lie import (LieAlgebra, ReductiveSplit, cartan_subalgebra, centralizer,
                  fitting_one, levi_subalgebra, reductive_decomposition,
                  solvable_radical, structure_constants)
from .linalg import (JordanPair, MatrixQ, char_poly, classify,
                     jordan_decomposition, kernel, minimal_polynomial)
from .mpoly import MonomialOrder, MultiPoly, matrix_variables, parse_poly
from .numfield import (FieldTower, NumberFieldElement, factor_over_field,
                       field_coords, splitting_field)
from .unipoly import UniPoly, squarefree_part

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
