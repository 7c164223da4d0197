"""Exact solutions of the linear problems: α^k-derivations and admissible functionals."""
import logging
from dataclasses import dataclass
from itertools import product

from algebras.structures import LinearFunctional
from core.conf import setting
from core.exceptions import TensorError
from core.linalg import Matrix, dot, kernel_basis, rank, vec_add, vec_sub

logger = logging.getLogger(__name__)


def _unit_matrix(field, dim, a, b):
    return Matrix(field, [[field.one if (i, j) == (a, b) else field.zero for j in range(dim)] for i in range(dim)], dim)


def derivation_residual(algebra, matrix, k=0):
    """Stacked residuals of D(x·y) − D(x)·α^k(y) − α^k(x)·D(y) and Dα − αD, linear in D"""
    tensor = algebra.tensor
    twisted = algebra.twist.power(k).columns()
    images = matrix.columns()
    residual = []
    for x, y in product(range(algebra.dim), repeat=2):
        rhs = vec_add(tensor.evaluate([images[x], twisted[y]]), tensor.evaluate([twisted[x], images[y]]))
        residual.extend(vec_sub(matrix.apply(tensor.get((x, y))), rhs))
    commutator = matrix @ algebra.twist - algebra.twist @ matrix
    for row in commutator.rows:
        residual.extend(row)
    return residual


def solve_linear_derivations(algebra, k=0):
    """Basis of the α^k-derivations commuting with α, as matrices"""
    if algebra.arity != 2:
        raise TensorError("α^k-derivations are defined for binary products")
    if k < 0:
        raise TensorError(f"Negative twist power {k}")
    field, dim = algebra.field, algebra.dim
    columns = [derivation_residual(algebra, _unit_matrix(field, dim, a, b), k)
               for a, b in product(range(dim), repeat=2)]
    system = Matrix.from_columns(field, columns)
    solutions = [Matrix(field, [vector[i * dim:(i + 1) * dim] for i in range(dim)], dim)
                 for vector in kernel_basis(system)]
    logger.info(f"α^{k}-derivations of {algebra.name}: solution space of dimension {len(solutions)}")
    return solutions


@dataclass(frozen=True)
class AdmissibleFunctionals:
    """Functionals killing every bracket value, plus the pointwise admissibility test"""
    algebra: object
    linear_basis: tuple
    exhaustive: tuple | None = None

    def is_admissible(self, functional):
        """f vanishes on brackets and f∘α, f are linearly dependent"""
        values = self.algebra.tensor.table.values()
        if any(dot(functional.covector, value) for value in values):
            return False
        composed = functional.compose(self.algebra.twist)
        return rank(Matrix(self.algebra.field, [functional.covector, composed.covector])) <= 1


def admissible_functionals(algebra, budget=None):
    if algebra.arity != 2:
        raise TensorError("Admissible functionals are defined for binary brackets")
    field, dim = algebra.field, algebra.dim
    values = [vector for _, vector in algebra.tensor.items()]
    system = Matrix(field, values, dim)
    basis = tuple(LinearFunctional(vector, field, f"f{n + 1}") for n, vector in enumerate(kernel_basis(system)))
    result = AdmissibleFunctionals(algebra, basis)
    budget = setting('HOMALG_SEARCH_BUDGET') if budget is None else budget
    if field.is_prime_field and field.p ** dim <= budget:
        listed = tuple(
            candidate for candidate in (LinearFunctional(vector, field) for vector in field.tuples(dim))
            if result.is_admissible(candidate)
        )
        result = AdmissibleFunctionals(algebra, basis, listed)
    logger.info(f"Admissible functionals of {algebra.name}: linear part of dimension {len(basis)}")
    return result
