"""Brackets derived from a Rota-Baxter operator, and the operator/derivation duality."""
import logging
from enum import Enum

from algebras.operations import is_skew_symmetric
from algebras.structures import HomAlgebra, OperatorKind, StructureTensor, WeightedOperator
from axioms.checkers import (
    TripleConvention, check_derivation_weight, check_hom_lie_triple, check_hom_nambu,
    check_multiplicative, check_rota_baxter, commutation_report,
)
from core.exceptions import TensorError, UnknownVariant
from core.linalg import mat_inverse

from .results import (
    ConstructionResult, agreement_report, derived_tensor, log_conclusions, nambu_lie_reports, require,
    should_verify,
)

logger = logging.getLogger(__name__)


class DerivedStructure(str, Enum):
    NAMBU_LIE = 'nambu-lie'
    LIE_TRIPLE = 'lie-triple'


class DualDirection(str, Enum):
    RB_TO_DIFF = 'rb-to-diff'
    DIFF_TO_RB = 'diff-to-rb'


def _structure_reports(algebra, structure, convention):
    if structure is DerivedStructure.NAMBU_LIE:
        return nambu_lie_reports(algebra)
    return [check_hom_lie_triple(algebra, convention)]


def derived_bracket(algebra, operator, structure=DerivedStructure.NAMBU_LIE,
                    convention=TripleConvention.VERBATIM, differential=None, verify=None, name=None):
    """[x₁,x₂,x₃]_P = Σ_{I≠∅} λ^{|I|−1}[P̂_I x₁, P̂_I x₂, P̂_I x₃], P̂_I the identity on I and P elsewhere"""
    if algebra.arity != 3:
        raise TensorError(f"Derived bracket needs a ternary algebra, got arity {algebra.arity}")
    try:
        structure = DerivedStructure(structure)
        convention = TripleConvention(convention)
    except ValueError as exc:
        raise UnknownVariant(str(exc)) from exc
    reports = _structure_reports(algebra, structure, convention) + [
        check_rota_baxter(algebra, operator),
        commutation_report(algebra.twist, operator.matrix, 'twist-commutes-with-operator'),
    ]
    if differential is not None:
        reports += [
            check_derivation_weight(algebra, differential),
            commutation_report(differential.matrix, operator.matrix, 'differential-commutes-with-operator'),
        ]
    hypotheses = require(reports)
    output = HomAlgebra(derived_tensor(algebra.tensor, operator), algebra.twist,
                        name or f"{algebra.name}.derived")
    logger.info(f"Derived {structure.value} bracket on {algebra.name} at weight {operator.weight}")
    conclusions = ()
    if should_verify(verify):
        reports = _structure_reports(output, structure, convention) + [check_rota_baxter(output, operator)]
        if differential is not None:
            reports.append(check_derivation_weight(output, differential))
        conclusions = log_conclusions('derived-bracket', reports)
    return ConstructionResult(output, hypotheses, conclusions)


def bracket_dinv_alpha(algebra, differential, verify=None, name=None):
    """d([d⁻¹x, d⁻¹y, d⁻¹z]) for an invertible weight-λ derivation d and an automorphism α"""
    if algebra.arity != 3:
        raise TensorError(f"Ternary algebra needed, got arity {algebra.arity}")
    mat_inverse(algebra.twist)
    inverse = mat_inverse(differential.matrix)
    hypotheses = require([
        is_skew_symmetric(algebra.tensor),
        check_hom_nambu(algebra),
        check_multiplicative(algebra),
        check_derivation_weight(algebra, differential),
        commutation_report(algebra.twist, differential.matrix, 'twist-commutes-with-differential'),
    ])
    tensor = algebra.tensor
    d = differential.matrix
    pulled = inverse.columns()
    value = StructureTensor.from_function(
        algebra.field, algebra.dim, 3, lambda index: d.apply(tensor.evaluate([pulled[i] for i in index])))
    output = HomAlgebra(value, algebra.twist, name or f"{algebra.name}.conjugated")
    extras = {'operator': WeightedOperator.rota_baxter(inverse @ algebra.twist, differential.weight)}
    conclusions = ()
    if should_verify(verify):
        composed = derived_tensor(tensor, extras['operator'])
        conclusions = log_conclusions('bracket-dinv-alpha', [
            agreement_report('agrees-with-derived-bracket', "d[d⁻¹x,d⁻¹y,d⁻¹z] = [x,y,z]_P with P = d⁻¹α",
                             value, composed),
            check_derivation_weight(output, differential),
        ])
    return ConstructionResult(output, hypotheses, conclusions, extras)


def dualize(algebra, operator, direction=DualDirection.RB_TO_DIFF):
    """d = αP⁻¹ from a Rota-Baxter operator, or P = d⁻¹α back from a derivation"""
    try:
        direction = DualDirection(direction)
    except ValueError as exc:
        raise UnknownVariant(f"Unknown dualization direction {direction!r}") from exc
    mat_inverse(algebra.twist)
    require([check_multiplicative(algebra)])
    inverse = mat_inverse(operator.matrix)
    if direction is DualDirection.RB_TO_DIFF:
        matrix, kind = algebra.twist @ inverse, OperatorKind.DERIVATION
    else:
        matrix, kind = inverse @ algebra.twist, OperatorKind.ROTA_BAXTER
    name = f"{operator.name}.dual" if operator.name else None
    logger.debug(f"Dualized {operator.name or 'operator'} on {algebra.name} ({direction.value})")
    return WeightedOperator(matrix, operator.weight, kind, 0, name)
