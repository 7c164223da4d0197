"""Ternary brackets given by 3×3 determinants over a commutative Hom-associative algebra.

Rows hold either scalars (values of a functional) or algebra elements;
each of the six signed terms multiplies its entries in the algebra.
"""
import logging

from algebras.operations import determinant_product, weight_powers
from algebras.structures import HomAlgebra, StructureTensor
from axioms.checkers import (
    KernelVariant, check_alpha_k_derivation, check_commutative, check_functional_derivation_balance,
    check_functional_twist_compatible, check_hom_associative, check_involution, check_kernel_condition,
    check_multiplicative, check_rota_baxter, commutation_report,
)
from core.exceptions import DimensionMismatch, TensorError
from core.linalg import vec_sum

from .results import ConstructionResult, log_conclusions, nambu_lie_reports, require, should_verify

logger = logging.getLogger(__name__)


def _require_commutative_binary(algebra):
    if algebra.arity != 2:
        raise TensorError("Determinant brackets need a binary product")
    return [check_hom_associative(algebra), check_commutative(algebra)]


def bracket_det_fD(algebra, functional, derivation, operator=None, verify=None, name=None):
    """det(f(x) f(y) f(z) / D(x) D(y) D(z) / x y z)"""
    reports = _require_commutative_binary(algebra) + [
        check_alpha_k_derivation(algebra, derivation, 0),
        check_functional_derivation_balance(algebra, functional, derivation),
        check_functional_twist_compatible(algebra, functional),
    ]
    if operator is not None:
        reports += [check_rota_baxter(algebra, operator),
                    commutation_report(derivation, operator.matrix, 'derivation-commutes-with-operator')]
    hypotheses = require(reports)
    tensor = algebra.tensor
    f = functional.covector
    basis = algebra.basis()
    images = derivation.columns()

    def value(index):
        return determinant_product(tensor, [
            [f[i] for i in index],
            [images[i] for i in index],
            [basis[i] for i in index],
        ], scalar_rows=(0,))

    output = HomAlgebra(StructureTensor.from_function(algebra.field, algebra.dim, 3, value), algebra.twist,
                        name or f"{algebra.name}.det-fD")
    extras = {}
    if operator is not None:
        extras['kernel_condition'] = check_kernel_condition(
            algebra, functional, operator, KernelVariant.DETERMINANT, derivation=derivation)
    conclusions = ()
    if should_verify(verify):
        reports = nambu_lie_reports(output)
        if operator is not None and extras['kernel_condition'].passed:
            reports.append(check_rota_baxter(output, operator))
        conclusions = log_conclusions('bracket-det-fD', reports)
    return ConstructionResult(output, hypotheses, conclusions, extras)


def bracket_det_omegaD(algebra, involution, derivation, operator=None, verify=None, name=None):
    """det(ω(x) ω(y) ω(z) / x y z / D(x) D(y) D(z)) for ωD + Dω = 0 and ωα = αω"""
    leibniz = check_alpha_k_derivation(algebra, derivation, 0, require_commuting=False)
    reports = _require_commutative_binary(algebra) + [
        check_multiplicative(algebra),
        check_involution(algebra, involution),
        leibniz,
        commutation_report(involution, derivation, 'involution-anticommutes-with-derivation', anti=True),
        commutation_report(involution, algebra.twist, 'involution-commutes-with-twist'),
    ]
    if operator is not None:
        reports += [
            check_rota_baxter(algebra, operator),
            commutation_report(operator.matrix, derivation, 'operator-commutes-with-derivation'),
            commutation_report(operator.matrix, involution, 'operator-commutes-with-involution'),
        ]
    hypotheses = require(reports)
    for advisory in leibniz.advisories:
        logger.warning(f"bracket-det-omegaD on {algebra.name}: {advisory}")
    tensor = algebra.tensor
    omega = involution.columns()
    basis = algebra.basis()
    images = derivation.columns()

    def value(index):
        return determinant_product(tensor, [
            [omega[i] for i in index],
            [basis[i] for i in index],
            [images[i] for i in index],
        ])

    output = HomAlgebra(StructureTensor.from_function(algebra.field, algebra.dim, 3, value), algebra.twist,
                        name or f"{algebra.name}.det-omegaD")
    conclusions = ()
    if should_verify(verify):
        reports = nambu_lie_reports(output)
        if operator is not None:
            reports.append(check_rota_baxter(output, operator))
        conclusions = log_conclusions('bracket-det-omegaD', reports)
    return ConstructionResult(output, hypotheses, conclusions)


def rota_baxter_determinant_sides(algebra, operator, columns):
    """Both sides of det(P x⃗, P y⃗, P z⃗) = P(Σ_{I≠∅} λ^{|I|−1} det(P̂_I x⃗, P̂_I y⃗, P̂_I z⃗)).

    ``columns`` holds three columns of three algebra elements each; P̂_I
    leaves the columns in I unchanged and applies P to the others.
    """
    if len(columns) != 3 or any(len(column) != 3 for column in columns):
        raise DimensionMismatch("Expected a 3×3 matrix of algebra elements")
    field, dim = algebra.field, algebra.dim
    tensor = algebra.tensor
    P = operator.matrix
    applied = [[P.apply(entry) for entry in column] for column in columns]

    def det(cols):
        return determinant_product(tensor, [[cols[j][i] for j in range(3)] for i in range(3)])

    powers = weight_powers(field, operator.weight, 3)
    terms = []
    for mask in range(1, 8):
        chosen = [bool(mask >> j & 1) for j in range(3)]
        coefficient = powers[sum(chosen) - 1]
        if not coefficient:
            continue
        value = det([columns[j] if chosen[j] else applied[j] for j in range(3)])
        terms.append(tuple(coefficient * a for a in value))
    return det(applied), P.apply(vec_sum(field, dim, terms))

