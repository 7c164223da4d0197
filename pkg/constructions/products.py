"""New binary and ternary products on a fixed space: commutators, doubles, Lie triples."""
import logging

from algebras.structures import HomAlgebra, StructureTensor
from axioms.checkers import (
    TripleConvention, check_alpha_k_derivation, check_commutative, check_hom_associative, check_hom_lie,
    check_hom_lie_triple, check_hom_prelie, check_rota_baxter, commutation_report,
)
from core.exceptions import NonzeroWeight, TensorError
from core.linalg import vec_sub

from .results import ConstructionResult, identity_report, log_conclusions, require, should_verify

logger = logging.getLogger(__name__)


def _binary(algebra, value, name):
    tensor = StructureTensor.from_function(algebra.field, algebra.dim, 2, value)
    return HomAlgebra(tensor, algebra.twist, name)


def _require_binary(algebra):
    if algebra.arity != 2:
        raise TensorError(f"Binary product needed, algebra has arity {algebra.arity}")


def sub_adjacent(algebra, name=None):
    """[x,y] = x∗y − y∗x, no hypotheses"""
    tensor = algebra.tensor
    return _binary(algebra, lambda index: vec_sub(tensor.get(index), tensor.get(index[::-1])),
                   name or f"{algebra.name}.commutator")


def commutator_bracket(algebra, operator=None, verify=None, name=None):
    _require_binary(algebra)
    reports = [check_hom_prelie(algebra)]
    if operator is not None:
        reports.append(check_rota_baxter(algebra, operator))
    hypotheses = require(reports)
    output = sub_adjacent(algebra, name)
    conclusions = ()
    if should_verify(verify):
        reports = [check_hom_lie(output)]
        if operator is not None:
            reports.append(check_rota_baxter(output, operator))
        conclusions = log_conclusions('commutator-bracket', reports)
    return ConstructionResult(output, hypotheses, conclusions)


def rb_prelie_double(algebra, operator, verify=None, name=None):
    """x·y = P(x)∗y − y∗P(x) for a weight-zero Rota-Baxter P commuting with α"""
    _require_binary(algebra)
    if operator.weight:
        raise NonzeroWeight(f"Operator weight {operator.weight} must be zero")
    hypotheses = require([
        check_hom_prelie(algebra),
        check_rota_baxter(algebra, operator),
        commutation_report(algebra.twist, operator.matrix, 'twist-commutes-with-operator'),
    ])
    ev = algebra.tensor.evaluate
    basis = algebra.basis()
    images = operator.matrix.columns()

    def value(index):
        x, y = index
        return vec_sub(ev([images[x], basis[y]]), ev([basis[y], images[x]]))

    output = _binary(algebra, value, name or f"{algebra.name}.double")
    conclusions = ()
    if should_verify(verify):
        conclusions = log_conclusions('rb-prelie-double', [check_hom_prelie(output), check_rota_baxter(output, operator)])
    return ConstructionResult(output, hypotheses, conclusions)


def prelie_from_derivation(algebra, derivation, operator, verify=None, name=None):
    """x∗y = x·D(y) on a commutative Hom-associative algebra; extras carry the commutator"""
    _require_binary(algebra)
    hypotheses = require([
        check_hom_associative(algebra),
        check_commutative(algebra),
        check_alpha_k_derivation(algebra, derivation, 0),
        commutation_report(derivation, operator.matrix, 'derivation-commutes-with-operator'),
        check_rota_baxter(algebra, operator),
    ])
    ev = algebra.tensor.evaluate
    basis = algebra.basis()
    images = derivation.columns()
    output = _binary(algebra, lambda index: ev([basis[index[0]], images[index[1]]]),
                     name or f"{algebra.name}.derivation-prelie")
    bracket = sub_adjacent(output, f"{output.name}.commutator")
    conclusions = ()
    if should_verify(verify):
        conclusions = log_conclusions('prelie-from-derivation', [
            check_hom_prelie(output), check_rota_baxter(output, operator), check_hom_lie(bracket),
        ])
    return ConstructionResult(output, hypotheses, conclusions, {'sub_adjacent': bracket})


def lie_triple_from_lie(algebra, verify=None, name=None):
    """[x,y,z] = [x,[y,z]] on an untwisted Lie algebra"""
    _require_binary(algebra)
    hypotheses = require([identity_report(algebra.twist, 'untwisted'), check_hom_lie(algebra)])
    tensor = algebra.tensor
    basis = algebra.basis()
    triple = StructureTensor.from_function(
        algebra.field, algebra.dim, 3,
        lambda index: tensor.evaluate([basis[index[0]], tensor.get(index[1:])]),
    )
    output = HomAlgebra(triple, algebra.twist, name or f"{algebra.name}.triple")
    conclusions = ()
    if should_verify(verify):
        conclusions = log_conclusions('lie-triple-from-lie',
                                      [check_hom_lie_triple(output, TripleConvention.CYCLIC)])
    return ConstructionResult(output, hypotheses, conclusions)
