"""Ternary brackets built from a binary bracket and a linear functional."""
import logging

from algebras.operations import algebra_equal
from algebras.structures import HomAlgebra, StructureTensor
from axioms.checkers import (
    KernelVariant, check_functional_annihilates, check_functional_double_balance,
    check_functional_twist_compatible, check_hom_lie, check_hom_prelie, check_kernel_condition,
    check_multiplicative, check_rota_baxter, commutation_report,
)
from core.exceptions import ConstructionMismatch, NonzeroWeight, TensorError
from core.linalg import vec_scale, vec_sub, vec_sum

from .results import (
    ConstructionResult, agreement_report, derived_tensor, identity_report, log_conclusions,
    nambu_lie_reports, require, should_verify,
)

logger = logging.getLogger(__name__)


def functional_tensor(field, dim, covector, bracket_of):
    """f(x)[y,z] + f(y)[z,x] + f(z)[x,y] on basis triples, with [e_j,e_k] = bracket_of(j, k)"""
    def value(index):
        x, y, z = index
        return vec_sum(field, dim, [
            vec_scale(covector[x], bracket_of(y, z)),
            vec_scale(covector[y], bracket_of(z, x)),
            vec_scale(covector[z], bracket_of(x, y)),
        ])
    return StructureTensor.from_function(field, dim, 3, value)


def _admissibility(algebra, functional):
    return [check_functional_annihilates(algebra, functional), check_functional_twist_compatible(algebra, functional)]


def bracket_from_functional(algebra, functional, verify=None, name=None):
    if algebra.arity != 2:
        raise TensorError("The functional bracket needs a binary algebra")
    hypotheses = require([check_hom_lie(algebra)] + _admissibility(algebra, functional))
    tensor = functional_tensor(algebra.field, algebra.dim, functional.covector, lambda j, k: algebra.tensor.get((j, k)))
    output = HomAlgebra(tensor, algebra.twist, name or f"{algebra.name}.functional")
    logger.info(f"Built functional 3-bracket on {algebra.name} ({len(tensor.table)} nonzero entries)")
    conclusions = ()
    if should_verify(verify):
        conclusions = log_conclusions('bracket-from-functional', nambu_lie_reports(output))
    return ConstructionResult(output, hypotheses, conclusions)


def bracket_from_functional_twisted(algebra, alpha, functional, verify=None, name=None):
    """Functional bracket of the Yau twist α∘[,], checked against the direct formula"""
    from .twists import yau_twist

    if algebra.arity != 2:
        raise TensorError("The functional bracket needs a binary algebra")
    untwisted = require([identity_report(algebra.twist, 'untwisted'), check_hom_lie(algebra)])
    twisted = yau_twist(algebra, alpha, verify=False).algebra
    result = bracket_from_functional(twisted, functional, verify=verify, name=name or f"{algebra.name}.functional-twisted")
    direct = functional_tensor(algebra.field, algebra.dim, functional.covector,
                               lambda j, k: alpha.apply(algebra.tensor.get((j, k))))
    if not algebra_equal(result.algebra, HomAlgebra(direct, alpha)):
        raise ConstructionMismatch("Composed and direct twisted functional brackets differ")
    hypotheses = untwisted + (check_multiplicative(algebra.with_twist(alpha)),) + result.hypothesis_reports
    return ConstructionResult(result.algebra, hypotheses, result.conclusion_reports)


def bracket_fP(algebra, functional, operator, verify=None, name=None):
    """Closed form of the derived bracket of the functional 3-bracket"""
    if algebra.arity != 2:
        raise TensorError("The functional bracket needs a binary algebra")
    hypotheses = require(
        [check_hom_lie(algebra)] + _admissibility(algebra, functional)
        + [check_rota_baxter(algebra, operator),
           check_kernel_condition(algebra, functional, operator, KernelVariant.LIE)]
    )
    field, dim = algebra.field, algebra.dim
    ev = algebra.tensor.evaluate
    lam = operator.weight
    lam2 = lam * lam
    f = functional.covector
    fp = functional.compose(operator.matrix).covector
    basis = algebra.basis()
    images = operator.matrix.columns()

    def block(a, b):
        pa, pb, ea, eb = images[a], images[b], basis[a], basis[b]
        hatted = vec_sum(field, dim, [ev([pa, eb]), ev([ea, pb]), vec_scale(lam, ev([ea, eb]))])
        plain = vec_sum(field, dim, [ev([pa, pb]), vec_scale(lam, ev([pa, eb])), vec_scale(lam, ev([ea, pb])),
                                     vec_scale(lam2, ev([ea, eb]))])
        return hatted, plain

    def value(index):
        x, y, z = index
        terms = []
        for first, (a, b) in zip((x, y, z), ((y, z), (z, x), (x, y))):
            hatted, plain = block(a, b)
            terms.append(vec_scale(fp[first], hatted))
            terms.append(vec_scale(f[first], plain))
        return vec_sum(field, dim, terms)

    tensor = StructureTensor.from_function(field, dim, 3, value)
    output = HomAlgebra(tensor, algebra.twist, name or f"{algebra.name}.functional-rb")
    conclusions = ()
    if should_verify(verify):
        composed = derived_tensor(
            functional_tensor(field, dim, f, lambda j, k: algebra.tensor.get((j, k))), operator)
        conclusions = log_conclusions('bracket-fP', [
            agreement_report('agrees-with-derived-functional-bracket',
                             "closed form = derived bracket of the functional 3-bracket", tensor, composed),
            *nambu_lie_reports(output),
            check_rota_baxter(output, operator),
        ])
    return ConstructionResult(output, hypotheses, conclusions)


def bracket_from_rb_double(algebra, functional, operator, verify=None, name=None):
    """Functional 3-bracket over the sub-adjacent bracket of x·y = P(x)∗y − y∗P(x)"""
    if algebra.arity != 2:
        raise TensorError("The functional bracket needs a binary algebra")
    if operator.weight:
        raise NonzeroWeight(f"Operator weight {operator.weight} must be zero")
    hypotheses = require([
        check_hom_prelie(algebra),
        check_rota_baxter(algebra, operator),
        commutation_report(algebra.twist, operator.matrix, 'twist-commutes-with-operator'),
        check_functional_double_balance(algebra, functional, operator.matrix),
        check_functional_twist_compatible(algebra, functional),
    ])
    field, dim = algebra.field, algebra.dim
    ev = algebra.tensor.evaluate
    f = functional.covector
    basis = algebra.basis()
    images = operator.matrix.columns()

    def commutator(u, v):
        return vec_sub(ev([u, v]), ev([v, u]))

    def mixed(a, b):
        # f(a)P(b) − f(b)P(a)
        return vec_sub(vec_scale(f[a], images[b]), vec_scale(f[b], images[a]))

    def value(index):
        x, y, z = index
        return vec_sum(field, dim, [
            commutator(mixed(x, y), basis[z]),
            commutator(mixed(z, x), basis[y]),
            commutator(mixed(y, z), basis[x]),
        ])

    tensor = StructureTensor.from_function(field, dim, 3, value)
    output = HomAlgebra(tensor, algebra.twist, name or f"{algebra.name}.double-functional")
    square = check_kernel_condition(algebra, functional, operator, KernelVariant.SQUARE_IMAGE)
    conclusions = ()
    if should_verify(verify):
        reports = nambu_lie_reports(output)
        if square.passed:
            reports.append(check_rota_baxter(output, operator))
        conclusions = log_conclusions('bracket-from-rb-double', reports)
    return ConstructionResult(output, hypotheses, conclusions, {'square_condition': square})


bracket_eq23 = bracket_from_rb_double
