"""Yau twists: compose a product with an endomorphism or a centroid element."""
import logging

from algebras.operations import is_skew_symmetric
from algebras.structures import HomAlgebra, StructureTensor
from axioms.checkers import (
    check_centroid, check_endomorphism, check_hom_associative, check_hom_lie, check_multiplicative,
    check_rota_baxter, commutation_report,
)

from .results import ConstructionResult, identity_report, log_conclusions, nambu_lie_reports, require, should_verify

logger = logging.getLogger(__name__)


def _structure_conclusions(source, output):
    """Structure checks the twisted output inherits from a skew source"""
    if not is_skew_symmetric(source.tensor, stop_at_first=True).passed:
        return []
    if source.arity == 2:
        return [check_hom_lie(output)]
    return nambu_lie_reports(output)


def yau_twist(algebra, beta, operator=None, verify=None, name=None):
    """β∘⟨…⟩ with twist β, for an untwisted algebra and an endomorphism β"""
    reports = [identity_report(algebra.twist, 'untwisted'), check_endomorphism(algebra, beta)]
    if operator is not None:
        reports += [check_rota_baxter(algebra, operator), commutation_report(beta, operator.matrix, 'twist-commutes-with-operator')]
    hypotheses = require(reports)
    output = HomAlgebra(algebra.tensor.compose(beta), beta, name or f"{algebra.name}.twisted")
    logger.info(f"Yau twist of {algebra.name} ({algebra.arity}-ary, dim {algebra.dim})")
    conclusions = ()
    if should_verify(verify):
        reports = [check_multiplicative(output)] + _structure_conclusions(algebra, output)
        if operator is not None:
            reports.append(check_rota_baxter(output, operator))
        conclusions = log_conclusions('yau-twist', reports)
    return ConstructionResult(output, hypotheses, conclusions)


def centroid_twist(algebra, gamma, operator, verify=None, name=None):
    """Hom-associative product γ(x)·y with twist γ, for γ in the centroid"""
    hypotheses = require([
        identity_report(algebra.twist, 'untwisted'),
        check_hom_associative(algebra),
        check_centroid(algebra, gamma),
        commutation_report(gamma, operator.matrix, 'centroid-commutes-with-operator'),
        check_rota_baxter(algebra, operator),
    ])
    images = gamma.columns()
    basis = algebra.basis()
    ev = algebra.tensor.evaluate
    tensor = StructureTensor.from_function(algebra.field, algebra.dim, 2,
                                           lambda index: ev([images[index[0]], basis[index[1]]]))
    output = HomAlgebra(tensor, gamma, name or f"{algebra.name}.centroid-twisted")
    conclusions = ()
    if should_verify(verify):
        conclusions = log_conclusions('centroid-twist', [check_hom_associative(output), check_rota_baxter(output, operator)])
    return ConstructionResult(output, hypotheses, conclusions)
