from algebras.operations import is_skew_symmetric
from core.exceptions import UnknownVariant

from .checkers import (
    check_commutative, check_hom_associative, check_hom_jacobi, check_hom_lie, check_hom_lie_triple,
    check_hom_nambu, check_hom_prelie, check_multiplicative,
)

# axioms that depend on the algebra alone, by their kebab-case names
STRUCTURE_AXIOMS = {
    'skew-symmetric': lambda algebra, **kw: is_skew_symmetric(algebra.tensor, **kw),
    'multiplicative': check_multiplicative,
    'hom-nambu': check_hom_nambu,
    'hom-associative': check_hom_associative,
    'commutative': check_commutative,
    'hom-prelie': check_hom_prelie,
    'hom-jacobi': check_hom_jacobi,
    'hom-lie': check_hom_lie,
    'hom-lie-triple': check_hom_lie_triple,
}


def check_structure_axiom(algebra, name, limit=None, stop_at_first=False):
    try:
        checker = STRUCTURE_AXIOMS[name]
    except KeyError as exc:
        raise UnknownVariant(f"Unknown axiom {name!r}") from exc
    return checker(algebra, limit=limit, stop_at_first=stop_at_first)
