"""Exhaustive checkers for the defining identities of Hom-algebras.

Every checker evaluates both sides of its identity on all basis tuples
(multilinearity makes that sufficient) and returns an AxiomReport with
the lexicographically first counterexamples. Tuples in reports are 1-based.
"""
import logging
from enum import Enum
from itertools import product

from algebras.operations import determinant_product, is_skew_symmetric, subset_sum
from algebras.structures import OperatorKind
from core.exceptions import DimensionMismatch, TensorError, UnknownVariant
from core.linalg import Matrix, vec_add, vec_scale, vec_sub, vec_sum, zero_vector

from .reports import ReportBuilder, merge_reports

logger = logging.getLogger(__name__)

IDENTITIES = {
    'multiplicative': "α⟨x_1,…,x_n⟩ = ⟨αx_1,…,αx_n⟩",
    'endomorphism': "m⟨x_1,…,x_n⟩ = ⟨mx_1,…,mx_n⟩",
    'hom-nambu': "[αy_2,…,αy_n,[x_1,…,x_n]] = Σ_i [αx_1,…,[x_i,y_2,…,y_n],…,αx_n]",
    'hom-associative': "α(x)·(y·z) = (x·y)·α(z)",
    'commutative': "x·y = y·x",
    'hom-prelie': "α(x)∗(y∗z) − (x∗y)∗α(z) = α(y)∗(x∗z) − (y∗x)∗α(z)",
    'hom-jacobi': "[αx,[y,z]] + [αy,[z,x]] + [αz,[x,y]] = 0",
    'hom-lie': "skew-symmetry and [αx,[y,z]] + [αy,[z,x]] + [αz,[x,y]] = 0",
    'hom-lie-triple': "[x,y,y] = 0, triple sum = 0, [[x,y,z],αu,αv] = [[x,u,v],αy,αz] + [αx,[y,u,v],αz] + [αx,αy,[z,u,v]]",
    'centroid': "m(x·y) = m(x)·y = x·m(y)",
    'involution': "w(x·y) = w(x)·w(y), w² = id",
    'alpha-k-derivation': "D(x·y) = D(x)·α^k(y) + α^k(x)·D(y), Dα = αD",
    'derivation-weight': "d⟨x_1,…,x_n⟩ = Σ_{I≠∅} λ^{|I|−1}⟨…⟩ with d on I and α elsewhere, dα = αd",
    'rota-baxter': "⟨Px_1,…,Px_n⟩ = P(Σ_{I≠∅} λ^{|I|−1}⟨…⟩) with identity on I and P elsewhere",
    'functional-annihilates-bracket': "f([x,y]) = 0",
    'functional-twist-compatible': "f(α(x))f(y) = f(α(y))f(x)",
    'functional-derivation-balance': "f(D(x)·y) = f(x·D(y))",
    'functional-double-balance': "f(P(x)∗y − y∗P(x)) = f(P(y)∗x − x∗P(y))",
}

NAMBU_FORMS = {
    'inner-last': "[αy_2,αy_3,[x_1,x_2,x_3]] = [[x_1,y_2,y_3],αx_2,αx_3] + [αx_1,[x_2,y_2,y_3],αx_3] + [αx_1,αx_2,[x_3,y_2,y_3]]",
    'outer-cyclic': "[[x_1,x_2,x_3],αy_2,αy_3] = [[x_1,y_2,y_3],αx_2,αx_3] + [[x_2,y_2,y_3],αx_3,αx_1] + [[x_3,y_2,y_3],αx_1,αx_2]",
    'outer-first': "[[x_1,x_2,x_3],αy_2,αy_3] = [[x_1,y_2,y_3],αx_2,αx_3] + [αx_1,[x_2,y_2,y_3],αx_3] + [αx_1,αx_2,[x_3,y_2,y_3]]",
}


class NambuForm(str, Enum):
    INNER_LAST = 'inner-last'
    OUTER_CYCLIC = 'outer-cyclic'
    OUTER_FIRST = 'outer-first'


class TripleConvention(str, Enum):
    VERBATIM = 'verbatim'
    CYCLIC = 'cyclic'


class KernelVariant(str, Enum):
    LIE = 'lie'
    PRELIE = 'prelie'
    CENTROID_ASSOC = 'centroid-assoc'
    DETERMINANT = 'determinant'
    SQUARE_KERNEL = 'square-kernel'
    SQUARE_IMAGE = 'square-image'


def _require_arity(algebra, arity, axiom):
    if algebra.arity != arity:
        raise TensorError(f"{axiom} needs arity {arity}, algebra has arity {algebra.arity}")


def _require_square(algebra, matrix, what='map'):
    if matrix.shape != (algebra.dim, algebra.dim):
        raise DimensionMismatch(f"{what} of shape {matrix.shape} for dimension {algebra.dim}")


def _builder(algebra, axiom, limit, stop_at_first, identity=None):
    return ReportBuilder(axiom, identity or IDENTITIES[axiom], algebra.field, limit, stop_at_first)


def _tuples(dim, length, order=None):
    return order if order is not None else product(range(dim), repeat=length)


def check_endomorphism(algebra, matrix, axiom='endomorphism', limit=None, stop_at_first=False):
    _require_square(algebra, matrix)
    tensor = algebra.tensor
    images = matrix.columns()
    builder = _builder(algebra, axiom, limit, stop_at_first)
    for index in tensor.tuples():
        lhs = matrix.apply(tensor.get(index))
        rhs = tensor.evaluate([images[i] for i in index])
        builder.compare(index, lhs, rhs)
        if builder.done:
            break
    return builder.build()


def check_multiplicative(algebra, limit=None, stop_at_first=False):
    return check_endomorphism(algebra, algebra.twist, 'multiplicative', limit, stop_at_first)


def check_hom_nambu(algebra, limit=None, stop_at_first=False):
    """Twisted fundamental identity on all d^{2n−1} tuples (y_2,…,y_n, x_1,…,x_n)"""
    n = algebra.arity
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    builder = _builder(algebra, 'hom-nambu', limit, stop_at_first)
    for index in product(range(algebra.dim), repeat=2 * n - 1):
        ys, xs = index[:n - 1], index[n - 1:]
        lhs = tensor.evaluate([alpha[y] for y in ys] + [tensor.get(xs)])
        terms = []
        for i in range(n):
            args = [alpha[x] for x in xs]
            args[i] = tensor.get((xs[i],) + ys)
            terms.append(tensor.evaluate(args))
        builder.compare(index, lhs, vec_sum(algebra.field, algebra.dim, terms))
        if builder.done:
            break
    return builder.build()


def check_nambu_form(algebra, form, limit=None, stop_at_first=False):
    """One of the three written ternary forms, on tuples (y_2, y_3, x_1, x_2, x_3)"""
    _require_arity(algebra, 3, 'nambu-form')
    try:
        form = NambuForm(form)
    except ValueError as exc:
        raise UnknownVariant(f"Unknown Nambu form {form!r}") from exc
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    field, dim = algebra.field, algebra.dim
    builder = _builder(algebra, 'nambu-form', limit, stop_at_first, NAMBU_FORMS[form.value])
    ev = tensor.evaluate
    for index in product(range(dim), repeat=5):
        y2, y3, x1, x2, x3 = index
        inner = [tensor.get((x, y2, y3)) for x in (x1, x2, x3)]
        if form is NambuForm.INNER_LAST:
            lhs = ev([alpha[y2], alpha[y3], tensor.get((x1, x2, x3))])
            terms = [ev([inner[0], alpha[x2], alpha[x3]]), ev([alpha[x1], inner[1], alpha[x3]]),
                     ev([alpha[x1], alpha[x2], inner[2]])]
        elif form is NambuForm.OUTER_CYCLIC:
            lhs = ev([tensor.get((x1, x2, x3)), alpha[y2], alpha[y3]])
            terms = [ev([inner[0], alpha[x2], alpha[x3]]), ev([inner[1], alpha[x3], alpha[x1]]),
                     ev([inner[2], alpha[x1], alpha[x2]])]
        else:
            lhs = ev([tensor.get((x1, x2, x3)), alpha[y2], alpha[y3]])
            terms = [ev([inner[0], alpha[x2], alpha[x3]]), ev([alpha[x1], inner[1], alpha[x3]]),
                     ev([alpha[x1], alpha[x2], inner[2]])]
        builder.compare(index, lhs, vec_sum(field, dim, terms), form.value)
        if builder.done:
            break
    return builder.build()


def check_hom_associative(algebra, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'hom-associative')
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    builder = _builder(algebra, 'hom-associative', limit, stop_at_first)
    for index in product(range(algebra.dim), repeat=3):
        x, y, z = index
        lhs = tensor.evaluate([alpha[x], tensor.get((y, z))])
        rhs = tensor.evaluate([tensor.get((x, y)), alpha[z]])
        builder.compare(index, lhs, rhs)
        if builder.done:
            break
    return builder.build()


def check_commutative(algebra, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'commutative')
    tensor = algebra.tensor
    builder = _builder(algebra, 'commutative', limit, stop_at_first)
    for index in product(range(algebra.dim), repeat=2):
        x, y = index
        builder.compare(index, tensor.get((x, y)), tensor.get((y, x)))
        if builder.done:
            break
    return builder.build()


def check_hom_prelie(algebra, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'hom-prelie')
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    builder = _builder(algebra, 'hom-prelie', limit, stop_at_first)

    def associator(a, b, c):
        return vec_sub(tensor.evaluate([alpha[a], tensor.get((b, c))]),
                       tensor.evaluate([tensor.get((a, b)), alpha[c]]))

    for index in product(range(algebra.dim), repeat=3):
        x, y, z = index
        builder.compare(index, associator(x, y, z), associator(y, x, z))
        if builder.done:
            break
    return builder.build()


def check_hom_jacobi(algebra, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'hom-jacobi')
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    zero = algebra.zero()
    builder = _builder(algebra, 'hom-jacobi', limit, stop_at_first)
    for index in product(range(algebra.dim), repeat=3):
        x, y, z = index
        total = vec_sum(algebra.field, algebra.dim, [
            tensor.evaluate([alpha[x], tensor.get((y, z))]),
            tensor.evaluate([alpha[y], tensor.get((z, x))]),
            tensor.evaluate([alpha[z], tensor.get((x, y))]),
        ])
        builder.compare(index, total, zero)
        if builder.done:
            break
    return builder.build()


def check_hom_lie(algebra, limit=None, stop_at_first=False):
    """Skew-symmetry plus the cyclic Hom-Jacobi identity"""
    _require_arity(algebra, 2, 'hom-lie')
    skew = is_skew_symmetric(algebra.tensor, limit, stop_at_first)
    if stop_at_first and not skew.passed:
        return merge_reports('hom-lie', IDENTITIES['hom-lie'], [skew], limit)
    jacobi = check_hom_jacobi(algebra, limit, stop_at_first)
    return merge_reports('hom-lie', IDENTITIES['hom-lie'], [skew, jacobi], limit)


def check_hom_lie_triple(algebra, convention=TripleConvention.VERBATIM, limit=None, stop_at_first=False):
    """Hom-Lie triple system axioms.

    With the verbatim convention the sum condition reads
    [x,y,z]+[y,x,z]+[z,x,y] = 0; the cyclic convention uses
    [x,y,z]+[y,z,x]+[z,x,y] = 0.
    """
    _require_arity(algebra, 3, 'hom-lie-triple')
    convention = TripleConvention(convention)
    tensor = algebra.tensor
    alpha = algebra.twist.columns()
    field, dim = algebra.field, algebra.dim
    zero = algebra.zero()
    builder = _builder(algebra, 'hom-lie-triple', limit, stop_at_first)
    for x, y in product(range(dim), repeat=2):
        builder.compare((x, y, y), tensor.get((x, y, y)), zero, 'repeated-last')
        if builder.done:
            return builder.build()
    for index in product(range(dim), repeat=3):
        x, y, z = index
        if convention is TripleConvention.VERBATIM:
            others = [(y, x, z), (z, x, y)]
        else:
            others = [(y, z, x), (z, x, y)]
        total = vec_sum(field, dim, [tensor.get(index)] + [tensor.get(t) for t in others])
        builder.compare(index, total, zero, f'sum-{convention.value}')
        if builder.done:
            return builder.build()
    ev = tensor.evaluate
    for index in product(range(dim), repeat=5):
        x, y, z, u, v = index
        lhs = ev([tensor.get((x, y, z)), alpha[u], alpha[v]])
        rhs = vec_sum(field, dim, [
            ev([tensor.get((x, u, v)), alpha[y], alpha[z]]),
            ev([alpha[x], tensor.get((y, u, v)), alpha[z]]),
            ev([alpha[x], alpha[y], tensor.get((z, u, v))]),
        ])
        builder.compare(index, lhs, rhs, 'triple-derivation')
        if builder.done:
            break
    return builder.build()


def check_centroid(algebra, matrix, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'centroid')
    _require_square(algebra, matrix)
    tensor = algebra.tensor
    images = matrix.columns()
    basis = algebra.basis()
    builder = _builder(algebra, 'centroid', limit, stop_at_first)
    for index in product(range(algebra.dim), repeat=2):
        x, y = index
        lhs = matrix.apply(tensor.get(index))
        builder.compare(index, lhs, tensor.evaluate([images[x], basis[y]]), 'left')
        builder.compare(index, lhs, tensor.evaluate([basis[x], images[y]]), 'right')
        if builder.done:
            break
    return builder.build()


def check_involution(algebra, matrix, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'involution')
    _require_square(algebra, matrix)
    basis = algebra.basis()
    builder = _builder(algebra, 'involution', limit, stop_at_first)
    square = matrix @ matrix
    for j in range(algebra.dim):
        builder.compare((j,), square.column(j), basis[j], 'square')
    if builder.done:
        return builder.build()
    multiplicative = check_endomorphism(algebra, matrix, 'multiplicative', limit, stop_at_first)
    return merge_reports('involution', IDENTITIES['involution'], [builder.build(), multiplicative], limit)


def commutation_report(a, b, name, anti=False, limit=None):
    """Columns j where ab e_j ≠ ba e_j (or ≠ −ba e_j when anti)"""
    if a.shape != b.shape or not a.is_square:
        raise DimensionMismatch(f"Cannot compare products of {a.shape} and {b.shape}")
    identity = f"{name}: " + ("ab + ba = 0" if anti else "ab = ba")
    builder = ReportBuilder(name, identity, a.field, limit)
    ab, ba = a @ b, b @ a
    if anti:
        ba = -ba
    for j in range(a.ncols):
        builder.compare((j,), ab.column(j), ba.column(j))
    return builder.build()


def check_alpha_k_derivation(algebra, matrix, k=0, require_commuting=True, limit=None, stop_at_first=False):
    _require_arity(algebra, 2, 'alpha-k-derivation')
    _require_square(algebra, matrix)
    tensor = algebra.tensor
    twisted = algebra.twist.power(k).columns()
    images = matrix.columns()
    builder = _builder(algebra, 'alpha-k-derivation', limit, stop_at_first)
    advisories = []
    if require_commuting:
        _compare_commutation(builder, matrix, algebra.twist)
    elif matrix @ algebra.twist != algebra.twist @ matrix:
        advisories.append("D does not commute with the twist")
    for index in product(range(algebra.dim), repeat=2):
        x, y = index
        lhs = matrix.apply(tensor.get(index))
        rhs = vec_add(tensor.evaluate([images[x], twisted[y]]), tensor.evaluate([twisted[x], images[y]]))
        builder.compare(index, lhs, rhs, 'leibniz')
        if builder.done:
            break
    return builder.build(advisories)


def check_derivation_weight(algebra, operator, require_commuting=True, limit=None, stop_at_first=False, order=None):
    """Weighted Leibniz rule for any arity, by the subset-sum expansion"""
    if operator.kind is not OperatorKind.DERIVATION:
        raise UnknownVariant(f"Operator kind {operator.kind.value} is not a derivation")
    _require_square(algebra, operator.matrix, 'derivation')
    matrix = operator.matrix
    tensor = algebra.tensor
    images = matrix.columns()
    alpha = algebra.twist.columns()
    builder = _builder(algebra, 'derivation-weight', limit, stop_at_first)
    if require_commuting:
        _compare_commutation(builder, matrix, algebra.twist)
        if builder.done:
            return builder.build()
    for index in _tuples(algebra.dim, algebra.arity, order):
        lhs = matrix.apply(tensor.get(index))
        rhs = subset_sum(tensor, [images[i] for i in index], [alpha[i] for i in index], operator.weight)
        builder.compare(index, lhs, rhs, 'weighted-leibniz')
        if builder.done:
            break
    return builder.build()


def check_rota_baxter(algebra, operator, limit=None, stop_at_first=False, order=None):
    """Weighted Rota-Baxter identity for any arity, by the subset-sum expansion"""
    _require_square(algebra, operator.matrix, 'operator')
    matrix = operator.matrix
    tensor = algebra.tensor
    images = matrix.columns()
    basis = algebra.basis()
    builder = _builder(algebra, 'rota-baxter', limit, stop_at_first)
    for index in _tuples(algebra.dim, algebra.arity, order):
        lhs = tensor.evaluate([images[i] for i in index])
        rhs = matrix.apply(subset_sum(tensor, [basis[i] for i in index], [images[i] for i in index],
                                      operator.weight))
        builder.compare(index, lhs, rhs)
        if builder.done:
            break
    return builder.build()


def _compare_commutation(builder, a, b):
    ab, ba = a @ b, b @ a
    for j in range(a.ncols):
        builder.compare((j,), ab.column(j), ba.column(j), 'commutes')


def check_rota_baxter_expanded(algebra, operator, limit=None):
    """Written-out binary and ternary Rota-Baxter identities"""
    _require_square(algebra, operator.matrix, 'operator')
    P = operator.matrix
    lam = operator.weight
    tensor = algebra.tensor
    ev = tensor.evaluate
    field, dim = algebra.field, algebra.dim
    basis = algebra.basis()
    images = P.columns()
    lam2 = lam * lam
    builder = _builder(algebra, 'rota-baxter', limit, False)
    if algebra.arity == 2:
        for index in product(range(dim), repeat=2):
            x, y = index
            px, py = images[x], images[y]
            inner = vec_sum(field, dim, [ev([px, basis[y]]), ev([basis[x], py]),
                                         vec_scale(lam, tensor.get(index))])
            builder.compare(index, ev([px, py]), P.apply(inner))
    elif algebra.arity == 3:
        for index in product(range(dim), repeat=3):
            x, y, z = index
            px, py, pz = images[x], images[y], images[z]
            ex, ey, ez = basis[x], basis[y], basis[z]
            inner = vec_sum(field, dim, [
                ev([px, py, ez]), ev([px, ey, pz]), ev([ex, py, pz]),
                vec_scale(lam, ev([px, ey, ez])), vec_scale(lam, ev([ex, py, ez])), vec_scale(lam, ev([ex, ey, pz])),
                vec_scale(lam2, tensor.get(index)),
            ])
            builder.compare(index, ev([px, py, pz]), P.apply(inner))
    else:
        raise TensorError(f"No written-out Rota-Baxter identity for arity {algebra.arity}")
    return builder.build()


def check_derivation_weight_expanded(algebra, operator, limit=None):
    """Written-out binary and ternary weighted Leibniz rules, with dα = αd"""
    _require_square(algebra, operator.matrix, 'derivation')
    d = operator.matrix
    lam = operator.weight
    tensor = algebra.tensor
    ev = tensor.evaluate
    field, dim = algebra.field, algebra.dim
    images = d.columns()
    alpha = algebra.twist.columns()
    lam2 = lam * lam
    builder = _builder(algebra, 'derivation-weight', limit, False)
    _compare_commutation(builder, d, algebra.twist)
    if algebra.arity == 2:
        for index in product(range(dim), repeat=2):
            x, y = index
            rhs = vec_sum(field, dim, [ev([images[x], alpha[y]]), ev([alpha[x], images[y]]),
                                       vec_scale(lam, ev([images[x], images[y]]))])
            builder.compare(index, d.apply(tensor.get(index)), rhs, 'weighted-leibniz')
    elif algebra.arity == 3:
        for index in product(range(dim), repeat=3):
            x, y, z = index
            dx, dy, dz = images[x], images[y], images[z]
            ax, ay, az = alpha[x], alpha[y], alpha[z]
            rhs = vec_sum(field, dim, [
                ev([dx, ay, az]), ev([ax, dy, az]), ev([ax, ay, dz]),
                vec_scale(lam, ev([dx, dy, az])), vec_scale(lam, ev([dx, ay, dz])), vec_scale(lam, ev([ax, dy, dz])),
                vec_scale(lam2, ev([dx, dy, dz])),
            ])
            builder.compare(index, d.apply(tensor.get(index)), rhs, 'weighted-leibniz')
    else:
        raise TensorError(f"No written-out weighted Leibniz rule for arity {algebra.arity}")
    return builder.build()


def _scalar_report(algebra, axiom, pairs, limit):
    builder = _builder(algebra, axiom, limit, False)
    for index, lhs, rhs in pairs:
        builder.compare(index, (lhs,), (rhs,))
    return builder.build()


def check_functional_annihilates(algebra, functional, limit=None):
    """f vanishes on every bracket of basis elements"""
    _require_arity(algebra, 2, 'functional-annihilates-bracket')
    zero = algebra.field.zero
    pairs = ((index, functional(algebra.tensor.get(index)), zero)
             for index in product(range(algebra.dim), repeat=2))
    return _scalar_report(algebra, 'functional-annihilates-bracket', pairs, limit)


def check_functional_twist_compatible(algebra, functional, limit=None):
    f_alpha = functional.compose(algebra.twist)
    pairs = ((index, f_alpha.covector[index[0]] * functional.covector[index[1]],
              f_alpha.covector[index[1]] * functional.covector[index[0]])
             for index in product(range(algebra.dim), repeat=2))
    return _scalar_report(algebra, 'functional-twist-compatible', pairs, limit)


def check_functional_derivation_balance(algebra, functional, matrix, limit=None):
    _require_arity(algebra, 2, 'functional-derivation-balance')
    tensor = algebra.tensor
    basis = algebra.basis()
    images = matrix.columns()
    pairs = ((index, functional(tensor.evaluate([images[index[0]], basis[index[1]]])),
              functional(tensor.evaluate([basis[index[0]], images[index[1]]])))
             for index in product(range(algebra.dim), repeat=2))
    return _scalar_report(algebra, 'functional-derivation-balance', pairs, limit)


def check_functional_double_balance(algebra, functional, matrix, limit=None):
    _require_arity(algebra, 2, 'functional-double-balance')
    tensor = algebra.tensor
    basis = algebra.basis()
    images = matrix.columns()

    def doubled(a, b):
        return vec_sub(tensor.evaluate([images[a], basis[b]]), tensor.evaluate([basis[b], images[a]]))

    pairs = ((index, functional(doubled(*index)), functional(doubled(index[1], index[0])))
             for index in product(range(algebra.dim), repeat=2))
    return _scalar_report(algebra, 'functional-double-balance', pairs, limit)


KERNEL_IDENTITIES = {
    KernelVariant.LIE: "(P+λ id)(f(x)[Py,Pz] + f(y)[Pz,Px] + f(z)[Px,Py]) = 0",
    KernelVariant.PRELIE: "(P+λ id)(f(x)(Py∗Pz − Pz∗Py) + f(y)(Pz∗Px − Px∗Pz) + f(z)(Px∗Py − Py∗Px)) = 0",
    KernelVariant.CENTROID_ASSOC: "(P+λ id)(f(x)(P(αy)∘Pz − Pz∘P(αy)) + f(y)(P(αz)∘Px − Px∘P(αz)) + f(z)(P(αx)∘Py − Py∘P(αx))) = 0",
    KernelVariant.DETERMINANT: "(P+λ id) det(f(x) f(y) f(z) / DPx DPy DPz / Px Py Pz) = 0",
    KernelVariant.SQUARE_KERNEL: "P²([f(x)Py − f(y)Px, z] + [f(y)Pz − f(z)Py, x] + [f(z)Px − f(x)Pz, y]) = 0",
    KernelVariant.SQUARE_IMAGE: "f(x)(P²y∗P²z − P²z∗P²y) + f(y)(P²z∗P²x − P²x∗P²z) + f(z)(P²x∗P²y − P²y∗P²x) = 0",
}


def check_kernel_condition(algebra, functional, operator, variant, derivation=None, limit=None):
    """Membership of the variant's expression in the kernel it names, over basis triples"""
    try:
        variant = KernelVariant(variant)
    except ValueError as exc:
        raise UnknownVariant(f"Unknown kernel-condition variant {variant!r}") from exc
    _require_arity(algebra, 2, 'kernel-condition')
    _require_square(algebra, operator.matrix, 'operator')
    if functional.dim != algebra.dim:
        raise DimensionMismatch(f"Functional of length {functional.dim} for dimension {algebra.dim}")
    if variant is KernelVariant.DETERMINANT:
        if derivation is None:
            raise UnknownVariant("The determinant variant needs a derivation matrix")
        _require_square(algebra, derivation, 'derivation')

    field, dim = algebra.field, algebra.dim
    tensor = algebra.tensor
    ev = tensor.evaluate
    P = operator.matrix
    f = functional.covector
    basis = algebra.basis()
    p_images = P.columns()
    if variant is KernelVariant.SQUARE_KERNEL:
        kernel = P @ P
    elif variant is KernelVariant.SQUARE_IMAGE:
        kernel = None
    else:
        kernel = P + Matrix.scalar(field, dim, operator.weight)

    def commutator(a, b):
        return vec_sub(ev([a, b]), ev([b, a]))

    if variant is KernelVariant.SQUARE_IMAGE:
        p2_images = (P @ P).columns()
    if variant is KernelVariant.CENTROID_ASSOC:
        pa_images = (P @ algebra.twist).columns()
    if variant is KernelVariant.DETERMINANT:
        dp_images = (derivation @ P).columns()

    def expression(x, y, z):
        if variant is KernelVariant.LIE:
            return vec_sum(field, dim, [
                vec_scale(f[x], ev([p_images[y], p_images[z]])),
                vec_scale(f[y], ev([p_images[z], p_images[x]])),
                vec_scale(f[z], ev([p_images[x], p_images[y]])),
            ])
        if variant is KernelVariant.PRELIE:
            return vec_sum(field, dim, [
                vec_scale(f[x], commutator(p_images[y], p_images[z])),
                vec_scale(f[y], commutator(p_images[z], p_images[x])),
                vec_scale(f[z], commutator(p_images[x], p_images[y])),
            ])
        if variant is KernelVariant.CENTROID_ASSOC:
            return vec_sum(field, dim, [
                vec_scale(f[x], commutator(pa_images[y], p_images[z])),
                vec_scale(f[y], commutator(pa_images[z], p_images[x])),
                vec_scale(f[z], commutator(pa_images[x], p_images[y])),
            ])
        if variant is KernelVariant.DETERMINANT:
            return determinant_product(tensor, [
                [f[x], f[y], f[z]],
                [dp_images[x], dp_images[y], dp_images[z]],
                [p_images[x], p_images[y], p_images[z]],
            ], scalar_rows=(0,))
        if variant is KernelVariant.SQUARE_KERNEL:
            return vec_sum(field, dim, [
                ev([vec_sub(vec_scale(f[x], p_images[y]), vec_scale(f[y], p_images[x])), basis[z]]),
                ev([vec_sub(vec_scale(f[y], p_images[z]), vec_scale(f[z], p_images[y])), basis[x]]),
                ev([vec_sub(vec_scale(f[z], p_images[x]), vec_scale(f[x], p_images[z])), basis[y]]),
            ])
        return vec_sum(field, dim, [
            vec_scale(f[x], commutator(p2_images[y], p2_images[z])),
            vec_scale(f[y], commutator(p2_images[z], p2_images[x])),
            vec_scale(f[z], commutator(p2_images[x], p2_images[y])),
        ])

    builder = ReportBuilder(f'kernel-condition:{variant.value}', KERNEL_IDENTITIES[variant], field, limit)
    zero = zero_vector(field, dim)
    for index in product(range(dim), repeat=3):
        value = expression(*index)
        builder.compare(index, kernel.apply(value) if kernel is not None else value, zero)
    return builder.build()
