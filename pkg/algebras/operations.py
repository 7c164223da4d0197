import logging
from itertools import combinations, permutations, product

from sympy.combinatorics import Permutation

from axioms.reports import ReportBuilder
from core.exceptions import DimensionMismatch, FieldMismatch, TensorError
from core.linalg import vec_scale, zero_vector

from .structures import StructureTensor

logger = logging.getLogger(__name__)

SKEW_IDENTITY = "⟨…,x_i,…,x_j,…⟩ = −⟨…,x_j,…,x_i,…⟩, and ⟨…⟩ = 0 on repeated arguments"


def eval_bracket(algebra, args):
    """Evaluate the algebra's n-linear bracket on arbitrary coordinate vectors"""
    if len(args) != algebra.arity:
        raise DimensionMismatch(f"{len(args)} arguments for an arity-{algebra.arity} bracket")
    for vector in args:
        if len(vector) != algebra.dim:
            raise DimensionMismatch(f"Argument of length {len(vector)} in dimension {algebra.dim}")
        for a in vector:
            if not algebra.field.domain.of_type(a):
                raise FieldMismatch(f"Argument entry {a!r} is not an element of {algebra.field}")
    return algebra.tensor.evaluate(args)


def _transposed(index, a, b):
    swapped = list(index)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    return tuple(swapped)


def is_skew_symmetric(tensor, limit=None, stop_at_first=False):
    builder = ReportBuilder('skew-symmetric', SKEW_IDENTITY, tensor.field, limit, stop_at_first)
    zero = zero_vector(tensor.field, tensor.dim)
    minus_one = -tensor.field.one
    for index in tensor.tuples():
        value = tensor.get(index)
        if len(set(index)) < len(index):
            builder.compare(index, value, zero, 'repeated')
        else:
            # one comparison per tuple: the first transposition that fails, if any
            expected = vec_scale(minus_one, value)
            swapped = expected
            for a, b in combinations(range(tensor.arity), 2):
                candidate = tensor.get(_transposed(index, a, b))
                if candidate != expected:
                    swapped = candidate
                    break
            builder.compare(index, swapped, expected, 'transposition')
        if builder.done:
            break
    return builder.build()


def skew_symmetrize(tensor):
    """Extend a tensor given on strictly increasing tuples by permutation signs"""
    for index in tensor.table:
        if any(index[k] >= index[k + 1] for k in range(len(index) - 1)):
            raise TensorError(f"Entry {tuple(i + 1 for i in index)} is not a strictly increasing tuple")
    minus_one = -tensor.field.one
    table = {}
    for index, vector in tensor.table.items():
        for order in permutations(range(tensor.arity)):
            sign = Permutation(list(order)).signature()
            table[tuple(index[k] for k in order)] = vector if sign == 1 else vec_scale(minus_one, vector)
    return StructureTensor(tensor.field, tensor.dim, tensor.arity, table)


def increasing_part(tensor):
    """Restriction of a tensor to strictly increasing tuples (inverse of skew_symmetrize on skew tensors)"""
    return StructureTensor(
        tensor.field, tensor.dim, tensor.arity,
        {index: vector for index, vector in tensor.table.items()
         if all(index[k] < index[k + 1] for k in range(len(index) - 1))},
    )


def algebra_equal(a, b):
    return (a.field == b.field and a.dim == b.dim and a.arity == b.arity
            and a.twist == b.twist and a.tensor.table == b.tensor.table)


def weight_powers(field, weight, count):
    powers = [field.one]
    for _ in range(count):
        powers.append(powers[-1] * weight)
    return powers


def subset_sum(tensor, inner, outer, weight):
    """Σ over nonempty I ⊆ slots of λ^{|I|−1}⟨u_1,…,u_n⟩ with u_i = inner_i on I, outer_i elsewhere"""
    n = tensor.arity
    field = tensor.field
    powers = weight_powers(field, weight, n)
    acc = [field.zero] * tensor.dim
    for mask in product((False, True), repeat=n):
        size = sum(mask)
        if size == 0:
            continue
        coefficient = powers[size - 1]
        if not coefficient:
            continue
        value = tensor.evaluate([inner[i] if mask[i] else outer[i] for i in range(n)])
        for k, b in enumerate(value):
            if b:
                acc[k] += coefficient * b
    return tuple(acc)


def determinant_product(tensor, rows, scalar_rows=()):
    """Expand a 3×3 determinant whose entries are scalars or algebra elements.

    Each of the six signed terms multiplies its scalar entries and takes the
    product of its vector entries in row order, associating to the left.
    """
    field = tensor.field
    acc = [field.zero] * tensor.dim
    for order in permutations(range(3)):
        sign = Permutation(list(order)).signature()
        coefficient = field.one if sign == 1 else -field.one
        vectors = []
        for row, column in enumerate(order):
            entry = rows[row][column]
            if row in scalar_rows:
                coefficient *= entry
            else:
                vectors.append(entry)
        if not coefficient:
            continue
        value = vectors[0]
        for vector in vectors[1:]:
            value = tensor.evaluate([value, vector])
        for k, b in enumerate(value):
            if b:
                acc[k] += coefficient * b
    return tuple(acc)


def probe_order(tensor):
    """All basis tuples, those with stored structure constants first"""
    stored = sorted(tensor.table)
    seen = set(stored)
    return stored + [index for index in tensor.tuples() if index not in seen]
