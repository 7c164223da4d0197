import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product

from core.conf import setting
from core.exceptions import DimensionMismatch, FieldMismatch, TensorError
from core.linalg import Matrix, basis_vector, dot, zero_vector

logger = logging.getLogger(__name__)


class StructureTensor:
    """Multiplication table of an n-linear map on a d-dimensional space.

    ``table`` maps 0-based index tuples to coefficient vectors; absent
    tuples stand for the zero vector and zero vectors are never stored.
    """

    __slots__ = ('field', 'dim', 'arity', 'table')

    def __init__(self, field, dim, arity, table=None):
        max_dim = setting('HOMALG_MAX_DIM')
        max_arity = setting('HOMALG_MAX_ARITY')
        if not 1 <= dim <= max_dim:
            raise TensorError(f"Dimension {dim} outside [1, {max_dim}]")
        if not 2 <= arity <= max_arity:
            raise TensorError(f"Arity {arity} outside [2, {max_arity}]")
        stored = {}
        for index, vector in (table or {}).items():
            index = tuple(index)
            if len(index) != arity or any(not 0 <= i < dim for i in index):
                raise TensorError(f"Index tuple {index} does not fit dim {dim}, arity {arity}")
            if len(vector) != dim:
                raise TensorError(f"Coefficient vector for {index} has length {len(vector)}, expected {dim}")
            vector = tuple(field.coerce(a) for a in vector)
            if any(vector):
                stored[index] = vector
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'dim', dim)
        object.__setattr__(self, 'arity', arity)
        object.__setattr__(self, 'table', stored)

    def __setattr__(self, name, value):
        raise AttributeError("StructureTensor is immutable")

    @classmethod
    def zero(cls, field, dim, arity):
        return cls(field, dim, arity)

    @classmethod
    def from_function(cls, field, dim, arity, function):
        """Tabulate ``function(index)`` on every basis tuple"""
        return cls(field, dim, arity, {index: function(index) for index in product(range(dim), repeat=arity)})

    def tuples(self):
        return product(range(self.dim), repeat=self.arity)

    def get(self, index):
        return self.table.get(tuple(index)) or zero_vector(self.field, self.dim)

    def items(self):
        return sorted(self.table.items())

    def is_zero(self):
        return not self.table

    def __eq__(self, other):
        return (isinstance(other, StructureTensor) and self.field == other.field and self.dim == other.dim
                and self.arity == other.arity and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.dim, self.arity, tuple(self.items())))

    def __repr__(self):
        return f"StructureTensor({self.field}, dim={self.dim}, arity={self.arity}, entries={len(self.table)})"

    def evaluate(self, args):
        """Multilinear extension of the table, without argument validation"""
        field = self.field
        zero = field.zero
        supports = []
        size = 1
        for vector in args:
            support = [(i, a) for i, a in enumerate(vector) if a]
            if not support:
                return zero_vector(field, self.dim)
            supports.append(support)
            size *= len(support)
        acc = [zero] * self.dim
        table = self.table
        if size <= len(table):
            for combo in product(*supports):
                vector = table.get(tuple(i for i, _ in combo))
                if vector is None:
                    continue
                c = combo[0][1]
                for _, a in combo[1:]:
                    c *= a
                for k, b in enumerate(vector):
                    if b:
                        acc[k] += c * b
        else:
            for index, vector in table.items():
                c = None
                for slot, i in enumerate(index):
                    a = args[slot][i]
                    if not a:
                        break
                    c = a if c is None else c * a
                else:
                    for k, b in enumerate(vector):
                        if b:
                            acc[k] += c * b
        return tuple(acc)

    def compose(self, matrix):
        """Tensor of matrix∘⟨…⟩"""
        return StructureTensor(self.field, self.dim, self.arity,
                               {index: matrix.apply(vector) for index, vector in self.table.items()})


class OperatorKind(str, Enum):
    ROTA_BAXTER = 'rota-baxter'
    DERIVATION = 'derivation'
    ALPHA_K = 'alpha-k'


@dataclass(frozen=True, eq=False)
class HomAlgebra:
    tensor: StructureTensor
    twist: Matrix
    name: str | None = None

    def __post_init__(self):
        if self.twist.field != self.tensor.field:
            raise FieldMismatch(f"Twist over {self.twist.field}, tensor over {self.tensor.field}")
        if self.twist.shape != (self.tensor.dim, self.tensor.dim):
            raise DimensionMismatch(f"Twist of shape {self.twist.shape} for dimension {self.tensor.dim}")

    @classmethod
    def untwisted(cls, tensor, name=None):
        return cls(tensor, Matrix.identity(tensor.field, tensor.dim), name)

    @property
    def field(self):
        return self.tensor.field

    @property
    def dim(self):
        return self.tensor.dim

    @property
    def arity(self):
        return self.tensor.arity

    def basis(self):
        return [basis_vector(self.field, self.dim, i) for i in range(self.dim)]

    def zero(self):
        return zero_vector(self.field, self.dim)

    def bracket(self, *args):
        from .operations import eval_bracket
        return eval_bracket(self, list(args))

    def with_tensor(self, tensor, name=None):
        return HomAlgebra(tensor, self.twist, name)

    def with_twist(self, twist, name=None):
        return HomAlgebra(self.tensor, twist, name or self.name)

    def renamed(self, name):
        return HomAlgebra(self.tensor, self.twist, name)

    def over(self, field):
        """Same structure constants read in another field (integers reduce mod p)"""
        tensor = StructureTensor(
            field, self.dim, self.arity,
            {index: tuple(field.coerce(a) for a in vector) for index, vector in self.tensor.table.items()},
        )
        return HomAlgebra(tensor, matrix_over(self.twist, field), self.name)

    def __repr__(self):
        label = self.name or 'unnamed'
        return f"HomAlgebra({label}, {self.field}, dim={self.dim}, arity={self.arity})"


def matrix_over(matrix, field):
    return Matrix(field, [[field.coerce(a) for a in row] for row in matrix.rows], matrix.ncols)


@dataclass(frozen=True)
class LinearFunctional:
    covector: tuple
    field: object
    name: str | None = None

    @classmethod
    def of(cls, field, entries, name=None):
        return cls(tuple(field.coerce(a) for a in entries), field, name)

    @classmethod
    def dual_basis(cls, field, dim, index, name=None):
        return cls(basis_vector(field, dim, index), field, name)

    @classmethod
    def zero(cls, field, dim):
        return cls(zero_vector(field, dim), field)

    @property
    def dim(self):
        return len(self.covector)

    def __call__(self, vector):
        if len(vector) != self.dim:
            raise DimensionMismatch(f"Functional of length {self.dim} applied to vector of length {len(vector)}")
        return dot(self.covector, vector) if self.covector else self.field.zero

    def compose(self, matrix):
        """The functional x ↦ f(m x)"""
        return LinearFunctional(matrix.transpose().apply(self.covector), self.field)

    def is_zero(self):
        return not any(self.covector)

    def over(self, field):
        return LinearFunctional(tuple(field.coerce(a) for a in self.covector), field, self.name)


@dataclass(frozen=True)
class WeightedOperator:
    matrix: Matrix
    weight: object
    kind: OperatorKind = OperatorKind.ROTA_BAXTER
    k: int = 0
    name: str | None = None

    def __post_init__(self):
        if not self.matrix.is_square:
            raise DimensionMismatch(f"Operator matrix of shape {self.matrix.shape} is not square")
        object.__setattr__(self, 'weight', self.matrix.field.coerce(self.weight))
        if self.k < 0:
            raise TensorError(f"Negative twist power {self.k}")

    @classmethod
    def rota_baxter(cls, matrix, weight=0, name=None):
        return cls(matrix, weight, OperatorKind.ROTA_BAXTER, 0, name)

    @classmethod
    def derivation(cls, matrix, weight=0, name=None):
        return cls(matrix, weight, OperatorKind.DERIVATION, 0, name)

    @classmethod
    def alpha_k(cls, matrix, k, name=None):
        return cls(matrix, 0, OperatorKind.ALPHA_K, k, name)

    @property
    def field(self):
        return self.matrix.field

    @property
    def dim(self):
        return self.matrix.nrows

    def retagged(self, matrix=None, kind=None, name=None):
        return WeightedOperator(matrix or self.matrix, self.weight, kind or self.kind, self.k, name)

    def over(self, field):
        return WeightedOperator(matrix_over(self.matrix, field), field.coerce(self.weight), self.kind, self.k, self.name)
