"""Dense exact matrices and coordinate vectors.

Vectors are tuples of field elements. Matrices keep their rows as tuples
for fast application inside the checkers and hand everything that needs
elimination (inverse, kernel, rank) to sympy's DomainMatrix.
"""
import logging

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .exceptions import DimensionMismatch, FieldMismatch, NotInvertible

logger = logging.getLogger(__name__)


def zero_vector(field, dim):
    return (field.zero,) * dim


def basis_vector(field, dim, index):
    zero, one = field.zero, field.one
    return tuple(one if i == index else zero for i in range(dim))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_sum(field, dim, vectors):
    acc = [field.zero] * dim
    for v in vectors:
        for i, a in enumerate(v):
            if a:
                acc[i] += a
    return tuple(acc)


def is_zero(v):
    return not any(v)


def dot(u, v):
    total = None
    for a, b in zip(u, v):
        total = a * b if total is None else total + a * b
    return total


def _dm_rows(dm):
    return [list(row) for row in dm.to_dense().rep.to_list()]


class Matrix:
    """Immutable matrix over a FieldSpec"""

    __slots__ = ('field', 'rows', 'nrows', 'ncols')

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(field.coerce(a) for a in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise DimensionMismatch("Matrix rows have unequal lengths")
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'nrows', len(rows))
        object.__setattr__(self, 'ncols', ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field, n):
        return cls(field, [basis_vector(field, n, i) for i in range(n)], n)

    @classmethod
    def zeros(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, field, entries):
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def scalar(cls, field, n, c):
        return cls.diagonal(field, [c] * n)

    @classmethod
    def from_columns(cls, field, columns, nrows=None):
        columns = list(columns)
        nrows = len(columns[0]) if columns else (nrows or 0)
        return cls(field, [[column[i] for column in columns] for i in range(nrows)], len(columns))

    @classmethod
    def from_domain_matrix(cls, field, dm):
        return cls(field, _dm_rows(dm), dm.shape[1])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def to_domain_matrix(self):
        return DomainMatrix([list(row) for row in self.rows], self.shape, self.field.domain)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_document()})"

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        _check_same_shape(self, other)
        return Matrix(self.field, [vec_add(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        _check_same_shape(self, other)
        return Matrix(self.field, [vec_sub(a, b) for a, b in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return self.scale(-self.field.one)

    def scale(self, c):
        c = self.field.coerce(c)
        return Matrix(self.field, [vec_scale(c, row) for row in self.rows], self.ncols)

    def apply(self, vector):
        if len(vector) != self.ncols:
            raise DimensionMismatch(f"Vector of length {len(vector)} for a {self.nrows}x{self.ncols} matrix")
        zero = self.field.zero
        out = []
        for row in self.rows:
            acc = zero
            for a, b in zip(row, vector):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(self.field, self.columns(), self.nrows)

    def power(self, k):
        result = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def is_identity(self):
        return self == Matrix.identity(self.field, self.nrows)

    def is_zero(self):
        return not any(any(row) for row in self.rows)

    def residues(self):
        """Row-major residues of an F_p matrix, the enumeration order key"""
        return tuple(self.field.residue(a) for row in self.rows for a in row)

    def to_document(self):
        return [[self.field.format(a) for a in row] for row in self.rows]


def _check_same_shape(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"Fields {a.field} and {b.field} differ")
    if a.shape != b.shape:
        raise DimensionMismatch(f"Shapes {a.shape} and {b.shape} differ")


def mat_mul(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"Fields {a.field} and {b.field} differ")
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    columns = b.columns()
    return Matrix(a.field, [[dot(row, column) if row else a.field.zero for column in columns]
                            for row in a.rows], b.ncols)


def mat_inverse(m):
    if not m.is_square:
        raise DimensionMismatch(f"Cannot invert a {m.nrows}x{m.ncols} matrix")
    try:
        inverse = m.to_domain_matrix().inv()
    except DMNonInvertibleMatrixError as exc:
        raise NotInvertible("Matrix is singular") from exc
    return Matrix.from_domain_matrix(m.field, inverse)


def is_invertible(m):
    return m.is_square and rank(m) == m.nrows


def commutes(a, b):
    if not (a.is_square and b.is_square):
        raise DimensionMismatch("Commutation needs square matrices")
    _check_same_shape(a, b)
    return a @ b == b @ a


def kernel_basis(m):
    """Basis of the right null space {v : m v = 0}"""
    field = m.field
    if m.nrows == 0:
        return [basis_vector(field, m.ncols, j) for j in range(m.ncols)]
    basis = m.to_domain_matrix().nullspace()
    return [tuple(row) for row in _dm_rows(basis)] if basis.shape[0] else []


def rank(m):
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return m.to_domain_matrix().rank()


def determinant(m):
    if not m.is_square:
        raise DimensionMismatch("Determinant needs a square matrix")
    return m.to_domain_matrix().det()
