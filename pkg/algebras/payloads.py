"""JSON-safe forms of algebras and operators for the task queue."""
from core.fields import FieldSpec
from core.linalg import Matrix

from .structures import HomAlgebra, OperatorKind, StructureTensor, WeightedOperator


def field_from_document(document):
    if document == 'Q':
        return FieldSpec.rationals()
    return FieldSpec.prime(document['Fp'])


def algebra_payload(algebra):
    field = algebra.field
    return {
        'field': field.to_document(),
        'dim': algebra.dim,
        'arity': algebra.arity,
        'table': [[list(index), [field.format(a) for a in vector]] for index, vector in algebra.tensor.items()],
        'twist': algebra.twist.to_document(),
        'name': algebra.name,
    }


def algebra_from_payload(payload):
    field = field_from_document(payload['field'])
    tensor = StructureTensor(field, payload['dim'], payload['arity'],
                             {tuple(index): vector for index, vector in payload['table']})
    return HomAlgebra(tensor, Matrix(field, payload['twist'], payload['dim']), payload.get('name'))


def operator_payload(operator):
    return {
        'matrix': operator.matrix.to_document(),
        'weight': operator.field.format(operator.weight),
        'kind': operator.kind.value,
        'k': operator.k,
        'name': operator.name,
    }


def operator_from_payload(payload, field):
    matrix = Matrix(field, payload['matrix'], len(payload['matrix']))
    return WeightedOperator(matrix, payload['weight'], OperatorKind(payload['kind']), payload['k'], payload['name'])
