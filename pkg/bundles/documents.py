"""Bundle documents: parsing into domain objects and canonical serialization."""
import json
import logging
import re
from dataclasses import dataclass, field as dataclass_field

from rest_framework import serializers

from algebras.operations import increasing_part
from algebras.structures import HomAlgebra, OperatorKind, StructureTensor, matrix_over
from core.exceptions import BundleSemanticError, BundleSyntaxError
from core.fields import QQ_FIELD

from .serializers import BundleSerializer, read_field

logger = logging.getLogger(__name__)

ABELIAN_PATTERN = re.compile(r'^abelian_(\d+)_(\d+)$')


@dataclass
class AlgebraBundle:
    field: object = QQ_FIELD
    algebras: dict = dataclass_field(default_factory=dict)
    operators: dict = dataclass_field(default_factory=dict)
    functionals: dict = dataclass_field(default_factory=dict)
    maps: dict = dataclass_field(default_factory=dict)
    skew_complete: dict = dataclass_field(default_factory=dict)
    axioms: dict = dataclass_field(default_factory=dict)
    generates_abelian: bool = False

    def add_algebra(self, algebra, skew_complete=False, axioms=()):
        self.algebras[algebra.name] = algebra
        self.skew_complete[algebra.name] = skew_complete
        self.axioms[algebra.name] = list(axioms)

    def algebra(self, name):
        if name in self.algebras:
            return self.algebras[name]
        match = ABELIAN_PATTERN.match(name or '')
        if self.generates_abelian and match:
            dim, arity = int(match.group(1)), int(match.group(2))
            return HomAlgebra.untwisted(StructureTensor.zero(self.field, dim, arity), name)
        raise BundleSemanticError(f"no algebra named {name!r}", 'algebras')

    def operator(self, name):
        return self._lookup(self.operators, name, 'operators')

    def functional(self, name):
        return self._lookup(self.functionals, name, 'functionals')

    def map(self, name):
        return self._lookup(self.maps, name, 'maps')

    @staticmethod
    def _lookup(entries, name, kind):
        try:
            return entries[name]
        except KeyError:
            raise BundleSemanticError(f"no entry named {name!r}", kind) from None

    def over(self, field):
        """The same bundle with every coefficient read in another field"""
        bundle = AlgebraBundle(field, generates_abelian=self.generates_abelian)
        for name, algebra in self.algebras.items():
            bundle.add_algebra(algebra.over(field), self.skew_complete[name], self.axioms[name])
        bundle.operators = {name: op.over(field) for name, op in self.operators.items()}
        bundle.functionals = {name: f.over(field) for name, f in self.functionals.items()}
        bundle.maps = {name: matrix_over(matrix, field) for name, matrix in self.maps.items()}
        return bundle

    def to_document(self):
        return {
            'field': self.field.to_document(),
            'algebras': [algebra_document(algebra, self.skew_complete.get(name, False), self.axioms.get(name))
                         for name, algebra in self.algebras.items()],
            'operators': [operator_document(operator) for operator in self.operators.values()],
            'functionals': [functional_document(f) for f in self.functionals.values()],
            'maps': [{'name': name, 'matrix': matrix.to_document()} for name, matrix in self.maps.items()],
        }


def algebra_document(algebra, skew_complete=False, axioms=None):
    field = algebra.field
    tensor = increasing_part(algebra.tensor) if skew_complete else algebra.tensor
    document = {
        'name': algebra.name,
        'dim': algebra.dim,
        'arity': algebra.arity,
        'twist': algebra.twist.to_document(),
        'bracket': [
            {'args': [i + 1 for i in index],
             'value': {str(k + 1): field.format(a) for k, a in enumerate(vector) if a}}
            for index, vector in tensor.items()
        ],
        'skew_complete': skew_complete,
    }
    if axioms:
        document['axioms'] = list(axioms)
    return document


def operator_document(operator):
    if operator.kind is OperatorKind.ALPHA_K:
        kind = {'alpha-k': operator.k}
    else:
        kind = operator.kind.value
    return {
        'name': operator.name,
        'matrix': operator.matrix.to_document(),
        'weight': operator.field.format(operator.weight),
        'kind': kind,
    }


def functional_document(functional):
    return {'name': functional.name, 'covector': [functional.field.format(a) for a in functional.covector]}


def _first_error(errors, path='$'):
    """Walk a DRF error structure down to its first message"""
    if isinstance(errors, dict):
        for key, value in errors.items():
            if value:
                step = path if key == 'non_field_errors' else f"{path}.{key}"
                return _first_error(value, step)
    if isinstance(errors, list):
        for position, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                if value:
                    return _first_error(value, f"{path}[{position}]")
            else:
                return str(value), path
    return str(errors), path


def parse_document(document):
    if not isinstance(document, dict):
        raise BundleSemanticError("bundle must be a JSON object", '$')
    try:
        field = read_field(document.get('field', 'Q'))
    except serializers.ValidationError as exc:
        raise BundleSemanticError(str(exc.detail[0]), "$.field") from exc
    serializer = BundleSerializer(data=document, context={'field': field})
    if not serializer.is_valid():
        message, path = _first_error(serializer.errors)
        raise BundleSemanticError(message, path)
    data = serializer.validated_data
    bundle = AlgebraBundle(field)
    for entry in data['algebras']:
        bundle.add_algebra(entry['algebra'], entry['skew_complete'], entry['axioms'])
    bundle.operators = {operator.name: operator for operator in data['operators']}
    bundle.functionals = {functional.name: functional for functional in data['functionals']}
    bundle.maps = {entry['name']: entry['matrix'] for entry in data['maps']}
    logger.debug(f"Parsed bundle over {field}: {len(bundle.algebras)} algebra(s), {len(bundle.operators)} operator(s)")
    return bundle


def parse_bundle(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    return parse_document(document)


def canonical_json(document):
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_bundle(bundle):
    return canonical_json(bundle.to_document())
