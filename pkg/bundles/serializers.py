from rest_framework import serializers

from algebras.operations import skew_symmetrize
from algebras.structures import HomAlgebra, LinearFunctional, OperatorKind, StructureTensor, WeightedOperator
from core.conf import setting
from core.exceptions import HomAlgebraError, InvalidField, InvalidScalar
from core.fields import FieldSpec
from core.linalg import Matrix


def read_field(value):
    """'Q' or {'Fp': p}"""
    if value == 'Q':
        return FieldSpec.rationals()
    if isinstance(value, dict) and set(value) == {'Fp'}:
        try:
            return FieldSpec.prime(value['Fp'])
        except InvalidField as exc:
            raise serializers.ValidationError(str(exc))
    raise serializers.ValidationError(f"Field must be \"Q\" or {{\"Fp\": p}}, got {value!r}")


class FieldSpecField(serializers.Field):
    def to_internal_value(self, data):
        return read_field(data)

    def to_representation(self, value):
        return value.to_document()


class CoefficientField(serializers.Field):
    """Scalar of the bundle's field: "a" or "a/b" strings, or integer residues"""

    def to_internal_value(self, data):
        field = self.context['field']
        if isinstance(data, bool) or not isinstance(data, (str, int)):
            raise serializers.ValidationError(f"Coefficient {data!r} must be a string or an integer")
        try:
            return field.coerce(data)
        except InvalidScalar as exc:
            raise serializers.ValidationError(str(exc))

    def to_representation(self, value):
        return self.context['field'].format(value)


class MatrixField(serializers.ListField):
    child = serializers.ListField(child=CoefficientField())

    def to_internal_value(self, data):
        rows = super().to_internal_value(data)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise serializers.ValidationError("Matrix must be square and nonempty")
        return Matrix(self.context['field'], rows, len(rows))


class KindField(serializers.Field):
    def to_internal_value(self, data):
        if data in (OperatorKind.ROTA_BAXTER.value, OperatorKind.DERIVATION.value):
            return OperatorKind(data), 0
        if isinstance(data, dict) and set(data) == {'alpha-k'}:
            k = data['alpha-k']
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise serializers.ValidationError("alpha-k power must be a non-negative integer")
            return OperatorKind.ALPHA_K, k
        raise serializers.ValidationError(f"Unknown operator kind {data!r}")


class BracketEntrySerializer(serializers.Serializer):
    args = serializers.ListField(child=serializers.IntegerField(min_value=1))
    value = serializers.DictField(child=CoefficientField())


class AlgebraSerializer(serializers.Serializer):
    name = serializers.CharField()
    dim = serializers.IntegerField(min_value=1)
    arity = serializers.IntegerField(min_value=2)
    twist = MatrixField(required=False)
    bracket = BracketEntrySerializer(many=True, required=False, default=list)
    skew_complete = serializers.BooleanField(default=False)
    axioms = serializers.ListField(child=serializers.CharField(), required=False, default=list)

    def validate_dim(self, value):
        if value > setting('HOMALG_MAX_DIM'):
            raise serializers.ValidationError(f"Dimension {value} exceeds {setting('HOMALG_MAX_DIM')}")
        return value

    def validate(self, attrs):
        field = self.context['field']
        dim, arity = attrs['dim'], attrs['arity']
        table = {}
        for entry in attrs['bracket']:
            args = tuple(i - 1 for i in entry['args'])
            if len(args) != arity or any(i >= dim for i in args):
                raise serializers.ValidationError({'bracket': f"args {entry['args']} do not fit dim {dim}, arity {arity}"})
            if args in table:
                raise serializers.ValidationError({'bracket': f"args {entry['args']} listed twice"})
            vector = [field.zero] * dim
            for key, coefficient in entry['value'].items():
                if not key.isdigit() or not 1 <= int(key) <= dim:
                    raise serializers.ValidationError({'bracket': f"basis index {key!r} outside 1..{dim}"})
                vector[int(key) - 1] = coefficient
            table[args] = vector
        twist = attrs.get('twist') or Matrix.identity(field, dim)
        try:
            tensor = StructureTensor(field, dim, arity, table)
            if attrs['skew_complete']:
                tensor = skew_symmetrize(tensor)
            algebra = HomAlgebra(tensor, twist, attrs['name'])
        except HomAlgebraError as exc:
            raise serializers.ValidationError(str(exc))
        return {'algebra': algebra, 'skew_complete': attrs['skew_complete'], 'axioms': attrs['axioms']}


class OperatorSerializer(serializers.Serializer):
    name = serializers.CharField()
    matrix = MatrixField()
    weight = CoefficientField(default='0')
    kind = KindField(default=(OperatorKind.ROTA_BAXTER, 0))

    def validate(self, attrs):
        kind, k = attrs['kind']
        return WeightedOperator(attrs['matrix'], attrs['weight'], kind, k, attrs['name'])


class FunctionalSerializer(serializers.Serializer):
    name = serializers.CharField()
    covector = serializers.ListField(child=CoefficientField(), min_length=1)

    def validate(self, attrs):
        return LinearFunctional(tuple(attrs['covector']), self.context['field'], attrs['name'])


class MapSerializer(serializers.Serializer):
    name = serializers.CharField()
    matrix = MatrixField()


class BundleSerializer(serializers.Serializer):
    """Whole bundle document; the field is read first and handed down through the context"""
    field = FieldSpecField(required=False)
    algebras = AlgebraSerializer(many=True, required=False, default=list)
    operators = OperatorSerializer(many=True, required=False, default=list)
    functionals = FunctionalSerializer(many=True, required=False, default=list)
    maps = MapSerializer(many=True, required=False, default=list)

    def validate(self, attrs):
        names = {
            'algebras': [entry['algebra'].name for entry in attrs['algebras']],
            'operators': [operator.name for operator in attrs['operators']],
            'functionals': [functional.name for functional in attrs['functionals']],
            'maps': [entry['name'] for entry in attrs['maps']],
        }
        for kind, listed in names.items():
            duplicates = sorted({name for name in listed if listed.count(name) > 1})
            if duplicates:
                raise serializers.ValidationError({kind: f"duplicate names {', '.join(duplicates)}"})
        return attrs
