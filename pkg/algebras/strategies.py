"""Hypothesis strategies shared by the app test suites."""
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from core.fields import FieldSpec
from core.linalg import Matrix, is_invertible

# loaded by every suite that imports these strategies
settings.register_profile('homalg', deadline=None, max_examples=50,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile('homalg')


def scalars(field, bound=5):
    if field.is_prime_field:
        return st.integers(min_value=0, max_value=field.p - 1).map(field.coerce)
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound)).map(field.coerce)


def vectors(field, dim):
    return st.tuples(*[scalars(field) for _ in range(dim)])


def matrices(field, dim):
    return st.lists(vectors(field, dim), min_size=dim, max_size=dim).map(lambda rows: Matrix(field, rows, dim))


def invertible_matrices(field, dim):
    return matrices(field, dim).filter(is_invertible)


def prime_fields(primes=(2, 3, 5, 7)):
    return st.sampled_from(primes).map(FieldSpec.prime)
