import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import isprime
from sympy.polys.domains import GF, QQ

from .exceptions import InvalidField, InvalidScalar

SCALAR_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


@lru_cache(maxsize=None)
def _prime_domain(p):
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """Q (p is None) or the prime field F_p.

    Scalars are the field's sympy domain elements, which are kept in
    canonical form by the domain itself: reduced fractions over Q,
    residues in [0, p) over F_p.
    """
    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int) or not isprime(self.p):
                raise InvalidField(f"Modulus {self.p!r} is not a prime")

    @classmethod
    def rationals(cls):
        return cls(None)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @property
    def is_prime_field(self):
        return self.p is not None

    @property
    def kind(self):
        return 'Fp' if self.is_prime_field else 'Q'

    @property
    def characteristic(self):
        return self.p or 0

    @property
    def domain(self):
        return _prime_domain(self.p) if self.is_prime_field else QQ

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __str__(self):
        return f"F_{self.p}" if self.is_prime_field else 'Q'

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        """Convert an int, Fraction, string or domain element into this field"""
        domain = self.domain
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise InvalidScalar(f"Boolean {value!r} is not a scalar")
        if isinstance(value, int):
            return domain(value)
        if isinstance(value, Fraction):
            return self._from_ratio(value.numerator, value.denominator)
        if domain.of_type(value):
            return value
        numerator = getattr(value, 'numerator', None)
        denominator = getattr(value, 'denominator', None)
        if numerator is not None and denominator is not None:
            return self._from_ratio(int(numerator), int(denominator))
        raise InvalidScalar(f"Cannot read {value!r} in {self}")

    def parse(self, text):
        match = SCALAR_PATTERN.match(text)
        if not match:
            raise InvalidScalar(f"Malformed scalar {text!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise InvalidScalar(f"Zero denominator in {text!r}")
        return self._from_ratio(numerator, denominator)

    def _from_ratio(self, numerator, denominator):
        if self.is_prime_field:
            if denominator % self.p == 0:
                raise InvalidScalar(f"Denominator {denominator} vanishes in {self}")
            domain = self.domain
            return domain(numerator) / domain(denominator)
        return QQ(numerator, denominator)

    def residue(self, value):
        """Residue in [0, p) of an F_p element"""
        return int(self.domain.to_int(value)) % self.p

    def format(self, value):
        """Canonical document form: "a" or "a/b" over Q, a residue over F_p"""
        if self.is_prime_field:
            return self.residue(value)
        if value.denominator == 1:
            return str(int(value.numerator))
        return f"{int(value.numerator)}/{int(value.denominator)}"

    def sort_key(self, value):
        if self.is_prime_field:
            return self.residue(value)
        return Fraction(int(value.numerator), int(value.denominator))

    def elements(self):
        """All elements of F_p in residue order"""
        if not self.is_prime_field:
            raise InvalidField("Q has no finite element list")
        domain = self.domain
        return [domain(residue) for residue in range(self.p)]

    def tuples(self, length):
        return product(self.elements(), repeat=length)

    def to_document(self):
        return {'Fp': self.p} if self.is_prime_field else 'Q'


QQ_FIELD = FieldSpec.rationals()
