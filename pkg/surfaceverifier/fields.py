"""Finite fields F_p and F_{p^r} (r <= 3) for p > 3.

Elements are immutable and carry their field. Scalar arithmetic goes through :mod:`sympy.polys.galoistools`;
the point-count kernels use the vectorized operations on *index arrays*, where an element with coordinates
(c_0, ..., c_{r-1}) over F_p is encoded as the integer sum(c_k * p**k).
"""

import functools
import itertools
import logging
from math import gcd

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_add, gf_sub, gf_gcdex, gf_neg, gf_strip

from surfaceverifier import _util
from surfaceverifier.exceptions import FieldMismatchError, DivisionByZeroError, UnsupportedCharacteristicError, \
    ArgumentError

logger = logging.getLogger(__name__)

MAX_DEGREE = 3


def _to_gf(coordinates):
    """Converts low-to-high coordinates into a stripped high-to-low galoistools list."""
    return gf_strip([ZZ(c) for c in reversed(coordinates)])


def _from_gf(poly, r):
    coordinates = [int(c) for c in reversed(poly)]
    return tuple(coordinates + [0] * (r - len(coordinates)))


class FiniteField(object):
    """The finite field F_{p^r}, constructed as F_p[x]/(modulus).

    :param int p: the characteristic, a prime > 3
    :param int r: the degree over the prime field, 1 <= r <= 3
    :param tuple modulus: monic irreducible polynomial of degree r as coefficients from low to high degree; when
        omitted, the lexicographically smallest monic irreducible polynomial is used
    :raises UnsupportedCharacteristicError: if p is composite or p <= 3
    """

    def __init__(self, p, r=1, modulus=None):
        if not _util.is_prime(p) or p <= 3:
            raise UnsupportedCharacteristicError("cannot construct a field of characteristic {0}".format(p))
        if not 1 <= r <= MAX_DEGREE:
            raise ArgumentError("degree {0} is not supported, must be between 1 and {1}".format(r, MAX_DEGREE))

        self.p = p
        self.r = r
        self.q = p ** r

        if modulus is None:
            modulus = smallest_irreducible(p, r)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ArgumentError("modulus {0} is not monic of degree {1}".format(modulus, r))
            if r > 1 and not gf_irreducible_p(_to_gf(modulus), p, ZZ):
                raise ArgumentError("modulus {0} is reducible over F_{1}".format(modulus, p))
        self.modulus = modulus
        self._gf_modulus = _to_gf(modulus)

    def __repr__(self):
        if self.r == 1:
            return "F_{0}".format(self.p)
        return "F_{0}^{1}[{2}]".format(self.p, self.r, ",".join(str(c) for c in self.modulus))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __len__(self):
        return self.q

    # -- elements --

    def __call__(self, value):
        return self.element(value)

    def element(self, value):
        """Coerces *value* into this field. Integers map through the prime field, sequences are read as
        coordinates from low to high degree.

        :rtype: FieldElement
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError("{0} is not an element of {1}".format(value, self))
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.r - 1))
        coordinates = tuple(int(c) % self.p for c in value)
        if len(coordinates) > self.r:
            raise ArgumentError("too many coordinates for {0}".format(self))
        return FieldElement(self, coordinates + (0,) * (self.r - len(coordinates)))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def generator(self):
        """The class of x in F_p[x]/(modulus). For the prime field this is 0, the root of the modulus x."""
        if self.r == 1:
            return self.zero
        return self.element((0, 1))

    def from_index(self, index):
        coordinates = []
        for _ in range(self.r):
            index, c = divmod(index, self.p)
            coordinates.append(c)
        return FieldElement(self, tuple(coordinates))

    def elements(self):
        """Iterates over all elements in index order."""
        for i in range(self.q):
            yield self.from_index(i)

    def index(self, element):
        return sum(c * self.p ** k for k, c in enumerate(self.element(element).coordinates))

    # -- scalar arithmetic on coordinate tuples --

    def _add(self, a, b):
        return _from_gf(gf_add(_to_gf(a), _to_gf(b), self.p, ZZ), self.r)

    def _sub(self, a, b):
        return _from_gf(gf_sub(_to_gf(a), _to_gf(b), self.p, ZZ), self.r)

    def _neg(self, a):
        return _from_gf(gf_neg(_to_gf(a), self.p, ZZ), self.r)

    def _mul(self, a, b):
        product = gf_mul(_to_gf(a), _to_gf(b), self.p, ZZ)
        return _from_gf(gf_rem(product, self._gf_modulus, self.p, ZZ), self.r)

    def _inverse(self, a):
        if not any(a):
            raise DivisionByZeroError("division by zero in {0}".format(self))
        s, _, h = gf_gcdex(_to_gf(a), self._gf_modulus, self.p, ZZ)
        assert h == [ZZ(1)]
        return _from_gf(s, self.r)

    # -- vectorized arithmetic on index arrays --

    @functools.cached_property
    def _powers(self):
        return self.p ** np.arange(self.r, dtype=np.int64)

    def coordinates_of(self, indices):
        """Splits an array of element indices into an (r, n) array of coordinates."""
        indices = np.asarray(indices, dtype=np.int64)
        return (indices[np.newaxis, ...] // self._powers.reshape((-1,) + (1,) * indices.ndim)) % self.p

    def indices_of(self, coordinates):
        return np.tensordot(self._powers, coordinates, axes=1).astype(np.int64)

    def vadd(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self.indices_of((self.coordinates_of(a) + self.coordinates_of(b)) % self.p)

    def vneg(self, a):
        if self.r == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.indices_of((-self.coordinates_of(a)) % self.p)

    def vmul(self, a, b):
        """Multiplies two (broadcastable) arrays of element indices."""
        p, r = self.p, self.r
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if r == 1:
            return (a * b) % p

        ca, cb = self.coordinates_of(a), self.coordinates_of(b)
        shape = a.shape
        product = np.zeros((2 * r - 1,) + shape, dtype=np.int64)
        for i, j in itertools.product(range(r), repeat=2):
            product[i + j] = (product[i + j] + ca[i] * cb[j]) % p

        # x^r = -(m_0 + m_1 x + ... + m_{r-1} x^{r-1})
        for m in range(2 * r - 2, r - 1, -1):
            for k, coefficient in enumerate(self.modulus[:-1]):
                if coefficient:
                    product[m - r + k] = (product[m - r + k] - coefficient * product[m]) % p
        return self.indices_of(product[:r])

    @functools.cached_property
    def all_indices(self):
        return np.arange(self.q, dtype=np.int64)

    @functools.cached_property
    def square_table(self):
        return self.vmul(self.all_indices, self.all_indices)

    @functools.cached_property
    def cube_table(self):
        return self.vmul(self.square_table, self.all_indices)

    @functools.cached_property
    def character_table(self):
        """Quadratic character of every element, indexed by element index."""
        table = np.full(self.q, -1, dtype=np.int64)
        table[self.square_table] = 1
        table[0] = 0
        return table

    @functools.cached_property
    def square_roots(self):
        """Maps every square (by index) onto the sorted array of its square roots."""
        order = np.argsort(self.square_table, kind='stable')
        squares = self.square_table[order]
        boundaries = np.flatnonzero(np.diff(squares)) + 1
        return {int(group_squares[0]): roots for group_squares, roots
                in zip(np.split(squares, boundaries), np.split(order, boundaries))}


class FieldElement(object):
    """An immutable element of a :class:`FiniteField`. Integers are coerced into the field in mixed arithmetic."""

    __slots__ = ('field', 'coordinates')

    def __init__(self, field, coordinates):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coordinates', coordinates)

    def __setattr__(self, key, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("cannot combine elements of {0} and {1}".format(self.field, other.field))
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.coordinates, other.coordinates))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.coordinates, other.coordinates))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.coordinates))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.coordinates, other.coordinates))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field._inverse(self.coordinates))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except FieldMismatchError:
            return False
        return other is not None and self.coordinates == other.coordinates

    def __hash__(self):
        return hash((self.field, self.coordinates))

    def __bool__(self):
        return any(self.coordinates)

    def __repr__(self):
        if self.field.r == 1:
            return "{0}".format(self.coordinates[0])
        terms = ["{0}*x^{1}".format(c, k) if k else str(c) for k, c in enumerate(self.coordinates) if c]
        return " + ".join(terms) or "0"

    @property
    def index(self):
        return self.field.index(self)

    @property
    def residue(self):
        """The residue of a prime-field element.

        :raises ArgumentError: if the element is not in the prime field
        """
        if any(self.coordinates[1:]):
            raise ArgumentError("{0} is not in the prime field".format(self))
        return self.coordinates[0]

    def is_power(self, k):
        """Whether this element is a k-th power in its field."""
        if not self:
            return True
        q = self.field.q
        return self ** ((q - 1) // gcd(k, q - 1)) == 1


def quadratic_character(a):
    """Returns the quadratic character of *a*: 0 for zero, +1 for nonzero squares and -1 otherwise. Computed as
    a^((q-1)/2).

    :rtype: int
    """
    if not a:
        return 0
    return 1 if a ** ((a.field.q - 1) // 2) == 1 else -1


def smallest_irreducible(p, r):
    """Returns the lexicographically smallest monic irreducible polynomial of degree r over F_p, as coefficients
    from low to high degree. Coefficients are compared from the x^{r-1} coefficient downwards.
    """
    if r == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=r):
        candidate = tuple(reversed(tail)) + (1,)
        if gf_irreducible_p(_to_gf(candidate), p, ZZ):
            return candidate
    raise UnsupportedCharacteristicError("no irreducible polynomial of degree {0} over F_{1}".format(r, p))


@functools.lru_cache(maxsize=None)
def _build(p, r):
    field = FiniteField(p, r)
    logger.debug("constructed {0}".format(field))
    return field


def build_extension(p, r=1):
    """Returns the field F_{p^r} with the deterministic modulus of :func:`smallest_irreducible`.

    :raises UnsupportedCharacteristicError: if p <= 3 or p is composite
    :rtype: FiniteField
    """
    return _build(p, r)


def field_of_order(q):
    """Returns the field with q elements.

    :rtype: FiniteField
    """
    p, r = _util.prime_power(q)
    return build_extension(p, r)
