"""Exact polynomials and rational functions over Q, the function field of the base curve
B: eta^2 = xi^3 - 1728, and valuations at places.

Polynomials and rational functions are sympy's sparse ring and fraction-field elements over ``QQ`` in one shared
set of variables, so identities in different parameters can be combined freely.
"""

import logging
from fractions import Fraction

from sympy import Poly
from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from surfaceverifier import _util
from surfaceverifier.exceptions import UnsupportedPlaceError, ArgumentError, DivisionByZeroError

logger = logging.getLogger(__name__)

FUNCTION_FIELD, LAM, MU, XI, ETA, T, X, Y = field("lam,mu,xi,eta,t,x,y", QQ)
POLYNOMIAL_RING = FUNCTION_FIELD.ring
_ETA_INDEX = POLYNOMIAL_RING.gens.index(POLYNOMIAL_RING(ETA.numer))

BASE_CONSTANT = 1728

INFINITY = float('inf')


def rational_function(value):
    """Coerces ints, Fractions, ring and fraction-field elements into the shared rational function field.

    :rtype: FracElement
    """
    if isinstance(value, FracElement):
        return value
    if isinstance(value, Fraction):
        return FUNCTION_FIELD(QQ(value.numerator, value.denominator))
    return FUNCTION_FIELD(value)


def to_fraction(f):
    """Converts a constant rational function into a Fraction.

    :raises ArgumentError: if f is not constant
    """
    f = rational_function(f)
    if not (f.numer.is_ground and f.denom.is_ground):
        raise ArgumentError("{0} is not a constant".format(f.as_expr()))
    return _util.to_fraction(f.numer.LC) / _util.to_fraction(f.denom.LC)


def substitute(f, **values):
    """Substitutes rational values for the named variables, e.g. ``substitute(f, lam=2)``.

    :raises DivisionByZeroError: if the denominator vanishes
    """
    f = rational_function(f)
    names = [str(symbol) for symbol in FUNCTION_FIELD.symbols]
    numer, denom = f.numer, f.denom
    for name, value in sorted(values.items()):
        gen = POLYNOMIAL_RING.gens[names.index(name)]
        value = Fraction(value)
        value = QQ(value.numerator, value.denominator)
        numer = numer.subs(gen, value)
        denom = denom.subs(gen, value)
    if not denom:
        raise DivisionByZeroError("denominator of {0} vanishes at {1}".format(f.as_expr(), values))
    return FUNCTION_FIELD(numer) / FUNCTION_FIELD(denom)


def degree(poly, variable):
    """Degree of a polynomial in one variable, -1 for the zero polynomial."""
    if not poly:
        return -1
    return poly.degree(POLYNOMIAL_RING(variable.numer))


def evaluate(f, variable, value):
    """Evaluates a rational function in *variable* at *value*, an element of any ring with exact division that
    accepts rational scalars. Horner's scheme on numerator and denominator.
    """
    f = rational_function(f)
    return _horner(f.numer, variable, value) / _horner(f.denom, variable, value)


def _horner(poly, variable, value):
    gen = POLYNOMIAL_RING(variable.numer)
    index = POLYNOMIAL_RING.gens.index(gen)
    coefficients = {}
    for monom, coefficient in poly.terms():
        if any(e for i, e in enumerate(monom) if i != index):
            raise ArgumentError("{0} is not univariate in {1}".format(poly.as_expr(), variable.as_expr()))
        coefficients[monom[index]] = coefficient

    native = isinstance(value, (FracElement, PolyElement))
    result = value * 0
    for k in range(max(coefficients, default=0), -1, -1):
        coefficient = coefficients.get(k, QQ.zero)
        result = result * value + (coefficient if native else _util.to_fraction(coefficient))
    return result


class BFieldElement(object):
    """An element a(xi) + b(xi)*eta of the function field of B, in the normal form of degree at most 1 in eta.

    :param a: rational function in xi
    :param b: rational function in xi
    """

    __slots__ = ('a', 'b')

    def __init__(self, a, b=0):
        a, b = rational_function(a), rational_function(b)
        for part in (a, b):
            if _mentions_other_than_xi(part):
                raise ArgumentError("{0} is not a rational function in xi".format(part.as_expr()))
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)

    def __setattr__(self, key, value):
        raise AttributeError("B-field elements are immutable")

    @classmethod
    def from_rational_function(cls, f):
        """Brings a rational function in xi and eta into normal form using eta^2 = xi^3 - 1728.

        :rtype: BFieldElement
        """
        f = rational_function(f)
        na, nb = _split_eta(f.numer)
        da, db = _split_eta(f.denom)
        return cls(FUNCTION_FIELD(na), FUNCTION_FIELD(nb)) / cls(FUNCTION_FIELD(da), FUNCTION_FIELD(db))

    def normalized(self):
        return BFieldElement.from_rational_function(self.as_rational_function())

    def as_rational_function(self):
        return self.a + self.b * ETA

    @staticmethod
    def _coerce(other):
        if isinstance(other, BFieldElement):
            return other
        if isinstance(other, (int, Fraction, FracElement, PolyElement)):
            return BFieldElement(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BFieldElement(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return BFieldElement(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BFieldElement(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BFieldElement(self.a * other.a + self.b * other.b * RELATION,
                             self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self):
        return BFieldElement(self.a, -self.b)

    def norm(self):
        """The norm down to Q(xi), a^2 - b^2 (xi^3 - 1728)."""
        return self.a ** 2 - self.b ** 2 * RELATION

    def inverse(self):
        norm = self.norm()
        if not norm:
            raise DivisionByZeroError("division by zero in the function field of B")
        return BFieldElement(self.a / norm, -self.b / norm)

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
        result, base = BFieldElement(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        return other is not None and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if not self.b:
            return str(self.a.as_expr())
        return "({0}) + ({1})*eta".format(self.a.as_expr(), self.b.as_expr())


def _mentions_other_than_xi(f):
    xi_index = POLYNOMIAL_RING.gens.index(POLYNOMIAL_RING(XI.numer))
    for poly in (f.numer, f.denom):
        for monom in poly.monoms():
            if any(e for i, e in enumerate(monom) if i != xi_index):
                return True
    return False


def _split_eta(poly):
    """Splits a polynomial into (A, B) with poly = A + B*eta modulo the relation, A and B free of eta."""
    relation = RELATION.numer
    parts = [POLYNOMIAL_RING.zero, POLYNOMIAL_RING.zero]
    for monom, coefficient in poly.terms():
        k = monom[_ETA_INDEX]
        reduced = list(monom)
        reduced[_ETA_INDEX] = 0
        term = POLYNOMIAL_RING({tuple(reduced): coefficient})
        parts[k % 2] += term * relation ** (k // 2)
    return parts[0], parts[1]


RELATION = XI ** 3 - BASE_CONSTANT
XI_B = BFieldElement(XI)
ETA_B = BFieldElement(0, 1)


class Place(object):
    """A place of a rational function field or of the function field of B.

    Use the constructors :meth:`finite`, :meth:`infinity` and :meth:`origin`.

    :param str kind: one of ``finite``, ``infinity``, ``origin``
    :param polynomial: the monic irreducible polynomial of a finite place
    :param variable: the variable a finite or infinite place refers to
    :param int characteristic: residue characteristic, supplied by callers that reduce a model modulo a prime. The
        models built here live in characteristic 0; valuations and minimal models refuse characteristic 2 and 3.
    """

    def __init__(self, kind, polynomial=None, variable=T, characteristic=0):
        self.kind = kind
        self.polynomial = polynomial
        self.variable = variable
        self.characteristic = characteristic

    @classmethod
    def finite(cls, polynomial, variable=T, characteristic=0):
        """The place given by an irreducible polynomial in *variable*.

        :raises UnsupportedPlaceError: if the polynomial is not irreducible over Q
        """
        polynomial = rational_function(polynomial)
        if not polynomial.denom.is_ground or not Poly(polynomial.as_expr(), variable.as_expr()).is_irreducible:
            raise UnsupportedPlaceError("{0} does not define a place".format(polynomial.as_expr()))
        numer = polynomial.numer.monic()
        return cls('finite', numer, variable, characteristic)

    @classmethod
    def infinity(cls, variable=T, characteristic=0):
        return cls('infinity', variable=variable, characteristic=characteristic)

    @classmethod
    def origin(cls):
        """The point at infinity o_B of B, the origin of its group law."""
        return cls('origin', variable=None)

    @property
    def uniformizer(self):
        if self.kind == 'finite':
            return FUNCTION_FIELD(self.polynomial)
        elif self.kind == 'infinity':
            return 1 / self.variable
        else:
            return XI_B / ETA_B

    def __eq__(self, other):
        return isinstance(other, Place) and (self.kind, self.polynomial, self.variable) == \
            (other.kind, other.polynomial, other.variable)

    def __hash__(self):
        return hash((self.kind, self.polynomial, self.variable))

    def __str__(self):
        if self.kind == 'finite':
            return str(self.polynomial.as_expr())
        elif self.kind == 'infinity':
            return "inf"
        return "o_B"

    def __repr__(self):
        return "<Place {0}>".format(self)


def valuation(f, place):
    """Returns the order of *f* at *place*, or :data:`INFINITY` when f is zero.

    For the origin o_B of B the orders ord(xi) = -2 and ord(eta) = -3 are used: the two summands of the normal form
    a + b*eta have valuations of different parity, so the valuation is their minimum.

    :raises UnsupportedPlaceError: for places of residue characteristic 2 or 3, or objects that do not live in the
        function field of the place
    """
    if place.characteristic in (2, 3):
        raise UnsupportedPlaceError("residue characteristic {0} is not supported".format(place.characteristic))
    if not f:
        return INFINITY

    if place.kind == 'origin':
        if not isinstance(f, BFieldElement):
            f = BFieldElement(f)
        orders = []
        if f.a:
            orders.append(2 * (degree(f.a.denom, XI) - degree(f.a.numer, XI)))
        if f.b:
            orders.append(2 * (degree(f.b.denom, XI) - degree(f.b.numer, XI)) - 3)
        return min(orders)

    if isinstance(f, BFieldElement):
        if f.b:
            raise UnsupportedPlaceError("{0} is not defined over the base of {1}".format(f, place))
        f = f.a
    f = rational_function(f)

    if place.kind == 'infinity':
        return degree(f.denom, place.variable) - degree(f.numer, place.variable)
    return _order(f.numer, place.polynomial) - _order(f.denom, place.polynomial)


def _order(poly, prime):
    order = 0
    while True:
        quotient, remainder = poly.div(prime)
        if remainder:
            return order
        poly = quotient
        order += 1
