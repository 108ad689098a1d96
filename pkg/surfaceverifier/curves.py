"""Short Weierstrass curves over a pluggable coefficient field, point counts over finite fields, quadratic twists and
the reduction of plane cubics with a rational flex to Weierstrass form.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from sympy import integer_nthroot

from surfaceverifier import _util
from surfaceverifier.exceptions import SingularCurveError, NotAFlexError, ArgumentError
from surfaceverifier.fields import FieldElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointCount:
    """Number of points of a curve over F_q, including the point at infinity."""
    q: int
    n: int

    @property
    def trace(self):
        return self.q + 1 - self.n

    def satisfies_hasse_bound(self):
        return self.trace ** 2 <= 4 * self.q


class WeierstrassCurve(object):
    """The curve y^2 = x^3 + a4 x + a6.

    The coefficients may be Fractions, ints, :class:`~surfaceverifier.fields.FieldElement`, rational functions or
    :class:`~surfaceverifier.symbolic.BFieldElement`; all arithmetic is delegated to them. Smoothness is only checked
    by operations that require it.
    """

    def __init__(self, a4, a6):
        field = next((c.field for c in (a4, a6) if isinstance(c, FieldElement)), None)
        if field is not None:
            a4, a6 = field(a4), field(a6)
        elif all(isinstance(c, (int, Fraction)) for c in (a4, a6)):
            a4, a6 = Fraction(a4), Fraction(a6)
        self.a4 = a4
        self.a6 = a6

    @classmethod
    def from_coefficients(cls, a1=0, a2=0, a3=0, a4=0, a6=0):
        """Converts the long form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 into short form, by completing the
        square and depressing the cubic. The result has the same c4 and c6, hence is isomorphic to the input.

        :rtype: WeierstrassCurve
        """
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        return cls(_scale(c4, Fraction(-1, 48)), _scale(c6, Fraction(-1, 864)))

    @classmethod
    def legendre(cls, lam):
        """The Legendre curve y^2 = x(x-1)(x-lambda)."""
        return cls.from_coefficients(a2=-(lam + 1), a4=lam)

    def __repr__(self):
        return "<WeierstrassCurve y^2 = x^3 + ({0})x + ({1})>".format(self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.a4 == other.a4 and self.a6 == other.a6

    def __hash__(self):
        return hash((self.a4, self.a6))

    @property
    def c4(self):
        return -48 * self.a4

    @property
    def c6(self):
        return -864 * self.a6

    def discriminant(self):
        return -16 * (4 * self.a4 ** 3 + 27 * self.a6 ** 2)

    def is_singular(self):
        return not self.discriminant()

    def j_invariant(self):
        """Returns j = c4^3 / Delta.

        :raises SingularCurveError: if the discriminant vanishes
        """
        delta = self.discriminant()
        if not delta:
            raise SingularCurveError("j-invariant of singular curve {0}".format(self))
        return self.c4 ** 3 / delta

    def scaled(self, u):
        """The isomorphic curve obtained from (x, y) -> (u^2 x, u^3 y), with coefficients u^4 a4 and u^6 a6."""
        return WeierstrassCurve(self.a4 * u ** 4, self.a6 * u ** 6)

    def quadratic_twist(self, d):
        """Twist by d: (a4, a6) -> (d^2 a4, d^3 a6). Twisting by a square gives an isomorphic curve."""
        if not d:
            raise ArgumentError("cannot twist by zero")
        return WeierstrassCurve(self.a4 * d ** 2, self.a6 * d ** 3)

    def isomorphism_obstruction(self, other):
        """Returns None if both curves are isomorphic over the coefficient field, ``'j-invariant'`` if their
        j-invariants differ and ``'twist-class'`` if they are twists of each other that are not isomorphic.

        Isomorphisms are (a4, a6) -> (u^4 a4, u^6 a6); the test decides solvability of these equations for u.
        """
        if self.is_singular() or other.is_singular():
            raise SingularCurveError("isomorphism test of a singular curve")
        if self.j_invariant() != other.j_invariant():
            return 'j-invariant'

        if not self.a4:  # j = 0
            solvable = _is_power(other.a6 / self.a6, 6)
        elif not self.a6:  # j = 1728
            solvable = _is_power(other.a4 / self.a4, 4)
        else:
            # u^2 = w is forced by w^2 = a4'/a4 and w^3 = a6'/a6
            w = (other.a6 / self.a6) / (other.a4 / self.a4)
            solvable = _is_power(w, 2)
        return None if solvable else 'twist-class'

    def is_isomorphic(self, other):
        return self.isomorphism_obstruction(other) is None

    def count_points(self):
        """Counts the points over the finite coefficient field F_q as q + 1 + sum_x chi(x^3 + a4 x + a6).

        :raises SingularCurveError: if the curve is singular
        :rtype: PointCount
        """
        field = self.base_field
        if self.is_singular():
            raise SingularCurveError("cannot count points of singular curve {0}".format(self))

        xs = field.all_indices
        values = field.vadd(field.vadd(field.cube_table, field.vmul(xs, self.a4.index)), self.a6.index)
        count = PointCount(field.q, field.q + 1 + int(field.character_table[values].sum()))
        logger.debug("{0} has {1} points over {2}".format(self, count.n, field))
        return count

    @property
    def base_field(self):
        if not isinstance(self.a4, FieldElement):
            raise ArgumentError("{0} is not defined over a finite field".format(self))
        return self.a4.field


def _scale(value, factor):
    if isinstance(value, int):
        value = Fraction(value)
    return value * factor.numerator / factor.denominator


def _is_power(value, k):
    if isinstance(value, FieldElement):
        return value.is_power(k)
    value = Fraction(value)
    if value < 0:
        if k % 2 == 0:
            return False
        value = -value
    return all(integer_nthroot(part, k)[1] for part in (value.numerator, value.denominator))


class PlaneCubic(object):
    """A homogeneous cubic in X, Y, Z with rational coefficients.

    :param dict coefficients: maps exponent triples (i, j, k) with i + j + k = 3 to the coefficient of X^i Y^j Z^k
    """

    SYMBOLS = sympy.symbols('X Y Z')

    def __init__(self, coefficients):
        self.coefficients = {}
        for monomial, coefficient in coefficients.items():
            if sum(monomial) != 3:
                raise ArgumentError("{0} is not a cubic monomial".format(monomial))
            if coefficient:
                self.coefficients[tuple(monomial)] = Fraction(coefficient)
        if not self.coefficients:
            raise ArgumentError("the zero polynomial is not a cubic")

    @classmethod
    def hesse(cls, mu):
        """The Hesse cubic X^3 + Y^3 + Z^3 - 3 mu XYZ."""
        return cls({(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): -3 * Fraction(mu)})

    def as_expr(self):
        x, y, z = self.SYMBOLS
        return sum(sympy.Rational(c.numerator, c.denominator) * x ** i * y ** j * z ** k
                   for (i, j, k), c in self.coefficients.items())

    def __call__(self, point):
        x, y, z = (Fraction(c) for c in point)
        return sum(c * x ** i * y ** j * z ** k for (i, j, k), c in self.coefficients.items())

    def __repr__(self):
        return "<PlaneCubic {0}>".format(self.as_expr())


def nagell_reduce(cubic, flex):
    """Transforms a smooth plane cubic with a rational inflection point into a Weierstrass model of the same curve.

    The tangent at the flex is moved to Z = 0 and the flex to (0:1:0); what remains has the shape
    c X^3 + Z (alpha Y^2 + beta XY + gamma YZ + delta X^2 + epsilon XZ + zeta Z^2), which is a long Weierstrass
    equation after rescaling X and Y.

    :param PlaneCubic cubic: the cubic
    :param flex: projective coordinates of the flex
    :raises NotAFlexError: if the point is not on the cubic or is not an inflection point
    :raises SingularCurveError: if the cubic is singular
    :rtype: WeierstrassCurve
    """
    X, Y, Z = PlaneCubic.SYMBOLS
    F = cubic.as_expr()
    point = sympy.Matrix([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in flex])
    substitution = dict(zip((X, Y, Z), point))

    if F.subs(substitution) != 0:
        raise NotAFlexError("{0} does not lie on {1}".format(tuple(flex), cubic))
    tangent = sympy.Matrix([sympy.diff(F, v).subs(substitution) for v in (X, Y, Z)])
    if tangent.is_zero_matrix:
        raise SingularCurveError("{0} is a singular point of {1}".format(tuple(flex), cubic))

    # columns: a point on the tangent line, the flex itself, a point off the tangent line
    change = sympy.Matrix.hstack(tangent.cross(point), point, tangent)
    new = change * sympy.Matrix([X, Y, Z])
    G = sympy.Poly(sympy.expand(F.subs({X: new[0], Y: new[1], Z: new[2]}, simultaneous=True)), X, Y, Z)

    def coefficient(i, j, k):
        return _util.to_fraction(G.coeff_monomial(X ** i * Y ** j * Z ** k))

    assert coefficient(0, 3, 0) == 0 and coefficient(1, 2, 0) == 0
    if coefficient(2, 1, 0):
        raise NotAFlexError("{0} is not an inflection point of {1}".format(tuple(flex), cubic))

    c = coefficient(3, 0, 0)
    alpha = coefficient(0, 2, 1)
    if not c or not alpha:
        raise SingularCurveError("{0} is singular or reducible".format(cubic))
    beta, gamma = coefficient(1, 1, 1), coefficient(0, 1, 2)
    delta, epsilon, zeta = coefficient(2, 0, 1), coefficient(1, 0, 2), coefficient(0, 0, 3)

    k = -c / alpha
    curve = WeierstrassCurve.from_coefficients(
        a1=beta / alpha, a2=-delta / alpha, a3=gamma / alpha * k, a4=-epsilon / alpha * k, a6=-zeta / alpha * k * k)
    if curve.is_singular():
        raise SingularCurveError("{0} is singular".format(cubic))
    logger.debug("reduced {0} at {1} to {2}".format(cubic, tuple(flex), curve))
    return curve


def rational_points_count(curve):
    """Counts points by enumerating all (x, y), for cross-checking :meth:`WeierstrassCurve.count_points`."""
    field = curve.base_field
    xs, ys = np.meshgrid(field.all_indices, field.all_indices, indexing='ij')
    lhs = field.square_table[ys]
    rhs = field.vadd(field.vadd(field.cube_table[xs], field.vmul(xs, curve.a4.index)), curve.a6.index)
    return PointCount(field.q, int((lhs == rhs).sum()) + 1)
