"""Eta-product q-expansions, the CM weight-3 eigenvalues over the Gaussian integers and the local zeta factors of
the modular surface.

The two forms are normalized arithmetically: eta(6 tau)^4 of weight 2 and eta(4 tau)^6 of weight 3 with CM by
Q(i), so that the coefficient at n is the n-th Hecke eigenvalue.
"""

import functools
import logging
from dataclasses import dataclass

import sympy
from sympy.ntheory import sqrt_mod
from sympy.polys.domains.gaussiandomains import GaussianInteger

from surfaceverifier import _util
from surfaceverifier.exceptions import NonIntegralExponentError, ExcludedPrimeError, ArgumentError, \
    DataCorruptionError

logger = logging.getLogger(__name__)

WEIGHT2_ETA = (6, 4)
WEIGHT3_ETA = (4, 6)
ALGEBRAIC_RANK = 12


class QSeries(object):
    """A power series in q with integer coefficients, known through q^order."""

    def __init__(self, coefficients, order):
        coefficients = [int(c) for c in coefficients[:order + 1]]
        self.coefficients = tuple(coefficients + [0] * (order + 1 - len(coefficients)))
        self.order = order

    def __getitem__(self, n):
        if not 0 <= n <= self.order:
            raise ArgumentError("coefficient {0} is beyond the truncation order {1}".format(n, self.order))
        return self.coefficients[n]

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        return isinstance(other, QSeries) and (self.coefficients, self.order) == (other.coefficients, other.order)

    def __hash__(self):
        return hash((self.coefficients, self.order))

    def __add__(self, other):
        order = min(self.order, other.order)
        return QSeries([self[n] + other[n] for n in range(order + 1)], order)

    def __mul__(self, other):
        order = min(self.order, other.order)
        product = [0] * (order + 1)
        for i, a in enumerate(self.coefficients[:order + 1]):
            if a:
                for j in range(order + 1 - i):
                    product[i + j] += a * other.coefficients[j]
        return QSeries(product, order)

    def __repr__(self):
        terms = ["{0}q^{1}".format(c, n) for n, c in enumerate(self.coefficients) if c]
        return "<QSeries {0} + O(q^{1})>".format(" + ".join(terms[:6]) or "0", self.order + 1)


@functools.lru_cache(maxsize=None)
def eta_power(scale, power, order):
    """The q-expansion of eta(scale * tau)^power = q^(scale*power/24) prod_m (1 - q^(scale*m))^power through q^order.

    :raises NonIntegralExponentError: unless 24 divides scale * power
    :rtype: QSeries
    """
    if (scale * power) % 24:
        raise NonIntegralExponentError("eta({0}tau)^{1} has leading exponent {0}*{1}/24".format(scale, power))
    shift = scale * power // 24
    length = max((order - shift) // scale, -1) + 1

    # coefficients of prod_m (1 - Q^m)^power in Q = q^scale
    product = [1] + [0] * (length - 1) if length else []
    for m in range(1, length):
        for _ in range(power):
            for i in range(length - 1, m - 1, -1):
                product[i] -= product[i - m]

    coefficients = [0] * (order + 1)
    for i, c in enumerate(product):
        coefficients[shift + scale * i] = c
    logger.debug("expanded eta({0}tau)^{1} through q^{2}".format(scale, power, order))
    return QSeries(coefficients, order)


def _check_prime(p):
    if p in (2, 3):
        raise ExcludedPrimeError("local factors at 2 and 3 are excluded")
    if not _util.is_prime(p):
        raise ArgumentError("{0} is not a prime".format(p))


def chi_minus4(n):
    """The character of Q(i): 0 on even n, +1 on n = 1 mod 4, -1 on n = 3 mod 4."""
    return 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)


def conjugate(z):
    return GaussianInteger(z.x, -z.y)


def is_primary(pi):
    """Whether the Gaussian integer is congruent to 1 modulo 2(1+i)."""
    _, remainder = divmod(pi - GaussianInteger(1, 0), GaussianInteger(2, 2))
    return not (remainder.x or remainder.y)


def gaussian_prime_above(p):
    """The primary Gaussian prime pi with p = pi * conj(pi) and non-negative imaginary part, for p = 1 mod 4.

    Found as gcd(p, s + i) with s^2 = -1 mod p.

    :rtype: GaussianInteger
    """
    if p % 4 != 1:
        raise ArgumentError("{0} is inert in Z[i]".format(p))
    s = sqrt_mod(-1, p)
    a, b = GaussianInteger(p, 0), GaussianInteger(s, 1)
    while b.x or b.y:
        a, b = b, divmod(a, b)[1]

    units = [GaussianInteger(1, 0), GaussianInteger(0, 1), GaussianInteger(-1, 0), GaussianInteger(0, -1)]
    candidates = [u * pi for u in units for pi in (a, conjugate(a))]
    primary = sorted((c for c in candidates if is_primary(c)), key=lambda c: (int(c.y) < 0, int(c.x), int(c.y)))
    return primary[0]


def cm_weight3_eigenvalues(p):
    """The Frobenius eigenvalues on the transcendental part: pi^2 and its conjugate when p = 1 mod 4, otherwise
    p and -p.
    """
    _check_prime(p)
    if p % 4 == 3:
        return GaussianInteger(p, 0), GaussianInteger(-p, 0)
    pi = gaussian_prime_above(p)
    return pi * pi, conjugate(pi * pi)


def cm_weight3_bp(p):
    """The trace pi^2 + conj(pi)^2 of the weight-3 CM form at p, 0 for p = 3 mod 4.

    :raises ExcludedPrimeError: for p in (2, 3)
    :rtype: int
    """
    first, second = cm_weight3_eigenvalues(p)
    total = first + second
    assert not total.y
    return int(total.x)


@dataclass(frozen=True)
class EulerFactor:
    """The local factor 1 - trace T + character p^(weight-1) T^2."""
    p: int
    weight: int
    trace: int
    character: int = 1

    def __post_init__(self):
        if self.trace ** 2 > 4 * self.p ** (self.weight - 1):
            raise DataCorruptionError("trace {0} at {1} violates the weight-{2} bound".format(self.trace, self.p,
                                                                                             self.weight))

    @property
    def constant(self):
        return self.character * self.p ** (self.weight - 1)

    @property
    def coefficients(self):
        """Coefficients of the polynomial in T, lowest degree first."""
        return (1, -self.trace, self.constant)

    def polynomial(self, variable):
        return 1 - self.trace * variable + self.constant * variable ** 2

    def power_sum(self, r):
        """Sum of the r-th powers of both reciprocal roots."""
        previous, current = 2, self.trace
        if r == 0:
            return previous
        for _ in range(r - 1):
            previous, current = current, self.trace * current - self.constant * previous
        return current

    def count_eigenvalues_equal(self, value, r=1):
        """How many of the r-th powers of the reciprocal roots equal *value*."""
        total, product = self.power_sum(r), self.constant ** r
        if value * value - total * value + product:
            return 0
        return 2 if total - value == value else 1


def euler_factor(p, form, order=None):
    """Euler factor at p of the weight-2 form attached to B (``weight2-B``) or the weight-3 CM form
    (``weight3-T``).

    :raises ExcludedPrimeError: for p in (2, 3)
    :rtype: EulerFactor
    """
    _check_prime(p)
    if form == 'weight2-B':
        series = eta_power(*WEIGHT2_ETA, max(order or p, p))
        return EulerFactor(p, 2, series[p])
    elif form == 'weight3-T':
        return EulerFactor(p, 3, cm_weight3_bp(p), chi_minus4(p))
    raise ArgumentError("unknown form {0}".format(form))


@dataclass(frozen=True)
class LocalZeta:
    """The local factor of the zeta function of S at a good prime p:

        P1(T) P3(T) / ((1 - T) (1 - pT)^12 Q(T) (1 - p^2 T))

    with P1 the weight-2 factor, P3(T) = P1(pT) and Q the weight-3 factor.
    """
    p: int
    h1: EulerFactor
    transcendental: EulerFactor

    def predicted_count(self, r=1):
        """#S(F_q) for q = p^r from the eigenvalue power sums."""
        q = self.p ** r
        return 1 + ALGEBRAIC_RANK * q + self.transcendental.power_sum(r) + q * q - (1 + q) * self.h1.power_sum(r)

    def predicted_trace(self, r=1):
        return self.transcendental.power_sum(r)

    def tate_class_count(self, r=1):
        """Number of transcendental eigenvalues whose r-th power is q = p^r: these become algebraic over F_q."""
        return self.transcendental.count_eigenvalues_equal(self.p ** r, r)

    def picard_number(self, r=None):
        """Picard number over F_{p^r} predicted by the Tate conjecture; r=None gives the geometric one, for which
        r = 12 suffices since all eigenvalue ratios are roots of unity in a quadratic field.
        """
        return ALGEBRAIC_RANK + self.tate_class_count(12 if r is None else r)

    def as_rational_function(self, variable=None):
        """The local factor as a sympy expression in T."""
        T = variable if variable is not None else sympy.Symbol('T')
        p = self.p
        numerator = self.h1.polynomial(T) * self.h1.polynomial(p * T)
        denominator = (1 - T) * (1 - p * T) ** ALGEBRAIC_RANK * self.transcendental.polynomial(T) * (1 - p * p * T)
        return numerator / denominator


def zeta_local(p, order=None):
    """Assembles the local zeta factor of S at p.

    :rtype: LocalZeta
    """
    return LocalZeta(p, euler_factor(p, 'weight2-B', order), euler_factor(p, 'weight3-T'))
