import logging
import os
import sys
from fractions import Fraction

from sympy import integer_nthroot

from surfaceverifier.exceptions import UnsupportedCharacteristicError, ArgumentError

logger = logging.getLogger(__name__)


def is_prime(n):
    """Deterministic primality test by trial division. All moduli in this package are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_between(low, high):
    """Returns all primes p with low <= p <= high, in ascending order."""
    return [n for n in range(max(low, 2), high + 1) if is_prime(n)]


def good_primes(high):
    """Primes of good reduction up to and including *high*, i.e. all primes > 3."""
    return primes_between(5, high)


def prime_power(q):
    """Decomposes q = p^r.

    :raises UnsupportedCharacteristicError: if q is not a prime power
    """
    for r in range(1, q.bit_length() + 1):
        p, exact = integer_nthroot(q, r)
        if exact and is_prime(int(p)):
            return int(p), r
    raise UnsupportedCharacteristicError("{0} is not a prime power".format(q))


def ceil_div(a, b):
    return -(-a // b)


def exact_sqrt(n):
    """Returns the integer square root of a perfect square *n*.

    :raises ArgumentError: if n is not a perfect square
    """
    root, exact = integer_nthroot(int(n), 2)
    if not exact:
        raise ArgumentError("{0} is not a perfect square".format(n))
    return int(root)


def to_fraction(value):
    """Converts sympy rationals, ground domain elements and ints to :class:`fractions.Fraction`."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):  # sympy Rational / Integer
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


def render(value):
    """Renders a value exactly, for reports. Fractions are written a/b, containers recursively."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else "{0}/{1}".format(value.numerator,
                                                                                    value.denominator)
    if isinstance(value, dict):
        return "{" + ", ".join("{0}: {1}".format(k, render(v)) for k, v in sorted(value.items())) + "}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(render(v) for v in value) + ")"
    if callable(value) and hasattr(value, '__name__'):
        return value.__name__
    return str(value)


def terminal_supports_color():
    return (sys.platform != 'Pocket PC' and (sys.platform != 'win32' or 'ANSICON' in os.environ)
            and hasattr(sys.stdout, 'isatty') and sys.stdout.isatty())
