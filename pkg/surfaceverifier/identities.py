"""Exact verification of the identities relating the Legendre and Hesse families, the base curve B, the modular
surface S and the K3 surface X. Every check returns the residual it computed, so failures can be diagnosed.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from surfaceverifier.curves import WeierstrassCurve, PlaneCubic, nagell_reduce
from surfaceverifier.exceptions import ArgumentError, SingularCurveError
from surfaceverifier.fields import build_extension
from surfaceverifier.symbolic import LAM, MU, T, ETA_B, XI_B, BASE_CONSTANT, evaluate
from surfaceverifier.surfaces import SurfaceModel

logger = logging.getLogger(__name__)

# j(E_mu) has numerator and denominator of degree at most 36 in mu
HESSE_DEGREE_BOUND = 36
HESSE_FLEX = (1, -1, 0)
SURFACE_DISCRIMINANT = 6 ** 12


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of an identity check: the residual is zero (or empty) exactly when the identity holds."""
    name: str
    passed: bool
    residual: object
    witness: object = None
    details: dict = field(default_factory=dict)


def legendre_eta():
    """eta(lambda) = 8 (lambda+1)(lambda-2)(2 lambda-1) / (lambda (lambda-1))."""
    return 8 * (LAM + 1) * (LAM - 2) * (2 * LAM - 1) / (LAM * (LAM - 1))


def hessian_xi():
    """xi(mu) = 3 mu (mu^3 + 8) / (mu^3 - 1)."""
    return 3 * MU * (MU ** 3 + 8) / (MU ** 3 - 1)


def hessian_curve(mu=MU):
    """The Weierstrass model y^2 = x^3 - 27 mu (mu^3+8) x + 54 (mu^6 - 20 mu^3 - 8) of the Hesse pencil."""
    return WeierstrassCurve(-27 * mu * (mu ** 3 + 8), 54 * (mu ** 6 - 20 * mu ** 3 - 8))


def verify_legendre_eta():
    """Checks j(E_lambda) - 1728 = eta(lambda)^2 for the Legendre curve, as rational functions.

    :rtype: IdentityResult
    """
    j = WeierstrassCurve.legendre(LAM).j_invariant()
    residual = (j - BASE_CONSTANT - legendre_eta() ** 2).numer
    return IdentityResult('legendre-eta', not residual, residual.as_expr())


def verify_hessian_xi():
    """Checks j = xi(mu)^3 for the Weierstrass model of the Hesse pencil.

    :rtype: IdentityResult
    """
    residual = (hessian_curve().j_invariant() - hessian_xi() ** 3).numer
    return IdentityResult('hessian-xi', not residual, residual.as_expr())


def hesse_samples(count):
    """Sample parameters 0, -1, 2, -2, 3, -3, ... skipping mu = 1, the only rational mu with mu^3 = 1."""
    samples, k = [], 0
    while len(samples) < count:
        for mu in ((k,) if k == 0 else (k, -k)):
            if mu != 1 and len(samples) < count:
                samples.append(Fraction(mu))
        k += 1
    return samples


def verify_hesse_weierstrass_link(samples=100):
    """Reduces the Hesse cubic at the flex (1:-1:0) for many rational mu and compares j with that of the displayed
    Weierstrass model. Both sides are rational functions of degree at most 36 in mu, so agreement at more than
    73 points proves the identity.

    :raises ArgumentError: if samples does not exceed the interpolation bound
    :rtype: IdentityResult
    """
    bound = 2 * HESSE_DEGREE_BOUND + 1
    if samples <= bound:
        raise ArgumentError("at least {0} samples are required, got {1}".format(bound + 1, samples))

    mismatches = []
    for mu in hesse_samples(samples):
        try:
            reduced = nagell_reduce(PlaneCubic.hesse(mu), HESSE_FLEX)
        except SingularCurveError:
            mismatches.append(mu)
            continue
        displayed = hessian_curve(mu)
        if reduced.j_invariant() != displayed.j_invariant():
            mismatches.append(mu)
    logger.debug("compared {0} Hesse samples, {1} mismatch(es)".format(samples, len(mismatches)))
    return IdentityResult('hesse-weierstrass', not mismatches, tuple(mismatches),
                          details={'samples': samples, 'bound': bound})


def verify_surface_equation():
    """Checks Delta = 6^12, j = xi^3 and c4 = 6^4 xi for y^2 = x^3 - 27 xi x - 54 eta in the function field of B.

    :rtype: IdentityResult
    """
    curve = SurfaceModel.modular_surface().curve
    residuals = {
        'discriminant': curve.discriminant() - SURFACE_DISCRIMINANT,
        'j': curve.j_invariant() - XI_B ** 3,
        'c4': curve.c4 - 6 ** 4 * XI_B,
    }
    failing = {name: value for name, value in residuals.items() if value}
    return IdentityResult('surface-equation', not failing, failing,
                          details={'discriminant': curve.discriminant()})


def verify_base_change(max_degree=6):
    """Substitutes t = eta into the K3 surface X and searches u = xi^m with (u^4 a4, u^6 a6) equal to the
    coefficients of S.

    :rtype: IdentityResult
    """
    k3 = SurfaceModel.k3_surface().curve
    target = SurfaceModel.modular_surface().curve
    a4, a6 = evaluate(k3.a4, T, ETA_B), evaluate(k3.a6, T, ETA_B)
    details = {'a4': a4, 'a6': a6}

    for m in range(-max_degree, max_degree + 1):
        u = XI_B ** m
        if a4 / u ** 4 == target.a4 and a6 / u ** 6 == target.a6:
            return IdentityResult('base-change', True, (), witness="xi^{0}".format(m), details=details)
    return IdentityResult('base-change', False, (a4, a6), details=details)


def verify_projection_degree(p=10007, samples=20):
    """The projection (xi, eta) -> eta of B has degree 3: xi^3 - eta^2 - 1728 is irreducible over Q(eta) of degree
    3 in xi, and over F_p with p = 2 mod 3 every eta0 has exactly one preimage xi.

    :rtype: IdentityResult
    """
    if p % 3 != 2:
        raise ArgumentError("the preimage count needs p = 2 mod 3")
    xi, eta = sympy.symbols('xi eta')
    _, factors = sympy.factor_list(xi ** 3 - eta ** 2 - BASE_CONSTANT)
    degree = sympy.degree(factors[0][0], xi) if len(factors) == 1 and factors[0][1] == 1 else None

    prime_field = build_extension(p)
    counts = {}
    for eta0 in range(1, samples + 1):
        target = prime_field.vadd(prime_field.square_table[eta0], BASE_CONSTANT % p)
        counts[eta0] = int((prime_field.cube_table == target).sum())
    wrong = {eta0: n for eta0, n in counts.items() if n != 1}
    return IdentityResult('projection-degree', degree == 3 and not wrong, wrong, witness=degree,
                          details={'p': p, 'preimages': counts})


def verify_order4_automorphism():
    """The map (x, y, xi, eta) -> (-x, iy, xi, -eta) preserves y^2 = x^3 - 27 xi x - 54 eta, and its square is the
    inversion (x, y) -> (x, -y).

    :rtype: IdentityResult
    """
    x, y, xi, eta = sympy.symbols('x y xi eta')
    equation = y ** 2 - (x ** 3 - 27 * xi * x - 54 * eta)

    def phi(expr):
        return expr.subs({x: -x, y: sympy.I * y, eta: -eta}, simultaneous=True)

    preserved = sympy.expand(phi(equation) + equation)
    square = sympy.expand(phi(phi(x)) - x), sympy.expand(phi(phi(y)) + y), sympy.expand(phi(phi(eta)) - eta)
    residual = tuple(r for r in (preserved,) + square if r != 0)
    return IdentityResult('order4-automorphism', not residual, residual)

