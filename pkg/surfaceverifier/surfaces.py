"""The elliptic modular surface S over the base curve B: eta^2 = xi^3 - 1728 with generic fiber
y^2 = x^3 - 27 xi x - 54 eta, the K3 surface X over the t-line it is a base change of, point counts of S over finite
fields and the Frobenius bookkeeping derived from them.
"""

import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import sympy

from surfaceverifier import TATE_K3
from surfaceverifier.curves import WeierstrassCurve
from surfaceverifier.exceptions import DataCorruptionError, UnsupportedPlaceError, ArgumentError
from surfaceverifier.fields import field_of_order
from surfaceverifier.kodaira import minimal_model_at, classify_fiber, fiber_point_count, KodairaType
from surfaceverifier.lattices import supersingular_reduction_scalings
from surfaceverifier.modular import zeta_local, cm_weight3_bp
from surfaceverifier.symbolic import BFieldElement, Place, XI, T, BASE_CONSTANT, rational_function, degree

logger = logging.getLogger(__name__)


class SurfaceModel(object):
    """An elliptic surface given by a short Weierstrass equation over the function field of its base.

    :param str name: short name used in reports
    :param str base: ``B`` for the base curve B, ``P1`` for the projective t-line
    :param a4: coefficient, a BFieldElement or a rational function in t
    :param a6: coefficient, a BFieldElement or a rational function in t
    """

    def __init__(self, name, base, a4, a6):
        self.name = name
        self.base = base
        self.curve = WeierstrassCurve(a4, a6)

    @classmethod
    def modular_surface(cls):
        """The elliptic modular surface S: y^2 = x^3 - 27 xi x - 54 eta over B."""
        return cls('S', 'B', BFieldElement(-27 * XI), BFieldElement(0, -54))

    @classmethod
    def k3_surface(cls):
        """The K3 surface X: y^2 = x^3 - 27 (t^2+1728)^3 x - 54 t (t^2+1728)^4 over the t-line."""
        s = T ** 2 + BASE_CONSTANT
        return cls('X', 'P1', -27 * s ** 3, -54 * T * s ** 4)

    def __repr__(self):
        return "<SurfaceModel {0} over {1}>".format(self.name, self.base)

    def candidate_places(self):
        """Places where the fiber may be singular: zeros of the discriminant, poles of the coefficients and the
        places at infinity.

        :raises UnsupportedPlaceError: if finite places of B would have to be examined
        """
        delta = self.curve.discriminant()
        if self.base == 'B':
            parts = [delta.a, delta.b, self.curve.a4.a, self.curve.a4.b, self.curve.a6.a, self.curve.a6.b]
            if delta.b or not delta.a.numer.is_ground or any(not part.denom.is_ground for part in parts):
                raise UnsupportedPlaceError("finite places of B are not supported")
            return [Place.origin()]

        polynomials = [rational_function(delta).numer]
        polynomials += [rational_function(c).denom for c in (self.curve.a4, self.curve.a6)]
        factors = set()
        for poly in polynomials:
            _, factor_list = sympy.factor_list(poly.as_expr(), T.as_expr())
            factors.update(factor for factor, _ in factor_list)
        places = [Place.finite(factor) for factor in sorted(factors, key=sympy.default_sort_key)]
        return places + [Place.infinity()]

    @functools.cached_property
    def singular_fibers(self):
        """List of (place, FiberData) of the singular fibers."""
        fibers = []
        for place in self.candidate_places():
            fiber = classify_fiber(minimal_model_at(self.curve, place))
            if fiber.kodaira_type != KodairaType('I', 0):
                fibers.append((place, fiber))
        return fibers

    @property
    def fibers(self):
        return [fiber for _, fiber in self.singular_fibers]

    @property
    def euler_number(self):
        """Sum of the Euler numbers of the singular fibers. Irreducible fibers over places of degree d count d
        times.
        """
        return sum(_place_degree(place) * fiber.euler_number for place, fiber in self.singular_fibers)

    @property
    def chi(self):
        return self.euler_number // 12

    @property
    def fiber_configuration(self):
        """The singular fibers over the algebraic closure, one entry per geometric point."""
        return [fiber for place, fiber in self.singular_fibers for _ in range(_place_degree(place))]


def _place_degree(place):
    if place.kind == 'finite':
        return degree(place.polynomial, place.variable)
    return 1


@dataclass(frozen=True)
class SurfaceCount:
    """#S(F_q) split over the fibration: the smooth fibers over the affine part of B and the I6* fiber."""
    q: int
    total: int
    smooth_fiber_sum: int
    singular_fiber_contribution: int
    affine_base_points: int
    singular_base_points: int = 0

    def __post_init__(self):
        if self.total != self.smooth_fiber_sum + self.singular_fiber_contribution:
            raise DataCorruptionError("surface count {0} does not match its breakdown".format(self.total))

    @property
    def base_points(self):
        """#B(F_q), including the origin."""
        return self.affine_base_points + 1

    @property
    def base_trace(self):
        return self.q + 1 - self.base_points


def count_surface_S(q, threads=None):
    """Counts the points of S over F_q as the sum of #E_b(F_q) over the affine points b of B plus the points of
    the I6* fiber.

    The base-point loop is split into chunks over xi; chunk results are reduced in order.

    :raises UnsupportedCharacteristicError: if q is not a power of a prime > 3
    :rtype: SurfaceCount
    """
    field = field_of_order(q)
    cube, squares, character = field.cube_table, field.square_table, field.character_table
    roots = field.square_roots
    xs = field.all_indices
    rhs = field.vadd(cube, field(-BASE_CONSTANT).index)
    minus27, minus54 = field(-27).index, field(-54).index
    four, twenty_seven = field(4).index, field(27).index

    def partial(chunk):
        smooth, base_points, singular = 0, 0, 0
        for xi in chunk:
            etas = roots.get(int(rhs[xi]))
            if etas is None:
                continue
            a4 = int(field.vmul(minus27, xi))
            a6s = field.vmul(minus54, etas)
            values = field.vadd(field.vadd(cube, field.vmul(xs, a4))[np.newaxis, :], a6s[:, np.newaxis])
            smooth += len(etas) * (q + 1) + int(character[values].sum())
            base_points += len(etas)

            discriminants = field.vadd(field.vmul(four, cube[a4]), field.vmul(twenty_seven, squares[a6s]))
            singular += int((discriminants == 0).sum())
        return smooth, base_points, singular

    workers = max(1, threads or 1)
    chunks = np.array_split(xs, min(workers * 4, q))
    if workers == 1:
        results = [partial(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(partial, chunks))

    smooth = sum(r[0] for r in results)
    base_points = sum(r[1] for r in results)
    singular = sum(r[2] for r in results)
    special = fiber_point_count(modular_fiber(), q)
    logger.debug("#S(F_{0}) = {1} + {2}".format(q, smooth, special))
    return SurfaceCount(q, smooth + special, smooth, special, base_points, singular)


@functools.lru_cache(maxsize=None)
def modular_fiber():
    """The unique singular fiber of S, over the origin of B."""
    return SurfaceModel.modular_surface().fibers[0]


@dataclass(frozen=True)
class TraceReport:
    """Frobenius traces extracted from a surface count: a on H^1 and b on the transcendental part of H^2."""
    q: int
    a: int
    b: int
    status: str = 'ok'


def lefschetz_b(q, count=None):
    """Extracts b_q = #S(F_q) - 1 - 12q - q^2 + (1+q) a_q from a surface count.

    :raises DataCorruptionError: if |b_q| > 2q
    :rtype: TraceReport
    """
    count = count or count_surface_S(q)
    a = count.base_trace
    b = count.total - 1 - 12 * q - q * q + (1 + q) * a
    if abs(b) > 2 * q:
        raise DataCorruptionError("b_{0} = {1} exceeds the weight-3 bound".format(q, b))
    return TraceReport(q, a, b)


def tate_class_count(p, r=1):
    """Number of transcendental Frobenius eigenvalues over F_{p^r} equal to p^r."""
    return zeta_local(p).tate_class_count(r)


def mordell_weil_rank(p, r=1):
    """Rank of E over F_{p^r}(B) predicted from the Tate classes: rho - 2 - 10."""
    return tate_class_count(p, r)


@dataclass(frozen=True)
class DichotomyReport:
    """Outcome of the Picard number dichotomy at p."""
    p: int
    b_p: int
    predicted_b_p: int
    b_p2: object
    picard_number: int
    ranks: tuple
    assumptions: tuple
    failures: tuple

    @property
    def holds(self):
        return not self.failures


def dichotomy_check(p, count=None, count_p2=None):
    """Checks the eigenvalue input of the Picard number dichotomy: for p = 1 mod 4, b_p = pi^2 + conj(pi)^2 and
    b_p differs from +-2p, so rho = 12 and the rank is 0; for p = 3 mod 4, b_p = 0 and b_{p^2} = 2p^2, so rho = 14
    with rank 1 over F_p and 2 over F_{p^2}. The F_{p^2} count is only used when given.

    :rtype: DichotomyReport
    """
    if p <= 3:
        raise ArgumentError("the dichotomy is stated for p > 3")
    zeta = zeta_local(p)
    b_p = lefschetz_b(p, count).b
    predicted = cm_weight3_bp(p)
    failures = []
    if b_p != predicted:
        failures.append("b_p = {0}, expected {1}".format(b_p, predicted))

    b_p2 = None
    if count_p2 is not None:
        b_p2 = lefschetz_b(p * p, count_p2).b
        if b_p2 != zeta.predicted_trace(2):
            failures.append("b_p^2 = {0}, expected {1}".format(b_p2, zeta.predicted_trace(2)))

    if p % 4 == 1:
        if abs(b_p) == 2 * p:
            failures.append("b_p = {0} is a Tate class".format(b_p))
        assumptions = ()
    else:
        if b_p != 0:
            failures.append("b_p = {0} is not 0".format(b_p))
        assumptions = (TATE_K3,)

    ranks = tuple((r, zeta.tate_class_count(r)) for r in (1, 2))
    return DichotomyReport(p, b_p, predicted, b_p2, zeta.picard_number(), ranks, assumptions, tuple(failures))


def reduction_scalings(p):
    """Determinant bookkeeping of the supersingular reduction lattices L_S(p) and L_X(p).

    :rtype: dict
    """
    surfaces = {}
    for model in (SurfaceModel.modular_surface(), SurfaceModel.k3_surface()):
        surfaces[model.name] = (model.fiber_configuration, model.chi)
    return supersingular_reduction_scalings(p, surfaces)
