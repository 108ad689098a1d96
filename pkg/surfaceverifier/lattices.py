"""Exact Gram-matrix lattices: root lattices, trivial lattices of elliptic surfaces, the height and determinant
formulas for Mordell-Weil lattices, torsion enumeration, and the rank-two tools (Gauss reduction, order-4
isometries) used to identify lattices similar to the square lattice.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, isqrt, prod

import numpy as np
from sympy import ImmutableMatrix, Rational, diag, zeros

from surfaceverifier import _util, ARTIN_TATE, DEFAULT_ISOMETRY_BOUND
from surfaceverifier.exceptions import ArgumentError, DegenerateLatticeError, ResidueClassError, LatticeError

logger = logging.getLogger(__name__)


def _rational(value):
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


class GramLattice(object):
    """A lattice given by its symmetric Gram matrix with rational entries.

    :param gram: square matrix, as nested sequences or a sympy matrix
    :raises ArgumentError: if the matrix is not square and symmetric
    """

    def __init__(self, gram):
        if hasattr(gram, 'tolist'):
            gram = ImmutableMatrix(gram)
        elif len(gram):
            gram = ImmutableMatrix([[_rational(c) for c in row] for row in gram])
        else:
            gram = ImmutableMatrix(zeros(0, 0))
        if gram.rows != gram.cols or gram != gram.T:
            raise ArgumentError("Gram matrix must be square and symmetric")
        self.gram = gram

    @classmethod
    def square(cls, scale=1, rank=2):
        """The square lattice Z^rank with the pairing multiplied by *scale*."""
        return cls(ImmutableMatrix(diag(*([_rational(scale)] * rank))))

    def __repr__(self):
        return "<GramLattice {0}>".format(self.gram.tolist())

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __getitem__(self, item):
        return _util.to_fraction(self.gram[item])

    @property
    def rank(self):
        return self.gram.rows

    @property
    def determinant(self):
        """Determinant by fraction-free elimination; the empty lattice has determinant 1.

        :rtype: Fraction
        """
        if not self.rank:
            return Fraction(1)
        return _util.to_fraction(self.gram.det(method='bareiss'))

    def rescale(self, c):
        """L[c], the same group with the pairing multiplied by c."""
        return GramLattice(self.gram * _rational(c))

    def negate(self):
        return self.rescale(-1)

    def __add__(self, other):
        return direct_sum(self, other)

    @property
    def is_positive_definite(self):
        if self.rank == 2:
            return self[0, 0] > 0 and self[0, 0] * self[1, 1] - self[0, 1] ** 2 > 0
        return self.rank == 0 or bool(self.gram.is_positive_definite)

    def norm(self, vector):
        v = ImmutableMatrix([_rational(c) for c in vector])
        return _util.to_fraction((v.T * self.gram * v)[0, 0])

    def preserves(self, matrix):
        """Whether the integral matrix M satisfies M^T G M = G."""
        m = ImmutableMatrix(matrix)
        return m.T * self.gram * m == self.gram


def direct_sum(*lattices):
    blocks = [lattice.gram for lattice in lattices if lattice.rank]
    if not blocks:
        return GramLattice([])
    return GramLattice(ImmutableMatrix(diag(*blocks)))


def root_gram(name, n):
    """Gram matrix of the positive-definite root lattice A_n, D_n or E_n.

    Labelling: A_n is the chain 0..n-1; D_n is the chain 0..n-2 with node n-1 attached to node n-3; E_n is the chain
    0..n-2 with node n-1 attached to node 2.

    :raises ArgumentError: for invalid Dynkin parameters
    :rtype: GramLattice
    """
    if name == 'A' and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif name == 'D' and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif name == 'E' and n in (6, 7, 8):
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise ArgumentError("there is no root lattice {0}{1}".format(name, n))

    gram = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return GramLattice(gram)


def trivial_lattice(fibers, chi=1):
    """The trivial lattice spanned by the zero section, a fiber and the non-identity fiber components: the block
    [[-chi, 1], [1, 0]] followed by the negated root lattices of the reducible fibers.

    :param fibers: FiberData of the singular fibers
    :param int chi: arithmetic genus of the surface
    :rtype: GramLattice
    """
    blocks = [GramLattice([[-chi, 1], [1, 0]])]
    for fiber in fibers:
        if fiber.root_lattice is not None:
            blocks.append(root_gram(*fiber.root_lattice).negate())
    return direct_sum(*blocks)


@dataclass(frozen=True)
class SectionData:
    """Intersection data of a section P: the arithmetic genus, the intersection number (PO) with the zero section and
    for every reducible fiber the index of the component P meets.
    """
    chi: int
    intersection: int
    components: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.intersection < 0:
            raise ArgumentError("intersection number must be non-negative")


def height_norm(section, fibers):
    """The height <P, P> = 2 chi + 2 (PO) - sum of the local contributions.

    :param SectionData section: the section
    :param fibers: FiberData, one per entry of ``section.components``
    :raises ArgumentError: if a component index is out of range
    :rtype: Fraction
    """
    if len(section.components) != len(fibers):
        raise ArgumentError("one component choice per fiber is required")
    correction = Fraction(0)
    for component, fiber in zip(section.components, fibers):
        if not 0 <= component < len(fiber.contributions):
            raise ArgumentError("fiber {0} has no simple component {1}".format(fiber.kodaira_type, component))
        correction += fiber.contributions[component]
    return 2 * section.chi + 2 * section.intersection - correction


def torsion_search(chi, fibers):
    """Enumerates the intersection data a torsion section would need: all ((PO), contributions) with
    2 chi + 2 (PO) = sum of contributions. Contribution value sets are taken per fiber, either from FiberData or as
    explicit collections of values. An empty result shows the Mordell-Weil group is torsion-free.

    :rtype: list
    """
    value_sets = []
    for fiber in fibers:
        values = fiber.contribution_values if hasattr(fiber, 'contribution_values') else fiber
        value_sets.append(sorted(set(Fraction(v) for v in values)))

    solutions = []
    for choice in itertools.product(*value_sets):
        total = sum(choice, Fraction(0))
        intersection = (total - 2 * chi) / 2
        if intersection >= 0 and intersection.denominator == 1:
            solutions.append((int(intersection), choice))
    logger.debug("torsion search for chi={0} yields {1} solution(s)".format(chi, len(solutions)))
    return solutions


def det_formula(det_ns, trivial, torsion_order=1):
    """Predicted determinant of the Mordell-Weil lattice: |det M| = torsion^2 |det NS / det V|.

    :raises DegenerateLatticeError: if det V vanishes
    :rtype: Fraction
    """
    det_v = trivial.determinant
    if not det_v:
        raise DegenerateLatticeError("the trivial lattice is degenerate")
    return abs(Fraction(det_ns) / det_v) * torsion_order ** 2


def _require_binary_definite(lattice):
    if lattice.rank != 2 or not lattice.is_positive_definite:
        raise DegenerateLatticeError("{0} is not a positive-definite binary lattice".format(lattice))


def find_order4_isometry(lattice, bound=DEFAULT_ISOMETRY_BOUND):
    """Searches an integral M = [[a, b], [c, -a]] with a^2 + bc = -1 (so M^2 = -1), entries bounded by *bound*,
    and M^T G M = G. The search order is deterministic.

    :raises DegenerateLatticeError: if the lattice is not binary and positive definite
    :return: the witness as a tuple of rows, or None
    """
    _require_binary_definite(lattice)
    e, f, g = (int(v) if v.denominator == 1 else v for v in (lattice[0, 0], lattice[0, 1], lattice[1, 1]))
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if not b or (-1 - a * a) % b:
                continue
            c = (-1 - a * a) // b
            if abs(c) > bound:
                continue
            # images of the basis vectors are the columns (a, c) and (b, -a)
            if e * a * a + 2 * f * a * c + g * c * c == e and \
                    e * a * b + f * (c * b - a * a) - g * c * a == f and \
                    e * b * b - 2 * f * a * b + g * a * a == g:
                return (a, b), (c, -a)
    return None


def _nearest_integer(value):
    return floor(value + Fraction(1, 2))


def gauss_reduce(lattice):
    """Lagrange-Gauss reduction of a positive-definite binary form to [[a, b], [b, c]] with 0 <= 2b <= a <= c.

    :rtype: GramLattice
    """
    _require_binary_definite(lattice)
    a, b, c = lattice[0, 0], lattice[0, 1], lattice[1, 1]
    if a > c:
        a, c = c, a
    while True:
        m = _nearest_integer(b / a)
        b, c = b - m * a, c - 2 * m * b + m * m * a
        if c < a:
            a, c = c, a
            continue
        break
    return GramLattice([[a, abs(b)], [abs(b), c]])


def reduced_forms(determinant):
    """All Gauss-reduced positive-definite integral binary forms [[a, b], [b, c]] with ac - b^2 = *determinant*,
    in the normalization 0 <= 2b <= a <= c of :func:`gauss_reduce`. Every class occurs; classes with b = a/2 or a = c
    occur once.

    :raises ArgumentError: if the determinant is not a positive integer
    :rtype: list[GramLattice]
    """
    if int(determinant) != determinant or determinant < 1:
        raise ArgumentError("no positive-definite forms of determinant {0}".format(determinant))
    determinant = int(determinant)
    forms = []
    # a^2 <= ac = d + b^2 <= d + a^2/4
    for a in range(1, isqrt(4 * determinant // 3) + 1):
        b = np.arange(a // 2 + 1, dtype=np.int64)
        numerators = determinant + b * b
        for b0, numerator in zip(b[numerators % a == 0], numerators[numerators % a == 0]):
            c = int(numerator) // a
            if c >= a:
                forms.append(GramLattice([[a, int(b0)], [int(b0), c]]))
    logger.debug("{0} reduced form(s) of determinant {1}".format(len(forms), determinant))
    return forms


def is_similar_square(lattice):
    """Returns c if the lattice is isometric to L0[c] for the square lattice L0 = Z^2, otherwise None."""
    reduced = gauss_reduce(lattice)
    if reduced[0, 1] == 0 and reduced[0, 0] == reduced[1, 1]:
        return reduced[0, 0]
    return None


def narrow_index(det_ns, trivial, component_groups):
    """Index of the narrow Mordell-Weil lattice in the full one, from discriminant gluing.

    When det NS and det V are coprime, the whole discriminant group of V is glued, so the index is |det V|. The
    index must agree with the product of the component-group orders.

    :raises LatticeError: if the determinants are not coprime or the index disagrees with the component groups
    """
    det_v = trivial.determinant
    if det_v.denominator != 1 or gcd(int(det_ns), det_v.numerator) != 1:
        raise LatticeError("det NS {0} and det V {1} are not coprime".format(det_ns, det_v))
    index = abs(det_v.numerator)
    if index != prod(component_groups):
        raise LatticeError("index {0} disagrees with the component groups {1}".format(index, component_groups))
    return index


@dataclass(frozen=True)
class ReductionLattice:
    """Determinant bookkeeping of a supersingular reduction lattice L(p)."""
    surface: str
    mordell_weil_det: Fraction
    index: int
    determinant: Fraction
    scale: int
    assumptions: tuple = (ARTIN_TATE,)

    @property
    def ratio(self):
        return self.determinant / self.mordell_weil_det


def artin_tate_det(p):
    """The determinant of NS over the algebraic closure of F_p predicted by the Artin-Tate formula, -p^2.

    :raises ResidueClassError: unless p is a prime > 3 with p = 3 mod 4
    """
    if not _util.is_prime(p) or p <= 3 or p % 4 != 3:
        raise ResidueClassError("the prediction is only made for primes p = 3 mod 4, p > 3, not {0}".format(p))
    return -p * p


def reduction_lattice(name, fibers, chi, p):
    """Determinant and scale of L(p) for a surface with the given fibers: det L = |det M| index^2 with det M from
    the determinant formula under det NS = -p^2.

    :rtype: ReductionLattice
    """
    det_ns = artin_tate_det(p)
    trivial = trivial_lattice(fibers, chi)
    mordell_weil_det = det_formula(det_ns, trivial)
    index = narrow_index(det_ns, trivial, [fiber.group_order for fiber in fibers])
    determinant = mordell_weil_det * index * index
    if determinant.denominator != 1:
        raise LatticeError("det L(p) = {0} is not integral".format(determinant))
    return ReductionLattice(name, mordell_weil_det, index, determinant, _util.exact_sqrt(determinant.numerator))


def supersingular_reduction_scalings(p, surfaces):
    """The scales c with L(p) similar to L0[c] for each surface.

    :param int p: a prime p = 3 mod 4
    :param dict surfaces: maps a name to (fibers, chi)
    :rtype: dict
    """
    return {name: reduction_lattice(name, fibers, chi, p) for name, (fibers, chi) in sorted(surfaces.items())}


def transcendental_determinant(fibers, chi):
    """|det T| of the transcendental lattice in characteristic 0 for an extremal surface, where NS = V and
    |det T| = |det NS| by unimodularity of the ambient lattice.

    :raises LatticeError: if the determinant is not integral
    """
    det = abs(trivial_lattice(fibers, chi).determinant)
    if det.denominator != 1:
        raise LatticeError("det V = {0} is not integral".format(det))
    return det.numerator
