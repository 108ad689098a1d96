"""Minimal local Weierstrass models at places of a function field and Kodaira fiber classification away from
characteristic 2 and 3.
"""

import logging
from dataclasses import dataclass

from surfaceverifier import _util
from surfaceverifier.curves import WeierstrassCurve
from surfaceverifier.exceptions import ClassificationError, UnsupportedFiberError, UnsupportedPlaceError, \
    ArgumentError
from surfaceverifier.lattices import root_gram
from surfaceverifier.symbolic import valuation, INFINITY

logger = logging.getLogger(__name__)

# additive potentially good reduction, by v(Delta)
POTENTIALLY_GOOD = {2: ('II', 0), 3: ('III', 0), 4: ('IV', 0), 6: ('I*', 0), 8: ('IV*', 0), 9: ('III*', 0),
                    10: ('II*', 0)}

# Euler number and root lattice of the non-identity components
FIBER_TABLE = {
    'II': (2, None),
    'III': (3, ('A', 1)),
    'IV': (4, ('A', 2)),
    'IV*': (8, ('E', 6)),
    'III*': (9, ('E', 7)),
    'II*': (10, ('E', 8)),
}

# simple components (multiplicity one) among the non-identity components, for the labelling of root_gram
SIMPLE_NODES = {'E6': (0, 4), 'E7': (5,), 'E8': ()}

# node of the root lattice the identity component meets, for tree-shaped dual graphs
IDENTITY_NEIGHBOUR = {'E6': 5, 'E7': 0, 'E8': 6}


class KodairaType(object):
    """A Kodaira symbol: ``I`` and ``I*`` carry an index n >= 0, the other families do not."""

    FAMILIES = ('I', 'I*', 'II', 'III', 'IV', 'IV*', 'III*', 'II*')

    def __init__(self, family, n=0):
        if family not in self.FAMILIES or n < 0 or (family not in ('I', 'I*') and n):
            raise ArgumentError("invalid Kodaira type {0} {1}".format(family, n))
        self.family = family
        self.n = n

    @classmethod
    def parse(cls, symbol):
        """Parses symbols like ``I0``, ``I6*``, ``IV*``."""
        for family in ('II*', 'III*', 'IV*', 'II', 'III', 'IV'):
            if symbol == family:
                return cls(family)
        star = symbol.endswith('*')
        digits = symbol[1:-1] if star else symbol[1:]
        if not symbol.startswith('I') or not digits.isdigit():
            raise ArgumentError("cannot parse Kodaira type {0}".format(symbol))
        return cls('I*' if star else 'I', int(digits))

    def __str__(self):
        if self.family == 'I':
            return "I{0}".format(self.n)
        if self.family == 'I*':
            return "I{0}*".format(self.n)
        return self.family

    def __repr__(self):
        return "<KodairaType {0}>".format(self)

    def __eq__(self, other):
        return isinstance(other, KodairaType) and (self.family, self.n) == (other.family, other.n)

    def __hash__(self):
        return hash((self.family, self.n))

    @property
    def euler_number(self):
        if self.family == 'I':
            return self.n
        if self.family == 'I*':
            return self.n + 6
        return FIBER_TABLE[self.family][0]

    @property
    def root_lattice(self):
        """Dynkin type (name, rank) of the lattice spanned by the non-identity components, or None."""
        if self.family == 'I':
            return ('A', self.n - 1) if self.n >= 2 else None
        if self.family == 'I*':
            return ('D', self.n + 4)
        return FIBER_TABLE[self.family][1]

    @property
    def components(self):
        lattice = self.root_lattice
        return 1 + (lattice[1] if lattice else 0)

    @property
    def expected_valuations(self):
        """A valuation triple (v(c4), v(c6), v(Delta)) of a minimal model with this fiber type."""
        if self.family == 'I':
            return (0, 0, self.n)
        if self.family == 'I*':
            return (2, 3, self.n + 6)
        return {'II': (1, 1, 2), 'III': (1, 2, 3), 'IV': (2, 2, 4), 'IV*': (3, 4, 8), 'III*': (3, 5, 9),
                'II*': (4, 5, 10)}[self.family]


@dataclass(frozen=True)
class LocalModel:
    """A minimal integral model at a place, obtained by scaling with u = uniformizer^k."""
    curve: WeierstrassCurve
    place: object
    k: int
    v_c4: object
    v_c6: object
    v_delta: int

    @property
    def v_j(self):
        if self.v_c4 == INFINITY:
            return INFINITY
        return 3 * self.v_c4 - self.v_delta


@dataclass(frozen=True)
class FiberData:
    """A Kodaira type with its invariants: Euler number, number of components, order of the component group and the
    height contributions of the simple components, the identity component first.
    """
    kodaira_type: KodairaType
    euler_number: int
    components: int
    group_order: int
    contributions: tuple

    @property
    def root_lattice(self):
        return self.kodaira_type.root_lattice

    @property
    def contribution_values(self):
        return sorted(set(self.contributions))

    def __str__(self):
        return str(self.kodaira_type)


def _ceil_fraction(value, divisor):
    if value == INFINITY:
        return -INFINITY
    return _util.ceil_div(-value, divisor)


def minimal_model_at(curve, place):
    """Scales the curve by u = uniformizer^k with the smallest k that makes u^4 a4 and u^6 a6 integral at the
    place.

    :raises UnsupportedPlaceError: at places of residue characteristic 2 or 3
    :raises ArgumentError: if the curve is singular
    :rtype: LocalModel
    """
    if place.characteristic in (2, 3):
        raise UnsupportedPlaceError("residue characteristic {0} is not supported".format(place.characteristic))
    delta = curve.discriminant()
    if not delta:
        raise ArgumentError("{0} is singular".format(curve))

    v4, v6 = valuation(curve.a4, place), valuation(curve.a6, place)
    k = max(_ceil_fraction(v4, 4), _ceil_fraction(v6, 6))
    u = place.uniformizer ** k
    model = LocalModel(curve=curve.scaled(u), place=place, k=k,
                       v_c4=v4 + 4 * k, v_c6=v6 + 6 * k, v_delta=valuation(delta, place) + 12 * k)
    logger.debug("minimal model at {0}: k={1}, valuations ({2}, {3}, {4})".format(place, k, model.v_c4, model.v_c6,
                                                                                 model.v_delta))
    return model


def classify_valuations(a, b, d):
    """Kodaira type of a minimal model with valuations v(c4) = a, v(c6) = b and v(Delta) = d.

    :raises ClassificationError: if the triple is not minimal or matches no row of the table
    """
    if a >= 4 and b >= 6 and d >= 12:
        raise ClassificationError("valuations ({0}, {1}, {2}) belong to a non-minimal model".format(a, b, d))
    if d == 0:
        return KodairaType('I', 0)
    if a == 0:
        if b != 0:
            raise ClassificationError("inconsistent valuations ({0}, {1}, {2})".format(a, b, d))
        return KodairaType('I', d)
    if 3 * a >= d:
        if d not in POTENTIALLY_GOOD:
            raise ClassificationError("no fiber type with valuations ({0}, {1}, {2})".format(a, b, d))
        return KodairaType(*POTENTIALLY_GOOD[d])
    if a == 2 and b == 3 and d > 6:
        return KodairaType('I*', d - 6)
    raise ClassificationError("no fiber type with valuations ({0}, {1}, {2})".format(a, b, d))


def fiber_data(kodaira_type):
    """Assembles the invariants of a Kodaira type. Contributions are diagonal entries of the inverse root Gram
    matrix at the simple components.

    :rtype: FiberData
    """
    lattice = kodaira_type.root_lattice
    contributions = [_util.to_fraction(0)]
    group_order = 1
    if lattice is not None:
        gram = root_gram(*lattice)
        group_order = int(gram.determinant)
        inverse = gram.gram.inv()
        for node in simple_nodes(*lattice):
            contributions.append(_util.to_fraction(inverse[node, node]))
    return FiberData(kodaira_type, kodaira_type.euler_number, kodaira_type.components, group_order,
                     tuple(contributions))


def simple_nodes(name, n):
    if name == 'A':
        return tuple(range(n))
    if name == 'D':
        return (0, n - 2, n - 1)
    return SIMPLE_NODES["E{0}".format(n)]


def classify_fiber(model):
    """Kodaira type and invariants of the fiber of a minimal local model.

    :rtype: FiberData
    """
    kodaira_type = classify_valuations(model.v_c4, model.v_c6, model.v_delta)
    logger.debug("fiber at {0} has type {1}".format(model.place, kodaira_type))
    return fiber_data(kodaira_type)


def dual_graph(kodaira_type):
    """Vertices and edges (with multiplicity) of the dual graph of a fiber whose components are all rational
    curves meeting transversally, the identity component labelled 'O'.
    """
    lattice = kodaira_type.root_lattice
    if lattice is None:
        return ['O'], []
    name, n = lattice
    gram = root_gram(name, n)
    vertices = ['O'] + list(range(n))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if gram[i, j]]

    if kodaira_type.family == 'I':
        edges += [('O', 0), ('O', n - 1)]
    elif name == 'D':
        edges.append(('O', 1))
    else:
        edges.append(('O', IDENTITY_NEIGHBOUR["E{0}".format(n)]))
    return vertices, edges


def fiber_point_count(fiber, q, all_components_rational=True, curve=None):
    """Number of F_q-points of a singular fiber whose components are all defined over F_q.

    Tree configurations of rational lines (I_n*, IV*, III*, II*) and cycles I_n (n >= 2) are counted by
    inclusion-exclusion over the dual graph; II, III and IV by their cusp, tangency and triple point. Smooth fibers
    are delegated to the curve count of *curve*.

    :raises UnsupportedFiberError: if not all components are rational, or a smooth fiber comes without its curve
    """
    if not all_components_rational:
        raise UnsupportedFiberError("fibers with non-rational components are not supported")
    kodaira_type = fiber.kodaira_type
    if kodaira_type == KodairaType('I', 0):
        if curve is None:
            raise UnsupportedFiberError("counting a smooth fiber requires its curve")
        return curve.count_points().n

    family = kodaira_type.family
    if family == 'II':
        return q + 1
    if family == 'III':
        return 2 * q + 1
    if family == 'IV':
        return 3 * q + 1
    if kodaira_type == KodairaType('I', 1):
        return q

    vertices, edges = dual_graph(kodaira_type)
    return len(vertices) * (q + 1) - len(edges)
