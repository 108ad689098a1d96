"""Numerical invariants of elliptic surfaces and the extremality of pullbacks along multiplication-by-n maps of an
elliptic base curve.
"""

import logging
from dataclasses import dataclass

from surfaceverifier.exceptions import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceInvariants:
    """Invariants of an elliptic surface with a section, arithmetic genus chi and base curve of genus g."""
    chi: int
    base_genus: int
    euler_number: int
    b1: int
    b2: int
    h11: int
    pg: int
    irregularity: int

    @property
    def hodge_diamond(self):
        """Rows of the Hodge diamond from h^{0,0} to h^{2,2}."""
        q, pg = self.irregularity, self.pg
        return ((1,), (q, q), (pg, self.h11, pg), (q, q), (1,))

    @property
    def diamond_euler_number(self):
        """Alternating sum of the rows of the diamond, which is the topological Euler number."""
        return sum((-1) ** k * sum(row) for k, row in enumerate(self.hodge_diamond))

    def render_diamond(self):
        width = max(len(" ".join(str(h) for h in row)) for row in self.hodge_diamond)
        return "\n".join(" ".join(str(h) for h in row).center(width) for row in self.hodge_diamond)


def invariants_for(chi, base_genus=1):
    """Invariants of a (non-isotrivial, relatively minimal) elliptic surface with a section.

    :raises ArgumentError: if chi < 1 or the genus is negative
    :rtype: SurfaceInvariants
    """
    if chi < 1:
        raise ArgumentError("chi must be positive, not {0}".format(chi))
    if base_genus < 0:
        raise ArgumentError("the base genus cannot be negative")
    g = base_genus
    return SurfaceInvariants(chi=chi, base_genus=g, euler_number=12 * chi, b1=2 * g, b2=12 * chi - 2 + 4 * g,
                             h11=10 * chi + 2 * g, pg=chi - 1 + g, irregularity=g)


def picard_number(rank, components):
    """rho = r + 2 + sum of (m_v - 1) over the singular fibers.

    :param int rank: Mordell-Weil rank
    :param components: component counts m_v (or FiberData) of the singular fibers
    """
    return rank + 2 + sum(_components(c) - 1 for c in components)


def _components(fiber):
    return fiber.components if hasattr(fiber, 'components') else int(fiber)


@dataclass(frozen=True)
class BaseChangeSpec:
    """Pullback along multiplication by n on the elliptic base of a surface with the given singular fibers."""
    n: int
    components: tuple
    chi: int = 1
    rank: int = 0
    base_genus: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError("n must be positive")


@dataclass(frozen=True)
class PullbackVerdict:
    invariants: SurfaceInvariants
    components: tuple
    rho_lower_bound: int
    rho_upper_bound: int
    rank: object
    verdict: str


def pullback_invariants(spec, characteristic=0):
    """Invariants of the pullback of an extremal surface along the unramified map n: every fiber is repeated
    n^2 times and e is multiplied by n^2. The Picard number of the pullback is bounded below by its trivial
    lattice and above by h^{1,1} (characteristic 0) or b_2 (characteristic p); when the bounds pinch, the
    pullback has rank 0.

    Sources that are not extremal give the verdict ``inconclusive`` and an unknown rank.

    :rtype: PullbackVerdict
    """
    source = invariants_for(spec.chi, spec.base_genus)
    bound_of = (lambda inv: inv.h11) if characteristic == 0 else (lambda inv: inv.b2)
    extremal = spec.rank == 0 and picard_number(0, spec.components) == bound_of(source)

    n2 = spec.n * spec.n
    invariants = invariants_for(spec.chi * n2, spec.base_genus)
    components = tuple(c for c in spec.components for _ in range(n2))
    lower, upper = picard_number(0, components), bound_of(invariants)

    if not extremal:
        logger.debug("source of {0} is not extremal".format(spec))
        return PullbackVerdict(invariants, components, lower, upper, None, 'inconclusive')
    if lower != upper:
        return PullbackVerdict(invariants, components, lower, upper, None, 'inconclusive')
    return PullbackVerdict(invariants, components, lower, upper, 0, 'extremal')
