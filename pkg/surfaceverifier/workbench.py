import fnmatch
import functools
import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor

from surfaceverifier import _util, DEFAULT_PMAX, DEFAULT_P2MAX, DEFAULT_ISOMETRY_BOUND, DEFAULT_HESSE_SAMPLES
from surfaceverifier.checks import catalogue, Report
from surfaceverifier.exceptions import CheckSelectionError, ArgumentError
from surfaceverifier.kodaira import KodairaType, fiber_data
from surfaceverifier.lattices import supersingular_reduction_scalings
from surfaceverifier.modular import zeta_local
from surfaceverifier.surfaces import SurfaceModel, count_surface_S

logger = logging.getLogger(__name__)


class Workbench(object):
    """Root object of the :mod:`surfaceverifier` Python interface. It holds the configuration of a run, caches the
    expensive computations shared between checks and runs selections of the check catalogue.
    """

    def __init__(self, pmax=DEFAULT_PMAX, p2max=DEFAULT_P2MAX, series_order=None, threads=None,
                 isometry_bound=DEFAULT_ISOMETRY_BOUND, hesse_samples=DEFAULT_HESSE_SAMPLES, timings=False, **args):
        """Instantiation does not compute anything; all results are computed on demand and cached.

        :param int pmax: largest prime for the per-prime checks
        :param int p2max: largest prime p whose surface is counted over F_p^2
        :param int series_order: truncation order of the eta-product expansions, defaulting to 4 pmax + 16
        :param int threads: number of checks run concurrently, defaulting to the number of CPUs
        :param int isometry_bound: entry bound of the order-4 isometry search
        :param int hesse_samples: number of parameters at which the Hesse pencil is reduced
        :param bool timings: whether reports include wall times
        :param args: ignored
        :raises ArgumentError: if a bound is out of range
        """

        from surfaceverifier import __version__
        logger.debug("surfaceverifier version %s", __version__)

        if pmax < 5:
            raise ArgumentError("--pmax must be at least 5")
        if p2max < 0 or isometry_bound < 1 or hesse_samples < 1:
            raise ArgumentError("bounds must be positive")

        self.pmax = pmax
        self.p2max = p2max
        self.series_order = series_order or 4 * pmax + 16
        if self.series_order < pmax:
            raise ArgumentError("--series-order must be at least --pmax")
        self.threads = threads or os.cpu_count() or 1
        self.isometry_bound = isometry_bound
        self.hesse_samples = hesse_samples
        self.timings = timings

        self._counts = {}
        self._locks = {}
        self._lock = threading.Lock()

    @functools.cached_property
    def primes(self):
        return _util.good_primes(self.pmax)

    @functools.cached_property
    def surfaces(self):
        return {model.name: model for model in (SurfaceModel.modular_surface(), SurfaceModel.k3_surface())}

    def surface(self, name):
        """The surface ``S`` or ``X``, with its singular fibers computed once."""
        return self.surfaces[name]

    def fiber(self, symbol):
        return fiber_data(KodairaType.parse(symbol))

    def count(self, q):
        """#S(F_q), computed once per q even when requested by concurrent checks.

        :rtype: SurfaceCount
        """
        with self._lock:
            lock = self._locks.setdefault(q, threading.Lock())
        with lock:
            if q not in self._counts:
                logger.debug("counting S over F_{0}".format(q))
                self._counts[q] = count_surface_S(q)
            return self._counts[q]

    def zeta(self, p):
        return zeta_local(p, self.series_order)

    def reduction_scalings(self, p):
        surfaces = {name: (model.fiber_configuration, model.chi) for name, model in self.surfaces.items()}
        return supersingular_reduction_scalings(p, surfaces)

    @property
    def sections(self):
        return catalogue(self)

    def select(self, selection=None):
        """Returns the checks whose id matches the glob, ordered by id.

        :raises CheckSelectionError: if nothing matches
        """
        selection = selection or '*'
        checks = [check for section in self.sections for check in section.checks
                  if fnmatch.fnmatchcase(check.check_id, selection)]
        if not checks:
            raise CheckSelectionError("no check matches {0}".format(selection))
        return sorted(checks, key=lambda c: c.check_id)

    def run(self, selection=None):
        """Runs the selected checks across a pool of worker threads. The report is assembled in check id order, so
        repeated runs give identical reports.

        :rtype: Report
        """
        checks = self.select(selection)
        logger.info("running {0} check(s) on {1} thread(s)".format(len(checks), self.threads))

        # the surface fibers are shared by many checks; classify them before fanning out
        for model in self.surfaces.values():
            model.singular_fibers

        if self.threads == 1:
            results = [check.run(self) for check in checks]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                results = list(executor.map(lambda c: c.run(self), checks))
        return Report(results)
