"""The catalogue of named checks, their results and the report assembled from them.

Every check recomputes one claim about S, X or their lattices and compares it with the value the claim predicts.
Check ids are stable strings such as ``S5.lefschetz.p13``; ``--list`` prints them grouped by section.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

from surfaceverifier import _util, ARTIN_TATE, REPORT_STATUSES
from surfaceverifier import identities
from surfaceverifier.curves import WeierstrassCurve
from surfaceverifier.exceptions import VerifierError, SkipCheck, ArgumentError
from surfaceverifier.fields import build_extension
from surfaceverifier.invariants import invariants_for, picard_number, BaseChangeSpec, pullback_invariants
from surfaceverifier.kodaira import minimal_model_at, fiber_point_count
from surfaceverifier.lattices import det_formula, find_order4_isometry, is_similar_square, reduced_forms, \
    torsion_search, trivial_lattice, transcendental_determinant, artin_tate_det
from surfaceverifier.modular import eta_power, cm_weight3_bp, WEIGHT2_ETA, WEIGHT3_ETA
from surfaceverifier.surfaces import lefschetz_b, dichotomy_check
from surfaceverifier.symbolic import BASE_CONSTANT

logger = logging.getLogger(__name__)

# primes at which the determinant formula is evaluated under det NS = -p^2
DET_FORMULA_PRIMES = (7, 11, 19, 23)
PULLBACK_DEGREES = range(1, 11)


@dataclass(frozen=True)
class Outcome:
    """What a check function returns. When *passed* is None, the check passes iff expected equals computed."""
    expected: object
    computed: object
    passed: bool = None
    assumptions: tuple = ()
    inputs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckResult:
    """The outcome of a single check, with expected and computed values rendered exactly.

    The status is ``conditional-pass`` exactly when the result carries assumption tags.
    """
    check_id: str
    claim_ref: str
    inputs: dict
    expected: str
    computed: str
    status: str
    assumptions: tuple = ()
    wall_time: float = None

    def __post_init__(self):
        if self.status not in REPORT_STATUSES:
            raise ArgumentError("unknown status {0}".format(self.status))
        if (self.status == 'conditional-pass') != bool(self.assumptions):
            raise ArgumentError("only conditional passes carry assumptions")

    @property
    def failed(self):
        return self.status == 'fail'

    def as_dict(self, timings=False):
        result = {
            'check_id': self.check_id,
            'claim_ref': self.claim_ref,
            'inputs': {k: _util.render(v) for k, v in self.inputs.items()},
            'expected': self.expected,
            'computed': self.computed,
            'status': self.status,
            'assumptions': list(self.assumptions),
        }
        if timings:
            result['wall_time'] = self.wall_time
        return result

    def printable_status(self, col=None, timings=False):
        col = col or (lambda s, *args, **kwargs: s)
        prefix, label, color = {
            'pass': ("[+]", "PASS", 'green'),
            'fail': ("[-]", "FAIL", 'red'),
            'conditional-pass': ("[?]", "COND", 'yellow'),
            'skipped': ("[ ]", "SKIP", None),
        }[self.status]
        line = "{0} {1} {2:<28} expected {3}, computed {4}".format(prefix, label, self.check_id, self.expected,
                                                                    self.computed)
        if self.assumptions:
            line += " (assumes {0})".format(", ".join(self.assumptions))
        if timings and self.wall_time is not None:
            line += " [{0:.3f}s]".format(self.wall_time)
        return col(line, color) if color else line


class Check(object):
    """A named claim together with the function that recomputes it.

    :param str check_id: stable identifier
    :param str claim_ref: the statement being checked
    :param callable function: called as ``function(workbench, **inputs)``, returns an :class:`Outcome`
    :param dict inputs: keyword arguments of the function, reported with the result
    """

    def __init__(self, check_id, claim_ref, function, **inputs):
        self.check_id = check_id
        self.claim_ref = claim_ref
        self.function = function
        self.inputs = inputs

    def __str__(self):
        return self.check_id

    def __repr__(self):
        return "<Check {0}>".format(self.check_id)

    def run(self, workbench):
        """Runs the check. Failures of the underlying computation become a ``fail`` result, :exc:`SkipCheck`
        becomes ``skipped``; any other exception propagates.

        :rtype: CheckResult
        """
        start = time.perf_counter()
        inputs = dict(self.inputs)
        try:
            outcome = self.function(workbench, **self.inputs)
        except SkipCheck as e:
            logger.warning("{0} skipped: {1}".format(self.check_id, e))
            return self._result(inputs, "-", "-", 'skipped', (), start)
        except VerifierError as e:
            logger.error("{0} raised {1}: {2}".format(self.check_id, type(e).__name__, e))
            return self._result(inputs, "-", "{0}: {1}".format(type(e).__name__, e), 'fail', (), start)

        inputs.update(outcome.inputs)
        passed = outcome.expected == outcome.computed if outcome.passed is None else outcome.passed
        if not passed:
            status, assumptions = 'fail', ()
            logger.error("{0} failed: expected {1}, computed {2}".format(self.check_id,
                                                                       _util.render(outcome.expected),
                                                                       _util.render(outcome.computed)))
        elif outcome.assumptions:
            status, assumptions = 'conditional-pass', tuple(outcome.assumptions)
            logger.warning("{0} passed assuming {1}".format(self.check_id, ", ".join(assumptions)))
        else:
            status, assumptions = 'pass', ()
            logger.info("{0} passed".format(self.check_id))
        return self._result(inputs, _util.render(outcome.expected), _util.render(outcome.computed), status,
                            assumptions, start)

    def _result(self, inputs, expected, computed, status, assumptions, start):
        return CheckResult(self.check_id, self.claim_ref, inputs, expected, computed, status, assumptions,
                           time.perf_counter() - start)


class CheckSection(object):
    """Group of checks that are listed together in ``sverify --list``.

    :param str name: id prefix of the group
    :param str description: what the checks in the group verify
    :param list[Check] checks: checks that are part of this group
    """

    def __init__(self, name, description, checks):
        self.name = name
        self.description = description
        self.checks = checks

    @property
    def printable_status(self):
        lines = [
            "-- {0.name} ({0.description}) --".format(self)
        ]
        for check in self.checks:
            lines.append(" {0!s:<30}{1}".format(check, check.claim_ref))
        return "\n".join(lines)


class Report(object):
    """The ordered results of a run."""

    def __init__(self, results):
        self.results = sorted(results, key=lambda r: r.check_id)

    def __len__(self):
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    @property
    def counts(self):
        return {status: sum(1 for r in self.results if r.status == status) for status in REPORT_STATUSES}

    @property
    def failed(self):
        return any(r.failed for r in self.results)

    @property
    def exit_code(self):
        return 1 if self.failed else 0

    def as_text(self, col=None, timings=False):
        lines = [r.printable_status(col, timings) for r in self.results]
        counts = self.counts
        lines.append("{0} checks: {1}".format(len(self), ", ".join("{0} {1}".format(counts[s], s)
                                                                   for s in REPORT_STATUSES)))
        return "\n".join(lines)

    def as_json_lines(self, timings=False):
        """One JSON object per result, newline-delimited, with sorted keys."""
        return "".join(json.dumps(r.as_dict(timings), sort_keys=True, ensure_ascii=False) + "\n"
                       for r in self.results)

    def write_json(self, path, timings=False):
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.as_json_lines(timings))


# symbolic identities

def check_identity(workbench, verifier):
    """Runs an identity verifier; the expected residual is zero, or empty for collections of residuals."""
    result = verifier()
    expected = type(result.residual)() if isinstance(result.residual, (tuple, dict)) else 0
    inputs = {'witness': result.witness} if result.witness is not None else {}
    return Outcome(expected, result.residual, result.passed, inputs=inputs)


def check_hesse_link(workbench):
    try:
        result = identities.verify_hesse_weierstrass_link(workbench.hesse_samples)
    except ArgumentError as e:
        raise SkipCheck(str(e))
    return Outcome((), result.residual, result.passed, inputs={'samples': workbench.hesse_samples})


def check_base_change(workbench):
    result = identities.verify_base_change()
    return Outcome("xi^2", result.witness)


# fibers

def check_fiber_S(workbench):
    place, fiber = workbench.surface('S').singular_fibers[0]
    model = minimal_model_at(workbench.surface('S').curve, place)
    computed = {'place': str(place), 'type': str(fiber), 'components': fiber.components, 'v_delta': model.v_delta,
                'v_j': model.v_j}
    expected = {'place': 'o_B', 'type': 'I6*', 'components': 11, 'v_delta': 12, 'v_j': -6}
    return Outcome(expected, computed)


def check_fibers_X(workbench):
    computed = {}
    for place, fiber in workbench.surface('X').singular_fibers:
        model = minimal_model_at(workbench.surface('X').curve, place)
        computed[str(place)] = (str(fiber), model.v_delta)
    expected = {'inf': ('I2*', 8), 't**2 + 1728': ('IV*', 8)}
    return Outcome(expected, computed)


def check_euler_number(workbench, surface, expected):
    model = workbench.surface(surface)
    return Outcome(expected, model.euler_number)


def check_fiber_points(workbench, q):
    return Outcome(11 * q + 1, fiber_point_count(workbench.surface('S').fibers[0], q))


# point counts and Frobenius traces

def check_base_trace(workbench, p):
    """The p-th coefficient of eta(6 tau)^4 is p + 1 - #B(F_p), counted on the curve and along the fibration."""
    field = build_extension(p)
    direct = WeierstrassCurve(field(0), field(-BASE_CONSTANT)).count_points().trace
    fibration = workbench.count(p).base_trace
    coefficient = eta_power(*WEIGHT2_ETA, workbench.series_order)[p]
    return Outcome(coefficient, direct, passed=coefficient == direct == fibration)


def check_lefschetz(workbench, p):
    """b_p from the surface count agrees with the eta(4 tau)^6 coefficient and the CM eigenvalue trace."""
    b = lefschetz_b(p, workbench.count(p)).b
    coefficient = eta_power(*WEIGHT3_ETA, workbench.series_order)[p]
    cm = cm_weight3_bp(p)
    return Outcome(coefficient, b, passed=b == coefficient == cm, inputs={'cm_trace': cm})


def check_point_count(workbench, p):
    return Outcome(workbench.zeta(p).predicted_count(), workbench.count(p).total)


def check_square_trace(workbench, p):
    b = lefschetz_b(p * p, workbench.count(p * p)).b
    return Outcome(workbench.zeta(p).predicted_trace(2), b)


def check_smooth_fibers(workbench, p):
    """Every fiber over an affine point of B is smooth: the discriminant 6^12 is a unit."""
    count = workbench.count(p)
    return Outcome(0, count.singular_base_points, inputs={'smooth_fiber_sum': count.smooth_fiber_sum})


def check_trace_parity(workbench):
    odd = [p for p in workbench.primes if lefschetz_b(p, workbench.count(p)).b % 2]
    return Outcome([], odd, inputs={'pmax': workbench.pmax})


def check_base_cm(workbench):
    """B has CM by Q(sqrt(-3)), so a_p = 0 for p = 2 mod 3."""
    nonzero = [p for p in workbench.primes if p % 3 == 2 and workbench.count(p).base_trace]
    return Outcome([], nonzero, inputs={'pmax': workbench.pmax})


def check_dichotomy(workbench, p):
    if p % 4 == 3 and p > workbench.p2max:
        raise SkipCheck("the count over F_p^2 for p = {0} exceeds --p2max".format(p))
    count_p2 = workbench.count(p * p) if p % 4 == 3 else None
    report = dichotomy_check(p, workbench.count(p), count_p2)
    if p % 4 == 1:
        expected = {'picard_number': 12, 'ranks': ((1, 0), (2, 0))}
    else:
        expected = {'picard_number': 14, 'ranks': ((1, 1), (2, 2))}
    computed = {'picard_number': report.picard_number, 'ranks': report.ranks}
    return Outcome(expected, computed, passed=report.holds and expected == computed,
                   assumptions=report.assumptions, inputs={'b_p': report.b_p})


def check_artin_tate(workbench, p):
    return Outcome(-p * p, artin_tate_det(p), assumptions=(ARTIN_TATE,))


# Mordell-Weil groups

def check_torsion(workbench, chi, fibers):
    configuration = [workbench.fiber(symbol) for symbol in fibers]
    return Outcome([], torsion_search(chi, configuration))


def check_torsion_X(workbench):
    return Outcome([], torsion_search(2, workbench.surface('X').fiber_configuration))


def check_rank_zero(workbench):
    """In characteristic 0 NS(S) = V_S, so det M = |det V_S / det V_S| = 1, the empty lattice."""
    trivial = trivial_lattice(workbench.surface('S').fibers, 1)
    return Outcome(Fraction(1), det_formula(trivial.determinant, trivial))


def check_mordell_weil_det(workbench, surface, p, scale):
    model = workbench.surface(surface)
    trivial = trivial_lattice(model.fiber_configuration, model.chi)
    computed = det_formula(artin_tate_det(p), trivial)
    return Outcome(Fraction(p, scale) ** 2, computed, assumptions=(ARTIN_TATE,))


# lattices

def check_trivial_det(workbench, surface, expected):
    model = workbench.surface(surface)
    return Outcome(Fraction(expected), trivial_lattice(model.fiber_configuration, model.chi).determinant)


def _order4_square_scales(determinant, bound):
    """Runs through every reduced form of the determinant and keeps those with an order-4 isometry. Returns the
    square-similarity scale of each survivor; a survivor that is not similar to L0 shows up as None.
    """
    survivors = [form for form in reduced_forms(determinant) if find_order4_isometry(form, bound) is not None]
    return [is_similar_square(form) for form in survivors]


def check_transcendental(workbench, surface, expected):
    model = workbench.surface(surface)
    determinant = transcendental_determinant(model.fiber_configuration, model.chi)
    return Outcome([expected], _order4_square_scales(determinant, workbench.isometry_bound),
                   inputs={'det': determinant})


def check_reduction_lattices(workbench, p):
    """Among the binary forms of det T_S, det T_X, det L_S(p) and det L_X(p), only the squares L0[2], L0[6], L0[2p]
    and L0[6p] admit an order-4 isometry; the narrow index is checked alongside.
    """
    bound = workbench.isometry_bound
    reductions = workbench.reduction_scalings(p)
    computed = {}
    for name in ('S', 'X'):
        model = workbench.surface(name)
        determinant = transcendental_determinant(model.fiber_configuration, model.chi)
        computed['T_{0}'.format(name)] = _order4_square_scales(determinant, bound)
    for name, reduction in reductions.items():
        computed['L_{0}(p)'.format(name)] = _order4_square_scales(reduction.determinant, bound)
    expected = {'T_S': [2], 'T_X': [6], 'L_S(p)': [2 * p], 'L_X(p)': [6 * p]}
    ratios = {name: reduction.ratio for name, reduction in reductions.items()}
    passed = computed == expected and ratios == {'S': 16, 'X': 36 * 36}
    return Outcome(expected, computed, passed, assumptions=(ARTIN_TATE,),
                   inputs={'index': {name: r.index for name, r in reductions.items()}})


# invariants

def check_hodge_diamond(workbench):
    invariants = invariants_for(1, 1)
    expected = ((1,), (1, 1), (1, 12, 1), (1, 1), (1,))
    return Outcome(expected, invariants.hodge_diamond,
                   passed=invariants.hodge_diamond == expected and invariants.diamond_euler_number == 12)


def check_picard_numbers(workbench):
    components = [fiber.components for fiber in workbench.surface('S').fibers]
    return Outcome((12, 14), (picard_number(0, components), picard_number(2, components)))


def check_extremal_X(workbench):
    components = [fiber.components for fiber in workbench.surface('X').fiber_configuration]
    return Outcome(invariants_for(2, 0).h11, picard_number(0, components))


def check_pullback(workbench, n):
    verdict = pullback_invariants(BaseChangeSpec(n, (11,)))
    return Outcome(('extremal', 0, 12 * n * n), (verdict.verdict, verdict.rank, verdict.invariants.euler_number))


def catalogue(workbench):
    """Builds the check sections for the primes selected by the workbench configuration.

    :rtype: list[CheckSection]
    """
    primes = workbench.primes
    inert = [p for p in primes if p % 4 == 3]
    square_primes = [p for p in primes if p <= workbench.p2max]
    det_primes = [p for p in DET_FORMULA_PRIMES if p in primes]

    sections = [
        CheckSection("ID", "symbolic identities", [
            Check("ID.legendre-eta", "j(E_lambda) - 1728 = eta(lambda)^2", check_identity,
                  verifier=identities.verify_legendre_eta),
            Check("ID.hessian-xi", "j(E_mu) = xi(mu)^3 for the Hesse pencil", check_identity,
                  verifier=identities.verify_hessian_xi),
            Check("ID.hesse-weierstrass", "the Hesse cubic reduces to the displayed Weierstrass model",
                  check_hesse_link),
            Check("ID.surface-equation", "Delta = 6^12, j = xi^3 and c4 = 6^4 xi on S", check_identity,
                  verifier=identities.verify_surface_equation),
            Check("ID.base-change", "S is the base change of X along t = eta, with u = xi^2", check_base_change),
            Check("ID.projection-degree", "(xi, eta) -> eta has degree 3", check_identity,
                  verifier=identities.verify_projection_degree),
            Check("ID.order4-automorphism", "(x, y, xi, eta) -> (-x, iy, xi, -eta) is an automorphism of order 4",
                  check_identity, verifier=identities.verify_order4_automorphism),
        ]),
        CheckSection("KOD", "singular fibers", [
            Check("KOD.S.origin", "the only singular fiber of S is I6* over o_B", check_fiber_S),
            Check("KOD.S.euler", "e(S) = 12", check_euler_number, surface='S', expected=12),
            Check("KOD.X.fibers", "X has I2* at infinity and IV* over t^2 + 1728 = 0", check_fibers_X),
            Check("KOD.X.euler", "e(X) = 24", check_euler_number, surface='X', expected=24),
        ] + [
            Check("KOD.S.points.q{0}".format(q), "the I6* fiber has 11q + 1 points over F_q", check_fiber_points,
                  q=q) for q in primes + [p * p for p in square_primes]
        ]),
        CheckSection("S5", "point counts and Frobenius traces", [
            Check("S5.base-cm", "a_p = 0 for p = 2 mod 3", check_base_cm),
            Check("S5.parity", "b_p is even", check_trace_parity),
        ]),
        CheckSection("S6", "Picard numbers over finite fields", [
            Check("S6.dichotomy.p{0}".format(p), "rho = 12 for p = 1 mod 4, 14 for p = 3 mod 4", check_dichotomy,
                  p=p) for p in primes
        ] + [
            Check("S6.artin-tate.p{0}".format(p), "det NS(S) = -p^2", check_artin_tate, p=p) for p in det_primes
        ]),
        CheckSection("MW", "Mordell-Weil groups", [
            Check("MW.rank-zero", "E(K) = 0 in characteristic 0", check_rank_zero),
            Check("MW.torsion.S", "no torsion section meets the I6* fiber", check_torsion, chi=1, fibers=('I6*',)),
            Check("MW.torsion.I2*", "no torsion section for I2* at chi = 1", check_torsion, chi=1, fibers=('I2*',)),
            Check("MW.torsion.IV*", "no torsion section for IV* at chi = 1", check_torsion, chi=1, fibers=('IV*',)),
            Check("MW.torsion.X", "E(k(t)) is torsion-free", check_torsion_X),
        ] + [
            Check("MW.det-S.p{0}".format(p), "E(K) = Z^2[p/2]", check_mordell_weil_det, surface='S', p=p, scale=2)
            for p in det_primes
        ] + [
            Check("MW.det-X.p{0}".format(p), "E(k(t)) = Z^2[p/6]", check_mordell_weil_det, surface='X', p=p,
                  scale=6) for p in det_primes
        ]),
        CheckSection("LAT", "lattice determinants and similarities", [
            Check("LAT.det-VS", "det V_S = -4", check_trivial_det, surface='S', expected=-4),
            Check("LAT.det-VX", "det V_X = -36", check_trivial_det, surface='X', expected=-36),
            Check("LAT.T_S", "T_S = L0[2]", check_transcendental, surface='S', expected=2),
            Check("LAT.T_X", "T_X = L0[6]", check_transcendental, surface='X', expected=6),
        ] + [
            Check("LAT.prop10.p{0}".format(p), "L_S(p) = L0[2p] and L_X(p) = L0[6p]", check_reduction_lattices, p=p)
            for p in inert
        ]),
        CheckSection("S9", "invariants and pullbacks", [
            Check("S9.hodge-diamond", "the Hodge diamond of S", check_hodge_diamond),
            Check("S9.picard", "rho = r + 2 + 10 gives 12 and 14", check_picard_numbers),
            Check("S9.extremal-X", "rho(X) = 20 = h11(X)", check_extremal_X),
        ] + [
            Check("S9.pullback.n{0}".format(n), "the pullback along n has rank 0 and e = 12 n^2", check_pullback,
                  n=n) for n in PULLBACK_DEGREES
        ]),
    ]

    s5 = sections[2].checks
    for p in primes:
        s5.append(Check("S5.base.p{0}".format(p), "the coefficient of eta(6 tau)^4 at p is p + 1 - #B(F_p)",
                        check_base_trace, p=p))
        s5.append(Check("S5.lefschetz.p{0}".format(p), "the coefficient of eta(4 tau)^6 at p is b_p",
                        check_lefschetz, p=p))
        s5.append(Check("S5.count.p{0}".format(p), "#S(F_p) = 1 + 12p + b_p + p^2 - (1+p)a_p", check_point_count,
                        p=p))
        s5.append(Check("S5.smooth.p{0}".format(p), "no singular fiber over B - o_B", check_smooth_fibers, p=p))
    for p in square_primes:
        s5.append(Check("S5.lefschetz.p{0}^2".format(p), "b_{p^2} is the power sum of the eigenvalues",
                        check_square_trace, p=p))
    return sections
