import json

import pytest

from surfaceverifier import ARTIN_TATE, TATE_K3
from surfaceverifier.checks import Outcome, Check, CheckResult, CheckSection, Report, check_identity
from surfaceverifier.exceptions import ArgumentError, SkipCheck, CheckSelectionError
from surfaceverifier.identities import IdentityResult
from surfaceverifier.lattices import GramLattice
from surfaceverifier.workbench import Workbench


@pytest.fixture(scope='module')
def workbench():
    return Workbench(pmax=13, p2max=7, threads=1)


def run(function, **inputs):
    return Check("T.check", "a claim", function, **inputs).run(None)


class TestCheck:
    def test_pass(self):
        result = run(lambda workbench: Outcome(1, 1))
        assert result.status == 'pass'
        assert (result.expected, result.computed) == ("1", "1")

    def test_fail(self):
        result = run(lambda workbench: Outcome(1, 2))
        assert result.status == 'fail'
        assert result.failed

    def test_explicit_verdict(self):
        assert run(lambda workbench: Outcome(1, 2, passed=True)).status == 'pass'

    def test_conditional(self):
        result = run(lambda workbench: Outcome(1, 1, assumptions=(ARTIN_TATE,)))
        assert result.status == 'conditional-pass'
        assert result.assumptions == (ARTIN_TATE,)

    def test_failing_conditional_drops_assumptions(self):
        result = run(lambda workbench: Outcome(1, 2, assumptions=(ARTIN_TATE,)))
        assert result.status == 'fail'
        assert result.assumptions == ()

    def test_skip(self):
        def skipping(workbench):
            raise SkipCheck("out of range")
        assert run(skipping).status == 'skipped'

    def test_verifier_error(self):
        def failing(workbench):
            raise ArgumentError("boom")
        result = run(failing)
        assert result.status == 'fail'
        assert result.computed == "ArgumentError: boom"

    def test_other_errors_propagate(self):
        def broken(workbench):
            raise RuntimeError("bug")
        with pytest.raises(RuntimeError):
            run(broken)

    def test_inputs_are_reported(self):
        result = run(lambda workbench, p: Outcome(p, p, inputs={'extra': 2}), p=5)
        assert result.inputs == {'p': 5, 'extra': 2}

    def test_identity(self):
        verifier = lambda: IdentityResult('x', True, {}, witness=3)  # NOQA
        result = run(check_identity, verifier=verifier)
        assert result.status == 'pass'
        assert result.inputs['witness'] == 3


class TestCheckResult:
    def test_unknown_status(self):
        with pytest.raises(ArgumentError):
            CheckResult("a", "b", {}, "1", "1", 'weird')

    @pytest.mark.parametrize("status,assumptions", [
        ('conditional-pass', ()),
        ('pass', (ARTIN_TATE,)),
        ('fail', (TATE_K3,)),
    ])
    def test_assumptions_only_on_conditional(self, status, assumptions):
        with pytest.raises(ArgumentError):
            CheckResult("a", "b", {}, "1", "1", status, assumptions)

    def test_printable_status(self):
        result = CheckResult("a.b", "claim", {}, "1", "1", 'conditional-pass', (ARTIN_TATE,), 0.5)
        line = result.printable_status()
        assert line.startswith("[?] COND a.b")
        assert "(assumes artin-tate)" in line
        assert "0.500s" not in line
        assert "0.500s" in result.printable_status(timings=True)


class TestReport:
    def results(self):
        return [
            CheckResult("b", "claim", {'p': 5}, "1", "1", 'pass', wall_time=0.1),
            CheckResult("a", "claim", {}, "1", "2", 'fail', wall_time=0.1),
            CheckResult("c", "claim", {}, "-", "-", 'skipped', wall_time=0.1),
        ]

    def test_ordering(self):
        assert [r.check_id for r in Report(self.results())] == ['a', 'b', 'c']

    def test_counts(self):
        report = Report(self.results())
        assert report.counts == {'pass': 1, 'fail': 1, 'conditional-pass': 0, 'skipped': 1}
        assert report.exit_code == 1
        assert report.as_text().splitlines()[-1] == "3 checks: 1 pass, 1 fail, 0 conditional-pass, 1 skipped"

    def test_success(self):
        assert Report(self.results()[:1]).exit_code == 0

    def test_json_lines(self):
        lines = Report(self.results()).as_json_lines().splitlines()
        records = [json.loads(line) for line in lines]
        assert [r['check_id'] for r in records] == ['a', 'b', 'c']
        assert records[1]['inputs'] == {'p': '5'}
        assert all('wall_time' not in r for r in records)
        assert lines[0] == json.dumps(records[0], sort_keys=True, ensure_ascii=False)

    def test_json_timings(self):
        records = [json.loads(line) for line in Report(self.results()).as_json_lines(True).splitlines()]
        assert all(r['wall_time'] == 0.1 for r in records)

    def test_write_json(self, tmp_path):
        path = tmp_path / "report.jsonl"
        report = Report(self.results())
        report.write_json(str(path))
        assert path.read_text(encoding='utf-8') == report.as_json_lines()


class TestCheckSection:
    def test_printable_status(self):
        section = CheckSection("T", "test checks", [Check("T.one", "first claim", None)])
        lines = section.printable_status.splitlines()
        assert lines[0] == "-- T (test checks) --"
        assert lines[1].startswith(" T.one")
        assert lines[1].endswith("first claim")


class TestWorkbench:
    @pytest.mark.parametrize("kwargs", [
        {'pmax': 3},
        {'pmax': 13, 'series_order': 5},
        {'pmax': 13, 'isometry_bound': 0},
        {'pmax': 13, 'p2max': -1},
    ])
    def test_invalid_configuration(self, kwargs):
        with pytest.raises(ArgumentError):
            Workbench(**kwargs)

    def test_ignores_unknown_arguments(self):
        assert Workbench(pmax=13, check='*', verbose=2).pmax == 13

    def test_defaults(self, workbench):
        assert workbench.primes == [5, 7, 11, 13]
        assert workbench.series_order == 4 * 13 + 16

    def test_count_is_cached(self, workbench):
        assert workbench.count(5) is workbench.count(5)
        assert workbench.count(5).total == 80

    def test_select(self, workbench):
        ids = [check.check_id for check in workbench.select('S5.lefschetz.*')]
        assert ids == sorted(ids)
        assert set(ids) == {'S5.lefschetz.p5', 'S5.lefschetz.p7', 'S5.lefschetz.p11', 'S5.lefschetz.p13',
                            'S5.lefschetz.p5^2', 'S5.lefschetz.p7^2'}

    def test_prime_dependent_checks(self, workbench):
        ids = {check.check_id for check in workbench.select('LAT.*')}
        assert ids == {'LAT.det-VS', 'LAT.det-VX', 'LAT.T_S', 'LAT.T_X', 'LAT.prop10.p7', 'LAT.prop10.p11'}

    def test_empty_selection(self, workbench):
        with pytest.raises(CheckSelectionError):
            workbench.select('nothing.*')

    def test_lefschetz(self, workbench):
        result, = workbench.run('S5.lefschetz.p5')
        assert result.status == 'pass'
        assert result.computed == "-6"
        assert result.inputs == {'p': 5, 'cm_trace': -6}

    def test_reduction_lattices(self, workbench):
        result, = workbench.run('LAT.prop10.p7')
        assert result.status == 'conditional-pass'
        assert result.assumptions == (ARTIN_TATE,)
        assert result.computed == "{L_S(p): (14), L_X(p): (42), T_S: (2), T_X: (6)}"

    def test_transcendental(self, workbench):
        result, = workbench.run('LAT.T_X')
        assert result.status == 'pass'
        assert result.computed == "(6)"
        assert result.inputs == {'surface': 'X', 'expected': 6, 'det': 36}

    def test_non_square_form_fails(self, workbench, mocker):
        mocker.patch('surfaceverifier.checks.reduced_forms', return_value=[GramLattice([[4, 0], [0, 9]])])
        result, = workbench.run('LAT.T_X')
        assert result.status == 'fail'
        assert result.computed == "()"

    def test_isometry_disagreeing_with_similarity_fails(self, workbench, mocker):
        mocker.patch('surfaceverifier.checks.find_order4_isometry', return_value=((0, -1), (1, 0)))
        result, = workbench.run('LAT.T_S')
        assert result.status == 'fail'
        assert result.computed == "(None, 2)"

    @pytest.mark.parametrize("check_id,expected", [
        ('KOD.S.points.q5', "56"),
        ('KOD.S.points.q7', "78"),
        ('KOD.S.points.q25', "276"),
        ('KOD.S.points.q49', "540"),
    ])
    def test_fiber_points(self, workbench, check_id, expected):
        result, = workbench.run(check_id)
        assert result.status == 'pass'
        assert result.computed == expected

    @pytest.mark.parametrize("check_id,expected", [
        ('LAT.det-VS', "-4"),
        ('LAT.det-VX', "-36"),
        ('MW.det-X.p7', "49/36"),
        ('KOD.X.euler', "24"),
    ])
    def test_lattice_values(self, workbench, check_id, expected):
        result, = workbench.run(check_id)
        assert not result.failed
        assert result.computed == expected

    def test_dichotomy_beyond_square_bound(self, workbench):
        result, = workbench.run('S6.dichotomy.p11')
        assert result.status == 'skipped'

    def test_deterministic(self):
        serial = Workbench(pmax=13, p2max=0, threads=1).run('S5.count.*')
        parallel = Workbench(pmax=13, p2max=0, threads=4).run('S5.count.*')
        assert serial.as_json_lines() == parallel.as_json_lines()

    @pytest.mark.slow
    def test_full_run(self, workbench):
        report = workbench.run()
        assert report.exit_code == 0
        assert report.counts['fail'] == 0
        assert report.counts['skipped'] == 1

    @pytest.mark.slow
    def test_default_run(self):
        report = Workbench().run()
        assert report.counts['fail'] == 0
        skipped = {r.check_id for r in report if r.status == 'skipped'}
        assert skipped == {'S6.dichotomy.p{0}'.format(p) for p in range(47, 200)
                           if p % 4 == 3 and all(p % d for d in range(2, p))}
        assert len(skipped) == 17

        statuses = {r.check_id: r.status for r in report}
        primes = [p for p in range(5, 200) if all(p % d for d in range(2, p))]
        for p in primes:
            assert statuses['S5.base.p{0}'.format(p)] == 'pass'
            assert statuses['S5.lefschetz.p{0}'.format(p)] == 'pass'
        for p in (19, 23, 31, 43):
            assert statuses['S5.lefschetz.p{0}^2'.format(p)] == 'pass'
        assert statuses['LAT.prop10.p199'] == 'conditional-pass'
