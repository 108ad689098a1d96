import json
import logging

import pytest

from surfaceverifier.checks import Report, CheckResult
from surfaceverifier.cli import VerifierFormatter, get_coloring_func
from surfaceverifier.cli.sverify import main

BASE_ARGS = ['--no-color', '--pmax', '13', '--p2max', '0', '--threads', '1']


class TestMain:
    def test_single_check(self, capsys):
        assert main(BASE_ARGS + ['--check', 'S5.lefschetz.p5']) == 0
        out = capsys.readouterr().out
        assert "[+] PASS S5.lefschetz.p5" in out
        assert "1 checks: 1 pass, 0 fail, 0 conditional-pass, 0 skipped" in out

    def test_conditional_check(self, capsys):
        assert main(BASE_ARGS + ['--check', 'LAT.prop10.p7']) == 0
        assert "(assumes artin-tate)" in capsys.readouterr().out

    def test_unknown_check(self):
        with pytest.raises(SystemExit) as excinfo:
            main(BASE_ARGS + ['--check', 'nothing.*'])
        assert excinfo.value.code == 2

    def test_invalid_bound(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['--no-color', '--pmax', '3'])
        assert excinfo.value.code == 2

    def test_json(self, tmp_path):
        path = tmp_path / "report.jsonl"
        assert main(BASE_ARGS + ['--check', 'LAT.det-V*', '--json', str(path)]) == 0
        records = [json.loads(line) for line in path.read_text(encoding='utf-8').splitlines()]
        assert [r['check_id'] for r in records] == ['LAT.det-VS', 'LAT.det-VX']
        assert [r['computed'] for r in records] == ['-4', '-36']
        assert all('wall_time' not in r for r in records)

    def test_list(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(['--pmax', '13', '--list'])
        assert excinfo.value.code == 0
        out = capsys.readouterr().out
        assert "-- LAT (lattice determinants and similarities) --" in out
        assert "LAT.prop10.p7" in out
        assert "LAT.prop10.p19" not in out

    def test_failing_report(self, mocker):
        workbench = mocker.patch('surfaceverifier.cli.sverify.Workbench')
        workbench.return_value.run.return_value = Report([CheckResult("a", "claim", {}, "1", "2", 'fail')])
        assert main(['--no-color']) == 1

    def test_internal_error(self, mocker):
        mocker.patch('surfaceverifier.cli.sverify.Workbench', side_effect=RuntimeError("bug"))
        assert main(['--no-color']) == 3

    def test_interrupted(self, mocker):
        workbench = mocker.patch('surfaceverifier.cli.sverify.Workbench')
        workbench.return_value.run.side_effect = KeyboardInterrupt
        assert main(['--no-color']) == 3

    def test_handler_removed(self, mocker):
        mocker.patch('surfaceverifier.cli.sverify.Workbench', side_effect=RuntimeError("bug"))
        handlers = list(logging.getLogger("surfaceverifier").handlers)
        main(['--no-color', '-vv'])
        assert logging.getLogger("surfaceverifier").handlers == handlers


class TestFormatter:
    @pytest.mark.parametrize("level,expected", [
        (logging.ERROR, "[-] message"),
        (logging.WARNING, "[-] message"),
        (logging.INFO, "[+] message"),
        (logging.DEBUG, "    message"),
    ])
    def test_prefixes(self, level, expected):
        formatter = VerifierFormatter(get_coloring_func(no_color=True))
        record = logging.LogRecord("surfaceverifier", level, __file__, 1, "message", None, None)
        assert formatter.format(record) == expected

    def test_no_color(self):
        assert get_coloring_func(no_color=True)("text", 'red') == "text"

    def test_forced_color(self):
        from termcolor import colored
        assert get_coloring_func(color=True) is colored
