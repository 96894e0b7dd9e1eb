import pytest
from typer.testing import CliRunner

from opranges.cli.commands import app
from opranges.pipelines import acceptance
from opranges.tables.cli_table import ExitCode

cli = CliRunner()


@pytest.fixture
def invoke(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "out"

    def _invoke(*args: str):
        return cli.invoke(app, ["--out", str(out), *args])

    _invoke.out = out
    return _invoke


def test_help_lists_exit_codes():
    result = cli.invoke(app, ["--help"])
    assert result.exit_code == 0
    for code in ExitCode:
        assert code.name in result.stdout


def test_douglas(invoke):
    result = invoke("douglas", "fixture:px-a", "fixture:chain-a")
    assert result.exit_code == ExitCode.OK
    assert "status: PASS" in result.stdout
    assert (invoke.out / "douglas.csv").is_file()


@pytest.mark.parametrize(
    ("args", "code"),
    [
        (["euler", "fixture:scalar-t", "--ns", "1,2"], ExitCode.CHECK_FAILED),
        (["douglas", "fixture:px-b-commuting", "fixture:px-a"], ExitCode.NO_FACTORIZATION),
        (["chain", "fixture:chain-m", "fixture:chain-m"], ExitCode.UNKNOWN_FIXTURE),
        (["chain", "fixture:nosuch", "fixture:chain-m"], ExitCode.UNKNOWN_FIXTURE),
        (["parsum", "fixture:prodpair-b", "fixture:chain-a"], ExitCode.BAD_INPUT),
        (["pxfamily", "fixture:px-a", "fixture:px-a"], ExitCode.HYPOTHESIS_VIOLATED),
        (["pxfamily", "fixture:px-a", "fixture:px-b-commuting", "--xs", "1,-2"], ExitCode.BAD_INPUT),
        (["chain", "missing.mat", "fixture:chain-m"], ExitCode.IO_ERROR),
        (["run", "missing.env"], ExitCode.IO_ERROR),
    ],
)
def test_failures_map_to_exit_codes(invoke, args, code):
    assert invoke(*args).exit_code == code


@pytest.mark.parametrize(
    ("text", "code"),
    [
        ("PIPELINE=chain\nA=fixture:chain-a\nM=fixture:chain-m\nK_MAX=3\n", ExitCode.OK),
        ("PIPELINE=nosuch\n", ExitCode.UNKNOWN_PIPELINE),
        ("PIPELINE=chain\nBOGUS=1\n", ExitCode.CONFIG_PARSE),
        ("PIPELINE=chain\nA=fixture:chain-a\n", ExitCode.CONFIG_PARSE),
    ],
)
def test_run(invoke, tmp_path, text, code):
    path = tmp_path / "scenario.env"
    path.write_text(text, encoding="utf-8")
    assert invoke("run", str(path)).exit_code == code


def test_relation_operands(invoke):
    assert invoke("euler", "fixture:trotter-line-0", "--relation", "--ns", "8..256").exit_code == ExitCode.OK
    result = invoke("trotter", "fixture:trotter-line-0", "fixture:trotter-line-45", "--t-param", "0.5")
    assert result.exit_code == ExitCode.OK
    assert "form domains meet trivially: True" in result.stdout


def test_divext_csv_is_reproducible(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("first", "second"):
        args = ["--seed", "7", "--out", str(tmp_path / name), "divext", "fixture:divext-l2", "fixture:divext-d", "--samples", "25"]
        assert cli.invoke(app, args).exit_code == ExitCode.OK
    assert (tmp_path / "first" / "divext.csv").read_bytes() == (tmp_path / "second" / "divext.csv").read_bytes()


def test_tolerance_overrides_are_validated(invoke):
    assert invoke("--tol-cmp", "2", "chain", "fixture:chain-a", "fixture:chain-m").exit_code == ExitCode.BAD_INPUT


def test_selftest(invoke, monkeypatch):
    monkeypatch.setattr(acceptance, "ACCEPTANCE", [(1, "passes", lambda ctx, rng: [])])
    result = invoke("selftest")
    assert result.exit_code == ExitCode.OK
    assert "PASS" in result.stdout

    monkeypatch.setattr(acceptance, "ACCEPTANCE", [(1, "fails", lambda ctx, rng: ["broken"])])
    result = invoke("selftest")
    assert result.exit_code == ExitCode.SELFTEST_FAILED
    assert "FAIL   1  fails: broken" in result.stdout


def test_fixtures(invoke):
    listing = invoke("fixtures", "list")
    assert listing.exit_code == ExitCode.OK
    assert "rank1-witness" in listing.stdout

    emitted = invoke("fixtures", "emit", "chain-a")
    assert emitted.exit_code == ExitCode.OK
    assert (invoke.out / "chain-a.mat").is_file()
    assert invoke("fixtures", "emit", "nosuch").exit_code == ExitCode.UNKNOWN_FIXTURE
