import pytest

from opranges.app.app import ScenarioRunner, parse_scenario
from opranges.errors.range_errors import CheckFailed, ConfigParse, UnknownPipeline
from opranges.pipelines import acceptance
from opranges.tables.cli_table import PipelineName


@pytest.fixture
def runner(tmp_path, ctx):
    return ScenarioRunner(ctx, seed=3, out_dir=tmp_path / "out")


def _scenario(tmp_path, text: str):
    path = tmp_path / "scenario.env"
    path.write_text(text, encoding="utf-8")
    return path


class TestParseScenario:

    def test_keys_are_case_insensitive(self, tmp_path):
        config = parse_scenario(_scenario(tmp_path, "PIPELINE=chain\na=fixture:chain-a\nM=fixture:chain-m\nK_MAX=4\nSEED=\n"))
        assert config.pipeline == PipelineName.CHAIN
        assert config.a == "fixture:chain-a"
        assert config.k_max == 4
        assert config.seed is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            parse_scenario(tmp_path / "absent.env")

    @pytest.mark.parametrize(
        "text",
        ["A=fixture:chain-a\n", "PIPELINE=chain\nJUNK\n", "PIPELINE=chain\nBOGUS=1\n", "PIPELINE=chain\nK_MAX=zero\n"],
    )
    def test_config_errors(self, tmp_path, text):
        with pytest.raises(ConfigParse):
            parse_scenario(_scenario(tmp_path, text))

    def test_unknown_pipeline(self, tmp_path):
        with pytest.raises(UnknownPipeline):
            parse_scenario(_scenario(tmp_path, "PIPELINE=nosuch\n"))


class TestScenarioRunner:

    def test_run_file_writes_the_report(self, tmp_path, runner):
        result = runner.run_file(_scenario(tmp_path, "PIPELINE=chain\nA=fixture:chain-a\nM=fixture:chain-m\nK_MAX=6\n"))
        assert result.passed
        lines = (runner.out_dir / "chain.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "k,norm,ratio,p_dim,p_exact"
        assert len(lines) == 7
        assert (runner.out_dir / "chain-summary.txt").is_file()

    def test_failed_check_still_writes_the_report(self, tmp_path, runner):
        with pytest.raises(CheckFailed):
            runner.run_file(_scenario(tmp_path, "PIPELINE=euler\nT=fixture:scalar-t\nNS=1,2\n"))
        summary = (runner.out_dir / "euler-summary.txt").read_text(encoding="utf-8")
        assert "status: FAIL" in summary
        assert (runner.out_dir / "euler.csv").is_file()

    def test_scenario_seed_overrides_runner_seed(self, tmp_path, ctx):
        text = "PIPELINE=divext\nL2=fixture:divext-l2\nD=fixture:divext-d\nSAMPLES=10\nSEED=9\n"
        first = ScenarioRunner(ctx, seed=1, out_dir=tmp_path / "one")
        second = ScenarioRunner(ctx, seed=2, out_dir=tmp_path / "two")
        first.run_file(_scenario(tmp_path, text))
        second.run_file(_scenario(tmp_path, text))
        assert (tmp_path / "one" / "divext.csv").read_bytes() == (tmp_path / "two" / "divext.csv").read_bytes()

    def test_emit(self, runner):
        path = runner.emit("prodpair-b")
        assert path == runner.out_dir / "prodpair-b.mat"
        assert path.read_text(encoding="utf-8").startswith("2 2\n")

    def test_selftest(self, monkeypatch, runner):
        monkeypatch.setattr(acceptance, "ACCEPTANCE", [(1, "passes", lambda ctx, rng: []), (2, "fails", lambda ctx, rng: ["no"])])
        outcomes = runner.selftest()
        assert [outcome.passed for outcome in outcomes] == [True, False]
