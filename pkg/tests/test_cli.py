import json
import logging
import os
import subprocess
import sys
from dataclasses import replace

import pytest
from click.testing import CliRunner

from cli.main import EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, cli, parse_z
from cli.schemas import write_schema_documents
from config import GROUP_REP_FIXTURES_DIR, LOG_FILE_PATH, PROJECT_ROOT
from errors import InputError
from log_setup import ROOT_LOGGER_NAME
from roots.balacarter import bala_carter_data


@pytest.fixture
def runner():
    return CliRunner()


def fixture_path(name: str) -> str:
    return os.path.join(GROUP_REP_FIXTURES_DIR, f"{name}.json")


def write_input(tmp_path, payload, name="input.json") -> str:
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


##--- root-datum ---##

def test_g2_report(runner):
    result = runner.invoke(cli, ["root-datum", "--type", "G2"])
    assert result.exit_code == EXIT_OK
    report = json.loads(result.output)
    payload = report["payload"]
    assert report["command"] == "root-datum"
    assert report["timing"] is None
    assert payload["weyl_order"] == 12
    assert payload["cG"] == 867
    assert payload["effective_min_p"] == 73
    assert payload["primes"]["bad_primes_good"] == [2, 3]
    assert payload["bala_carter"][0]["levi"] == "0"
    assert "G2[I=∅]" in [row["name"] for row in payload["bala_carter"]]


def test_simply_connected_a1(runner):
    result = runner.invoke(cli, ["root-datum", "--type", "A1", "--isogeny", "sc"])
    payload = json.loads(result.output)["payload"]
    assert payload["isogeny"] == "sc"
    assert payload["center_torsion"] == [2]
    assert payload["primes"]["bad_primes_pretty_good"] == [2]


def test_torus(runner):
    payload = json.loads(runner.invoke(cli, ["root-datum", "--type", "T3"]).output)["payload"]
    assert (payload["rank"], payload["semisimple_rank"], payload["cG"]) == (3, 0, 1)
    assert payload["effective_min_p"] == 2


def test_gl_preset_is_the_default_isogeny(runner):
    payload = json.loads(runner.invoke(cli, ["root-datum", "--type", "GLn(3)"]).output)["payload"]
    assert payload["isogeny"] == "preset"
    assert payload["effective_min_p"] == 5


@pytest.mark.parametrize("args, message", [
    (["--type", "A9"], "exceeds the supported maximum"),
    (["--type", "A1xZ2"], "position"),
])
def test_root_datum_input_errors(runner, args, message):
    result = runner.invoke(cli, ["root-datum"] + args)
    assert result.exit_code == EXIT_INPUT
    error = json.loads(result.output)["error"]
    assert error["kind"] == "input"
    assert message in error["message"]


def test_text_rendering(runner):
    result = runner.invoke(cli, ["root-datum", "--type", "B2", "--text", "--timing"])
    assert result.exit_code == EXIT_OK
    assert "elapsed:" in result.output
    assert "pretty_good" in result.output
    assert "B2" in result.output


def test_invariant_violation_becomes_an_envelope(runner, monkeypatch):
    def corrupted(rs, torus_rank=0):
        labels = bala_carter_data(rs, torus_rank)
        replace(labels[-1], dims=(labels[-1].dims[0] + 1, labels[-1].dims[1])).check()
        return labels

    monkeypatch.setattr("cli.main.bala_carter_data", corrupted)
    result = runner.invoke(cli, ["root-datum", "--type", "A2"])
    assert result.exit_code == EXIT_INVARIANT
    error = json.loads(result.output)["error"]
    assert error["kind"] == "invariant"
    assert "recomputed" in error["message"]


##--- lift ---##

def test_lift_fixture(runner):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent")])
    assert result.exit_code == EXIT_OK
    report = json.loads(result.output)
    assert report["seed"] == 0
    payload = report["payload"]
    assert payload["precision"] == 3
    assert payload["decomposition"]["blocks"] == [{"d": 1, "m": 2, "e": 1}]
    assert payload["verification"]["all_passed"]
    assert payload["lift"]["n"] == [[4, 0], [0, 1]]


def test_precision_option_overrides_the_file(runner):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent"), "--precision", "2"])
    assert json.loads(result.output)["payload"]["precision"] == 2


def test_zero_precision_is_rejected(runner):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent"), "--precision", "0"])
    assert result.exit_code == EXIT_INPUT
    assert "precision must be >= 1" in json.loads(result.output)["error"]["message"]


def test_z_option(runner):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("diag_sign"), "--z", "1,6"])
    assert result.exit_code == EXIT_OK
    assert json.loads(result.output)["payload"]["lift"]["z"] == [[1, 0], [0, 6]]


@pytest.mark.parametrize("z", ["6", "1,x"])
def test_invalid_z_option(runner, z):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent"), "--z", z])
    assert result.exit_code == EXIT_INPUT


@pytest.mark.parametrize("payload, message", [
    ({"p": 5, "n": 2, "q": 1, "generators": [[[1, 1], [0, 1]]], "sigma": [[1, 0], [0, 1]],
      "phi": [[1, 0], [0, 1]]}, "group order divisible by p"),
    ({"p": 5, "n": 2, "q": 2, "generators": [], "sigma": [[1, 1], [0, 1]], "phi": [[1, 0], [0, 1]]},
     "phi*sigma*phi^-1 != sigma^q"),
    ({"p": 5, "n": 2, "q": 2, "generators": [], "phi": [[1, 0], [0, 1]]}, "GroupRep schema"),
    ("{not json", "not valid JSON"),
])
def test_lift_input_errors(runner, tmp_path, payload, message):
    result = runner.invoke(cli, ["lift", "--input", write_input(tmp_path, payload)])
    assert result.exit_code == EXIT_INPUT
    error = json.loads(result.output)["error"]
    assert error["kind"] == "input"
    assert message in error["message"]


def test_hypothesis_failure_names_the_hypothesis(runner, tmp_path):
    payload = {"p": 5, "n": 2, "q": 3, "generators": [[[0, 4], [1, 4]]], "sigma": [[1, 4], [0, 4]],
               "phi": [[1, 0], [0, 1]]}
    result = runner.invoke(cli, ["lift", "--input", write_input(tmp_path, payload)])
    assert result.exit_code == EXIT_HYPOTHESIS
    report = json.loads(result.output)
    assert report["error"]["hypothesis"] == "sigma-pro-p"
    assert report["payload"] is None
    assert report["input"]["q"] == 3


def test_lift_text_rendering(runner):
    result = runner.invoke(cli, ["lift", "--input", fixture_path("jordan21_f5"), "--text"])
    assert result.exit_code == EXIT_OK
    assert "check" in result.output
    assert "residual h0: 3" in result.output


def test_reports_are_byte_identical(runner):
    args = ["lift", "--input", fixture_path("q8_f3"), "--seed", "3"]
    assert runner.invoke(cli, args).output == runner.invoke(cli, args).output


def test_report_dir(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("REPORT_DIR", str(tmp_path / "reports"))
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent")])
    written = tmp_path / "reports" / "lift-q4_unipotent.json"
    assert written.exists()
    assert json.loads(written.read_text()) == json.loads(result.output)


def test_parse_z():
    assert parse_z("1,6") == [1, 6]
    assert parse_z(None) is None
    with pytest.raises(InputError):
        parse_z("1;6")


def test_schema_documents(tmp_path):
    paths = write_schema_documents(str(tmp_path))
    assert [os.path.basename(p) for p in paths] == ["group_rep_input.schema.json", "report_envelope.schema.json"]
    schema = json.loads((tmp_path / "group_rep_input.schema.json").read_text())
    assert set(schema["required"]) == {"p", "n", "q", "sigma", "phi"}


def test_several_inputs_report_in_order_with_the_worst_exit_code(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("REPORT_DIR", str(tmp_path / "reports"))
    failing = write_input(tmp_path, {"p": 5, "n": 2, "q": 2, "generators": [], "sigma": [[1, 1], [0, 1]],
                                     "phi": [[1, 0], [0, 1]]}, name="bad_relation.json")
    result = runner.invoke(cli, ["lift", "--input", fixture_path("q4_unipotent"), "--input", failing])
    assert result.exit_code == EXIT_INPUT
    assert result.output.index('"exit_code": 0') < result.output.index('"exit_code": 1')
    assert sorted(os.listdir(tmp_path / "reports")) == ["lift-bad_relation.json", "lift-q4_unipotent.json"]


def test_worker_processes_do_not_change_the_reports(runner):
    args = ["lift", "--input", fixture_path("q4_unipotent"), "--input", fixture_path("diag_sign")]
    sequential = runner.invoke(cli, args)
    parallel = runner.invoke(cli, args + ["--jobs", "2"])
    assert parallel.exit_code == EXIT_OK
    assert parallel.output == sequential.output


##--- logging ---##

def test_library_loggers_write_to_the_shared_log_file():
    from representation import group_rep
    handlers = logging.getLogger(ROOT_LOGGER_NAME).handlers
    assert group_rep.logger.name.startswith(f"{ROOT_LOGGER_NAME}.")
    assert any(isinstance(h, logging.FileHandler) and h.baseFilename == os.path.abspath(LOG_FILE_PATH)
               for h in handlers)


def test_synthetic_q_lift_writes_nothing_to_stderr(tmp_path):
    with open(fixture_path("companion_f5")) as f:
        payload = json.load(f)
    payload["q"] = 1
    result = subprocess.run([sys.executable, "-m", "cli", "lift", "--input", write_input(tmp_path, payload)],
                            cwd=PROJECT_ROOT, capture_output=True, text=True, timeout=300)
    assert result.returncode == EXIT_OK
    assert result.stderr == ""
    assert json.loads(result.stdout)["payload"]["synthetic"]
