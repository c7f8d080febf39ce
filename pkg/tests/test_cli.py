import json

import pytest

from liftgen.cli import EXIT_OK, EXIT_REJECTED, EXIT_UNSAT, EXIT_USAGE, main
from liftgen.harness.statistics import KsResult

GAMMA_G = """
domain {n}
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
sentence forall x: exists y: E(x,y)
"""

SYMMETRIC_LOOPLESS = """
domain {n}
sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)
weight E 3 1
"""


@pytest.fixture
def problem_file(tmp_path, settings):
    def write(text: str, name: str = "problem.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_count(problem_file, capsys):
    assert main(["count", problem_file(GAMMA_G.format(n=3))]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "4"


def test_count_overrides_domain_and_counts_by_enumeration(problem_file, capsys):
    path = problem_file(GAMMA_G.format(n=3))
    assert main(["count", path, "-n", "4", "--brute"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "41"


def test_count_preset(capsys, settings):
    assert main(["count", "functions", "-n", "3"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "27"


def test_count_with_extra_constraint(problem_file, capsys):
    path = problem_file(SYMMETRIC_LOOPLESS.format(n=3))
    assert main(["count", path, "--cc", "|E| = 0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_count_distribution(problem_file, capsys):
    path = problem_file(SYMMETRIC_LOOPLESS.format(n=2))
    assert main(["count", path, "--distribution", "E"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "1/10" in out and "9/10" in out


def test_sample_json(problem_file, capsys):
    path = problem_file(GAMMA_G.format(n=3))
    assert main(["sample", path, "--num", "3", "--seed", "7", "--format", "json"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("# seed=7 problem=")
    records = [json.loads(line) for line in lines[1:]]
    assert [r["index"] for r in records] == [0, 1, 2]
    assert all(r["probability"] == "1/4" for r in records)


def test_sample_lines_with_step_logs(problem_file, capsys, log_dir):
    path = problem_file(GAMMA_G.format(n=3))
    assert main(["--log-steps", "sample", path, "--num", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert all(line.startswith("E(") for line in lines[1:])
    assert list((log_dir / "workflows").glob("*.json"))


def test_preset(capsys, settings):
    assert main(["preset", "no-isolated-vertices", "-n", "3"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "no-isolated-vertices n=3 fragment=FO2 count=4"
    assert main(["preset", "k-regular", "-n", "5", "-k", "2", "--emit-problem"]) == EXIT_OK
    assert "exists[=2] y" in capsys.readouterr().out


def test_oracle(problem_file, capsys):
    assert main(["oracle", problem_file(GAMMA_G.format(n=3))]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("count 4")
    assert out.count("1/4") == 4


def test_validate(problem_file, capsys):
    path = problem_file(GAMMA_G.format(n=3))
    assert main(["validate", path, "--num", "300", "--alpha", "0.001"]) == EXIT_OK
    assert "dkw_bound" in capsys.readouterr().out


def test_validate_rejection(problem_file, monkeypatch):
    rejected = KsResult(0.5, 0.1, True, 0.05, 1, 300, 4)
    monkeypatch.setattr("liftgen.components.validator.ks_test", lambda *args, **kwargs: rejected)
    assert main(["validate", problem_file(GAMMA_G.format(n=3)), "--num", "300"]) == EXIT_REJECTED


def test_scale(problem_file, capsys):
    path = problem_file(GAMMA_G.format(n=3))
    assert main(["-q", "scale", path, "--sizes", "2", "3", "--samples", "1"]) == EXIT_OK
    assert "log-log slope" in capsys.readouterr().out


def test_unsatisfiable_exit_code(problem_file):
    path = problem_file("domain 2\nsentence forall x: exists y: E(x,y) & ~E(x,y)\n")
    assert main(["sample", path]) == EXIT_UNSAT


@pytest.mark.parametrize("argv", [
    ["count", "no/such/file.txt"],
    ["validate", "functions", "--num", "0"],
    ["count", "functions", "--distribution", "Nope"],
])
def test_usage_errors(argv, settings):
    assert main(argv) == EXIT_USAGE


def test_parse_error_exit_code(problem_file):
    assert main(["count", problem_file("domain 2\nsentence forall z: P(z)\n")]) == EXIT_USAGE


def test_argument_errors_exit_with_usage_code(settings):
    with pytest.raises(SystemExit) as e:
        main(["count"])
    assert e.value.code == EXIT_USAGE
