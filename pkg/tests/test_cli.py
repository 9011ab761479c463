import subprocess
import sys

import pytest

DEFINITION = """\
method: stv
candidate: 1 Alice
candidate: 2 Bob
candidate: 3 Carol
seats: 2
"""
BALLOTS = "method: stv\n1\n1\n1\n2\n3\n"

IRV_DEFINITION = "method: irv\ncandidate: 1 A\ncandidate: 2 B\n"


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "votetally", *args],
                          capture_output=True, text=True)


@pytest.fixture
def stv_files(tmp_path):
    definition = tmp_path / "election.def"
    definition.write_text(DEFINITION)
    ballots = tmp_path / "ballots.txt"
    ballots.write_text(BALLOTS)
    return str(definition), str(ballots)


def test_tally_worked_example(stv_files):
    definition, ballots = stv_files
    done = run_cli("tally", definition, ballots)
    assert done.returncode == 0, done.stderr
    assert "quota-winner: 1" in done.stdout
    assert "autofill-winner: 3" in done.stdout
    assert "quota: 2/1" in done.stdout


def test_tally_trace_appends_rounds(stv_files):
    definition, ballots = stv_files
    done = run_cli("tally", definition, ballots, "--trace")
    assert done.returncode == 0
    assert "round: 1 elect 1" in done.stdout


def test_tally_is_byte_deterministic(stv_files):
    definition, ballots = stv_files
    first = run_cli("tally", definition, ballots, "--trace")
    second = run_cli("tally", definition, ballots, "--trace")
    assert first.stdout == second.stdout
    assert first.stdout.encode() == second.stdout.encode()


def test_tally_duplicate_ballot_strict_exits_2(tmp_path):
    definition = tmp_path / "irv.def"
    definition.write_text(IRV_DEFINITION)
    ballots = tmp_path / "ballots.txt"
    ballots.write_text("method: irv\n1,1\n")
    done = run_cli("tally", str(definition), str(ballots))
    assert done.returncode == 2
    assert "duplicate-in-ballot" in done.stderr
    assert done.stdout == ""


def test_tally_lenient_skips_bad_records(tmp_path):
    definition = tmp_path / "irv.def"
    definition.write_text(IRV_DEFINITION)
    ballots = tmp_path / "ballots.txt"
    ballots.write_text("method: irv\n1,1\n2\n")
    done = run_cli("tally", str(definition), str(ballots), "--lenient")
    assert done.returncode == 0
    assert "winner: 2" in done.stdout
    assert "skipped record" in done.stderr


def test_tally_empty_irv_ballot_file_reports_no_winner(tmp_path):
    definition = tmp_path / "irv.def"
    definition.write_text(IRV_DEFINITION)
    ballots = tmp_path / "ballots.txt"
    ballots.write_text("method: irv\n")
    done = run_cli("tally", str(definition), str(ballots))
    assert done.returncode == 0
    assert "winner: none" in done.stdout


def test_missing_file_exits_2(tmp_path):
    done = run_cli("tally", str(tmp_path / "nope.def"),
                   str(tmp_path / "nope.txt"))
    assert done.returncode == 2
    assert done.stderr


def test_validate_accepts_good_files(stv_files):
    definition, ballots = stv_files
    done = run_cli("validate", definition, ballots)
    assert done.returncode == 0
    assert "definition ok" in done.stdout

def test_validate_rejects_bad_definition(tmp_path):
    definition = tmp_path / "bad.def"
    definition.write_text(DEFINITION.replace("seats: 2", "seats: 9"))
    done = run_cli("validate", str(definition))
    assert done.returncode == 2
    assert "invalid-parameter" in done.stderr


@pytest.mark.parametrize("ballots,seats,expected", [
    ("100", "4", "21"),
    ("5", "2", "2"),
    ("0", "0", "1"),
])
def test_quota_known_values(ballots, seats, expected):
    done = run_cli("quota", ballots, seats)
    assert done.returncode == 0
    assert done.stdout.strip() == expected


def test_quota_rejects_non_integers():
    done = run_cli("quota", "a", "b")
    assert done.returncode == 2


def test_check_small_bounds_pass():
    done = run_cli("check", "--instances", "60", "--candidates", "3",
                   "--ballots", "6", "--seed", "5")
    assert done.returncode == 0, done.stderr
    assert "irv-exhaustive: ok" in done.stdout
    assert "stv-random: ok" in done.stdout


def test_check_single_candidate_bound_passes():
    done = run_cli("check", "--instances", "40", "--candidates", "1",
                   "--seed", "5")
    assert done.returncode == 0, done.stderr


def test_check_prints_counterexamples_and_fails(monkeypatch, capsys):
    from votetally import cli, differential

    def rigged(seed, instances, max_candidates, max_ballots):
        return {"irv-random": [differential.Counterexample(
            "irv-random", "roster=[1] ballots=[]", "winner changed")]}

    monkeypatch.setattr(differential, "run_all_suites", rigged)
    exit_code = cli.main(["check", "--seed", "9"])
    captured = capsys.readouterr()
    assert exit_code == 1
    assert "irv-random: FAIL" in captured.out
    assert "roster=[1] ballots=[]" in captured.err
    assert "--seed 9" in captured.err
