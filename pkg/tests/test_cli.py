import json
import subprocess
import sys

import pytest

from entswap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


def test_tables_a2(capsys):
    code, lines = run(capsys, "tables", "a2")
    assert code == 0
    assert lines[1] == "1  [2 3 0 1]  {01, 10, 23, 32}"


def test_tables_records(capsys):
    code, lines = run(capsys, "tables", "s", "--format", "records")
    recs = [json.loads(line) for line in lines]
    assert code == 0 and len(recs) == 8
    assert recs[0] == {"table": "s", "index": 0, "permutation": list(range(8)), "words": ["000", "122"]}
    assert {r["index"]: r["words"] for r in recs}[7] == ["200", "322"]


def test_verify_hadamard_ok(capsys):
    code, lines = run(capsys, "verify", "hadamard")
    assert code == 0 and lines[-1] == "verify hadamard: ok"


@pytest.mark.parametrize("suite", ["pauli", "tables", "swap", "all"])
def test_verify_reports_printed_defects(capsys, suite):
    code, lines = run(capsys, "verify", suite)
    assert code == 3
    assert lines[-1].startswith("FAILED exit=3 reason=verification failed:")


def test_run_qsdc_example(capsys):
    code, lines = run(capsys, "run", "qsdc", "--msg", "1302", "--n", "8", "--J", "1,3,5,7", "--seed", "7")
    assert code == 0
    assert lines == ["carrier 31232032", "outcomes 12313013", "decoded 1302"]


def test_run_bidi(capsys):
    code, lines = run(capsys, "run", "bidi", "--msg-a", "1", "--msg-b", "2")
    assert code == 0 and lines[1:] == ["alice_received 2", "bob_received 1"]


def test_run_multi(capsys):
    code, lines = run(capsys, "run", "multi", "--bits-a", "10", "--bit-b", "0", "--bit-c", "0")
    assert code == 0 and lines[0] == "outcome 7"
    assert "Bob Alice=10 Claire=0" in lines


def test_run_controlled_withheld(capsys):
    code, lines = run(capsys, "run", "controlled", "--msg-a", "12", "--msg-b", "30", "--grant", "false")
    assert code == 0 and lines == ["no authorization; no message exchanged"]


def test_run_keyagree(capsys):
    code, lines = run(capsys, "run", "keyagree", "--m", "20", "--seed", "1")
    keys = dict(line.split(" ", 1) for line in lines if line.startswith("key_"))
    assert code == 0 and keys["key_alice"] == keys["key_bob"]


@pytest.mark.parametrize("argv", [
    ["run", "qsdc"],
    ["run", "qsdc", "--msg", "14"],
    ["run", "qsdc", "--msg", "12", "--J", "0,5", "--n", "3"],
    ["run", "multi", "--bits-a", "1", "--bit-b", "0", "--bit-c", "0"],
    ["run", "controlled", "--msg-a", "1", "--msg-b", "2", "--grant", "maybe"],
    ["tables", "a4"],
    [],
])
def test_usage_errors(capsys, argv):
    code, lines = run(capsys, *argv)
    assert code == 2 and lines[-1].startswith("FAILED exit=2 reason=usage")


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ENTSWAP_SEED", "7")
    _, env_lines = run(capsys, "run", "qsdc", "--msg", "1302", "--n", "8", "--J", "1,3,5,7")
    assert env_lines[1] == "outcomes 12313013"
    monkeypatch.setenv("ENTSWAP_SEED", "seven")
    code, lines = run(capsys, "run", "qsdc", "--msg", "1")
    assert code == 2


def test_info(capsys):
    code, lines = run(capsys, "info")
    assert code == 0 and lines[0].startswith("entswap ")


def test_byte_identical_reruns(tmp_path):
    outputs = []
    for name in ("a", "b"):
        trace = tmp_path / f"{name}.jsonl"
        proc = subprocess.run(
            [sys.executable, "-m", "entswap", "run", "keyagree", "--m", "12", "--seed", "5", "--trace-out", str(trace)],
            capture_output=True, check=True,
        )
        outputs.append((proc.stdout, trace.read_bytes()))
    assert outputs[0] == outputs[1]
    assert outputs[0][1].count(b"\n") > 12
