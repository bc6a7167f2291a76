import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import E, J
from orthograph.cli import main
from orthograph.golden import golden_pairs
from orthograph.io import dump_json, element_to_doc


@pytest.fixture
def pair_files(tmp_path):
    def write(name):
        paths = []
        for tag, x in zip("ab", golden_pairs()[name]):
            p = tmp_path / f"{name}-{tag}.json"
            p.write_text(dump_json(element_to_doc(x)))
            paths.append(str(p))
        return paths

    return write


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_adjacent(capsys, pair_files):
    code, out, _ = run(capsys, "check", *pair_files("ip-pi"), "--json")
    report = json.loads(out)
    assert code == 0 and report["exit_code"] == 0
    assert set(report) >= {"command", "inputs", "result", "tolerances", "seed", "exit_code", "wall_time"}


def test_check_not_adjacent(capsys, pair_files):
    assert run(capsys, "check", *pair_files("c-m2"))[0] == 1


def test_witness_and_max_len(capsys, pair_files):
    code, out, _ = run(capsys, "witness", *pair_files("c5"), "--json")
    assert code == 0 and json.loads(out)["result"]["length"] == 3
    assert run(capsys, "witness", *pair_files("c-m2"), "--max-len", "3")[0] == 3
    assert run(capsys, "witness", *pair_files("c-m2"), "--max-len", "4")[0] == 0


def test_isolated_input(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(dump_json(element_to_doc(E(1.0, np.eye(2)))))
    b.write_text(dump_json(element_to_doc(E(1.0, J))))
    assert run(capsys, "witness", str(a), str(b))[0] == 65


def test_distance(capsys, pair_files):
    code, out, _ = run(capsys, "distance", *pair_files("c4"), "--count", "20", "--json")
    result = json.loads(out)["result"]
    assert code == 0 and result["sample_distance"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["reproduce", "nope"],
        ["diameter", "1+x"],
        ["sample", "1+2", "--count", "0"],
        ["bogus"],
        ["check"],
    ],
)
def test_usage_errors_exit_64(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_bad_json_and_mismatch(capsys, tmp_path, pair_files):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    a, _ = pair_files("c-m2")
    code, _, err = run(capsys, "check", str(bad), a)
    assert code == 64 and "line 1" in err
    _, b = pair_files("c4")
    code, _, err = run(capsys, "check", a, b)
    assert code == 64 and "signature mismatch" in err


def test_sample_twice_is_identical(capsys, tmp_path):
    outs = []
    for workers in ("1", "2"):
        path = tmp_path / f"s{workers}.json"
        code, text, _ = run(capsys, "sample", "1+2", "--count", "25", "--seed", "9", "--workers", workers, "--out", str(path))
        assert code == 0
        report = json.loads(path.read_text())
        outs.append((text, report["result"]))
    assert outs[0] == outs[1]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ORTHOGRAPH_SEED", "17")
    code, out, _ = run(capsys, "sample", "1+1", "--count", "5", "--json")
    assert code == 0 and json.loads(out)["seed"] == 17
    monkeypatch.setenv("ORTHOGRAPH_SEED", "x")
    assert run(capsys, "sample", "1+1")[0] == 64


def test_diameter(capsys):
    code, out, _ = run(capsys, "diameter", "1+2")
    assert code == 0 and out.strip() == "diameter of 1+2: 4  [c-plus-m2-distance4]"


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "ip-pi")
    assert code == 0 and out.startswith("ip-pi: match")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orthograph.cli", "diameter", "2+2", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["theorem_diameter"] == 3
