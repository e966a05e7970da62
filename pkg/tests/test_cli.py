"""CLI surface: subcommands, exit codes, determinism."""

import json
import os
import subprocess
import sys

from hypercf import cli


def run_cli(args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "hypercf.cli", *args],
        capture_output=True, text=True, timeout=600, **kwargs,
    )


def test_expand_example3_records(tmp_path):
    res = run_cli(["expand", "--curve", "example3", "--lines", "10"])
    assert res.returncode == 0
    records = [json.loads(line) for line in res.stdout.splitlines()]
    assert len(records) == 10
    assert (records[0]["d"], records[0]["v"]) == ("1", "-1")
    assert (records[1]["d"], records[1]["v"]) == ("1", "0")
    assert records[0]["n"] == 0


def test_expand_backward_flag():
    res = run_cli(["expand", "--curve", "example4", "--lines", "3", "--backward", "2"])
    assert res.returncode == 0
    records = [json.loads(line) for line in res.stdout.splitlines()]
    assert [r["n"] for r in records] == [-2, -1, 0, 1, 2]


def test_expand_from_json_file(tmp_path):
    from hypercf import bundled, cfrac

    doc = cfrac.curve_seed_to_json(*bundled.example4())
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(doc))
    res = run_cli(["expand", "--curve", str(path), "--lines", "2"])
    assert res.returncode == 0


def test_moments_oeis_style():
    res = run_cli(["moments", "--curve", "example3", "--count", "11", "--oeis-style"])
    assert res.stdout.strip() == "1 0 2 1 6 7 24 41 115 236 613 1380"


def test_somos_find_and_verify_roundtrip(tmp_path):
    res = run_cli(["tau", "--curve", "example4", "--forward", "12", "--back", "13"])
    doc = json.loads(res.stdout)
    seq = {"start": doc["lo"], "values": doc["tau"]}
    seq_path = tmp_path / "seq.json"
    seq_path.write_text(json.dumps(seq))
    res = run_cli(["somos", "find", "--input", str(seq_path), "--kmax", "8"])
    assert res.returncode == 0
    rel = json.loads(res.stdout)
    assert rel["k"] == 8
    assert rel["coefficients"] == ["7", "137", "2504", "-43424", "-26959"]
    rel_path = tmp_path / "rel.json"
    rel_path.write_text(res.stdout)
    res = run_cli(["somos", "verify", "--relation", str(rel_path), "--input", str(seq_path)])
    assert res.returncode == 0


def test_somos_verify_failure_exit_code(tmp_path):
    seq_path = tmp_path / "seq.json"
    seq_path.write_text(json.dumps([str(x) for x in (1, 1, 1, 1, 2, 3, 7, 23, 59, 5)]))
    rel_path = tmp_path / "rel.json"
    rel_path.write_text(json.dumps({"k": 4, "coefficients": ["1", "-1", "-1"]}))
    res = run_cli(["somos", "verify", "--relation", str(rel_path), "--input", str(seq_path)])
    assert res.returncode == 1


def test_orbit_csv_fig1_prefix():
    seed_doc = json.dumps({
        "params": {"f": "-5", "g": "-1", "u": "-1"},
        "state": {"d": "2", "e": "1/2", "v_prev": "-1/2", "w_prev": "-3/2"},
    })
    res = run_cli(["orbit", "--genus", "2", "--steps", "3", "--seed-json", seed_doc])
    lines = res.stdout.splitlines()
    assert lines[0] == "n,d,e,v,w"
    assert lines[1] == "0,2,1/2,-1/2,-3/2"
    assert lines[2].startswith("1,2,0,0,-1")
    res = run_cli(["orbit", "--genus", "2", "--steps", "1", "--seed-json", seed_doc, "--float"])
    assert "d_float" in res.stdout.splitlines()[0]


def test_orbit_genus1():
    seed_doc = json.dumps({
        "params": {"f": "-3", "u": "-1", "v": "-2"},
        "state": {"d": "1", "v": "-1"},
    })
    res = run_cli(["orbit", "--genus", "1", "--steps", "2", "--seed-json", seed_doc])
    lines = res.stdout.splitlines()
    assert lines[1] == "0,1,-1"
    assert lines[2] == "1,1,0"


def test_verify_all_random_curve_exit_zero():
    res = run_cli(["verify", "all", "--curve", "random", "--genus", "2", "--seed", "42",
                   "--depth", "6"])
    assert res.returncode == 0, res.stderr


def test_verify_poisson_subcommand():
    res = run_cli(["verify", "poisson", "--genus", "1", "--samples", "2", "--seed", "3"])
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["ok"] is True


def test_input_error_exit_code(tmp_path):
    res = run_cli(["expand", "--curve", str(tmp_path / "missing.json"), "--lines", "2"])
    assert res.returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"genus": 1, "A": ["0", "0", "1"], "R": ["1"],
                               "P0": ["0", "0", "1"], "Q0": ["1", "1"]}))
    res = run_cli(["expand", "--curve", str(bad), "--lines", "2"])
    assert res.returncode == 2
    assert "divide" in res.stderr or "degree" in res.stderr


def test_determinism_byte_identical():
    args = ["verify", "theorem2", "--curve", "random", "--genus", "2", "--seed", "11",
            "--depth", "5"]
    a = run_cli(args)
    b = run_cli(args)
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode == 0


def test_threads_env_does_not_change_output():
    args = ["verify", "poisson", "--genus", "1", "--samples", "3", "--seed", "5"]
    env = dict(os.environ)
    a = run_cli(args)
    env["HYPERCF_THREADS"] = "2"
    b = run_cli(args, env=env)
    assert a.stdout == b.stdout


def test_repro_fast_bundle():
    res = run_cli(["repro", "somos4-original"])
    assert res.returncode == 0
    assert json.loads(res.stdout)["ok"] is True


def test_repro_unknown_bundle_rejected():
    res = run_cli(["repro", "not-a-bundle"])
    assert res.returncode == 2


def test_main_entry_direct():
    assert cli.main(["repro", "glued-doubtau"]) == 0
