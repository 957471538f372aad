"""CLI surface: subcommands, exit codes, determinism, schemas."""

import io
import json

import pytest

from padic_spectral.cli import main

FIG5 = "p=2; {1 + 2^3 Z, 4 + 2^3 Z}"


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# analyze


def test_analyze_fig5(capsys):
    code, out, _ = run(capsys, ["analyze", FIG5])
    assert code == 0
    obj = json.loads(out)
    assert obj["p"] == 2 and obj["gamma"] == 3
    assert obj["digits"] == [1, 4]
    assert obj["scale"] == 0 and obj["offset"] == "0"
    assert obj["homogeneous"] is True
    assert obj["I"] == [0] and obj["J"] == [1, 2]
    assert obj["I_Omega"] == {"finite": [0], "tail": 3}
    assert obj["measure"] == "1/4"
    assert obj["spectrum"]["finite"] == ["0", "1/2"]
    assert obj["spectrum"]["lattice_level"] == 3
    assert obj["complement"]["finite"] == [0, 2, 4, 6]
    assert obj["complement"]["lattice_level"] == 0


def test_analyze_inhomogeneous_exits_1(capsys):
    code, out, _ = run(capsys, ["analyze", "p=2; {0 + 2^2 Z, 1 + 2^2 Z, 2 + 2^2 Z}"])
    assert code == 1
    obj = json.loads(out)
    assert obj["homogeneous"] is False
    assert obj["spectrum"] is None and obj["complement"] is None


def test_analyze_deterministic(capsys):
    _, out1, _ = run(capsys, ["analyze", FIG5])
    _, out2, _ = run(capsys, ["analyze", FIG5])
    assert out1 == out2


def test_analyze_parse_error_exit_2(capsys):
    code, _, err = run(capsys, ["analyze", "p=2; {1 + 2^3"])
    assert code == 2
    assert "error" in err and "line 1" in err


def test_analyze_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "set.txt"
    path.write_text(FIG5, encoding="utf-8")
    code, out, _ = run(capsys, ["analyze", "--file", str(path)])
    assert code == 0 and json.loads(out)["digits"] == [1, 4]

    monkeypatch.setattr("sys.stdin", io.StringIO(FIG5))
    code, out, _ = run(capsys, ["analyze", "--stdin"])
    assert code == 0 and json.loads(out)["digits"] == [1, 4]

    code, _, err = run(capsys, ["analyze", FIG5, "--file", str(path)])
    assert code == 2 and "exactly one input source" in err


# ---------------------------------------------------------------------------
# tree


def test_tree_dot(capsys):
    code, out, _ = run(capsys, ["tree", FIG5, "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 6
    _, out2, _ = run(capsys, ["tree", FIG5, "--format", "dot"])
    assert out == out2


def test_tree_json_level_sizes(capsys):
    code, out, _ = run(
        capsys,
        ["tree", "p=3; {0+3^3 Z,4+3^3 Z,8+3^3 Z,9+3^3 Z,13+3^3 Z,17+3^3 Z,18+3^3 Z,22+3^3 Z,26+3^3 Z}", "--format", "json"],
    )
    assert code == 0
    obj = json.loads(out)
    assert [len(level) for level in obj["levels"]] == [1, 3, 3, 9]


# ---------------------------------------------------------------------------
# classify


def test_classify_spectral(capsys):
    code, out, _ = run(
        capsys, ["classify", "--p", "2", "--gamma", "3", "--set", "1,4", "--oracle"]
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["spectral"] and obj["tile"] and obj["homogeneous"]
    assert obj["spectrum"] == [0, 4] and obj["complement"] == [0, 2, 4, 6]
    assert obj["oracle"] is True


def test_classify_non_spectral_exits_1(capsys):
    code, out, _ = run(
        capsys, ["classify", "--p", "2", "--gamma", "2", "--set", "0,1,2", "--oracle"]
    )
    assert code == 1
    obj = json.loads(out)
    assert obj["spectral"] is False and obj["tile"] is False


# ---------------------------------------------------------------------------
# enumerate


def test_enumerate_ndjson(capsys):
    code, out, _ = run(
        capsys,
        ["enumerate", "--p", "2", "--gamma", "2", "--branch-levels", "0"],
    )
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 4
    assert all(obj["homogeneous"] for obj in lines)
    # streamed in bitmask order
    masks = [sum(1 << e for e in obj["set"]) for obj in lines]
    assert masks == sorted(masks)


def test_enumerate_with_choice(capsys):
    code, out, _ = run(
        capsys,
        [
            "enumerate", "--p", "2", "--gamma", "3",
            "--branch-levels", "0,2", "--choice", "repeat",
        ],
    )
    assert code == 0
    (obj,) = [json.loads(line) for line in out.splitlines()]
    assert obj["set"] == [0, 3, 4, 7]


# ---------------------------------------------------------------------------
# verify


def test_verify_spectrum_ok(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    blob = json.dumps({"lattice_level": 3, "finite": ["0", "1/2"]})
    code, out, _ = run(
        capsys,
        ["verify", FIG5, "--spectrum", blob, "--certificate", str(cert)],
    )
    assert code == 0
    assert json.loads(out)["ok"] is True
    cert_obj = json.loads(cert.read_text())
    assert cert_obj["kind"] == "spectral-pair"
    assert len(cert_obj["checks"]) == 8
    assert all(c["ok"] for c in cert_obj["checks"])


def test_verify_spectrum_falsified(capsys):
    blob = json.dumps({"lattice_level": 3, "finite": ["0", "1/4"]})
    code, out, _ = run(capsys, ["verify", FIG5, "--spectrum", blob])
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_verify_complement(capsys):
    good = json.dumps({"lattice_level": 0, "finite": ["0", "2", "4", "6"]})
    code, out, _ = run(capsys, ["verify", FIG5, "--complement", good])
    assert code == 0
    bad = json.dumps({"lattice_level": 0, "finite": ["0", "2", "4", "5"]})
    code, out, _ = run(capsys, ["verify", FIG5, "--complement", bad])
    assert code == 1


def test_verify_requires_exactly_one_candidate(capsys):
    code, _, err = run(capsys, ["verify", FIG5])
    assert code == 2 and "exactly one" in err


def test_verify_set_flag_form(capsys):
    # `verify --set <dsl> --spectrum <json>` is equivalent to the positional form
    blob = json.dumps({"lattice_level": 3, "finite": ["0", "1/2"]})
    code, out, _ = run(capsys, ["verify", "--set", FIG5, "--spectrum", blob])
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_spectrum_from_file(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"lattice_level": 3, "finite": ["0", "1/2"]}))
    code, _, _ = run(capsys, ["verify", FIG5, "--spectrum", f"@{path}"])
    assert code == 0


# ---------------------------------------------------------------------------
# measure


def test_measure_truncation(capsys):
    spec = json.dumps({"p": 2, "preperiod": "", "period": "101", "choice": "repeat"})
    code, out, _ = run(capsys, ["measure", "--spec", spec, "--gamma", "3"])
    assert code == 0
    obj = json.loads(out)
    assert obj["digit_set"] == [0, 3, 4, 7]
    assert obj["branch_levels"] == [0, 2]
    assert obj["measure"] == "1/2"
    assert obj["spectrum_window"] == ["0", "1/8", "1/2", "5/8"]


def test_measure_with_verification(capsys):
    spec = json.dumps({"p": 2, "preperiod": "", "period": "101", "choice": "repeat"})
    code, out, _ = run(
        capsys, ["measure", "--spec", spec, "--gamma", "6", "--verify", "3"]
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["truncation_verified"] is True and obj["gamma0"] == 3


def test_measure_bad_spec_exit_2(capsys):
    code, _, err = run(capsys, ["measure", "--spec", "{not json", "--gamma", "3"])
    assert code == 2 and "error" in err


# ---------------------------------------------------------------------------
# oracle


def test_oracle_exhaustive_small(capsys):
    code, out, _ = run(capsys, ["oracle", "--p", "2", "--gamma", "2"])
    assert code == 0
    obj = json.loads(out)
    assert obj["mode"] == "exhaustive"
    assert obj["count"] == 15
    assert obj["spectral"] == 11  # homogeneous subsets of Z/4Z
    assert obj["disagreements"] == []


def test_oracle_sampled_deterministic(capsys):
    args = ["oracle", "--p", "3", "--gamma", "2", "--samples", "50", "--seed", "7"]
    code, out1, _ = run(capsys, args)
    assert code == 0
    _, out2, _ = run(capsys, args)
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["mode"] == "sampled" and obj["count"] == 50 and obj["seed"] == 7


def test_oracle_parallel_matches_serial(capsys):
    base = ["oracle", "--p", "2", "--gamma", "3"]
    _, serial, _ = run(capsys, base + ["--jobs", "1"])
    _, parallel, _ = run(capsys, base + ["--jobs", "2"])
    assert serial == parallel
