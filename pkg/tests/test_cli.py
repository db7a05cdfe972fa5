from __future__ import annotations

import json
import subprocess
import sys

import pytest

from wflag.cli import _normalize_argv, build_parser, main
from wflag.records import candidate_from_json

X7_SERIES = {"numerator": [1, 0, 0, 0, 0, 0, 0, -1], "weights": [1, 1, 1, 1, 2]}
X7_BASKET = [{"r": 2, "type": [1, 1, 1], "multiplicity": 1}]


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_weights_golden(capsys):
    code, out, _ = run_cli(capsys, "weights", "--format", "g2", "--mu", "-1,1", "--u", "3")
    assert code == 0
    assert out.strip() == "1 2 2 2 2 3 3 3 3 4 4 4 4 5"


def test_weights_rejects_bad_cocharacter(capsys):
    code, _, err = run_cli(capsys, "weights", "--format", "g2", "--mu", "1,2,3", "--u", "1")
    assert code == 1
    assert "length-2" in err


def test_weights_rejects_nonpositive(capsys):
    code, _, err = run_cli(capsys, "weights", "--format", "g2", "--mu", "5,0", "--u", "1")
    assert code == 1
    assert "error" in err


def test_hilbert_json_golden(capsys):
    code, out, _ = run_cli(
        capsys, "hilbert", "--format", "g2", "--mu", "-1,1", "--u", "3", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["q"] == 33
    assert payload["canonical_weight"] == -9
    assert payload["numerator"][0] == "1"
    assert payload["numerator"][4] == "-3"
    assert payload["numerator"][33] == "1"


def test_hilbert_text_output(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--format", "g2", "--mu", "0,0", "--u", "1")
    assert code == 0
    assert "q: 11" in out
    assert "canonical weight: -3" in out


def test_qorb_golden(capsys):
    code, out, _ = run_cli(capsys, "qorb", "--r", "2", "--type", "1,1,1", "--k", "1")
    assert code == 0
    assert "numerator: -t^3" in out
    assert "denominator: (1 - t)^3 * (1 - t^2)" in out


def test_qorb_rejects_incompatible_k(capsys):
    code, _, err = run_cli(capsys, "qorb", "--r", "2", "--type", "1,1,1", "--k", "0")
    assert code == 1
    assert "error" in err


def test_initial_golden(tmp_path, capsys):
    series = write_json(tmp_path / "series.json", X7_SERIES)
    code, out, _ = run_cli(capsys, "initial", "--series", series, "--n", "3", "--k", "1")
    assert code == 0
    assert "numerator: 1 + t^2 + t^3 + t^5" in out
    assert "denominator: (1 - t)^4" in out


def test_decompose_identity_holds(tmp_path, capsys):
    series = write_json(tmp_path / "series.json", X7_SERIES)
    basket = write_json(tmp_path / "basket.json", X7_BASKET)
    code, out, _ = run_cli(
        capsys, "decompose", "--series", series, "--basket", basket, "--n", "3", "--k", "1"
    )
    assert code == 0
    assert "identity holds" in out


def test_decompose_identity_fails(tmp_path, capsys):
    series = write_json(tmp_path / "series.json", X7_SERIES)
    basket = write_json(
        tmp_path / "basket.json", [{"r": 2, "type": [1, 1, 1], "multiplicity": 2}]
    )
    code, out, _ = run_cli(
        capsys, "decompose", "--series", series, "--basket", basket, "--n", "3", "--k", "1"
    )
    assert code == 1
    assert "identity fails" in out


def test_decompose_rejects_wrong_dimension(tmp_path, capsys):
    series = write_json(tmp_path / "series.json", X7_SERIES)
    basket = write_json(tmp_path / "basket.json", [{"r": 2, "type": [1, 1]}])
    code, _, err = run_cli(
        capsys, "decompose", "--series", series, "--basket", basket, "--n", "3", "--k", "1"
    )
    assert code == 1
    assert "not 3-dimensional" in err


def test_decompose_rejects_bad_files(tmp_path, capsys):
    series = write_json(tmp_path / "series.json", {"weights": [1]})
    basket = write_json(tmp_path / "basket.json", X7_BASKET)
    code, _, err = run_cli(
        capsys, "decompose", "--series", series, "--basket", basket, "--n", "3", "--k", "1"
    )
    assert code == 1
    assert "numerator" in err

    code, _, err = run_cli(
        capsys,
        "decompose",
        "--series",
        str(tmp_path / "missing.json"),
        "--basket",
        basket,
        "--n",
        "3",
        "--k",
        "1",
    )
    assert code == 1


def test_params_listing(capsys):
    code, out, _ = run_cli(capsys, "params", "--format", "g2", "--u-max", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0] == "mu=(0,0) u=1 q=11 sigma=-3 weights=1^14"
    assert any("weights=1,2^4,3^4,4^4,5" in line for line in lines)


def test_params_gr25_requires_q_max(capsys):
    code, _, err = run_cli(capsys, "params", "--format", "gr25", "--u-max", "2")
    assert code == 1
    assert "q_max" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["weights", "--format", "g2"])  # missing --mu/--u
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_normalize_argv():
    assert _normalize_argv(["weights", "--mu", "-1,1", "--u", "3"]) == [
        "weights",
        "--mu=-1,1",
        "--u",
        "3",
    ]
    assert _normalize_argv(["qorb", "--type", "-1,1"]) == ["qorb", "--type=-1,1"]
    assert _normalize_argv(["--mu", "0,1"]) == ["--mu", "0,1"]


def test_jobs_default_from_environment(monkeypatch):
    monkeypatch.setenv("WFLAG_JOBS", "3")
    parser = build_parser()
    args = parser.parse_args(
        ["search", "--format", "g2", "--k=-1", "--n", "3", "--u-max", "1"]
    )
    assert args.jobs == 3
    monkeypatch.setenv("WFLAG_JOBS", "not-a-number")
    args = build_parser().parse_args(
        ["search", "--format", "g2", "--k=-1", "--n", "3", "--u-max", "1"]
    )
    assert args.jobs == 1


def test_search_emits_json(capsys):
    code, out, err = run_cli(
        capsys,
        "search",
        "--format",
        "g2",
        "--k=-1",
        "--n",
        "3",
        "--u-max",
        "2",
        "--emit",
        "json",
    )
    assert code == 0
    lines = out.strip().splitlines()
    cands = [candidate_from_json(json.loads(line)) for line in lines]
    assert len(cands) == 1
    assert cands[0].x_weights == (1,) * 12
    assert "#" in err  # progress lines live on stderr


def test_search_resume_skips_completed(tmp_path, capsys):
    cache = str(tmp_path / "records.ndjson")
    args = [
        "search",
        "--format",
        "g2",
        "--k=-1",
        "--n",
        "3",
        "--u-max",
        "3",
        "--resume",
        cache,
        "--emit",
        "csv",
    ]
    code, first_out, _ = run_cli(capsys, *args)
    assert code == 0
    first_records = (tmp_path / "records.ndjson").read_text().splitlines()
    done_keys = [
        json.dumps(json.loads(line)["sweep_key"], sort_keys=True)
        for line in first_records
        if json.loads(line)["record"] == "sweep_done"
    ]
    assert len(done_keys) == len(set(done_keys)) == 4

    code, second_out, err = run_cli(capsys, *args)
    assert code == 0
    assert second_out == first_out
    assert "4 embeddings already done" in err
    second_records = (tmp_path / "records.ndjson").read_text().splitlines()
    assert second_records == first_records  # nothing re-emitted


def test_search_resume_extends_bounds(tmp_path, capsys):
    cache = str(tmp_path / "records.ndjson")
    base = ["search", "--format", "g2", "--k=-1", "--n", "3", "--emit", "json"]
    code, _, _ = run_cli(capsys, *base, "--u-max", "2", "--resume", cache)
    assert code == 0
    code, out, _ = run_cli(capsys, *base, "--u-max", "3", "--resume", cache)
    assert code == 0
    done = [
        json.loads(line)["sweep_key"]
        for line in (tmp_path / "records.ndjson").read_text().splitlines()
        if json.loads(line)["record"] == "sweep_done"
    ]
    keys = [json.dumps(k, sort_keys=True) for k in done]
    assert len(keys) == len(set(keys)) == 4
    cands = [candidate_from_json(json.loads(line)) for line in out.strip().splitlines()]
    assert len(cands) == 4  # full u<=3 candidate set from cache + fresh merge


def test_report_from_incomplete_cache(tmp_path, capsys):
    cache = str(tmp_path / "records.ndjson")
    code, _, _ = run_cli(
        capsys,
        "search",
        "--format",
        "g2",
        "--k=-1",
        "--n",
        "3",
        "--u-max",
        "2",
        "--out",
        cache,
    )
    assert code == 0
    code, _, err = run_cli(capsys, "report", "table1", "--from", cache)
    assert code == 1
    assert "not present" in err


def test_cli_via_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "wflag", "qorb", "--r", "2", "--type", "1,1,1", "--k", "1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "-t^3" in proc.stdout
