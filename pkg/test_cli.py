#!/usr/bin/env python3
"""
Command-line surface: documents, exit codes and configuration files
"""

import csv
import json
import sys
from pathlib import Path

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

from typer.testing import CliRunner

from zmeasures import __version__
from zmeasures.cli import APP, EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_USAGE

runner = CliRunner()


def invoke(*args):
    return runner.invoke(APP, [str(a) for a in args])


def read_csv(path: Path):
    """(comment lines, header, rows)"""
    lines = path.read_text(encoding="utf-8").splitlines()
    comments = [line[2:] for line in lines if line.startswith("#")]
    table = list(csv.reader(line for line in lines if not line.startswith("#")))
    return comments, table[0], table[1:]


def test_measure_exact(tmp_path):
    out = tmp_path / "m.csv"
    result = invoke("--mode", "exact", "-o", out, "measure", "--z", "2", "--zp", "3", "--n", "2")
    assert result.exit_code == EXIT_OK, result.output
    comments, header, rows = read_csv(out)
    assert comments[0] == f"zmeasures {__version__}"
    assert json.loads(comments[1][len("config "):])["mode"] == "exact"
    assert header == ["partition", "re", "im"]
    assert {row[0]: row[1] for row in rows} == {"2": "6/7", "1,1": "1/7"}
    assert "sum 1" in comments
    # the two-part partition is quoted in the raw text
    assert '"1,1",1/7,0' in out.read_text(encoding="utf-8")


def test_measure_of_size_zero(tmp_path):
    out = tmp_path / "m0.csv"
    result = invoke("--mode", "exact", "-o", out, "measure", "--n", "0")
    assert result.exit_code == EXIT_OK, result.output
    _, _, rows = read_csv(out)
    assert rows == [["-", "1", "0"]]


def test_mixed_measure_json(tmp_path):
    out = tmp_path / "mixed.json"
    result = invoke("--format", "json", "-o", out, "measure", "--mixed", "--max-size", "10")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["version"] == __version__
    assert document["config"]["mixed"] is True
    assert document["rows"][0]["partition"] == "-"
    assert abs(1 - document["sum"]["re"]) <= document["tail_bound"] + 1e-12
    assert document["tail_rigorous"] is True


def test_kernel_vacuum(tmp_path):
    out = tmp_path / "k.csv"
    result = invoke("-o", out, "kernel", "--xi", "0", "--points=-1/2,1/2")
    assert result.exit_code == EXIT_OK, result.output
    _, header, rows = read_csv(out)
    assert header == ["i", "j", "re", "im"]
    entries = {(row[0], row[1]): float(row[2]) for row in rows}
    assert entries == {("-1/2", "-1/2"): 1.0, ("-1/2", "1/2"): 0.0, ("1/2", "-1/2"): 0.0, ("1/2", "1/2"): 0.0}


def test_rimhook_kernel_zeros(tmp_path):
    out = tmp_path / "kr.csv"
    result = invoke("-o", out, "kernel", "--r", "2", "--points", "1/2,3/2", "--method", "both")
    assert result.exit_code == EXIT_OK, result.output
    comments, _, rows = read_csv(out)
    for i, j, re, im in rows:
        if i != j:
            assert float(re) == 0.0 and float(im) == 0.0
        else:
            assert 0.0 < float(re) < 1.0
    assert any(line.startswith("discrepancy") for line in comments)


def test_corr_empty_and_single(tmp_path):
    out = tmp_path / "c.csv"
    result = invoke("-o", out, "corr", "--max-size", "20", "--strict")
    assert result.exit_code == EXIT_OK, result.output
    _, header, rows = read_csv(out)
    assert header == ["route", "re", "im"]
    assert rows[0][:2] == ["rho_det", "1"]
    out = tmp_path / "c1.json"
    result = invoke("--format", "json", "-o", out, "corr", "--points=-1/2", "--strict")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["config"]["tol"] == "1e-06"
    assert document["gap"] <= document["tail_bound"] + float(document["config"]["tol"])


def test_rimhook_corr(tmp_path):
    out = tmp_path / "rh.json"
    result = invoke("--format", "json", "-o", out, "rimhook-corr", "--r", "2", "--points=-1/2,3/2",
                    "--tol", "1e-5", "--strict")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    routes = [row["route"] for row in document["rows"]]
    assert routes == ["rho_det", "brute", "z_truncated", "z_predicted"]
    assert document["relative_gap"] < 1e-3


def test_bad_input_exit_codes(tmp_path):
    assert invoke("measure", "--z", "abc").exit_code == EXIT_USAGE
    assert invoke("--format", "xml", "measure").exit_code == EXIT_USAGE
    assert invoke("kernel", "--points", "1/3").exit_code == EXIT_USAGE
    assert invoke("measure", "--xi", "1.5", "--mixed").exit_code == EXIT_DOMAIN
    # exact arithmetic cannot produce the kernel away from xi = 0
    assert invoke("--mode", "exact", "kernel", "--points", "1/2").exit_code == EXIT_DOMAIN
    # sampling a signed measure
    assert invoke("sample", "--z", "2", "--zp", "3", "--count", "5").exit_code == EXIT_DOMAIN


def test_sample_is_reproducible(tmp_path):
    out = tmp_path / "s.csv"
    args = ("-o", out, "sample", "--count", "300", "--seed", "5", "--max-size", "15")
    assert invoke(*args).exit_code == EXIT_OK
    first = out.read_bytes()
    assert invoke(*args).exit_code == EXIT_OK
    assert out.read_bytes() == first
    _, header, rows = read_csv(out)
    assert header == ["index", "partition"]
    assert [row[0] for row in rows] == [str(i) for i in range(300)]


def test_verify(tmp_path):
    out = tmp_path / "v.json"
    result = invoke("-o", out, "verify", "--suite", "comm,prob", "--max-size", "4")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["passed"] is True
    assert [s["name"] for s in document["suites"]] == ["comm", "prob"]
    assert all("seconds" not in s for s in document["suites"])
    assert invoke("verify", "--suite", "bogus").exit_code == EXIT_USAGE


def test_config_file(tmp_path):
    config = tmp_path / "settings.json"
    config.write_text(json.dumps({"z": "2", "zp": "3", "mode": "exact", "n": 2, "colour": "blue"}),
                      encoding="utf-8")
    out = tmp_path / "m.csv"
    result = invoke("--config", config, "-o", out, "measure")
    assert result.exit_code == EXIT_OK, result.output
    _, _, rows = read_csv(out)
    assert {row[0]: row[1] for row in rows} == {"2": "6/7", "1,1": "1/7"}
    # flags override the file
    result = invoke("--config", config, "-o", out, "measure", "--n", "1")
    assert result.exit_code == EXIT_OK, result.output
    _, _, rows = read_csv(out)
    assert rows == [["1", "1", "0"]]
    # a missing file falls back to defaults
    result = invoke("--config", tmp_path / "absent.json", "-o", out, "measure", "--n", "1")
    assert result.exit_code == EXIT_OK, result.output


def _floats(node):
    """Every float value in a parsed JSON document"""
    if isinstance(node, float):
        return [node]
    if isinstance(node, dict):
        return [x for value in node.values() for x in _floats(value)]
    if isinstance(node, list):
        return [x for value in node for x in _floats(value)]
    return []


def test_exact_mode_documents_are_rational(tmp_path):
    args = ("--mode", "exact", "measure", "--z", "2", "--zp", "3", "--xi", "1/4", "--mixed", "--max-size", "3")
    out = tmp_path / "mixed.csv"
    result = invoke("-o", out, *args)
    assert result.exit_code == EXIT_OK, result.output
    comments, _, rows = read_csv(out)
    # z = 2 is outside the positive regimes, so the last mass is reported
    assert "tail_bound 5103/32768 rigorous=False" in comments
    assert {row[0]: row[1] for row in rows}["2"] == "6561/32768"
    config = json.loads(comments[1][len("config "):])
    assert config["tol"] == "1e-06" and config["threshold"] == "0.0"
    out = tmp_path / "mixed.json"
    result = invoke("--format", "json", "-o", out, *args)
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert _floats(document) == []
    assert document["tail_bound"] == "5103/32768"
    # principal series with zz' = 2: the remainder 1 - sum is exact
    out = tmp_path / "principal.json"
    result = invoke("--mode", "exact", "--format", "json", "-o", out, "measure", "--z", "1+1i", "--zp", "1-1i",
                    "--xi", "1/2", "--mixed", "--max-size", "2")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert _floats(document) == []
    assert document["tail_rigorous"] is True
    assert document["tail_bound"] == "5/16"
    assert document["sum"]["re"] == "11/16"


def test_exact_corr_and_kernel_at_zero_xi(tmp_path):
    out = tmp_path / "c.json"
    result = invoke("--mode", "exact", "--format", "json", "-o", out, "corr", "--z", "1+1i", "--zp", "1-1i",
                    "--xi", "0", "--points=-1/2,-3/2", "--max-size", "6")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert _floats(document) == []
    assert document["gap"] == "0" and document["tail_bound"] == "0"
    out = tmp_path / "k.json"
    result = invoke("--mode", "exact", "--format", "json", "-o", out, "kernel", "--xi", "0", "--points=-1/2,1/2",
                    "--method", "both")
    assert result.exit_code == EXIT_OK, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert _floats(document) == []
    assert document["discrepancy"] == "0" and "condition" not in document
    assert document["entries"][0][0] == {"re": "1", "im": "0"}
    assert invoke("--mode", "exact", "corr", "--xi", "0", "--r", "2").exit_code == EXIT_DOMAIN


def test_sample_as_lines(tmp_path):
    out = tmp_path / "s.txt"
    result = invoke("--format", "lines", "-o", out, "sample", "--count", "50", "--seed", "5")
    assert result.exit_code == EXIT_OK, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == f"# zmeasures {__version__}"
    draws = [line for line in lines if not line.startswith("#")]
    assert len(draws) == 50
    out = tmp_path / "s.json"
    assert invoke("--format", "json", "-o", out, "sample", "--count", "50", "--seed", "5").exit_code == EXIT_OK
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["partitions"] == draws
    assert [row["partition"] for row in document["rows"]] == draws
    # one-per-line output is only defined for the sampler
    assert invoke("--format", "lines", "measure").exit_code == EXIT_USAGE


def test_config_file_sets_draw_count(tmp_path):
    config = tmp_path / "settings.json"
    config.write_text(json.dumps({"count": 7, "seed": 3}), encoding="utf-8")
    out = tmp_path / "s.txt"
    result = invoke("--config", config, "--format", "lines", "-o", out, "sample")
    assert result.exit_code == EXIT_OK, result.output
    assert len([line for line in out.read_text(encoding="utf-8").splitlines() if not line.startswith("#")]) == 7
    out = tmp_path / "v.json"
    result = invoke("--config", config, "-o", out, "verify", "--suite", "sampler")
    # the report is written whether or not 7 draws pass the chi-square check
    assert result.exit_code in (EXIT_OK, EXIT_FAILED), result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["suites"][0]["details"]["draws"] == 7
    assert document["config"]["count"] == 7


if __name__ == "__main__":
    import tempfile

    print("=== zmeasures command-line tests ===\n")
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            with tempfile.TemporaryDirectory() as tmp:
                fn(Path(tmp))
            print(f"✓ {name}")
    print("\nAll command-line tests passed!")
