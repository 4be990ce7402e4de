import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from torsion6.cli import main
from torsion6.cli.cache import DiskCache, atomic_write

SCHEMA = json.loads(resources.files("torsion6.exclusions").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "torsion6", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("torsion6 ")


def test_divpoly_text(capsys):
    code, out, _ = run(capsys, "divpoly", "--a", "0", "--b", "1", "--n", "3")
    assert code == 0
    assert "3*x^4 + 12*x" in out


def test_divpoly_negative_j_json(capsys):
    code, out, _ = run(capsys, "divpoly", "--j", "-3375", "--n", "2", "--primitive", "--json")
    assert code == 0
    assert json.loads(out)["n"] == 2


@pytest.mark.parametrize("argv", [
    ["divpoly", "--a", "0", "--b", "1", "--n", "0"],
    ["divpoly", "--n", "3"],
    ["divpoly", "--a", "-3", "--b", "2", "--n", "3"],
    ["check", "BOGUS"],
    ["check"],
    ["gl2", "orbit", "--mod", "1", "--vector", "1,0"],
    ["gl2", "orbit", "--mod", "9", "--label", "3B.1.1", "--vector", "1,0"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_bogus_check_lists_ids(capsys):
    _, _, err = run(capsys, "check", "BOGUS")
    assert "C7xC7" in err


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "--coeffs", "-2,0,1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data
    code, out, _ = run(capsys, "factor", "--poly", "1*x^2 + -1")
    assert code == 0 and "x + 1" in out and "x - 1" in out.replace("+ -1", "- 1")


def test_gl2_commands(capsys):
    code, out, _ = run(capsys, "gl2", "orbit", "--mod", "5", "--gens", "[[1,1],[0,1]];[[2,0],[0,1]]", "--vector", "1,0")
    assert code == 0 and out.split() == ["4"]
    code, out, _ = run(capsys, "gl2", "quotient", "--mod", "3", "--label", "3B.1.1", "--vector", "0,1")
    assert code == 0 and "S3" in out
    code, out, _ = run(capsys, "gl2", "subgroups", "--mod", "9", "--order", "6", "--det-surjective", "--json")
    assert code == 0 and len(json.loads(out)) == 3


def test_gl2_ceiling(capsys):
    code, _, err = run(capsys, "gl2", "subgroups", "--mod", "25", "--max-order", "6", "--ceiling", "100")
    assert code == 1 and "ceiling" in err


def test_facts(capsys, tmp_path):
    code, out, _ = run(capsys, "facts")
    assert code == 0 and "cited facts" in out
    code, out, _ = run(capsys, "facts", "--key", "j-list/isogeny-15")
    assert code == 0 and "46969655/32768" in out
    bad = tmp_path / "f.json"
    bad.write_text("{")
    code, _, err = run(capsys, "facts", "--facts", str(bad))
    assert code == 2


def test_single_check_json_schema(capsys, tmp_path):
    out = tmp_path / "r.json"
    md = tmp_path / "r.md"
    code, _, err = run(capsys, "check", "C7xC7", "--no-cache", "--json", str(out), "--markdown", str(md))
    assert code == 0
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, SCHEMA)
    assert [c["id"] for c in rep["checks"]] == ["C7xC7"]
    assert rep["targets"] == {"C7xC7": {"status": "excluded", "checks": ["C7xC7"]}}
    assert rep["checks"][0]["runtime_ms"] is None
    assert "| C7xC7 | excluded |" in md.read_text()
    # render the stored report again
    code, text, _ = run(capsys, "report", "--input", str(out))
    assert code == 0 and "C7xC7" in text


def test_timings_flag(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "check", "C27", "--no-cache", "--timings", "--json", str(out))
    rep = json.loads(out.read_text())
    assert isinstance(rep["checks"][0]["runtime_ms"], int)
    jsonschema.validate(rep, SCHEMA)


def test_seed_recorded(capsys, tmp_path):
    out = tmp_path / "r.json"
    run(capsys, "check", "C27", "--no-cache", "--seed", "0x10", "--json", str(out))
    rep = json.loads(out.read_text())
    assert rep["config"]["seed"] == 16 and rep["checks"][0]["seed"] == 16


def test_atomic_write(tmp_path):
    p = tmp_path / "sub" / "a.txt"
    p.parent.mkdir()
    atomic_write(p, "one")
    atomic_write(p, "two")
    assert p.read_text() == "two"
    assert os.listdir(p.parent) == ["a.txt"]


def test_disk_cache(tmp_path):
    c = DiskCache(tmp_path)
    assert c.get(("op", 1)) is None
    c.put(("op", 1), {"a": [1, 2]})
    assert c.get(("op", 1)) == {"a": [1, 2]}
    assert DiskCache(tmp_path, version="other").get(("op", 1)) is None
    assert (c.hits, c.misses) == (1, 1)


def test_cache_transparency_c2c30(capsys, tmp_path):
    cache = tmp_path / "cache"
    outs = []
    for i, extra in enumerate((["--cache-dir", str(cache)], ["--cache-dir", str(cache)], ["--no-cache"])):
        out = tmp_path / ("r%d.json" % i)
        code, _, _ = run(capsys, "check", "2x30", "--json", str(out), *extra)
        assert code == 0
        outs.append(out.read_bytes())
    assert os.listdir(cache)
    assert outs[0] == outs[1] == outs[2]
