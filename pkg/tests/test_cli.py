import json
import shutil
import subprocess
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from heun_atlas.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def _validator(name):
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    registry = Registry().with_resources(resources)
    schema = json.loads((SCHEMAS / name).read_text())
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema, registry=registry)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_types_text(capsys):
    code, out, _ = run(capsys, "types")
    assert code == 0 and "type 2,3" in out and "max degree 12" in out


def test_patterns_json(capsys):
    code, out, _ = run(capsys, "patterns", "--type", "2,3", "--degree", "12", "--json")
    doc = json.loads(out)
    _validator("report.schema.json").validate(doc)
    assert code == 0 and len(doc["checks"]) == 15


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--id", "H21", "--id", "H44", "--json", "--no-timings")
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["PASS"] == 2
    assert "seconds" not in doc["checks"][0]


def test_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--id", "H99")[0] == 2
    assert run(capsys, "solve", "--pattern", "2=2")[0] == 2
    with pytest.raises(SystemExit):
        main(["count"])


def test_solve_and_count(capsys):
    code, out, _ = run(capsys, "solve", "--pattern", "3+1=3+1=2+2")
    assert code == 0 and "1 found, 1 expected" in out
    code, out, _ = run(capsys, "count", "--pattern", "[2]^6=[3]^4=9+1+1+1", "--frobenius", "--threads", "2")
    assert code == 0 and "159667200" in out


def test_dessin_dot(capsys):
    code, out, _ = run(capsys, "dessin", "--id", "H1")
    assert code == 0 and out.startswith("graph H1 {")
    assert run(capsys, "dessin", "--pattern", "[2]^6=[3]^4=7+3+1+1")[0] == 1


def test_nonexist_certificate_schema(capsys):
    v = _validator("certificate.schema.json")
    code, out, _ = run(capsys, "nonexist", "--type", "2,3", "--pattern", "[2]^6=[3]^4=7+3+1+1",
                       "--exhaustive", "--json")
    doc = json.loads(out)
    v.validate(doc)
    assert code == 0 and doc["status"] == "Nonexistent"
    _, out, _ = run(capsys, "nonexist", "--type", "2,3", "--pattern", "[2]^6=[3]^4=9+1+1+1", "--json")
    v.validate(json.loads(out))


def test_sigma(capsys):
    code, out, _ = run(capsys, "sigma", "2^6", "3^4", "9+1+1+1", "--connected")
    assert code == 0 and "159667200" in out
    assert run(capsys, "sigma", "2^6", "3^4", "9+1+1")[0] == 2


def test_mp24_json_file(capsys, tmp_path):
    path = tmp_path / "mp.json"
    code, _, _ = run(capsys, "mp24", "--json", str(path), "--threads", "2")
    doc = json.loads(path.read_text())
    _validator("mp24.schema.json").validate(doc)
    assert code == 0 and len(doc["records"]) == 199 and doc["totals"]["sigma_zero"] == 47


def test_tables_and_quick_run(capsys, tmp_path):
    v = _validator("report.schema.json")
    code, out, _ = run(capsys, "tables", "--json", "--no-timings")
    doc = json.loads(out)
    v.validate(doc)
    assert code == 0 and doc["counts"] == {"PASS": 6, "FAIL": 0, "WARN": 1}
    _, again, _ = run(capsys, "tables", "--json", "--no-timings")
    assert again == out
    code, out, _ = run(capsys, "all", "--json")
    v.validate(json.loads(out))
    assert code == 0


@pytest.mark.skipif(shutil.which("heun-atlas") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["heun-atlas", "verify", "--id", "H32"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS  H32" in proc.stdout
