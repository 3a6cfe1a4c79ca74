import json
import os
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
BIN = os.environ.get("RGS_BIN", str(ROOT / "build" / "tools" / "rgs"))
DATA = Path(os.environ.get("RGS_DATA", str(ROOT / "data")))
SCHEMA = Path(os.environ.get("RGS_SCHEMA", str(ROOT / "docs" / "uniform_report.schema.json")))


def rgs(*args, cwd=None):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, cwd=cwd, timeout=300)


def spec(name):
    return DATA / f"{name}.json"


def strip_timestamp_json(text):
    doc = json.loads(text)
    doc["manifest"].pop("timestamp")
    doc.get("diagnostics", {}).pop("seconds", None)
    return doc


def csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return header, [dict(zip(header, l.split(","))) for l in lines[1:]]


def test_help_lists_every_subcommand():
    r = rgs("--help")
    assert r.returncode == 0
    for sub in ("validate", "value", "wvalue", "uniform", "strategy", "simulate", "oracle"):
        assert sub in r.stdout


def test_unknown_flag_is_a_usage_error():
    r = rgs("value", "--bogus", spec("k1_rps"))
    assert r.returncode == 3
    assert "--bogus" in r.stderr


def test_missing_spec_file():
    r = rgs("value", "--n", "1", DATA / "no_such_spec.json")
    assert r.returncode == 2
    assert "no_such_spec" in r.stderr


def test_schema_violation_in_spec(tmp_path):
    doc = json.loads(spec("am_quadratic").read_text())
    doc["unexpected_key"] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    r = rgs("validate", bad)
    assert r.returncode == 2
    assert "unexpected_key" in r.stderr


def test_cavu_outside_subclass():
    r = rgs("oracle", "cavu", spec("mc_switch"))
    assert r.returncode == 3
    assert "Aumann-Maschler" in r.stderr


def test_validate_am_quadratic():
    r = rgs("validate", spec("am_quadratic"))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    holds = {h["hypothesis"]: h["holds"] for h in doc["reports"]}
    assert holds["HA'"] and holds["HB'"]
    assert doc["aumann_maschler"] is True


@pytest.mark.parametrize("name,value", [("k1_matching", 0.5), ("k1_rps", 0.5)])
def test_uniform_k1_constant_column(name, value):
    r = rgs("uniform", spec(name), "--max-m", 2, "--max-n", 3, "--emit", "csv")
    assert r.returncode == 0, r.stderr
    assert r.stdout.startswith("# command: rgs uniform")
    header, rows = csv_rows(r.stdout)
    assert header == ["m", "n", "lower", "upper"]
    assert len(rows) == 3 * 3
    for row in rows:
        assert float(row["lower"]) == pytest.approx(value, abs=1e-9)
        assert float(row["upper"]) == pytest.approx(value, abs=1e-9)


def test_cavu_am_quadratic_peak():
    r = rgs("oracle", "cavu", spec("am_quadratic"), "--grid", 64)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    best = max(doc["points"], key=lambda pt: pt["cav_u"])
    assert best["cav_u"] == pytest.approx(0.25, abs=1e-12)
    assert best["belief"][0] == pytest.approx(0.5)
    assert doc["cav_u_at_prior"] == pytest.approx(0.25, abs=1e-12)


def test_uniform_json_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    for name, extra in (("am_quadratic", []), ("mc_switch", ["--no-w"])):
        r = rgs("uniform", spec(name), "--max-m", 2, "--max-n", 3, "--emit", "json", *extra)
        assert r.returncode == 0, r.stderr
        doc = json.loads(r.stdout)
        jsonschema.validate(doc, schema)
        assert doc["bracket"]["lower"] <= doc["bracket"]["upper"] + 1e-9


def test_uniform_json_reproducible():
    args = ("uniform", spec("single_controller"), "--max-m", 2, "--max-n", 3, "--emit", "json")
    a, b = rgs(*args), rgs(*args)
    assert a.returncode == 0 and b.returncode == 0
    assert strip_timestamp_json(a.stdout) == strip_timestamp_json(b.stdout)


def test_value_csv_reproducible():
    args = ("value", spec("mc_switch"), "--n", 3, "--m", 1, "--emit", "csv")
    a, b = rgs(*args), rgs(*args)
    assert a.returncode == 0, a.stderr
    keep = lambda t: [l for l in t.splitlines() if not l.startswith("# timestamp")]
    assert keep(a.stdout) == keep(b.stdout)


def test_value_rejects_bad_theta():
    r = rgs("value", spec("mc_switch"), "--theta", "1:0.5,2:0.2")
    assert r.returncode != 0
    assert r.stderr


def test_strategy_simulate_round_trip(tmp_path):
    s1, s2 = tmp_path / "p1.json", tmp_path / "p2.json"
    assert rgs("strategy", spec("am_quadratic"), "--player", 1, "--n", 2, "-o", s1).returncode == 0
    assert rgs("strategy", spec("am_quadratic"), "--player", 2, "--n", 2, "--blocks", "cyclic", "-o", s2).returncode == 0
    assert json.loads(s1.read_text())["kind"] == "markov"

    args = ("simulate", spec("am_quadratic"), "--p1", s1, "--p2", s2, "--horizon", 20, "--reps", 200, "--seed", 11)
    a = rgs(*args, "--trace", tmp_path / "trace_a.csv")
    b = rgs(*args, "--trace", tmp_path / "trace_b.csv")
    assert a.returncode == 0, a.stderr
    da, db = strip_timestamp_json(a.stdout), strip_timestamp_json(b.stdout)
    assert da["mean"] == db["mean"] and da["stage_means"] == db["stage_means"]
    assert len(da["stage_means"]) == 20
    assert 0.0 <= da["mean"] <= 1.0

    ta = [l for l in (tmp_path / "trace_a.csv").read_text().splitlines() if not l.startswith("#")]
    tb = [l for l in (tmp_path / "trace_b.csv").read_text().splitlines() if not l.startswith("#")]
    assert ta == tb
    assert len(ta) == 1 + 200 * 20


def test_simulate_rejects_wrong_player_file(tmp_path):
    s2 = tmp_path / "p2.json"
    assert rgs("strategy", spec("am_quadratic"), "--player", 2, "--n", 2, "-o", s2).returncode == 0
    r = rgs("simulate", spec("am_quadratic"), "--p1", s2, "--p2", "uniform", "--horizon", 5, "--reps", 5)
    assert r.returncode == 2


def test_output_file_embeds_manifest(tmp_path):
    out = tmp_path / "w.json"
    r = rgs("wvalue", spec("am_quadratic"), "--m", 0, "--n", 2, "--theta-grid", 4, "-o", out)
    assert r.returncode == 0, r.stderr
    doc = json.loads(out.read_text())
    assert doc["manifest"]["command"].startswith("rgs wvalue")
    assert doc["manifest"]["input_hash"].startswith("fnv1a64:")
    assert doc["lower"] <= doc["upper"]

    out = tmp_path / "v.csv"
    r = rgs("value", spec("am_quadratic"), "--n", 2, "--emit", "csv", "-o", out)
    assert r.returncode == 0, r.stderr
    text = out.read_text()
    assert text.startswith("# command: rgs value")
    assert "# input_hash: fnv1a64:" in text


def test_jobs_flag_does_not_change_results():
    args = ("uniform", spec("am_convex"), "--max-m", 1, "--max-n", 3, "--emit", "json")
    a = rgs("--jobs", 1, *args)
    b = rgs("--jobs", 3, *args)
    assert a.returncode == 0 and b.returncode == 0
    da, db = strip_timestamp_json(a.stdout), strip_timestamp_json(b.stdout)
    da["manifest"].pop("command"), db["manifest"].pop("command")
    assert da == db
