import json
import subprocess
import sys
from pathlib import Path

import pytest

from adedefect.cli import main, parse_job, run_job, serialize_job
from adedefect.errors import ParseError, SchemaError

from conftest import SEGRE, segre_nodes

JOBS = Path(__file__).resolve().parent.parent / "jobs"

QUINTIC = {"model": {"type": "p4", "degree": 5,
                     "polynomial": "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"}}


def segre_job():
    return {"model": {"type": "p4", "degree": 3, "polynomial": SEGRE},
            "points": [{"point": [str(x) for x in n]} for n in segre_nodes()]}


def a3_job():
    return {"model": {"type": "local", "variables": ["x", "y", "z", "w"],
                      "equation": "x^2 + y^2 + z^2 + w^4",
                      "sections": ["1", "w", "x"]},
            "points": [{"point": ["0", "0", "0", "0"]}]}


def run(obj, command):
    return run_job(parse_job(json.dumps(obj)), command, threads=1)


def test_parse_minimal_quintic():
    spec = parse_job(json.dumps(QUINTIC).encode())
    assert spec.points == [] and spec.model.degree == 5


def test_parse_segre_points():
    spec = parse_job(json.dumps(segre_job()))
    assert len(spec.points) == 10


def test_negative_exponent_outside_laurent():
    bad = {"model": {"type": "p4", "degree": 5, "polynomial": "x0^-2"}}
    with pytest.raises(ParseError):
        parse_job(json.dumps(bad))


def test_json_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_job(b'{\n  "model": {"type": "p4",,}\n}')
    assert err.value.line == 2 and err.value.column > 1


@pytest.mark.parametrize("obj, field", [
    ({"model": {"type": "p4", "polynomial": "x0"}}, "model.degree"),
    ({"model": {"type": "nope"}}, "model.type"),
    ({"model": QUINTIC["model"], "points": [{"point": "1"}]}, "points[0].point"),
    ({"model": QUINTIC["model"], "extra": 1}, "extra"),
    ({"model": QUINTIC["model"], "depth_bound": 0}, "depth_bound"),
    ({"model": {"type": "cyclic", "k": "2", "d": 2, "branch": "y0"}}, "model.k"),
])
def test_schema_errors_name_field(obj, field):
    with pytest.raises(SchemaError) as err:
        parse_job(json.dumps(obj))
    assert err.value.field == field


def test_extension_point():
    job = {"model": {"type": "local", "variables": ["x", "y", "z", "w"],
                     "equation": "x^2 + y^2 + z^2 + (w^2 + 1)^2",
                     "sections": ["1", "w"]},
           "points": [{"point": ["0", "0", "0", "a"],
                       "ext": {"name": "a", "minpoly": "a^2 + 1"}}]}
    report, code = run(job, "defect")
    assert code == 0
    # an A1 point over Q(a) stands for two conjugate points
    assert (report["result"]["mu"], report["result"]["rank"]) == (2, 2)


def test_hodge_quintic():
    report, code = run(QUINTIC, "hodge")
    assert code == 0
    assert (report["result"]["h11"], report["result"]["h12"]) == (1, 101)
    assert report["$schema"] and report["version"] and report["input_sha256"]


def test_defect_segre():
    report, code = run(segre_job(), "defect")
    r = report["result"]
    assert (r["mu"], r["rank"], r["delta"]) == (10, 5, 5)


def test_resolve_tree_a3():
    report, _ = run(a3_job(), "resolve-tree")
    (tree,) = report["result"]["trees"]
    (child,) = tree["children"]
    assert child["children"] == [] and report["result"]["mu"] == 2


def test_check_flags_bad_point():
    job = segre_job()
    job["points"].append({"point": ["1", "-1", "0", "0", "0"]})
    report, code = run(job, "check")
    assert code == 2 and report["result"]["status"] == "INVALID"
    assert "PointNotSingular" not in report["result"]["points"][-1]["error"]
    assert "ambient-models" in report["result"]["points"][-1]["error"]


def test_hodge_rejects_local_model():
    with pytest.raises(Exception) as err:
        run(a3_job(), "hodge")
    assert "global model" in str(err.value)


def test_round_trip():
    for obj in (QUINTIC, segre_job(), a3_job()):
        spec = parse_job(json.dumps(obj))
        assert parse_job(serialize_job(spec)) == spec


def test_main_writes_output(tmp_path):
    out = tmp_path / "r.json"
    code = main(["defect", "--input", str(JOBS / "segre_cubic.json"),
                 "--output", str(out)])
    assert code == 0 and json.loads(out.read_text())["result"]["delta"] == 5


def test_main_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"model": {"type": "p4", "degree": 5, "polynomial": "x0^"}}')
    assert main(["hodge", "--input", str(bad)]) == 1
    assert "core-algebra" in capsys.readouterr().err


def test_deterministic_bytes_across_thread_counts(tmp_path):
    outs = []
    for threads in ("1", "3", "1"):
        res = subprocess.run(
            [sys.executable, "-m", "adedefect", "hodge", "--input",
             str(JOBS / "double_solid_4nodes.json")],
            capture_output=True, env={"TOOL_THREADS": threads, "PATH": ""},
            check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1] == outs[2]


def test_depth_bound_flag(tmp_path):
    job = tmp_path / "deep.json"
    job.write_text(json.dumps({
        "model": {"type": "local", "variables": ["x", "y", "z", "w"],
                  "equation": "x^2 + y^2 + z^2 + w^12"},
        "points": [{"point": ["0", "0", "0", "0"]}]}))
    assert main(["resolve-tree", "--input", str(job), "--depth-bound", "3"]) == 1
    assert main(["resolve-tree", "--input", str(job), "--depth-bound", "8",
                 "--output", str(tmp_path / "o.json")]) == 0
