"""Job files in, JSON reports out.

Usage::

    adedefect {defect,hodge,resolve-tree,check} --input job.json
              [--output report.json] [--depth-bound N]

Exit status: 0 on success, 2 when the report is INVALID, 1 on error.
``TOOL_THREADS`` caps the number of worker processes.
"""

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .errors import AdeDefectError, InvalidModel, ParseError, SchemaError
from .fields import NumberField
from .grammar import identifiers, parse_polynomial
from .hodge import hodge_report
from .models import P3_VARS, P4_VARS, CyclicCoverModel, LocalModel, P4Model
from .resolution import (DEFAULT_DEPTH_BOUND, condition_matrix_from_data,
                         defect, resolve_all, thread_count,
                         verify_double_point)
from .toric import T_VARS, ToricModel

SCHEMA = "adedefect-report/1"
COMMANDS = ("defect", "hodge", "resolve-tree", "check")

EXIT_OK, EXIT_ERROR, EXIT_INVALID = 0, 1, 2


# -- parsing -----------------------------------------------------------------

def _require(obj, key, kind, where):
    if key not in obj:
        raise SchemaError("missing required field", f"{where}.{key}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError("expected an integer", f"{where}.{key}")
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"expected {kind.__name__}", f"{where}.{key}")
    return val


def _poly(text, variables, where, laurent=False):
    if not isinstance(text, str):
        raise SchemaError("expected a polynomial string", where)
    try:
        return parse_polynomial(text, variables, laurent=laurent)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.args[0]}", exc.line, exc.column) from None


def _int_matrix(val, where, width=None):
    if not isinstance(val, list):
        raise SchemaError("expected a list", where)
    out = []
    for i, row in enumerate(val):
        if not isinstance(row, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise SchemaError("expected a list of integers", f"{where}[{i}]")
        if width is not None and len(row) != width:
            raise SchemaError(f"expected {width} entries", f"{where}[{i}]")
        out.append(row)
    return out


def build_model(desc):
    where = "model"
    if not isinstance(desc, dict):
        raise SchemaError("expected an object", where)
    kind = _require(desc, "type", str, where)
    if kind == "p4":
        d = _require(desc, "degree", int, where)
        f = _poly(_require(desc, "polynomial", str, where), P4_VARS,
                  "model.polynomial")
        return P4Model(d, f)
    if kind == "cyclic":
        k = _require(desc, "k", int, where)
        d = _require(desc, "d", int, where)
        b = _poly(_require(desc, "branch", str, where), P3_VARS, "model.branch")
        return CyclicCoverModel(k, d, b)
    if kind == "toric":
        rays = _int_matrix(_require(desc, "rays", list, where), "model.rays", 4)
        cones = _int_matrix(_require(desc, "cones", list, where), "model.cones")
        ample = _int_matrix([_require(desc, "ample", list, where)], "model.ample")[0]
        lp = _poly(_require(desc, "laurent", str, where), T_VARS,
                   "model.laurent", laurent=True)
        return ToricModel(rays, cones, ample, lp)
    if kind == "local":
        names = _require(desc, "variables", list, where)
        if len(names) != 4 or not all(isinstance(v, str) for v in names):
            raise SchemaError("expected 4 variable names", "model.variables")
        eq = _poly(_require(desc, "equation", str, where), names,
                   "model.equation")
        secs = desc.get("sections", [])
        if not isinstance(secs, list):
            raise SchemaError("expected a list", "model.sections")
        return LocalModel(eq, [_poly(s, names, f"model.sections[{i}]")
                               for i, s in enumerate(secs)])
    raise SchemaError(f"unknown model type {kind!r}", "model.type")


def _parse_ext(ext, where):
    if not isinstance(ext, dict):
        raise SchemaError("expected an object", where)
    name = _require(ext, "name", str, where)
    text = _require(ext, "minpoly", str, where)
    ids = identifiers(text)
    if any(i != name for i in ids):
        raise SchemaError(f"minimal polynomial may only use {name!r}",
                          f"{where}.minpoly")
    p = _poly(text, [name], f"{where}.minpoly")
    coeffs = [0] * (p.degree_in(0) + 1)
    for (e,), c in p.terms.items():
        coeffs[e] = c
    if coeffs[-1] != 1 or len(coeffs) < 3:
        raise SchemaError("minimal polynomial must be monic of degree >= 2",
                          f"{where}.minpoly")
    return NumberField(name, coeffs)


def parse_point(entry, index):
    where = f"points[{index}]"
    if not isinstance(entry, dict):
        raise SchemaError("expected an object", where)
    coords = _require(entry, "point", list, where)
    chart = entry.get("chart")
    if chart is not None and (isinstance(chart, bool) or not isinstance(chart, int)):
        raise SchemaError("expected an integer", f"{where}.chart")
    fld = None
    names = []
    if "ext" in entry:
        fld = _parse_ext(entry["ext"], f"{where}.ext")
        names = [fld.name]
    values = []
    for j, c in enumerate(coords):
        if isinstance(c, int) and not isinstance(c, bool):
            c = str(c)
        p = _poly(c, names, f"{where}.point[{j}]")
        values.append(p.evaluate([fld.gen()]) if fld else p.constant_term())
    return values, chart


@dataclass
class JobSpec:
    model_desc: dict
    model: object
    points: list
    charts: list
    depth_bound: int = DEFAULT_DEPTH_BOUND
    raw_points: list = dc_field(default_factory=list)
    sha256: str = ""

    def to_dict(self):
        """Canonical form: polynomials and coordinates re-rendered."""
        desc = dict(self.model_desc)
        desc.update(self.model.summary())
        pts = []
        for raw, vals in zip(self.raw_points, self.points):
            e = {"point": [str(v) for v in vals]}
            if raw.get("chart") is not None:
                e["chart"] = raw["chart"]
            if "ext" in raw:
                e["ext"] = raw["ext"]
            pts.append(e)
        return {"model": desc, "points": pts, "depth_bound": self.depth_bound}

    def __eq__(self, other):
        return isinstance(other, JobSpec) and self.to_dict() == other.to_dict()


def serialize_job(spec):
    return json.dumps(spec.to_dict(), sort_keys=True, indent=2)


def parse_job(text):
    """Parse and validate a job file (bytes or str)."""
    raw = text if isinstance(text, bytes) else text.encode("utf-8")
    try:
        src = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not UTF-8: {exc.reason}", 1, 1,
                         "parse_job") from None
    try:
        obj = json.loads(src)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, "parse_job") from None
    if not isinstance(obj, dict):
        raise SchemaError("job must be a JSON object", "$")
    unknown = set(obj) - {"model", "points", "depth_bound"}
    if unknown:
        raise SchemaError("unknown field", sorted(unknown)[0])
    model = build_model(obj.get("model"))
    pts = obj.get("points", [])
    if not isinstance(pts, list):
        raise SchemaError("expected a list", "points")
    parsed = [parse_point(e, i) for i, e in enumerate(pts)]
    depth = obj.get("depth_bound", DEFAULT_DEPTH_BOUND)
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 1:
        raise SchemaError("expected a positive integer", "depth_bound")
    return JobSpec(obj["model"], model, [p for p, _ in parsed],
                   [c for _, c in parsed], depth, pts,
                   hashlib.sha256(raw).hexdigest())


# -- running -----------------------------------------------------------------

def _local_data(spec):
    return [spec.model.local_datum_at(p, c)
            for p, c in zip(spec.points, spec.charts)]


def _check(spec):
    inputs = None if spec.model.kind == "local" else spec.model.hodge_inputs()
    flags = [] if inputs is None else [f.to_dict() for f in inputs.flags]
    points = []
    for i, (p, c) in enumerate(zip(spec.points, spec.charts)):
        entry = {"index": i}
        try:
            datum = spec.model.local_datum_at(p, c)
            entry["multiplicity"] = verify_double_point(datum.equation)
            entry["ok"] = entry["multiplicity"] == 2
        except AdeDefectError as exc:
            entry["ok"] = False
            entry["error"] = f"{exc.where()}: {exc}"
        points.append(entry)
    ok = all(f["value"] for f in flags) and all(p["ok"] for p in points)
    return {"flags": flags, "points": points,
            "status": "VALID" if ok else "INVALID"}, ok


def run_job(spec, command, depth_bound=None, threads=None):
    """Run ``command`` on ``spec``; returns ``(report dict, exit code)``."""
    depth = depth_bound or spec.depth_bound
    threads = thread_count() if threads is None else threads
    code = EXIT_OK
    if command == "check":
        result, ok = _check(spec)
        code = EXIT_OK if ok else EXIT_INVALID
    elif command == "resolve-tree":
        trees = resolve_all(_local_data(spec), depth, threads)
        result = {"mu": sum(t.mu for t in trees),
                  "trees": [t.to_dict() for t in trees]}
    elif command in ("defect", "hodge"):
        cm = condition_matrix_from_data(_local_data(spec),
                                        spec.model.section_count(),
                                        depth, threads)
        res = defect(cm)
        if command == "defect":
            result = {"mu": res.mu, "rank": res.rank, "delta": res.delta,
                      "sections": spec.model.section_count(),
                      "per_point": cm.per_point}
        else:
            if spec.model.kind == "local":
                raise InvalidModel("hodge needs a global model (p4, cyclic or "
                                   "toric)", "run_job")
            rep = hodge_report(spec.model, res, cm.per_point)
            result = rep.to_dict()
            code = EXIT_OK if rep.valid else EXIT_INVALID
    else:
        raise SchemaError(f"unknown command {command!r}", "command")
    report = {"$schema": SCHEMA, "version": __version__, "command": command,
              "input_sha256": spec.sha256, "result": result}
    return report, code


def render(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="adedefect",
        description="Defect and Hodge numbers of threefolds with A-D-E points.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", required=True, help="job file (JSON)")
    ap.add_argument("--output", help="write the report here instead of stdout")
    ap.add_argument("--depth-bound", type=int, default=None,
                    help=f"blow-up depth limit (default {DEFAULT_DEPTH_BOUND})")
    args = ap.parse_args(argv)
    try:
        with open(args.input, "rb") as fh:
            spec = parse_job(fh.read())
        report, code = run_job(spec, args.command, args.depth_bound)
    except OSError as exc:
        print(f"error [cli-io]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except AdeDefectError as exc:
        print(f"error [{exc.where()}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = render(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code
