#!/usr/bin/env python3
"""End-to-end checks of the ghv command line: golden reports, exit codes,
schema validation and generator determinism.

    cli_test.py --ghv build/tools/ghv [--update]

--update rewrites tests/golden from the current binary; review the diff.
"""
import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent
FIXTURES = HERE / "fixtures" / "polytopes"
INVALID = HERE / "fixtures" / "invalid"
GOLDEN = HERE / "golden"

failures = []


def check(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def run(ghv, *args):
    p = subprocess.run([ghv, *map(str, args)], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def validators():
    poly = json.loads((ROOT / "schema" / "polytope.schema.json").read_text())
    rep = json.loads((ROOT / "schema" / "report.schema.json").read_text())
    reg = Registry().with_resources([(s["$id"], Resource.from_contents(s)) for s in (poly, rep)])
    return Draft202012Validator(poly, registry=reg), Draft202012Validator(rep, registry=reg)


def commands_for(doc):
    cmds = ["hvector"]
    pts = {tuple(map(json.dumps, v)) for v in doc["vertices"]}
    neg = lambda s: s[1:] if s.startswith("-") else ("0" if s == "0" else "-" + s)
    def negate(v):
        return tuple(json.dumps([neg(c[0]), neg(c[1])] if isinstance(c, list) else neg(c))
                     for c in map(json.loads, v))
    if all(negate(v) in pts for v in pts):
        cmds.append("check-bounds")
    if doc["dim"] <= 3:
        cmds.append("ih")
    return cmds


def golden_reports(ghv, update, poly_schema, report_schema):
    for f in sorted(FIXTURES.glob("*.json")):
        doc = json.loads(f.read_text())
        errs = list(poly_schema.iter_errors(doc))
        check(not errs, f"{f.name} matches the polytope schema")
        for cmd in commands_for(doc):
            code, out, err = run(ghv, "--json", cmd, f)
            check(code == 0, f"{cmd} {f.name} exits 0 (stderr: {err.strip()})")
            report = json.loads(out)
            errs = list(report_schema.iter_errors(report))
            check(not errs, f"{cmd} {f.name} report matches the schema" + (f": {errs[0].message[:200]}" if errs else ""))
            golden = GOLDEN / f"{f.stem}.{cmd}.json"
            if update:
                golden.write_text(json.dumps(report, indent=2) + "\n")
            check(golden.exists() and json.loads(golden.read_text()) == report, f"{cmd} {f.name} equals {golden.name}")
            code2, out2, _ = run(ghv, "--json", cmd, f)
            check(code2 == code and out2 == out, f"{cmd} {f.name} output is reproducible")


def reference_values(ghv):
    _, out, _ = run(ghv, "--json", "hvector", FIXTURES / "cube3.json")
    check(json.loads(out)["h"] == [1, 5, 5, 1], "hvector cube3 gives 1 5 5 1")
    _, out, _ = run(ghv, "--json", "hvector", FIXTURES / "cross3.json")
    check(json.loads(out)["h"] == [1, 3, 3, 1], "hvector cross3 gives 1 3 3 1")
    _, out, _ = run(ghv, "--json", "check-bounds", FIXTURES / "cross3.json")
    check(json.loads(out)["bounds"]["is_minimum"] is True, "check-bounds cross3 reports the minimum")
    _, out, _ = run(ghv, "--json", "check-bounds", FIXTURES / "cube3.json")
    check(json.loads(out)["bounds"]["is_minimum"] is False, "check-bounds cube3 is not the minimum")
    _, out, _ = run(ghv, "--json", "ih", FIXTURES / "cube3.json")
    ih = json.loads(out)["ih"]
    check(all(ih[k] for k in ("bettizahlen_ok", "eq1_ok", "eq2_ok", "eq4_ok")), "ih cube3 passes the identities")
    check(ih["u"] == [1, 5, 5, 1, 0], "ih cube3 has u = h(t^2)")
    _, out, _ = run(ghv, "--json", "ih", FIXTURES / "simplex3.json")
    ih = json.loads(out)["ih"]
    check(ih["phi"] is None and ih["eq2_ok"] is None, "ih on an asymmetric fan has no phi section")
    _, out, _ = run(ghv, "--json", "check-bounds", FIXTURES / "shifted_square.json")
    doc = json.loads(out)
    check(doc["translation"] == ["-3", "0"] and doc["h"] == [1, 2, 1], "off-centre input reports its translation")
    code, out, _ = run(ghv, "ih", FIXTURES / "cube3.json")
    check(code == 0 and "difference" in out and "0 2 2 0" in out, "text table shows h minus (1+x)^n")


def exit_codes(ghv):
    for f in sorted(INVALID.glob("*.json")):
        for cmd in ("hvector", "check-bounds", "ih"):
            code, out, err = run(ghv, cmd, f)
            check(code == 2 and "error" in err, f"{cmd} {f.name} exits 2")
    cases = [
        (("check-bounds", FIXTURES / "simplex3.json"), "check-bounds on an asymmetric polytope"),
        (("ih", FIXTURES / "cube4.json"), "ih above the dimension limit"),
        (("ih", FIXTURES / "cube3.json", "--degree-cap", "5"), "odd degree cap"),
        (("ih", FIXTURES / "cube3.json", "--degree-cap", "4"), "degree cap below 2n"),
        (("--field-d", "3", "hvector", FIXTURES / "capped_cube_sqrt2.json"), "field mismatch"),
        (("hvector", FIXTURES / "missing.json"), "missing file"),
        (("report-all", INVALID / "nope"), "missing directory"),
        (("generate", "cube", "0"), "cube of dimension 0"),
        (("generate", "random-cs", "3", "--pairs", "2"), "too few pairs for random-cs"),
        (("generate", "dodecahedron", "3"), "unknown generator"),
        (("hvector",), "missing argument"),
    ]
    for args, what in cases:
        code, _, _ = run(ghv, *args)
        check(code == 2, f"{what} exits 2 (got {code})")
    code, _, _ = run(ghv, "ih", FIXTURES / "cube3.json", "--degree-cap", "10")
    check(code == 0, "a larger even degree cap is accepted")


def report_all(ghv, report_schema):
    code, out, _ = run(ghv, "--json", "report-all", FIXTURES)
    doc = json.loads(out)
    check(code == 0, "report-all over the fixtures exits 0")
    check(not list(report_schema.iter_errors(doc)), "report-all output matches the schema")
    names = [r["file"] for r in doc["reports"]]
    check(names == sorted(p.name for p in FIXTURES.glob("*.json")), "report-all lists files in name order")
    by_name = {r["file"]: r["report"] for r in doc["reports"]}
    check(by_name["cube4.json"]["command"] == "check-bounds", "report-all falls back to check-bounds above the ih limit")
    check(by_name["cube4.json"]["h"] == [1, 12, 14, 12, 1], "report-all cube4 h")
    code, out, _ = run(ghv, "--json", "report-all", INVALID)
    doc = json.loads(out)
    check(code == 2, "report-all over invalid inputs exits 2")
    check(not list(report_schema.iter_errors(doc)), "report-all error entries match the schema")
    check(all("error" in r for r in doc["reports"]), "every invalid file is reported as an error")


def generator(ghv, poly_schema):
    a = run(ghv, "generate", "random-cs", "3", "--pairs", "5", "--seed", "7")
    b = run(ghv, "generate", "random-cs", "3", "--pairs", "5", "--seed", "7")
    check(a[0] == 0 and a[1] == b[1], "random-cs with a fixed seed is byte-identical")
    c = run(ghv, "generate", "random-cs", "3", "--pairs", "5", "--seed", "8")
    check(c[1] != a[1], "a different seed gives a different polytope")
    check(a[1] == (FIXTURES / "random_cs3.json").read_text(), "random-cs 3 --pairs 5 --seed 7 matches its fixture")
    _, out, _ = run(ghv, "generate", "cross", "3")
    check(len(json.loads(out)["vertices"]) == 6, "generate cross 3 has 6 vertices")
    _, out, _ = run(ghv, "generate", "product", "cube:2", "cross:1")
    doc = json.loads(out)
    check(doc["dim"] == 3 and len(doc["vertices"]) == 8, "generate product cube:2 cross:1 has 8 vertices in dimension 3")
    for kind, args in (("cube", ["3"]), ("cross", ["3"]), ("simplex", ["3"]), ("cube", ["2"]), ("cross", ["2"])):
        _, out, _ = run(ghv, "generate", kind, *args)
        name = f"{kind}{args[0]}.json"
        check(out == (FIXTURES / name).read_text(), f"generate {kind} {args[0]} matches {name}")
    a = run(ghv, "--field-d", "2", "generate", "random-cs", "3", "--pairs", "4", "--seed", "3")
    check(a[1] == (FIXTURES / "random_cs3_sqrt2.json").read_text(), "--field-d 2 random-cs matches its fixture")
    check(json.loads(a[1])["field"] == {"quadratic": 2}, "--field-d 2 output is a quadratic file")
    _, out, _ = run(ghv, "generate", "free-sum", "cube:2", "interval")
    check(len(json.loads(out)["vertices"]) == 6, "free sum of a square and an interval has 6 vertices")
    with tempfile.TemporaryDirectory() as tmp:
        path = pathlib.Path(tmp) / "c.json"
        code, _, _ = run(ghv, "generate", "cube", "3", "-o", path)
        check(code == 0 and path.read_text() == (FIXTURES / "cube3.json").read_text(), "-o writes the same bytes as stdout")
        for kind, args in (("cube", ["2"]), ("random-cs", ["2", "--pairs", "3"])):
            code, out, _ = run(ghv, "--field-d", "5", "generate", kind, *args)
            doc = json.loads(out)
            check(code == 0 and not list(poly_schema.iter_errors(doc)), f"--field-d 5 {kind} is a valid file")
            path.write_text(out)
            code, _, _ = run(ghv, "--field-d", "5", "ih", path)
            check(code == 0, f"ih on --field-d 5 {kind} passes")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ghv", required=True)
    ap.add_argument("--update", action="store_true")
    args = ap.parse_args()
    poly_schema, report_schema = validators()
    golden_reports(args.ghv, args.update, poly_schema, report_schema)
    reference_values(args.ghv)
    exit_codes(args.ghv)
    report_all(args.ghv, report_schema)
    generator(args.ghv, poly_schema)
    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
