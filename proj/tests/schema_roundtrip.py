#!/usr/bin/env python3
"""Validates goe_lab reports against the shipped schemas and feeds embedded definitions back in."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

tool = sys.argv[1]
schema_dir = pathlib.Path(sys.argv[2])
data_dir = pathlib.Path(sys.argv[3])

resources = []
schemas = {}
for path in sorted(schema_dir.glob("*.schema.json")):
    doc = json.loads(path.read_text())
    Draft202012Validator.check_schema(doc)
    schemas[path.name] = doc
    resources.append((path.name, Resource.from_contents(doc)))
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validator(name):
    return Draft202012Validator(schemas[name], registry=registry)


def run(*args, stdin=None, expect=(0,)):
    p = subprocess.run([tool, *args], input=stdin, capture_output=True, text=True)
    if p.returncode not in expect:
        sys.exit(f"{' '.join(args)}: exit {p.returncode}\n{p.stderr}")
    return json.loads(p.stdout)


failures = 0


def check(name, instance, label):
    global failures
    errors = sorted(validator(name).iter_errors(instance), key=lambda e: list(e.path))
    for e in errors:
        failures += 1
        print(f"{label}: {list(e.path)}: {e.message}")


reports = {
    "wolfram": run("wolfram", "232"),
    "analyze": run("analyze", "--rule", "110"),
    "analyze_sofic": run("analyze", "--rule", "golden_to_even", "--domain", "golden_mean", "--codomain", "even"),
    "analyze_z2": run("analyze", "--rule", "xor_three_z2", "--max-cells", "4", expect=(2,)),
    "decide1d": run("decide1d", "injective", "--rule", "102"),
    "goe": run("goe", "search", "--rule", "232"),
    "me": run("me", "search", "--rule", "232"),
    "entropy": run("entropy", "--subshift", "even", "--method", "count", "--n", "6", "--rule", "102"),
    "n0": run("n0", "--a", "2", "--k", "2", "--d", "1", "--r", "1"),
    "linear": run("linear", "--matrix", "one_plus_u", "--radius", "3"),
    "freegroup": run("freegroup", "ex2", "--radius", "2"),
    "suite": run("paper-suite", "--filter", "subshift", "--timings"),
}
for label, rep in reports.items():
    check("report.schema.json", rep, label)

# Embedded definitions validate on their own and round-trip through the tool.
check("rule.schema.json", reports["wolfram"]["rule"], "wolfram.rule")
check("subshift.schema.json", reports["entropy"]["definition"], "entropy.definition")
check("matrix.schema.json", reports["linear"]["adjoint"], "linear.adjoint")
for f in sorted(data_dir.glob("*.json")):
    kind = f.name.split(".")[0]
    check(f"{kind}.schema.json", json.loads(f.read_text()), f.name)

with tempfile.TemporaryDirectory() as tmp:
    rule_path = pathlib.Path(tmp) / "rule.json"
    rule_path.write_text(json.dumps(reports["wolfram"]["rule"]))
    again = run("analyze", "--rule", str(rule_path))
    piped = run("analyze", stdin=json.dumps(reports["wolfram"]))
    direct = run("analyze", "--rule", "232")
    if not (again["inputs"] == piped["inputs"] == direct["inputs"]):
        failures += 1
        print("rule digest changed across file, stdin and Wolfram-number ingestion")

    sub_path = pathlib.Path(tmp) / "subshift.json"
    sub_path.write_text(json.dumps(reports["entropy"]["definition"]))
    e2 = run("entropy", "--subshift", str(sub_path), "--method", "count", "--n", "6")
    if e2["entropy"] != reports["entropy"]["entropy"] or e2["inputs"][0] != reports["entropy"]["inputs"][0]:
        failures += 1
        print("subshift definition did not round-trip")

    mat_path = pathlib.Path(tmp) / "matrix.json"
    mat_path.write_text(json.dumps(reports["linear"]["adjoint"]))
    l2 = run("linear", "--matrix", str(mat_path))
    v1, v2 = reports["linear"]["verdicts"], l2["verdicts"]
    if v2["surjective"] != v1["adjoint_surjective"] or v2["preinjective"] != v1["adjoint_preinjective"]:
        failures += 1
        print("adjoint matrix did not round-trip")

if failures:
    sys.exit(f"{failures} schema failures")
print(f"{len(reports)} reports valid")
