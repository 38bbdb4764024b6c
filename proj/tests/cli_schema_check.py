"""Runs every dioph subcommand with --json and validates each output line
against data/schema/cli.schema.json; validates every catalog line against
data/schema/catalog-record.schema.json; checks exit codes."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

exe, data = sys.argv[1], pathlib.Path(sys.argv[2])
cli_schema = json.loads((data / "schema" / "cli.schema.json").read_text())
record_schema = json.loads((data / "schema" / "catalog-record.schema.json").read_text())
registry = Registry().with_resources(
    [(s["$id"], Resource.from_contents(s)) for s in (cli_schema, record_schema)]
)
cli_validator = jsonschema.Draft202012Validator(cli_schema, registry=registry)
record_validator = jsonschema.Draft202012Validator(record_schema, registry=registry)

failures = []
tables = str(data / "tables")
history = data / "history"

cases = [
    (["size", "x^3+y^3+z^3=3", "y^2+x^2y+z^2x+1"], 0, "size"),
    (["length", "x^3y^2=z^3+6"], 0, "length"),
    (["canon", "x^2y-z^2-1"], 0, "canon"),
    (["equiv", "x^3+yz+1", "y^3+xz+1"], 0, "equiv"),
    (["equiv", "x^2+y^2+zt+1", "x^2+y^2+zt-1"], 1, "equiv"),
    (["classify", "x^4+2y^3+z^3", "11x^4+4y^4+2z^4-t^4", "x^3+y^3+z^3-3"], 0, "classify"),
    (["enumerate", "--h-max", "6"], 0, "enumerate"),
    (["enumerate", "--h-max", "40"], 3, None),
    (["search", "x^3+y^3+z^3=3", "--box", "5"], 0, "search"),
    (["search", "x^2+y^2=3", "--box", "4"], 1, "search"),
    (["search", "x^3+y^3+z^3=3", "--box", "60", "--budget", "100", "--no-accelerate"], 3, "search"),
    (["verify", "x^3+y^3+z^3=3", "(4,4,-5)"], 0, "verify"),
    (["verify", "x^3+y^3+z^3=3", "(1,1,2)"], 1, "verify"),
    (["family", "x^3+y^3+z^3=2", "1-6*u1^3", "-6*u1^2", "1+6*u1^3", "--member", "1", "--cover", "(-5,-6,7)"], 0, "family"),
    (["obstruct", "x^3+y^3+z^3-4"], 0, "obstruct"),
    (["obstruct", "x^3+yz+1", "--bound", "64"], 1, "obstruct"),
    (["catalog-verify", tables], 0, "catalog-verify"),
    (["catalog-report", tables, "--problem", "P6", "--filter", "nvars=2"], 0, "catalog-report"),
    (["catalog-report", tables, "--source", "h13"], 0, "catalog-report"),
    (["catalog-diff", str(history / "v4.jsonl"), str(history / "v5.jsonl")], 1, "catalog-diff"),
    (["catalog-diff", str(history / "v5.jsonl"), str(history / "v6.jsonl")], 1, "catalog-diff"),
    (["catalog-diff", str(history / "v5.jsonl"), str(history / "v5.jsonl")], 0, None),
    (["size", "x^ + 1"], 2, None),
    (["no-such-command"], 2, None),
]

for args, expected_rc, command in cases:
    proc = subprocess.run([exe, "--json", *args], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != expected_rc:
        failures.append(f"{label}: exit {proc.returncode}, expected {expected_rc}: {proc.stderr.strip()}")
    lines = [l for l in proc.stdout.splitlines() if l.strip()]
    if command is not None and not lines:
        failures.append(f"{label}: no output")
    for line in lines:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            failures.append(f"{label}: not JSON: {e}")
            continue
        for err in cli_validator.iter_errors(obj):
            failures.append(f"{label}: {err.message}")
        if command is not None and obj.get("command") != command:
            failures.append(f"{label}: command field {obj.get('command')!r}")

stdin_proc = subprocess.run([exe, "--json", "size", "-"], input="x^2+y^2+zt+1\n# comment\n\nx\n",
                            capture_output=True, text=True)
if [json.loads(l)["h"] for l in stdin_proc.stdout.splitlines()] != ["13", "2"]:
    failures.append("size from stdin")

records = 0
for path in sorted((data / "tables").glob("*.jsonl")) + sorted(history.glob("*.jsonl")):
    for n, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip():
            continue
        records += 1
        for err in record_validator.iter_errors(json.loads(line)):
            failures.append(f"{path.name}:{n}: {err.message}")

for f in failures:
    print("FAIL", f)
print(f"{len(cases) + 1} command checks, {records} catalog lines, {len(failures)} failures")
sys.exit(1 if failures else 0)
