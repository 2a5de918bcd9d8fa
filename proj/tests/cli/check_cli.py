"""End-to-end checks of the bcv executable: exit codes, schema validity, determinism."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BCV, ROOT = Path(sys.argv[1]), Path(sys.argv[2])
SCHEMA = json.loads((ROOT / "schemas" / "report.schema.json").read_text())
HERE = ROOT / "tests" / "cli"

failures = []


def run(*args):
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.json"
        proc = subprocess.run([str(BCV), *args, "--report", str(out)], capture_output=True, text=True)
        text = out.read_text() if out.exists() else None
    return proc.returncode, text, proc.stderr


def strip_timing(text):
    doc = json.loads(text)
    doc.pop("timing")
    return json.dumps(doc, sort_keys=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def check_report(label, args, code):
    rc, first, err = run(*args)
    expect(rc == code, f"{label}: exit code {rc}, expected {code}")
    if first is None:
        expect(False, f"{label}: no report written ({err.strip()})")
        return None
    try:
        jsonschema.validate(json.loads(first), SCHEMA)
        expect(True, f"{label}: report matches schema")
    except jsonschema.ValidationError as e:
        expect(False, f"{label}: schema violation: {e.message}")
    rc2, second, _ = run(*args)
    expect(rc2 == rc and strip_timing(first) == strip_timing(second), f"{label}: deterministic")
    return json.loads(first)


kinds = set()
for cfg in sorted((ROOT / "configs").glob("*.yaml")):
    doc = check_report(cfg.name, ["run", str(cfg)], 0)
    if doc:
        kinds.add(doc["scenario"]["kind"])
        expect(doc["passed"], f"{cfg.name}: passed")
expect(len(kinds) == 9, f"checked-in configs cover {len(kinds)} of 9 scenario kinds")

for kind in sorted(kinds):
    check_report(f"built-in {kind}", [kind], 0)

doc = check_report("check-failure.yaml", ["run", str(HERE / "check-failure.yaml")], 1)
expect(doc is not None and not doc["passed"], "check-failure.yaml: report says failed")

doc = check_report("partial-domain-error.yaml", ["run", str(HERE / "partial-domain-error.yaml")], 0)
expect(doc is not None and [p["status"] for p in doc["points"]] == ["error", "ok"],
       "partial-domain-error.yaml: first point errors, second evaluates")
check_report("all-points-fail.yaml", ["run", str(HERE / "all-points-fail.yaml")], 1)

seeded = check_report("theorem11 --seed 9", ["run", str(ROOT / "configs" / "theorem11.yaml"), "--seed", "9"], 0)
base = check_report("theorem11", ["run", str(ROOT / "configs" / "theorem11.yaml")], 0)
expect(seeded is not None and base is not None and seeded["points"] != base["points"], "--seed changes the draws")
doc = check_report("--points 3", ["equivalence", str(ROOT / "configs" / "equivalence.yaml"), "--points", "3"], 0)
expect(doc is not None and len(doc["points"]) == 3, "--points overrides the count")

for name, needle in [("undefined-field.yaml", "g2"), ("dim-too-large.yaml", "dim"),
                     ("parse-error.yaml", "column"), ("unknown-key.yaml", "tolerence")]:
    rc, text, err = run("run", str(HERE / name))
    expect(rc == 2 and text is None and needle in err, f"{name}: config error (exit {rc}) mentions '{needle}'")

rc, _, _ = run("run", str(HERE / "missing.yaml"))
expect(rc == 2, "missing config file: exit 2")
rc, _, _ = run("no-such-command")
expect(rc == 2, "unknown subcommand: exit 2")
rc, _, _ = run("equivalence", "--order", "9")
expect(rc == 2, "out-of-range --order: exit 2")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
