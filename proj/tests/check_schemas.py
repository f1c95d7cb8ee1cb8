"""Validates fixtures, golden reports and test data against the schemas in docs/."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
load = lambda p: json.loads(p.read_text())
config = load(root / "docs/config.schema.json")
report = load(root / "docs/report.schema.json")
for s in (config, report):
    jsonschema.Draft202012Validator.check_schema(s)

failures = 0


def check(path, schema, expect_valid=True):
    global failures
    errors = list(jsonschema.Draft202012Validator(schema).iter_errors(load(path)))
    if bool(errors) == expect_valid:
        failures += 1
        detail = "; ".join(f"{'/'.join(map(str, e.absolute_path))}: {e.message}" for e in errors[:3])
        print(f"FAIL {path.name}: expected {'valid' if expect_valid else 'invalid'} {detail}")
    else:
        print(f"ok   {path.name}")


for p in sorted((root / "fixtures").glob("*.json")):
    check(p, config)
for p in sorted((root / "fixtures/golden").glob("*.report.json")):
    check(p, report)
check(root / "tests/data/bad-schema.json", config, expect_valid=False)
ring_schema = dict(report, **{"$ref": "#/$defs/ring"})
ring_schema.pop("required"), ring_schema.pop("properties"), ring_schema.pop("additionalProperties")
check(root / "tests/data/heis9-sigma.ring.json", ring_schema)
sys.exit(1 if failures else 0)
