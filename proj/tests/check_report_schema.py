"""Runs every subcommand with --json and validates the output against the report schema."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    (["verify-paper"], 1),
    (["closure", "--order", "2"], 0),
    (["closure", "--order", "3"], 0),
    (["transform", "--map", "general", "--rhs", "0"], 0),
    (["transform", "--map", "swap", "--rhs", "0", "--order", "2"], 0),
    (["check-class", "--rhs", "y2^3"], 1),
    (["check-class", "--rhs", "yt1^4", "--class", "point-expansion"], 0),
    (["oracle", "--cases", "10", "--y3zero-cases", "5"], 0),
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        schema = json.load(fh)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, expected_code in INVOCATIONS:
        proc = subprocess.run([binary, "--json", *args], capture_output=True, text=True)
        label = " ".join(args)
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError as exc:
            print(f"FAIL {label}: output is not JSON ({exc})")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        elif proc.returncode != expected_code:
            print(f"FAIL {label}: exit {proc.returncode}, expected {expected_code}")
            failures += 1
        else:
            print(f"PASS {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
