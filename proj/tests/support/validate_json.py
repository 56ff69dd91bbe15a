#!/usr/bin/env python3
"""Validate a JSON document (file or stdin) against a JSON Schema file."""

import json
import sys

from jsonschema import Draft202012Validator


def main() -> int:
    if len(sys.argv) not in (2, 3):
        print("usage: validate_json.py SCHEMA [DOCUMENT]", file=sys.stderr)
        return 2
    with open(sys.argv[1], encoding="utf-8") as f:
        schema = json.load(f)
    if len(sys.argv) == 3:
        with open(sys.argv[2], encoding="utf-8") as f:
            doc = json.load(f)
    else:
        doc = json.load(sys.stdin)
    Draft202012Validator.check_schema(schema)
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
