"""Validate scene.json files against the published JSON Schema.

Usage: validate_scene_schema.py <schema.json> <scene.json>...
"""
import json
import sys

import jsonschema


def main(argv):
    with open(argv[1]) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for path in argv[2:]:
        with open(path) as f:
            doc = json.load(f)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
        for e in errors:
            print(f"{path}: /{'/'.join(map(str, e.absolute_path))}: {e.message}")
        bad += bool(errors)
    print(f"{len(argv) - 2 - bad}/{len(argv) - 2} documents valid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
