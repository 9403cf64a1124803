"""Validate JSON documents against the shipped schemas.

usage: validate_json.py SCHEMA_DIR SCHEMA=FILE [SCHEMA=FILE ...]
"""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(pathlib.Path(schema_dir).glob("*.schema.json")):
        schemas[path.name] = json.loads(path.read_text())
    registry = Registry().with_resources(
        (name, Resource.from_contents(doc)) for name, doc in schemas.items()
    )
    return schemas, registry


def main(argv):
    if len(argv) < 3:
        print(__doc__, file=sys.stderr)
        return 2
    schemas, registry = load_registry(argv[1])
    failures = 0
    for pair in argv[2:]:
        name, _, path = pair.partition("=")
        schema = schemas[name + ".schema.json"]
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        doc = json.loads(pathlib.Path(path).read_text())
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:5]:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}", file=sys.stderr)
        failures += bool(errors)
        print(f"{'ok' if not errors else 'INVALID'} {name} {path}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
