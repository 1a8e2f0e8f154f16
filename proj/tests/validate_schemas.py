"""Validate CLI JSON output against docs/schemas."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

CASES = [
    ("series", ["qexp", "--family", "fricke", "--N", "3", "--v", "0,1/3", "--terms", "5"]),
    ("series", ["qexp", "--family", "siegel", "--N", "2", "--v", "1/2,0", "--terms", "6"]),
    ("primitivity", ["family-check", "--family", "diff:2", "--N", "5", "--total", "--terms", "20"]),
    ("primitivity", ["family-check", "--family", "fricke", "--N", "5", "--terms", "2"]),
    ("model", ["model", "--N", "2", "--n", "1"]),
    ("cm", ["cm", "--dk", "-7", "--N", "3"]),
    ("cm", ["cm", "--dk", "-15", "--N", "2"]),
]

for name, args in CASES:
    out = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
    if out.returncode not in (0, 1):
        sys.exit(f"{args}: exit {out.returncode}\n{out.stderr}")
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    jsonschema.validate(json.loads(out.stdout), schema)
    print("valid", name, " ".join(args))
