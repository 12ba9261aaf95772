import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    ["check", "counterexample", "--m", "3-4"],
    ["check", "stokes", "--m", "3", "--k", "1", "--trials", "1"],
    ["check", "counterexample", "--m", "2"],
]
for args in runs:
    out = subprocess.run([cli, *args], capture_output=True, text=True)
    doc = json.loads(out.stdout)
    jsonschema.validate(doc, schema)
    expected = 0 if doc["summary"]["failed"] == 0 else 1
    assert out.returncode == expected, (args, out.returncode)
print("reports valid")
