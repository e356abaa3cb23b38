# Copyright 2026 The ccat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates `ccat --format json` output and the bundled models against the schemas in docs/."""

import glob
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

cli, root = sys.argv[1], sys.argv[2]
docs = os.path.join(root, "docs")
samples = os.path.join(root, "samples")
models = os.path.join(root, "models")

out_schema = json.load(open(os.path.join(docs, "cli-output.schema.json")))
model_schema = json.load(open(os.path.join(docs, "model-file.schema.json")))

tmp = tempfile.mkdtemp()
bad = os.path.join(tmp, "bad.cat")
with open(bad, "w") as f:
    f.write("object A, B;\ngen f : A -> B;\nterm bad = f ; f;\n")
unparsable = os.path.join(tmp, "unparsable.cat")
with open(unparsable, "w") as f:
    f.write("object A;\nterm t = ;\n")

basics = os.path.join(samples, "basics.cat")
cases = [
    ["check", basics],
    ["check", os.path.join(samples, "teleport.cat")],
    ["check", bad],
    ["check", unparsable],
    ["equal", basics, "yank", "id[A]"],
    ["equal", os.path.join(samples, "deleting.cat"), "f", "g"],
    ["equal", basics, "yank", "eta[A]"],
    ["eval", basics, "dim", "--model", os.path.join(models, "fdvec.json")],
    ["eval", basics, "yank", "--model", os.path.join(models, "rel.json")],
    ["render", basics, "yank"],
    ["render", basics, "yank", "-o", os.path.join(tmp, "y.dot")],
    ["demo", "teleport"],
    ["demo", "other"],
    ["verify", "nosuch", "--model", os.path.join(models, "fdvec.json")],
    ["verify", "teleport"],
]
for suite in ["scalars", "dagger", "cloning", "collapse", "deleting", "product", "teleport", "all"]:
    for m in sorted(glob.glob(os.path.join(models, "*.json"))):
        cases.append(["verify", suite, "--model", m])

failures = 0
codes = set()
for args in cases:
    p = subprocess.run([cli, "--format", "json", *args], capture_output=True, text=True)
    codes.add(p.returncode)
    try:
        doc = json.loads(p.stdout)
        jsonschema.validate(doc, out_schema)
        assert doc["exit_code"] == p.returncode, "exit_code field differs from process status"
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL", " ".join(args), "->", str(e).splitlines()[0])

for m in sorted(glob.glob(os.path.join(models, "*.json"))):
    try:
        jsonschema.validate(json.load(open(m)), model_schema)
    except jsonschema.ValidationError as e:
        failures += 1
        print("FAIL model", m, "->", e.message)

print(f"{len(cases)} command outputs checked, exit codes seen: {sorted(codes)}")
if codes != {0, 1, 2}:
    print("FAIL expected all of 0, 1, 2 among the cases")
    failures += 1
sys.exit(1 if failures else 0)
