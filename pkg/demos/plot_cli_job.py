"""
Running a job file
------------------

The ``torwave`` command reads a JSON job, writes a CSV of samples and a JSON
sidecar with the configuration, column schema and diagnostics.
"""

import json
import tempfile
from pathlib import Path

from torwave.cli_io import main

job = Path(__file__).with_name("jobs") / "ring_mode_eval.json"
out = Path(tempfile.mkdtemp())
main(["validate", str(job)])
main(["run", str(job), "--out", str(out), "--threads", "2"])

meta = json.loads((out / "ring-demo.meta.json").read_text())
print("columns:", [c["name"] for c in meta["schema"]])
print("diagnostics:", meta["diagnostics"])
print((out / "ring-demo.csv").read_text().splitlines()[1])
