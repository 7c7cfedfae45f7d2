"""
The command-line front end
==========================

Every capability is also reachable from the ``stokeslab`` command.  Each
run writes CSV tables with a JSON metadata sidecar recording the full
configuration, prints one PASS/FAIL line per invariant check and exits with
0 (all checks pass), 1 (a check failed) or 2 (bad usage).
"""

import csv
import tempfile
from pathlib import Path

from stokeslab.cli import main

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp)

    status = main(["counterexample", "--modes", "60", "--n-t", "16", "--out", str(out)])
    print("counterexample exit status:", status)
    with open(out / "divergence.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    print("divergence.csv columns:", rows[0])
    print("last row:", rows[-1])

    print()
    status = main(["divsolve", "--n-r", "64", "--n-theta", "8", "--example", "2", "--out", str(out)])
    print("divsolve exit status:", status, "files:", sorted(p.name for p in out.iterdir() if "report" in p.name))

    print()
    status = main(["counterexample", "--eps", "0.5", "--out", str(out)])
    print("invalid eps exit status:", status)
