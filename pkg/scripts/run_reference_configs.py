#!/usr/bin/env python3
"""Run every bundled reference config and collect the outputs under out/.

These are the inputs the figures package renders; run from the repository
root.  The Bloch sweeps dominate the runtime (50 memory cycles); expect a
few minutes single-threaded.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

from phonmem import cli

ROOT = Path(__file__).resolve().parent.parent

RUNS = (
    ("simulate", "fig1.cfg"),
    ("sweep", "fig2.cfg"),
    ("sweep", "fig3_meridian.cfg"),
    ("sweep", "fig3_equator.cfg"),
)


def main() -> int:
    workers = sys.argv[1] if len(sys.argv) > 1 else "1"
    for command, name in RUNS:
        cfg = ROOT / "configs" / name
        print(f"== {command} {name}")
        t0 = time.perf_counter()
        rc = cli.main([command, "--config", str(cfg), "--workers", workers])
        print(f"   exit {rc}  ({time.perf_counter() - t0:.1f} s)")
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
