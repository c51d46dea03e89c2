#!/usr/bin/env python3
"""Refresh the figure-package fixtures from the bundled reference configs.

Runs any reference config whose output directory is missing (pass --force
to rerun all four), then copies the files into frontend/fixtures/ with the
names the figure tests expect.  The fig3 tables are renamed meridian/equator
so the rendered provenance captions stay unambiguous.
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

from phonmem import cli

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "out"
FIXTURES = ROOT / "frontend" / "fixtures"

RUNS = (
    ("simulate", "fig1.cfg", "fig1"),
    ("sweep", "fig2.cfg", "fig2"),
    ("sweep", "fig3_meridian.cfg", "fig3_meridian"),
    ("sweep", "fig3_equator.cfg", "fig3_equator"),
)

COPIES = (
    ("fig1/trajectory.csv", "fig1/trajectory.csv"),
    ("fig1/result.json", "fig1/result.json"),
    ("fig2/sweep.csv", "fig2/sweep.csv"),
    ("fig2/sweep.json", "fig2/sweep.json"),
    ("fig3_meridian/sweep.csv", "fig3/meridian.csv"),
    ("fig3_meridian/sweep.json", "fig3/meridian.json"),
    ("fig3_equator/sweep.csv", "fig3/equator.csv"),
    ("fig3_equator/sweep.json", "fig3/equator.json"),
)


def main() -> int:
    force = "--force" in sys.argv[1:]
    for command, name, outdir in RUNS:
        if not force and (OUT / outdir).is_dir():
            print(f"== {outdir} already present, skipping run")
            continue
        print(f"== {command} {name}")
        rc = cli.main(["simulate" if command == "simulate" else "sweep",
                       "--config", str(ROOT / "configs" / name)])
        if rc != 0:
            print(f"reference run failed with exit {rc}", file=sys.stderr)
            return rc
    for src, dst in COPIES:
        target = FIXTURES / dst
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(OUT / src, target)
        print(f"   {src} -> frontend/fixtures/{dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
