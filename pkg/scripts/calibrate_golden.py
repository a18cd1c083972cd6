"""Measure residual-valuation sequences and freeze them as golden files.

Run once after changing a convergence suite's default grid:

    python scripts/calibrate_golden.py
"""
import json
import sys
from pathlib import Path

from qeuler.suites import CALIBRATED, calibrate

OUT = Path(__file__).resolve().parents[1] / "src" / "qeuler" / "golden"


def main() -> int:
    OUT.mkdir(exist_ok=True)
    for name in CALIBRATED:
        data = calibrate(name)
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        print(f"{name}: {len(data)} sequences")
    return 0


if __name__ == "__main__":
    sys.exit(main())
