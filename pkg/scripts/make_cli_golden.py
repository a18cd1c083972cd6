"""Regenerate tests/golden/cli/*.txt from the current CLI output."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "tests" / "golden" / "cli"

COMMANDS = {
    "euler-numbers": ["euler-numbers"],
    "euler-numbers-json": ["euler-numbers", "--format", "json"],
    "euler-gen": ["euler-gen"],
    "euler-gen-5-1": ["euler-gen", "--chi", "5:1", "--p", "3", "--q", "4", "--format", "json"],
    "euler-poly": ["euler-poly"],
    "characters": ["characters"],
    "characters-15": ["characters", "--d", "15", "--format", "csv"],
    "measure": ["measure"],
    "verify-all": ["verify", "all"],
}


def run(args):
    return subprocess.run([sys.executable, "-m", "qeuler", *args], capture_output=True, check=False).stdout


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, args in COMMANDS.items():
        (OUT / f"{name}.txt").write_bytes(run(args))
        print(name)


if __name__ == "__main__":
    main()
