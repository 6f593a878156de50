"""Regenerate every artifact under results/ (or the directory given)."""

import sys

from qaksim.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "results"
    sys.exit(main(["all", "--seed", "42", "--out", out]))
