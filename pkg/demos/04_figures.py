"""Regenerate the PFA-ratio and percent-error curves as CSV and SVG.

Usage: python demos/04_figures.py [output directory]
"""

import sys
from pathlib import Path

from casimir4d.cli import main

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
for fmt in ("csv", "svg"):
    code = main(["figure", "--format", fmt, "--out", str(out)])
    if code:
        sys.exit(code)
print("wrote", ", ".join(sorted(p.name for p in out.iterdir())), "to", out)
