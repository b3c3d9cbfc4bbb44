"""Regenerate tests/golden/*.json from the current code.  Review the diff."""

import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from biquad.cli import main  # noqa: E402
from test_cli import F5_FILE, GOLDEN, GOLDEN_RUNS  # noqa: E402

GOLDEN.mkdir(exist_ok=True)
for name, args in sorted(GOLDEN_RUNS.items()):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    if code:
        sys.exit(f"{name}: exit {code}")
    (GOLDEN / name).write_text(buf.getvalue().replace(F5_FILE, "configs/f5.tower"), encoding="utf-8")
    print("wrote", name)
