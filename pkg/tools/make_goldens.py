"""Regenerate the golden CLI outputs under tests/golden/.

Run from the repository root after any deliberate output change, then
review the diff before committing.  Each entry pins stdout bytes and
the exit code of one invocation; tests/test_cli.py replays them.
"""

import contextlib
import io
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from preekit import cli  # noqa: E402

CASES = [
    ("zxz_verify", ["verify", "fixtures/zxz.pree"], 0),
    ("s3_verify", ["verify", "fixtures/s3.pree"], 0),
    ("z6_verify", ["verify", "fixtures/z6.pree"], 0),
    ("q8_verify", ["verify", "fixtures/q8.pree"], 0),
    ("taxicab_axioms", ["axioms", "fixtures/taxicab.pree"], 0),
    ("taxicab_ball_r2", ["ball", "fixtures/taxicab.pree", "-r", "2"], 0),
    ("cycle4_axioms", ["axioms", "fixtures/cycle4.pree"], 1),
    ("cycle5_axioms", ["axioms", "fixtures/cycle5.pree"], 1),
    ("broken_closure_validate", ["validate", "fixtures/broken_closure.pree"], 3),
]


def main() -> int:
    os.chdir(ROOT)
    outdir = os.path.join(ROOT, "tests", "golden")
    os.makedirs(outdir, exist_ok=True)
    for name, argv, want_code in CASES:
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = cli.main(argv)
        if code != want_code:
            print("%s: exit %d, expected %d" % (name, code, want_code), file=sys.stderr)
            return 1
        path = os.path.join(outdir, name + ".txt")
        with open(path, "w") as fh:
            fh.write(out.getvalue())
        print("wrote %s (%d bytes)" % (path, len(out.getvalue())))
    return 0


if __name__ == "__main__":
    sys.exit(main())
