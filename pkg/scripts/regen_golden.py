"""Rewrite the golden CLI reports under tests/golden/ (run after a reviewed change)."""

import io
import os
import sys
from contextlib import redirect_stdout

from infocoh.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
S = os.path.join(ROOT, "structures")

CASES = {
    "validate_inverse_limit": ["validate", os.path.join(S, "inverse_limit.json")],
    "limit_inverse_limit": ["limit", os.path.join(S, "inverse_limit.json")],
    "model_inverse_limit": ["model", os.path.join(S, "inverse_limit.json")],
    "h1_two_binary": ["h1", "--alpha", "1", "--N", "4", os.path.join(S, "two_binary_full.json")],
    "predict_h1_two_binary": ["predict-h1", "--alpha", "1,2", os.path.join(S, "two_binary_full.json")],
    "cocycle_two_binary": ["cocycle-check", "--N", "3", os.path.join(S, "two_binary_full.json")],
    "modular_check": ["modular-check"],
    "orbit_2_3": ["orbit", "2/3"],
    "entropy_law": ["entropy", "--law", "1/2,1/3,1/6", "--alpha", "1,2"],
}


def render(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv + ["--format", "json"])
    return code, buf.getvalue()


if __name__ == "__main__":
    out = os.path.join(ROOT, "tests", "golden")
    os.makedirs(out, exist_ok=True)
    for name, argv in CASES.items():
        code, text = render(argv)
        if code:
            sys.exit("%s exited with %d" % (name, code))
        with open(os.path.join(out, name + ".json"), "w", encoding="utf-8") as fh:
            fh.write(text)
        print("wrote", name)
