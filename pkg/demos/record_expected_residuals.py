"""
Regenerate the recorded cross-check residual tables
===================================================

The closed-form curvature rows disagree with the direct computation on a few
instances.  The disagreements are recorded once and compared in the tests.
Run with ``--write`` to overwrite the shipped JSON file.
"""

import sys
from pathlib import Path

import pimanifold
from pimanifold.catalog import build_f1_example, build_f5_example, build_para_sasaki_example
from pimanifold.verify import record_expected_residuals

text = record_expected_residuals(
    {
        "para-sasaki-like": build_para_sasaki_example(),
        "exp-horizontal-5": build_f5_example(),
        "horizontal-affine-3": build_f1_example(),
    }
)

target = Path(pimanifold.__file__).parent / "data" / "expected_residuals.json"
if "--write" in sys.argv:
    target.write_text(text)
    print("wrote", target)
else:
    same = target.read_text() == text
    print(text if not same else f"{target.name} is up to date")
