#!/usr/bin/env python3
"""Push algebra documents through the command-line interface.

Runs the same entry point the `lnz` console script uses, in-process, on
files in a temporary directory: build a catalog instance, check it,
break it on purpose and watch the check fail, apply a basis change, and
finish with an equivalence query. Exit codes are printed at every step;
the convention is 0 ok/Equivalent, 1 failed check/Distinct, 2 semantic
error, 3 Unknown, 64 usage, 65 malformed document.
"""

import contextlib
import json
import sys
import tempfile
from pathlib import Path

from lnz import GradedChange2, SecondTypeParams, build_second_type, \
    completed_second_type_change, parse, serialize_change
from lnz.cli import main


def run(*argv):
    print(f"$ lnz {' '.join(argv)}", flush=True)
    # fold stderr into stdout so the transcript reads in order
    with contextlib.redirect_stderr(sys.stdout):
        code = main(list(argv))
    print(f"  -> exit {code}")
    return code


def demo(workdir: Path):
    alg = workdir / "algebra.json"
    assert run("catalog", "--type", "2", "--family", "0,3", "--dim", "9",
               "--params", "2", "-o", str(alg)) == 0

    assert run("check", str(alg)) == 0

    assert run("analyze", str(alg)) == 0

    # corrupt one cell: add a product the identity cannot absorb
    doc = json.loads(alg.read_text())
    doc["table"].append({"i": 7, "j": 2, "terms": [[9, "1"]]})
    broken = workdir / "broken.json"
    broken.write_text(json.dumps(doc))
    assert run("check", str(broken)) == 1

    # a malformed document is distinguished from a failing one
    truncated = workdir / "truncated.json"
    truncated.write_text(alg.read_text()[:40])
    assert run("check", str(truncated)) == 65

    # complete a graded generator change and apply it
    algebra = parse(alg.read_text())
    change = completed_second_type_change(
        algebra, GradedChange2(1, 0, 2))
    change_doc = workdir / "change.json"
    change_doc.write_text(serialize_change(change))
    moved = workdir / "moved.json"
    assert run("transform", str(alg), "--change", str(change_doc),
               "-o", str(moved)) == 0
    assert run("check", str(moved)) == 0

    # the transformed parameters are equivalent to the original ones
    p = SecondTypeParams(0, (1, 0, 0, 2), -1)
    assert build_second_type(9, p).table == algebra.table
    assert run("equiv", "--epsilon", "0", "--dim", "9",
               "--p", "1,0,0,2", "--q", "2,0,0,8") == 0

    # and a tuple with a different invariant pattern is rejected as such
    assert run("equiv", "--epsilon", "0", "--dim", "9",
               "--p", "1,0,0,2", "--q", "0,0,0,0") == 1


def main_demo():
    with tempfile.TemporaryDirectory() as tmp:
        demo(Path(tmp))
    print("all steps behaved as advertised")


if __name__ == "__main__":
    main_demo()
