#!/usr/bin/env python3
"""Decide when two parameter tuples give the same algebra.

The decision procedure returns one of three verdicts and each comes with
evidence that can be replayed: an Equivalent verdict carries a graded
generator change that maps one tuple onto the other, and this script
replays it two ways (through the closed-form parameter map and through
an honest change of basis on the full structure tensor). A Distinct
verdict names the zero/nonzero invariant that separates the tuples.
"""

from fractions import Fraction

from lnz import (
    Distinct,
    Equivalent,
    SecondTypeParams,
    Unknown,
    apply_change,
    build_second_type,
    completed_second_type_change,
    decide_equivalence,
    extract_second_type,
    nullity_signature,
    param_map_case1,
)


def alphas_text(params_or_tuple):
    alphas = getattr(params_or_tuple, "alphas", params_or_tuple)
    return "(" + ", ".join(str(a) for a in alphas) + ")"


def verdict_line(out):
    if isinstance(out, Equivalent):
        w = out.witness
        return f"Equivalent via A1={w.A1}, A4={w.A4}, B4={w.B4}"
    if isinstance(out, Distinct):
        return f"Distinct, separated by {out.invariant}"
    return f"Unknown ({out.detail})"


def main():
    p = SecondTypeParams(0, (1, 0, 0, 1), -1)
    q = SecondTypeParams(0, (2, 0, 0, 4), -1)
    print(f"p = {alphas_text(p)}, q = {alphas_text(q)}, beta = -1, "
          "no alternating tail")
    out = decide_equivalence(p, q)
    print("  " + verdict_line(out))

    # replay 1: the closed-form map takes p's alphas exactly to q's
    mapped = param_map_case1(p, out.witness)
    print(f"  closed-form replay: {alphas_text(mapped)} == {alphas_text(q)}:",
          mapped.alphas == q.alphas)

    # replay 2: complete the generator change to a full basis matrix,
    # conjugate the structure tensor, and read the parameters back off
    algebra = build_second_type(9, p)
    change = completed_second_type_change(algebra, out.witness)
    moved = apply_change(algebra, change)
    recovered = extract_second_type(moved)
    print("  full basis-change replay: recovered alphas "
          + alphas_text(recovered))
    assert recovered.alphas == q.alphas

    print()
    r = SecondTypeParams(0, (1, 0, 0, 0), -1)
    print(f"p = {alphas_text(p)} against r = {alphas_text(r)}")
    out = decide_equivalence(p, r)
    print("  " + verdict_line(out))
    sig_p, sig_r = nullity_signature(p), nullity_signature(r)
    for tag, sig in (("p", sig_p), ("r", sig_r)):
        bits = ", ".join(f"{name}{'=0' if zero else '!=0'}"
                         for name, zero in sig.bits)
        print(f"  signature of {tag}: {bits}")

    print()
    a = SecondTypeParams(0, (0, 0, -1, 0), -1)
    b = SecondTypeParams(0, (0, 0, -2, 0), -1)
    print(f"a = {alphas_text(a)} against b = {alphas_text(b)}")
    out = decide_equivalence(a, b)
    print("  " + verdict_line(out))
    print("  (moving a to b forces A4 = 0 and B4^2 = 2, which has no")
    print("   rational solution, so the procedure refuses to guess)")

    print()
    s = SecondTypeParams(1, (0, 0, 0, 1), -1)
    t = SecondTypeParams(1, (0, 0, 0, Fraction(1, 4)), -1)
    print(f"with alternating products: s = {alphas_text(s)}, t = {alphas_text(t)}")
    out = decide_equivalence(s, t)
    print("  " + verdict_line(out))
    print("  (here the second generator scale is pinned to A1 - A4)")


if __name__ == "__main__":
    main()
