#!/usr/bin/env python3
"""Build catalog instances and read off their structural invariants.

Every number printed here is exact. The script walks one second-type
instance and one first-type instance through the full analysis: defining
identity, lower central series, natural gradation, characteristic
sequence, and right annihilator.
"""

from fractions import Fraction

from lnz import (
    FirstTypeParams,
    SecondTypeParams,
    Vec,
    build_first_type,
    build_second_type,
    char_sequence_at,
    char_sequence_estimate,
    is_lie,
    leibniz_residual,
    lower_central_series,
    natural_gradation,
    nilindex,
    right_annihilator,
)


def term_text(k, c, first):
    body = f"e_{k}" if abs(c) == 1 else f"{abs(c)}*e_{k}"
    if first:
        return body if c > 0 else f"-{body}"
    return ("+ " if c > 0 else "- ") + body


def show_table(algebra, limit=12):
    print(f"  dim {algebra.dim}, {len(algebra.table)} nonzero cells")
    for (i, j), terms in list(algebra.entries())[:limit]:
        rhs = " ".join(term_text(k, c, idx == 0)
                       for idx, (k, c) in enumerate(terms))
        print(f"    [e_{i}, e_{j}] = {rhs}")
    if len(algebra.table) > limit:
        print(f"    ... and {len(algebra.table) - limit} more cells")


def inspect(algebra):
    residual = leibniz_residual(algebra)
    print(f"  identity violations: {len(residual)}")
    assert residual.is_empty()
    series = lower_central_series(algebra)
    print(f"  central series dims: {series.dims}")
    print(f"  nilindex: {nilindex(algebra)}")
    grad = natural_gradation(algebra)
    print(f"  gradation piece dims: {grad.piece_dims}")
    seq = char_sequence_at(algebra, Vec.basis(algebra.dim, 1))
    print(f"  characteristic sequence at e_1: {seq}")
    est = char_sequence_estimate(algebra, budget=50, seed=0)
    print(f"  characteristic sequence over 50 samples: {est}")
    ann = right_annihilator(algebra)
    print(f"  right annihilator dim: {len(ann)}")
    print(f"  is a Lie algebra: {is_lie(algebra)}")
    print()


def main():
    print("second type, row 0,3 with lambda = 2, dimension 9")
    second = build_second_type(9, SecondTypeParams(0, (1, 0, 0, 2), -1))
    show_table(second)
    inspect(second)

    print("second type with alternating products, row 1,2, dimension 10")
    tail = build_second_type(10, SecondTypeParams(1, (0, 0, 0, 1), -1))
    show_table(tail)
    inspect(tail)

    print("first type, family 34 with lambda = 1/2, dimension 9")
    first = build_first_type(9, FirstTypeParams(34, (0, Fraction(1, 2), 0)))
    show_table(first)
    inspect(first)

    print("done; every instance is nilpotent of nilindex n - 2,")
    print("graded as (2, 2, 2, 1, ..., 1), and none of them is Lie.")


if __name__ == "__main__":
    main()
