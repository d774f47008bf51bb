"""Builders for the classified families of naturally graded Leibniz
algebras with two Jordan chains of lengths n-3 and 3.

Two shapes of family exist.  "Second type" algebras are governed by a
parameter tuple (alpha1..alpha4, beta) plus a flag epsilon that switches
on the alternating products [e_i, e_{n+3-i}] = epsilon*(-1)^i e_n (even
dimension only).  "First type" algebras come in eight labelled families
(34..41) over two internal branches.

The catalog row table records, for each family label, the fixed slots,
the free parameters with their admissible sets, and the parity rule.
``enumerate_catalog`` instantiates all of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from .algebra import StructureTensor
from .errors import (DimensionTooSmall, InadmissibleParams, ParityViolation,
                     UnknownFamily)

Q = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


DEFAULT_FREE_SAMPLES = (Q(0), Q(1), Q(-1), Q(2), Q(1, 2))


# ----------------------------------------------------------------------
# parameter tuples

@dataclass(frozen=True)
class SecondTypeParams:
    """The data (epsilon, alpha1..alpha4, beta) of a second-type algebra."""

    epsilon: int
    alphas: tuple
    beta: Fraction
    family_label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.epsilon not in (0, 1):
            raise InadmissibleParams(f"epsilon must be 0 or 1, got {self.epsilon}")
        alphas = tuple(_frac(a) for a in self.alphas)
        if len(alphas) != 4:
            raise InadmissibleParams("need exactly four alpha values")
        object.__setattr__(self, "alphas", alphas)
        beta = _frac(self.beta)
        if beta not in (Q(-1), Q(0)):
            raise InadmissibleParams(f"beta must be -1 or 0, got {beta}")
        object.__setattr__(self, "beta", beta)

    @property
    def alpha1(self):
        return self.alphas[0]

    @property
    def alpha2(self):
        return self.alphas[1]

    @property
    def alpha3(self):
        return self.alphas[2]

    @property
    def alpha4(self):
        return self.alphas[3]


#: family_id -> (branch, admissible checker description)
_FIRST_TYPE_BRANCH = {34: "a", 35: "a", 36: "a", 37: "a",
                      38: "b", 39: "b", 40: "b", 41: "b"}


@dataclass(frozen=True)
class FirstTypeParams:
    """A first-type family id (34..41) with its printed subscript triple."""

    family_id: int
    p: tuple

    def __post_init__(self):
        if self.family_id not in _FIRST_TYPE_BRANCH:
            raise UnknownFamily(f"no first-type family {self.family_id}")
        p = tuple(_frac(x) for x in self.p)
        if len(p) != 3:
            raise InadmissibleParams("need exactly three subscript values")
        object.__setattr__(self, "p", p)

    @property
    def branch(self) -> str:
        return _FIRST_TYPE_BRANCH[self.family_id]

    def branch_params(self) -> tuple:
        """The generic-branch triple this subscript encodes.

        Branch a reads the subscript directly as (alpha1, alpha2, beta2).
        Branch b subscripts are printed as (alpha1, b2, a2) while the
        parameter maps take (alpha1, a2, b2), so the last two swap.
        """
        p1, p2, p3 = self.p
        if self.branch == "a":
            return (p1, p2, p3)
        return (p1, p3, p2)


# ----------------------------------------------------------------------
# row table

@dataclass(frozen=True)
class ParamSpec:
    """Admissible set of one free parameter: a finite list, or all of Q
    minus some excluded values."""

    name: str
    finite: tuple | None = None
    excluded: tuple = ()

    def admits(self, value) -> bool:
        value = _frac(value)
        if self.finite is not None:
            return value in self.finite
        return value not in self.excluded

    def describe(self) -> str:
        if self.finite is not None:
            return "{" + ", ".join(str(v) for v in self.finite) + "}"
        if self.excluded:
            return ("any rational except "
                    + ", ".join(str(v) for v in self.excluded))
        return "any rational"

    def sample(self, free_samples) -> tuple:
        if self.finite is not None:
            return tuple(self.finite)
        return tuple(v for v in free_samples if v not in self.excluded)


def _eval_slot(slot, values: dict) -> Fraction:
    kind = slot[0]
    if kind == "const":
        return slot[1]
    if kind == "mul":
        return slot[1] * values[slot[2]]
    if kind == "sq4":
        return values[slot[1]] ** 2 / 4
    if kind == "inv2":
        return 2 / values[slot[1]]
    raise ValueError(f"unknown slot shape {slot!r}")  # pragma: no cover


def _slot_text(slot) -> str:
    kind = slot[0]
    if kind == "const":
        return str(slot[1])
    if kind == "mul":
        c, name = slot[1], slot[2]
        if c == 1:
            return name
        if c == -1:
            return f"-{name}"
        return f"{c}*{name}"
    if kind == "sq4":
        return f"{slot[1]}^2/4"
    return f"2/{slot[1]}"


@dataclass(frozen=True)
class CatalogRow:
    """One printed row of the classification tables.

    ``slots`` gives the four alpha entries (second type) or the three
    subscript entries (first type) as functions of the row's parameters.
    ``row_id`` is unique; ``family_label`` repeats for rows printed under
    one label with different slot patterns.
    """

    row_id: str
    family_label: str
    kind: str                      # "second" | "first"
    slots: tuple
    params: tuple = ()             # ParamSpec, in printed column order
    epsilon: int | None = None
    beta: Fraction | None = None
    family_id: int | None = None   # first type only
    parity: str = "any"            # "any" | "even"

    def param_names(self) -> tuple:
        return tuple(p.name for p in self.params)

    def _values_dict(self, values: Sequence) -> dict:
        values = tuple(_frac(v) for v in values)
        if len(values) != len(self.params):
            raise InadmissibleParams(
                f"row {self.row_id} takes {len(self.params)} parameter(s) "
                f"({', '.join(self.param_names()) or 'none'}), got {len(values)}")
        return dict(zip(self.param_names(), values))

    def slot_values(self, values: Sequence) -> tuple:
        env = self._values_dict(values)
        return tuple(_eval_slot(s, env) for s in self.slots)

    def make_params(self, values: Sequence = ()):
        """The parameter object this row denotes at the given values."""
        filled = self.slot_values(values)
        if self.kind == "second":
            return SecondTypeParams(self.epsilon, filled, self.beta,
                                    family_label=self.family_label)
        return FirstTypeParams(self.family_id, filled)

    def violations(self, values: Sequence, n: int | None = None) -> list:
        """Human-readable admissibility problems; empty when fine."""
        problems = []
        try:
            env = self._values_dict(values)
        except InadmissibleParams as exc:
            return [str(exc)]
        for spec in self.params:
            v = env[spec.name]
            if not spec.admits(v):
                problems.append(
                    f"{spec.name} = {v} not admissible for row {self.row_id}: "
                    f"{spec.name} must lie in {spec.describe()}")
        if slot_uses_inv2(self.slots) and env.get("lambda") == 0:
            problems.append("lambda = 0 makes the slot 2/lambda undefined")
        if n is not None:
            if n < 9:
                problems.append(f"dimension {n} below the minimum 9")
            elif self.parity == "even" and n % 2:
                problems.append(
                    f"row {self.row_id} needs even dimension, got {n}")
        return problems

    def sample_grid(self, free_samples) -> list:
        """All admissible value tuples, finite sets in full, free slots
        over the given samples minus exclusions."""
        if not self.params:
            return [()]
        axes = [spec.sample(free_samples) for spec in self.params]
        return [vals for vals in product(*axes) if not self.violations(vals)]

    def describe(self) -> str:
        sub = "(" + ", ".join(_slot_text(s) for s in self.slots) + ")"
        bits = [f"row {self.row_id}", f"label {self.family_label}", sub]
        for spec in self.params:
            bits.append(f"{spec.name} in {spec.describe()}")
        if self.parity == "even":
            bits.append("even dim only")
        return "; ".join(bits)


def slot_uses_inv2(slots) -> bool:
    return any(s[0] == "inv2" for s in slots)


def _C(c) -> tuple:
    return ("const", Q(c))


def _M(name: str, c=1) -> tuple:
    return ("mul", Q(c), name)


def _lam(*, finite=None, excluded=()) -> ParamSpec:
    return ParamSpec("lambda",
                     None if finite is None else tuple(Q(v) for v in finite),
                     tuple(Q(v) for v in excluded))


def _mu(*, finite=None, excluded=()) -> ParamSpec:
    return ParamSpec("mu",
                     None if finite is None else tuple(Q(v) for v in finite),
                     tuple(Q(v) for v in excluded))


def _gam(*, excluded=()) -> ParamSpec:
    return ParamSpec("gamma", None, tuple(Q(v) for v in excluded))


def _second(row_id, slots, params=(), *, epsilon, beta=Q(-1), label=None):
    return CatalogRow(row_id=row_id,
                      family_label=label if label is not None else row_id,
                      kind="second", slots=slots, params=params,
                      epsilon=epsilon, beta=Q(beta),
                      parity="even" if epsilon == 1 else "any")


def _first(family_id, slots, params=()):
    return CatalogRow(row_id=str(family_id), family_label=str(family_id),
                      kind="first", slots=slots, params=params,
                      family_id=family_id, parity="any")


CATALOG_ROWS: tuple = (
    # beta = 0 row: everything beyond the chain vanishes
    _second("0,1", (_C(0), _C(0), _C(0), _C(0)), epsilon=0, beta=0),
    _second("0,2", (_C(0), _C(0), _C(0), _M("lambda")), (_lam(finite=(0, 1)),),
            epsilon=0),
    _second("0,3", (_C(1), _C(0), _C(0), _M("lambda")), (_lam(),), epsilon=0),
    _second("0,4", (_C(1), _C(0), _C(Q(1, 4)), _M("lambda")), (_lam(),),
            epsilon=0),
    _second("0,5", (_C(0), _C(0), _C(1), _M("lambda")), (_lam(),), epsilon=0),
    _second("0,6a", (_C(0), _C(1), _C(0), _M("lambda")), (_lam(finite=(0, 1)),),
            epsilon=0, label="0,6"),
    _second("0,6b", (_M("mu"), _C(1), _C(0), _M("lambda")),
            (_lam(), _mu(finite=(1, 2))), epsilon=0, label="0,6"),
    _second("0,7", (_C(0), _C(1), _M("mu"), _M("lambda")),
            (_lam(), _mu(excluded=(0,))), epsilon=0),
    _second("0,8", (_M("lambda", -2), _C(1), _M("lambda", -1), _C(2)),
            (_lam(finite=(-2, Q(-4, 3))),), epsilon=0),
    _second("0,9", (_M("lambda", 2), _C(1), _M("lambda"), _C(0)),
            (_lam(excluded=(0, 1)),), epsilon=0),
    _second("0,10a", (_C(1), _C(1), _C(Q(1, 4)), _C(Q(1, 4))), epsilon=0,
            label="0,10"),
    _second("0,10b", (_C(1), _C(1), _C(Q(1, 4)), _C(Q(1, 2))), epsilon=0,
            label="0,10"),
    _second("0,10c", (_C(2), _C(1), _C(1), _C(1)), epsilon=0, label="0,10"),
    _second("0,10d", (_C(2), _C(1), _C(1), _C(0)), epsilon=0, label="0,10"),
    _second("0,11", (_C(1), _M("lambda"), _C(Q(1, 4)), _C(0)),
            (_lam(excluded=(0, Q(1, 2))),), epsilon=0),

    _second("1,2", (_C(0), _C(0), _C(0), _M("lambda")), (_lam(finite=(0, 1)),),
            epsilon=1),
    _second("1,3", (_C(1), _C(0), _C(0), _M("lambda")), (_lam(),), epsilon=1),
    _second("1,4", (_C(1), _C(0), _C(Q(1, 4)), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,6", (_M("mu"), _C(1), _C(0), _M("lambda")), (_lam(), _mu()),
            epsilon=1),
    _second("1,7", (_C(0), _M("gamma"), _M("mu"), _M("lambda")),
            (_lam(), _gam(excluded=(0,)), _mu(excluded=(0,))), epsilon=1),
    _second("1,9", (_M("lambda", -2), _C(1), _M("lambda"), _M("mu")),
            (_lam(excluded=(0, 1)), _mu()), epsilon=1),
    _second("1,11", (_M("lambda"), _C(1), ("sq4", "lambda"), _M("mu")),
            (_lam(excluded=(-2, 0)), _mu()), epsilon=1),
    _second("1,12", (_C(-1), _C(0), _C(0), _M("lambda")), (_lam(finite=(0, 1)),),
            epsilon=1),
    _second("1,13", (_C(-2), _C(0), _C(1), _M("lambda")), (_lam(),), epsilon=1),
    _second("1,14", (_C(-4), _C(0), _C(2), _M("lambda")), (_lam(),), epsilon=1),
    _second("1,15", (_C(0), _C(0), _C(-1), _M("lambda")), (_lam(),), epsilon=1),
    _second("1,16", (_C(-2), _C(0), _C(-1), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,17", (_C(0), _C(-1), _C(0), _M("lambda")), (_lam(finite=(0, 1)),),
            epsilon=1),
    _second("1,18", (_C(-1), _C(-1), _C(0), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,19", (_C(-2), _C(-1), _C(0), _C(1)), epsilon=1),
    _second("1,20", (_C(1), _C(-1), _C(0), _M("lambda")),
            (_lam(excluded=(Q(-1, 2),)),), epsilon=1),
    _second("1,21", (_C(1), _C(Q(1, 3)), _C(0), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,22", (_C(-2), _C(-1), _C(1), _M("lambda")),
            (_lam(finite=(0, 1)),), epsilon=1),
    _second("1,23", (_C(1), _C(Q(1, 2)), _C(Q(1, 4)), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,24", (_C(-4), _C(-1), _C(2), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,25", (_C(-3), _C(Q(-4, 3)), _C(2), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,26", (_C(Q(2, 5)), _C(2), _C(Q(2, 5)), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,27", (("inv2", "lambda"), _M("lambda"), _C(1), _M("mu")),
            (_lam(excluded=(-1, 0, 1)), _mu()), epsilon=1),
    _second("1,28", (_C(Q(8, 5)), _C(Q(1, 2)), _C(Q(-4, 5)), _M("lambda")),
            (_lam(),), epsilon=1),
    _second("1,29", (_M("lambda"), _C(-1), ("sq4", "lambda"), _C(0)),
            (_lam(excluded=(-2, 0)),), epsilon=1),
    _second("1,30", (_C(1), _C(-1), _C(Q(1, 4)), _M("lambda")),
            (_lam(finite=(Q(-1, 2), Q(1, 4))),), epsilon=1),
    _second("1,31", (_C(-8), _C(2), _C(16), _M("lambda")), (_lam(),),
            epsilon=1),
    _second("1,32", (_C(-2), _M("lambda"), _C(1), _C(0)),
            (_lam(excluded=(-1, 0)),), epsilon=1),
    _second("1,33", (_C(-2), _C(1), _C(1), _M("lambda")),
            (_lam(finite=(-1, 1)),), epsilon=1),

    _first(34, (_C(0), _M("lambda"), _C(0)), (_lam(),)),
    _first(35, (_M("mu"), _M("lambda"), _C(1)),
           (_lam(finite=(0, 1)), _mu(finite=(0, 1)))),
    _first(36, (_C(1), _M("lambda"), _C(0)), (_lam(finite=(-1, 0)),)),
    _first(37, (_C(1), _M("lambda"), _C(2)), (_lam(),)),
    _first(38, (_C(0), _C(0), _M("lambda")), (_lam(),)),
    _first(39, (_C(0), _C(1), _M("lambda")), (_lam(finite=(-1, 0)),)),
    _first(40, (_C(1), _M("lambda"), _M("mu")),
           (_lam(finite=(0, 1)), _mu())),
    _first(41, (_C(1), _C(-1), _M("lambda")), (_lam(finite=(-1, 0)),)),
)

_ROWS_BY_ID = {row.row_id: row for row in CATALOG_ROWS}


def row_by_id(row_id: str) -> CatalogRow:
    try:
        return _ROWS_BY_ID[row_id]
    except KeyError:
        raise UnknownFamily(f"no catalog row {row_id!r}") from None


def rows_by_label(label: str) -> tuple:
    out = tuple(r for r in CATALOG_ROWS if r.family_label == label)
    if not out:
        raise UnknownFamily(f"no catalog rows labelled {label!r}")
    return out


# ----------------------------------------------------------------------
# building

class _TableBuilder:
    def __init__(self, n: int):
        self.n = n
        self.cells: dict = {}

    def put(self, i, j, *terms):
        cell = self.cells.setdefault((i, j), {})
        for k, c in terms:
            c = _frac(c)
            if c != 0:
                cell[k] = cell.get(k, Q(0)) + c

    def tensor(self, name=None) -> StructureTensor:
        table = {key: tuple(sorted(v.items())) for key, v in self.cells.items()}
        return StructureTensor(self.n, table, name)


def build_second_type(n: int, params: SecondTypeParams,
                      strict: bool = False) -> StructureTensor:
    """The second-type normal form at dimension n.

    Emits exactly the chain [e_i,e_1]=e_{i+1} (i != 3) plus the products
    controlled by (alpha1..alpha4, beta, epsilon); [e_1,e_5] carries
    beta*e_6 (not a fixed -e_6), which is forced when beta = 0.

    With ``strict`` the parameters must additionally sit on some catalog
    row; without it any parameters that give a Leibniz product are allowed
    (the maps in the transform module wander off the rows on purpose).
    """
    if n < 9:
        raise DimensionTooSmall(f"second-type families need n >= 9, got {n}")
    if params.epsilon == 1 and n % 2:
        raise ParityViolation(
            f"epsilon = 1 products need even dimension, got {n}")
    a1, a2, a3, a4 = params.alphas
    beta = params.beta
    if beta == 0 and any(a != 0 for a in params.alphas):
        raise InadmissibleParams(
            "beta = 0 forces alpha1 = alpha2 = alpha3 = alpha4 = 0; "
            f"got alphas {params.alphas}")
    if strict and find_second_type_row(params) is None:
        raise InadmissibleParams(
            f"no catalog row has epsilon={params.epsilon}, "
            f"alphas={params.alphas}, beta={beta}")
    t = _TableBuilder(n)
    for i in range(1, n):
        if i != 3:
            t.put(i, 1, (i + 1, 1))
    t.put(1, 4, (2, a1), (5, beta))
    t.put(2, 4, (3, a2))
    t.put(4, 4, (2, a3))
    t.put(5, 4, (3, a4))
    t.put(1, 5, (3, a1 - a2), (6, beta))
    t.put(4, 5, (3, a3 - a4))
    for i in range(6, n):
        t.put(1, i, (i + 1, beta))
    if params.epsilon == 1:
        for i in range(4, n):
            t.put(i, n + 3 - i, (n, Q(-1) if i % 2 else Q(1)))
    label = params.family_label
    name = f"l({label})" if label else "second-type"
    return t.tensor(f"{name} n={n}")


def find_second_type_row(params: SecondTypeParams):
    """The (row, values) pair whose slots reproduce these parameters, or
    None.  Rows are scanned in printed order; values are solved from the
    first linear slot of each parameter and then verified everywhere."""
    for row in CATALOG_ROWS:
        if row.kind != "second":
            continue
        if row.epsilon != params.epsilon or row.beta != params.beta:
            continue
        values = _solve_row_values(row, params.alphas)
        if values is None:
            continue
        if row.violations(values):
            continue
        return row, values
    return None


def _solve_row_values(row: CatalogRow, targets: tuple):
    env = {}
    for spec in row.params:
        solved = None
        for slot, target in zip(row.slots, targets):
            if slot[0] == "mul" and slot[2] == spec.name:
                solved = target / slot[1]
                break
        if solved is None:   # pragma: no cover - every row has a linear slot
            return None
        env[spec.name] = solved
    if slot_uses_inv2(row.slots) and env.get("lambda") == 0:
        return None
    values = tuple(env[spec.name] for spec in row.params)
    if row.slot_values(values) != tuple(targets):
        return None
    return values


def _chain_products(t: _TableBuilder, n: int, skip: int):
    for i in range(1, n):
        if i != skip:
            t.put(i, 1, (i + 1, 1))


def build_type1_branch_a(n: int, alpha1, alpha2, beta2,
                         name: str | None = None) -> StructureTensor:
    """First-type shape where e_{n-1} right-annihilates everything."""
    if n < 9:
        raise DimensionTooSmall(f"first-type families need n >= 9, got {n}")
    a1, a2, b2 = _frac(alpha1), _frac(alpha2), _frac(beta2)
    t = _TableBuilder(n)
    _chain_products(t, n, n - 3)
    t.put(1, n - 2, (2, a1), (n - 1, a2))
    t.put(2, n - 2, (3, a1), (n, a2))
    for i in range(3, n - 3):
        t.put(i, n - 2, (i + 1, a1))
    t.put(n - 2, n - 2, (n - 1, b2))
    t.put(n - 1, n - 2, (n, b2))
    return t.tensor(name or f"type1a({a1},{a2},{b2}) n={n}")


def build_type1_branch_b(n: int, alpha1, a2, b2,
                         name: str | None = None) -> StructureTensor:
    """First-type shape with [e_1, e_{n-2}] = alpha1*e_2 - e_{n-1}."""
    if n < 9:
        raise DimensionTooSmall(f"first-type families need n >= 9, got {n}")
    al, a, b = _frac(alpha1), _frac(a2), _frac(b2)
    t = _TableBuilder(n)
    _chain_products(t, n, n - 3)
    t.put(1, n - 2, (2, al), (n - 1, -1))
    t.put(2, n - 2, (3, al), (n, -(1 + a)))
    for i in range(3, n - 3):
        t.put(i, n - 2, (i + 1, al))
    t.put(n - 1, n - 2, (n, -b))
    t.put(1, n - 1, (n, a))
    t.put(n - 2, n - 1, (n, b))
    return t.tensor(name or f"type1b({al},{a},{b}) n={n}")


def build_first_type(n: int, params: FirstTypeParams) -> StructureTensor:
    if n < 9:
        raise DimensionTooSmall(f"first-type families need n >= 9, got {n}")
    row = row_by_id(str(params.family_id))
    values = _solve_row_values(row, params.p)
    if values is None or row.violations(values, n):
        raise InadmissibleParams(
            f"subscript {params.p} is not admissible for family "
            f"{params.family_id}: " + "; ".join(
                row.violations(values, n) if values is not None
                else [f"subscript does not match the pattern "
                      f"({', '.join(_slot_text(s) for s in row.slots)})"]))
    name = f"l({params.family_id}){params.p} n={n}"
    bp = params.branch_params()
    if params.branch == "a":
        return build_type1_branch_a(n, *bp, name=name)
    return build_type1_branch_b(n, *bp, name=name)


# ----------------------------------------------------------------------
# validation and enumeration

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    row_id: str
    problems: tuple

    def __bool__(self):
        return self.ok


def validate_params(row, values: Sequence = (), n: int | None = None
                    ) -> ValidationReport:
    """Check values against a row's admissible sets; never raises."""
    if isinstance(row, str):
        try:
            row = row_by_id(row)
        except UnknownFamily as exc:
            return ValidationReport(False, row, (str(exc),))
    try:
        problems = tuple(row.violations(values, n))
    except Exception as exc:   # defensive: a report, never a throw
        problems = (str(exc),)
    return ValidationReport(not problems, row.row_id, problems)


class CatalogInstance(NamedTuple):
    row: CatalogRow
    n: int
    tensor: StructureTensor
    values: tuple

    def label(self) -> str:
        vals = ", ".join(f"{s.name}={v}"
                         for s, v in zip(self.row.params, self.values))
        core = f"l({self.row.row_id})"
        return f"{core}[{vals}] n={self.n}" if vals else f"{core} n={self.n}"


def enumerate_catalog(dims: Sequence[int],
                      free_param_samples: Sequence = DEFAULT_FREE_SAMPLES):
    """Instantiate every catalog row at every compatible dimension.

    Finite parameter sets are enumerated in full; each free slot runs over
    ``free_param_samples`` minus the row's exclusions.  Yields instances
    in canonical order: row order, then dimension, then sample order.
    """
    samples = tuple(_frac(s) for s in free_param_samples)
    if not samples:
        raise InadmissibleParams("free_param_samples must be nonempty")
    dims = sorted(set(dims))
    for row in CATALOG_ROWS:
        grids = row.sample_grid(samples)
        for n in dims:
            if row.parity == "even" and n % 2:
                continue
            for values in grids:
                params = row.make_params(values)
                if row.kind == "second":
                    tensor = build_second_type(n, params)
                else:
                    tensor = build_first_type(n, params)
                inst = CatalogInstance(row, n, tensor, values)
                yield inst._replace(tensor=tensor.renamed(inst.label()))


def catalog_index_document() -> str:
    """Machine-readable index of all rows and their constraints."""
    rows = []
    for row in CATALOG_ROWS:
        entry = {
            "row_id": row.row_id,
            "family_label": row.family_label,
            "kind": row.kind,
            "pattern": [_slot_text(s) for s in row.slots],
            "parity": row.parity,
            "params": [],
        }
        if row.kind == "second":
            entry["epsilon"] = row.epsilon
            entry["beta"] = str(row.beta)
        else:
            entry["family_id"] = row.family_id
        for spec in row.params:
            p: dict = {"name": spec.name}
            if spec.finite is not None:
                p["finite"] = [str(v) for v in spec.finite]
            else:
                p["excluded"] = [str(v) for v in spec.excluded]
            entry["params"].append(p)
        rows.append(entry)
    return json.dumps({"rows": rows}, indent=2) + "\n"


# ----------------------------------------------------------------------
# the mid-construction shape behind the closed-form product formula

def build_construction_stage(n: int, alphas: Sequence,
                             betas: Sequence) -> StructureTensor:
    """Second-type table before normalisation, with explicit beta chain.

    ``alphas`` is (alpha1..alpha4); ``betas`` uses 1-based subscripts
    (betas[m] is beta_m, betas[0] ignored) and must cover 1..n-1.  The
    products against e_4 are laid down from these coefficients and every
    higher column j >= 5 is derived through

        [e_i, e_j] = [[e_i, e_{j-1}], e_1] - [[e_i, e_1], e_{j-1}],

    which is the Leibniz identity applied to e_j = [e_{j-1}, e_1].
    """
    if n < 9:
        raise DimensionTooSmall(f"construction stage needs n >= 9, got {n}")
    alphas = tuple(_frac(a) for a in alphas)
    if len(alphas) != 4:
        raise InadmissibleParams("need exactly four alpha values")
    betas = [_frac(b) for b in betas]
    if len(betas) < n:
        raise InadmissibleParams(f"betas must cover subscripts 1..{n - 1}")
    a1, a2, a3, a4 = alphas
    t = _TableBuilder(n)
    for i in range(1, n):
        if i != 3:
            t.put(i, 1, (i + 1, 1))
    t.put(1, 4, (2, a1), (5, betas[1]))
    t.put(2, 4, (3, a2), (6, betas[2]))
    t.put(3, 4, (7, betas[3]))
    t.put(4, 4, (2, a3), (5, betas[4]))
    t.put(5, 4, (3, a4), (6, betas[5]))
    for i in range(6, n):
        t.put(i, 4, (i + 1, betas[i]))

    def times_e1(vec: dict) -> dict:
        out = {}
        for k, c in vec.items():
            if k != 3 and k < n:
                out[k + 1] = out.get(k + 1, Q(0)) + c
        return {k: c for k, c in out.items() if c != 0}

    def times_col(vec: dict, j: int) -> dict:
        out: dict = {}
        for k, c in vec.items():
            for m, v in t.cells.get((k, j), {}).items():
                out[m] = out.get(m, Q(0)) + c * v
        return {k: c for k, c in out.items() if c != 0}

    for j in range(5, n + 1):
        for i in range(1, n + 1):
            left = times_e1(times_col({i: Q(1)}, j - 1))
            right = times_col(times_e1({i: Q(1)}), j - 1)
            cell = {}
            for k, c in left.items():
                cell[k] = cell.get(k, Q(0)) + c
            for k, c in right.items():
                cell[k] = cell.get(k, Q(0)) - c
            cell = {k: c for k, c in cell.items() if c != 0}
            if cell:
                t.cells[(i, j)] = cell
    return t.tensor(f"construction-stage n={n}")
