"""Structure tensors, brackets, and the Leibniz residual.

An algebra is presented by its structure constants over Q with a 1-based
basis e_1 .. e_n: the table maps a pair (i, j) to the expansion of the
product [e_i, e_j].  Products are not assumed antisymmetric; a Leibniz
algebra is one whose residual

    [e_i, [e_j, e_k]] - [[e_i, e_j], e_k] + [[e_i, e_k], e_j]

vanishes for every triple.

Algebras travel as JSON documents.  The canonical serialised form sorts
table entries by (i, j), terms by target index, and writes coefficients as
reduced fraction strings, so equal algebras serialise to identical bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (DimensionMismatch, DocumentError, DuplicateEntry,
                     IndexOutOfRange)
from .linalg import MatrixQ

_FRACTION_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Vec:
    """Vector in the algebra's coordinate space, components over Q."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(x) for x in self.coords))

    @staticmethod
    def zero(n: int) -> "Vec":
        return Vec((Fraction(0),) * n)

    @staticmethod
    def basis(n: int, i: int) -> "Vec":
        """The basis vector e_i (1-based)."""
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"basis index {i} outside 1..{n}")
        return Vec(tuple(Fraction(1) if k == i - 1 else Fraction(0)
                         for k in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def component(self, k: int) -> Fraction:
        """Coefficient of e_k (1-based)."""
        if not 1 <= k <= self.dim:
            raise IndexOutOfRange(f"component index {k} outside 1..{self.dim}")
        return self.coords[k - 1]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "Vec") -> "Vec":
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        return Vec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vec") -> "Vec":
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        return Vec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vec":
        return Vec(tuple(-a for a in self.coords))

    def scale(self, c) -> "Vec":
        c = _frac(c)
        return Vec(tuple(c * a for a in self.coords))

    __rmul__ = scale


def _normalize_table(dim: int, table) -> dict:
    """Validate indices, merge duplicate targets, drop zeros, sort."""
    out = {}
    for (i, j), terms in table.items():
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise IndexOutOfRange(f"table key ({i},{j}) outside 1..{dim}")
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if not 1 <= k <= dim:
                raise IndexOutOfRange(f"target index {k} outside 1..{dim} at ({i},{j})")
            c = _frac(c)
            acc[k] = acc.get(k, Fraction(0)) + c
        cleaned = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        if cleaned:
            out[(i, j)] = cleaned
    return out


@dataclass(frozen=True)
class StructureTensor:
    """Immutable structure-constant table of a bilinear product.

    ``table`` maps (i, j) to a sorted tuple of (k, coefficient) pairs; pairs
    with no nonzero products are simply absent.  ``name`` is a free-form tag
    that is ignored by equality.
    """

    dim: int
    table: Mapping = field(default_factory=dict)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch(f"dimension must be >= 1, got {self.dim}")
        object.__setattr__(self, "table", _normalize_table(self.dim, dict(self.table)))

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.table.items()))))

    def terms(self, i: int, j: int) -> tuple:
        """Expansion of [e_i, e_j] as ((k, coeff), ...); empty when zero."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexOutOfRange(f"({i},{j}) outside 1..{self.dim}")
        return self.table.get((i, j), ())

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        for kk, c in self.terms(i, j):
            if kk == k:
                return c
        return Fraction(0)

    def entries(self):
        """All nonzero table cells, sorted by (i, j)."""
        for key in sorted(self.table):
            yield key, self.table[key]

    def renamed(self, name: str | None) -> "StructureTensor":
        return StructureTensor(self.dim, self.table, name)


def bracket(algebra: StructureTensor, x: Vec, y: Vec) -> Vec:
    """The product [x, y], extended bilinearly from the table."""
    n = algebra.dim
    if x.dim != n or y.dim != n:
        raise DimensionMismatch(
            f"vectors of dimension {x.dim}, {y.dim} in an algebra of dimension {n}")
    out = [Fraction(0)] * n
    for i, xi in enumerate(x.coords):
        if xi == 0:
            continue
        for j, yj in enumerate(y.coords):
            if yj == 0:
                continue
            c = xi * yj
            for k, v in algebra.table.get((i + 1, j + 1), ()):
                out[k - 1] += c * v
    return Vec(tuple(out))


def basis_bracket(algebra: StructureTensor, i: int, j: int) -> Vec:
    """[e_i, e_j] as a Vec."""
    out = [Fraction(0)] * algebra.dim
    for k, c in algebra.terms(i, j):
        out[k - 1] = c
    return Vec(tuple(out))


@dataclass(frozen=True)
class Residual:
    """All basis triples where the Leibniz identity fails.

    Each violation is (i, j, k, defect) with
    defect = [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j].
    """

    dim: int
    violations: tuple

    def is_empty(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)


def leibniz_residual(algebra: StructureTensor) -> Residual:
    """Exact defect of the Leibniz identity over all n^3 basis triples."""
    n = algebra.dim
    table = algebra.table
    violations = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            w_jk = table.get((j, k), ())
            for i in range(1, n + 1):
                acc: dict = {}
                for m, c in w_jk:
                    for t, v in table.get((i, m), ()):
                        acc[t] = acc.get(t, Fraction(0)) + c * v
                for m, c in table.get((i, j), ()):
                    for t, v in table.get((m, k), ()):
                        acc[t] = acc.get(t, Fraction(0)) - c * v
                for m, c in table.get((i, k), ()):
                    for t, v in table.get((m, j), ()):
                        acc[t] = acc.get(t, Fraction(0)) + c * v
                if any(v != 0 for v in acc.values()):
                    defect = [Fraction(0)] * n
                    for t, v in acc.items():
                        defect[t - 1] = v
                    violations.append((i, j, k, Vec(tuple(defect))))
    return Residual(n, tuple(violations))


def is_lie(algebra: StructureTensor) -> bool:
    """True when the product is antisymmetric (given Leibniz, that means Lie)."""
    n = algebra.dim
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            plus = dict(algebra.terms(i, j))
            for k, c in algebra.terms(j, i):
                plus[k] = plus.get(k, Fraction(0)) + c
            if i == j:
                # [x, x] must vanish outright
                if algebra.terms(i, i):
                    return False
            elif any(v != 0 for v in plus.values()):
                return False
    return True


def right_mul_matrix(algebra: StructureTensor, x: Vec) -> MatrixQ:
    """Matrix of y -> [y, x] on columns: column i holds [e_i, x]."""
    n = algebra.dim
    if x.dim != n:
        raise DimensionMismatch(f"vector of dimension {x.dim} in dimension {n}")
    cols = []
    for i in range(1, n + 1):
        col = [Fraction(0)] * n
        for j, xj in enumerate(x.coords):
            if xj == 0:
                continue
            for k, c in algebra.table.get((i, j + 1), ()):
                col[k - 1] += xj * c
        cols.append(col)
    return MatrixQ(n, n, tuple(cols[i][r] for r in range(n) for i in range(n)))


def binomial_product_check(algebra: StructureTensor, betas: Sequence) -> bool:
    """Check the alternating-binomial closed form of the derived products.

    ``betas`` uses 1-based subscripts (betas[m] belongs to basis index m;
    betas[0] is ignored); entries 5..n-1 are read.  For every cell with
    5 <= i <= n-3 and 6 <= j <= n+3-i the table entry must be exactly

        sum((-1)^k * C(j-4, k) * betas[i+k] for k in 0..j-4) * e_{i+j-3}.

    Returns True when every such cell matches.
    """
    n = algebra.dim
    if n < 9:
        raise IndexOutOfRange(f"need dimension >= 9, got {n}")
    if len(betas) < n:
        raise IndexOutOfRange(f"betas must cover subscripts up to {n - 1}")
    for i in range(5, n - 2):
        for j in range(6, n + 4 - i):
            coeff = sum((-1) ** k * comb(j - 4, k) * _frac(betas[i + k])
                        for k in range(j - 3))
            expected = ((i + j - 3, coeff),) if coeff != 0 else ()
            if algebra.terms(i, j) != expected:
                return False
    return True


# ----------------------------------------------------------------------
# documents

def parse_fraction(text: str) -> Fraction:
    """Exact fraction from a string like '-3/4' or '2'.

    Decimal notation is rejected on purpose: a value like 0.1 has no
    exact binary meaning and would poison every later computation.
    """
    raw = text.strip()
    if not _FRACTION_RE.match(raw):
        raise DocumentError(f"{text!r} is not an exact fraction like '-3/4'")
    return Fraction(raw)


def _coeff_from_document(raw, where: str) -> Fraction:
    if isinstance(raw, str):
        if not _FRACTION_RE.match(raw):
            raise DocumentError(f"coefficient {raw!r} at {where} is not an exact "
                                "fraction string like '-3/4'")
        return Fraction(raw)
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    raise DocumentError(f"coefficient at {where} must be an exact fraction "
                        f"string, got {type(raw).__name__}")


def parse(text: str) -> StructureTensor:
    """Read an algebra document.

    Raises DocumentError for syntax and schema problems (with line/column
    when the JSON reader reports one), IndexOutOfRange for basis indices
    outside 1..dim, and DuplicateEntry for repeated cells.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")
    unknown = set(doc) - {"dim", "name", "table"}
    if unknown:
        raise DocumentError(f"unknown keys: {sorted(unknown)}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError(f"\"dim\" must be an integer >= 1, got {dim!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("\"name\" must be a string")
    entries = doc.get("table", [])
    if not isinstance(entries, list):
        raise DocumentError("\"table\" must be a list")
    table = {}
    for pos, entry in enumerate(entries):
        where = f"table[{pos}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "terms"}:
            raise DocumentError(f"{where} must be an object with keys i, j, terms")
        i, j = entry["i"], entry["j"]
        for label, idx in (("i", i), ("j", j)):
            if not isinstance(idx, int) or isinstance(idx, bool):
                raise DocumentError(f"{where}.{label} must be an integer")
            if not 1 <= idx <= dim:
                raise IndexOutOfRange(f"{where}.{label} = {idx} outside 1..{dim}")
        if (i, j) in table:
            raise DuplicateEntry(f"cell ({i},{j}) appears twice")
        if not isinstance(entry["terms"], list):
            raise DocumentError(f"{where}.terms must be a list")
        seen = set()
        terms = []
        for t_pos, term in enumerate(entry["terms"]):
            t_where = f"{where}.terms[{t_pos}]"
            if not isinstance(term, list) or len(term) != 2:
                raise DocumentError(f"{t_where} must be a [target, coefficient] pair")
            k, raw = term
            if not isinstance(k, int) or isinstance(k, bool):
                raise DocumentError(f"{t_where} target must be an integer")
            if not 1 <= k <= dim:
                raise IndexOutOfRange(f"{t_where} target {k} outside 1..{dim}")
            if k in seen:
                raise DuplicateEntry(f"target {k} appears twice in cell ({i},{j})")
            seen.add(k)
            terms.append((k, _coeff_from_document(raw, t_where)))
        table[(i, j)] = terms
    return StructureTensor(dim, table, name)


def serialize(algebra: StructureTensor) -> str:
    """Canonical document text; equal algebras give byte-identical output."""
    doc: dict = {"dim": algebra.dim}
    if algebra.name is not None:
        doc["name"] = algebra.name
    doc["table"] = [
        {"i": i, "j": j, "terms": [[k, str(c)] for k, c in terms]}
        for (i, j), terms in algebra.entries()
    ]
    return json.dumps(doc, indent=2) + "\n"
