"""Exact linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` entries, so results are
exact; there is no floating point anywhere in the package.  The convention
throughout is that operators act on column vectors: the matrix of a linear
map holds the image of the i-th basis vector in column i.

Elimination is fraction-free where it matters.  ``rank`` clears
denominators row by row and then runs Bareiss elimination on integers, so
intermediate entries stay integral and the division steps are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotNilpotent

Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "MatrixQ":
        rows = [tuple(_frac(x) for x in r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        ncols = len(rows[0]) if rows else 0
        flat = tuple(x for r in rows for x in r)
        return MatrixQ(len(rows), ncols, flat)

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        one, zero = Fraction(1), Fraction(0)
        return MatrixQ(n, n, tuple(one if i == j else zero
                                   for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "MatrixQ":
        return MatrixQ(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, rc):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"({r},{c}) outside {self.rows}x{self.cols}")
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> tuple:
        return self.entries[c::self.cols]

    def row_list(self) -> list:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        return MatrixQ(self.cols, self.rows,
                       tuple(self.entries[r * self.cols + c]
                             for c in range(self.cols) for r in range(self.rows)))

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.row_list(), other.row_list()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return MatrixQ(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} vs {self.cols} columns")
        vec = [_frac(x) for x in vector]
        return tuple(sum(self.row(r)[k] * vec[k] for k in range(self.cols))
                     for r in range(self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def power(self, k: int) -> "MatrixQ":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        result = MatrixQ.identity(self.rows)
        base = self
        while k > 0:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result


def _integer_rows(m: MatrixQ) -> list:
    """Row-scaled integer copy of m (same row space, so same rank)."""
    out = []
    for r in range(m.rows):
        row = m.row(r)
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _int_rank(rows: list, ncols: int) -> int:
    """Rank by fraction-free Bareiss elimination on integer rows (mutates rows)."""
    rank_so_far = 0
    prev = 1
    nrows = len(rows)
    for c in range(ncols):
        pivot = None
        for r in range(rank_so_far, nrows):
            if rows[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank_so_far], rows[pivot] = rows[pivot], rows[rank_so_far]
        lead = rows[rank_so_far][c]
        for r in range(rank_so_far + 1, nrows):
            below = rows[r][c]
            row_r, row_p = rows[r], rows[rank_so_far]
            # every row below gets the full cross-multiplied update, even
            # when its pivot-column entry is zero; Sylvester's identity
            # (and hence the exactness of the division by the previous
            # pivot) assumes complete update history.
            for j in range(c + 1, ncols):
                row_r[j] = (lead * row_r[j] - below * row_p[j]) // prev
            rows[r][c] = 0
        prev = lead
        rank_so_far += 1
        if rank_so_far == nrows:
            break
    return rank_so_far


def rank(m: MatrixQ) -> int:
    """Rank of a rational matrix, computed without ever leaving the integers."""
    return _int_rank(_integer_rows(m), m.cols)


def _int_echelon_basis(rows: list) -> list:
    """Echelon row basis of the span of integer rows, gcd-normalized.

    Reduction uses cross-multiplication only, so everything stays in the
    integers; dividing each finished row by its gcd keeps entries small.
    """
    ech: list = []          # (pivot column, row), sorted by pivot column
    for row in rows:
        row = row[:]
        for p, prow in ech:
            if row[p]:
                f = row[p]
                lead = prow[p]
                row = [lead * x - f * y for x, y in zip(row, prow)]
        pivot = next((c for c, x in enumerate(row) if x), None)
        if pivot is None:
            continue
        g = gcd(*(abs(x) for x in row))
        if g > 1:
            row = [x // g for x in row]
        ech.append((pivot, row))
        ech.sort(key=lambda t: t[0])
    return [r for _, r in ech]


def nilpotent_block_sizes(m: MatrixQ) -> tuple:
    """Jordan block sizes of a nilpotent matrix, largest first.

    The number of blocks of size at least k equals rank(N^(k-1)) - rank(N^k),
    so the whole partition falls out of the rank sequence of the powers.
    Instead of forming the powers, the loop pushes an echelon row basis of
    the current power's row space through N (the row space of E*N equals
    that of N^k when E spans N^(k-1)'s rows), which keeps both the row
    count and the integer entries small.  Raises NotNilpotent when the
    rank sequence stops falling before it reaches zero.
    """
    if m.rows != m.cols:
        raise DimensionMismatch("block sizes need a square matrix")
    n = m.rows
    if n == 0:
        return ()
    scale = lcm(*(x.denominator for x in m.entries)) if m.entries else 1
    base = [[int(x * scale) for x in m.row(r)] for r in range(n)]

    ranks = [n]
    basis = _int_echelon_basis(base)
    while basis:
        ranks.append(len(basis))
        if ranks[-1] == ranks[-2]:
            raise NotNilpotent(
                f"matrix is not nilpotent: rank stabilises at {ranks[-1]}")
        pushed = [[sum(row[k] * base[k][j] for k in range(n) if row[k])
                   for j in range(n)] for row in basis]
        basis = _int_echelon_basis(pushed)
    ranks.append(0)
    index = len(ranks) - 1  # smallest k with N^k = 0
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, index + 1)]
    at_least.append(0)
    sizes = []
    for k in range(index, 0, -1):
        sizes.extend([k] * (at_least[k - 1] - at_least[k]))
    return tuple(sizes)


def jordan_block(size: int) -> MatrixQ:
    """Nilpotent Jordan block with ones on the subdiagonal (e_i maps to e_{i+1})."""
    one, zero = Fraction(1), Fraction(0)
    return MatrixQ(size, size, tuple(one if i == j + 1 else zero
                                     for i in range(size) for j in range(size)))


def block_diag(*blocks: MatrixQ) -> MatrixQ:
    n = sum(b.rows for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    at = 0
    for b in blocks:
        if b.rows != b.cols:
            raise DimensionMismatch("block_diag wants square blocks")
        for i in range(b.rows):
            for j in range(b.cols):
                rows[at + i][at + j] = b[i, j]
        at += b.rows
    return MatrixQ.from_rows(rows)


def rref(m: MatrixQ) -> tuple:
    """Reduced row echelon form over Q.  Returns (MatrixQ, pivot column tuple)."""
    rows = m.row_list()
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return MatrixQ.from_rows(rows), tuple(pivots)


def invert(m: MatrixQ):
    """Inverse over Q, or None when the matrix is singular."""
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return MatrixQ.from_rows([row[n:] for row in aug])


def kernel_basis(m: MatrixQ) -> list:
    """Basis of the right kernel, one vector per free column, in column order."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -reduced[row_idx, free]
        basis.append(tuple(v))
    return basis


class EchelonSpan:
    """Incrementally maintained reduced-echelon basis of a span of row vectors.

    The basis it keeps is the canonical RREF of the span, so two spans are
    equal exactly when their ``basis()`` tuples are equal.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        self.ambient_dim = ambient_dim
        self._rows = []     # list[list[Fraction]], sorted by pivot position
        self._pivots = []   # pivot column of each row
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def pivots(self) -> tuple:
        return tuple(self._pivots)

    def basis(self) -> tuple:
        return tuple(tuple(row) for row in self._rows)

    def _reduce(self, vector) -> list:
        v = [_frac(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        for row, p in zip(self._rows, self._pivots):
            if v[p] != 0:
                f = v[p]
                for j in range(p, self.ambient_dim):
                    v[j] -= f * row[j]
        return v

    def contains(self, vector) -> bool:
        return all(x == 0 for x in self._reduce(vector))

    def add(self, vector) -> bool:
        """Insert a vector; returns True when the span grew."""
        v = self._reduce(vector)
        pivot = next((j for j, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        lead = v[pivot]
        v = [x / lead for x in v]
        for row in self._rows:
            if row[pivot] != 0:
                f = row[pivot]
                for j in range(pivot, self.ambient_dim):
                    row[j] -= f * v[j]
        at = next((idx for idx, p in enumerate(self._pivots) if p > pivot),
                  len(self._pivots))
        self._rows.insert(at, v)
        self._pivots.insert(at, pivot)
        return True


# ----------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class PolyQ:
    """Univariate polynomial over Q; coefficients lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_frac(x) for x in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def of(*coeffs) -> "PolyQ":
        return PolyQ(tuple(coeffs))

    @staticmethod
    def constant(c) -> "PolyQ":
        return PolyQ((_frac(c),))

    @staticmethod
    def zero() -> "PolyQ":
        return PolyQ(())

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return PolyQ(tuple(out))

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ(tuple(x * other for x in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, divisor: "PolyQ") -> tuple:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading()
        quo = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lead
            quo[i - dd] = f
            for j, c in enumerate(divisor.coeffs):
                rem[i - dd + j] -= f * c
        return PolyQ(tuple(quo)), PolyQ(tuple(rem))

    def exact_div(self, divisor: "PolyQ") -> "PolyQ":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division was expected to be exact")
        return q

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        lead = self.leading()
        return PolyQ(tuple(c / lead for c in self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return " + ".join(parts)


def poly_gcd(p: PolyQ, q: PolyQ) -> PolyQ:
    """Monic greatest common divisor; gcd(0, 0) is the zero polynomial."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def rational_roots(p: PolyQ, bound: int = 0) -> list:
    """All rational roots of p, ascending.

    Candidates come from the usual divisor test on the primitive integer
    form.  With ``bound > 0`` only divisors up to that bound are tried,
    which keeps the search cheap for huge coefficients.
    """
    if p.is_zero():
        raise ValueError("every rational is a root of the zero polynomial")
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    roots = set()
    if shift:
        roots.add(Fraction(0))
    if len(coeffs) > 1:
        mult = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * mult) for c in coeffs]
        lead, const = abs(ints[-1]), abs(ints[0])

        def divisors(m):
            out = []
            d = 1
            while d * d <= m:
                if m % d == 0:
                    out.append(d)
                    out.append(m // d)
                d += 1
                if bound and d > bound:
                    break
            return sorted(set(x for x in out if not bound or x <= bound))

        poly = PolyQ(tuple(coeffs))
        for num in divisors(const):
            for den in divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and poly(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _poly_matrix_det(entries: list) -> PolyQ:
    """Determinant of a square matrix of PolyQ entries by fraction-free
    Bareiss elimination (division steps are exact in any integral domain)."""
    n = len(entries)
    if n == 0:
        return PolyQ.constant(1)
    m = [row[:] for row in entries]
    sign = 1
    prev = PolyQ.constant(1)
    for c in range(n - 1):
        pivot = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if pivot is None:
            return PolyQ.zero()
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                m[r][j] = (m[c][c] * m[r][j] - m[r][c] * m[c][j]).exact_div(prev)
            m[r][c] = PolyQ.zero()
        prev = m[c][c]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p_coeffs: Sequence[PolyQ], q_coeffs: Sequence[PolyQ]) -> PolyQ:
    """Resultant with respect to the outer variable.

    Both arguments are polynomials in an outer variable s whose coefficients
    are PolyQ in an inner variable t, given lowest s-degree first.  The
    result is the Sylvester determinant, a PolyQ in t.  It vanishes exactly
    when the two arguments share a root in s (over the algebraic closure),
    which is what the equivalence search uses to eliminate one unknown.
    """
    p = list(p_coeffs)
    q = list(q_coeffs)
    while p and p[-1].is_zero():
        p.pop()
    while q and q[-1].is_zero():
        q.pop()
    if not p or not q:
        return PolyQ.zero()
    dp, dq = len(p) - 1, len(q) - 1
    if dp == 0 and dq == 0:
        return PolyQ.constant(1)
    if dp == 0:
        out = PolyQ.constant(1)
        for _ in range(dq):
            out = out * p[0]
        return out
    if dq == 0:
        out = PolyQ.constant(1)
        for _ in range(dp):
            out = out * q[0]
        return out
    size = dp + dq
    zero = PolyQ.zero()
    rows = []
    rev_p = list(reversed(p))
    rev_q = list(reversed(q))
    for i in range(dq):
        rows.append([zero] * i + rev_p + [zero] * (size - i - len(rev_p)))
    for i in range(dp):
        rows.append([zero] * i + rev_q + [zero] * (size - i - len(rev_q)))
    return _poly_matrix_det(rows)
