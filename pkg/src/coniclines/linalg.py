"""Exact linear algebra over the rationals.

Everything downstream (evaluation matrices, linear systems of curves,
divisibility subspaces) reduces to rank / kernel / subspace computations
here.  Elimination is fraction-free (Bareiss) on integer-scaled rows, so
intermediate entries stay bounded minors and no rounding ever happens.
Pivoting is first-nonzero-in-column-order: determinism matters, numerical
stability does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

QVector = tuple[Fraction, ...]


def as_fractions(row: Iterable) -> QVector:
    return tuple(Fraction(e) for e in row)


def primitive(vec: Iterable) -> QVector:
    """Scale a rational vector to coprime integers with first nonzero entry positive.

    The zero vector is returned unchanged.  Used to canonicalize kernel
    vectors and coefficient vectors for reproducible output.
    """
    fr = as_fractions(vec)
    if not any(fr):
        return fr
    den = math.lcm(*(e.denominator for e in fr))
    ints = [int(e * den) for e in fr]
    g = math.gcd(*ints)
    sign = next(1 if v > 0 else -1 for v in ints if v != 0)
    return tuple(Fraction(v * sign, g) for v in ints)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[QVector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "QMatrix":
        ent = tuple(as_fractions(r) for r in rows)
        if cols is None:
            if not ent:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(ent[0])
        return cls(len(ent), cols, ent)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    def row(self, i: int) -> QVector:
        return self.entries[i]

    def column(self, j: int) -> QVector:
        return tuple(r[j] for r in self.entries)

    def mul_vector(self, v: Sequence[Fraction]) -> QVector:
        if len(v) != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} vs {len(v)}")
        return tuple(dot(r, v) for r in self.entries)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))


@dataclass(frozen=True)
class QVectorBasis:
    """A list of linearly independent rational vectors spanning a subspace."""

    ambient_dim: int
    vectors: tuple[QVector, ...]

    def __post_init__(self):
        if any(len(v) != self.ambient_dim for v in self.vectors):
            raise ValueError("vector length differs from ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def is_independent(self) -> bool:
        if not self.vectors:
            return True
        return rank(QMatrix.from_rows(self.vectors, cols=self.ambient_dim)) == self.dim


def _integer_rows(m: QMatrix) -> list[list[int]]:
    # Row scaling does not change rank or kernel; clear denominators per row.
    out = []
    for row in m.entries:
        den = math.lcm(*(e.denominator for e in row)) if row else 1
        out.append([int(e * den) for e in row])
    return out


def _ff_echelon(rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free (Bareiss) row echelon.

    Returns the nonzero echelon rows and the pivot column indices.  The
    two-step update keeps every intermediate entry a minor of the input,
    so the integer division is exact.
    """
    pivots: list[int] = []
    nrows = len(rows)
    r = 0
    prev = 1
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            fac = rows[i][c]
            for j in range(c + 1, cols):
                rows[i][j] = (piv * rows[i][j] - fac * rows[r][j]) // prev
            rows[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rank(m: QMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    _, pivots = _ff_echelon(_integer_rows(m), m.cols)
    return len(pivots)


def kernel_basis(m: QMatrix) -> QVectorBasis:
    """Basis of the right null space {v : m v = 0}.

    One basis vector per free column, obtained by setting that free
    variable to 1 and back-substituting; each vector is normalized to
    primitive integer form with first nonzero entry positive.
    """
    ech, pivots = _ff_echelon(_integer_rows(m), m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r in reversed(range(len(pivots))):
            pc = pivots[r]
            s = sum((Fraction(ech[r][j]) * v[j] for j in range(pc + 1, m.cols)), Fraction(0))
            v[pc] = -s / ech[r][pc]
        vectors.append(primitive(v))
    return QVectorBasis(m.cols, tuple(vectors))


def intersect_subspaces(a: QVectorBasis, b: QVectorBasis) -> QVectorBasis:
    """Basis of span(a) ∩ span(b)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.dim == 0 or b.dim == 0:
        return QVectorBasis(a.ambient_dim, ())
    # Columns: the a-vectors then the b-vectors.  A kernel vector w of this
    # matrix encodes sum w_i a_i = -sum w_{ka+j} b_j, i.e. an intersection
    # element; the map w -> sum w_i a_i is injective on the kernel, so the
    # images form a basis (Grassmann: dim ker = dim a + dim b - dim(a+b)).
    stacked = QMatrix.from_rows(
        [
            tuple(v[i] for v in a.vectors) + tuple(v[i] for v in b.vectors)
            for i in range(a.ambient_dim)
        ],
        cols=a.dim + b.dim,
    )
    vectors = []
    for w in kernel_basis(stacked).vectors:
        combo = [
            sum((w[k] * a.vectors[k][i] for k in range(a.dim)), Fraction(0))
            for i in range(a.ambient_dim)
        ]
        vectors.append(primitive(combo))
    return QVectorBasis(a.ambient_dim, tuple(vectors))


def in_span(v: Sequence[Fraction], b: QVectorBasis) -> bool:
    """True iff v is a rational linear combination of b's vectors."""
    v = as_fractions(v)
    if len(v) != b.ambient_dim:
        raise ValueError(f"dimension mismatch: {len(v)} vs ambient {b.ambient_dim}")
    if not any(v):
        return True
    if b.dim == 0:
        return False
    base = QMatrix.from_rows(b.vectors, cols=b.ambient_dim)
    extended = QMatrix.from_rows(b.vectors + (v,), cols=b.ambient_dim)
    return rank(base) == rank(extended)
