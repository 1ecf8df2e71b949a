"""Canonical subspaces of coordinate spaces over Q(i).

A Subspace is held as a reduced row-echelon basis, so equality of subspaces
is plain structural equality of their basis matrices.  The elimination engine
works on scaled Gaussian-integer rows (numerator lists plus one denominator
per row) and skips zero coefficients, which keeps block-structured inputs
cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .matrices import Mat, ShapeError
from .scalars import GaussianRational

__all__ = [
    "Subspace",
    "canonicalize",
    "subspace_sum",
    "subspace_intersect",
    "subspace_contains",
    "mat_span",
    "span_basis_mats",
    "column_kernel",
    "mat_inverse",
    "stack_vertical",
]

# A working row is [re_nums, im_nums, den]; value at j is (re[j] + im[j]*i)/den.
_Row = list


def _row_from_values(values: Sequence) -> _Row:
    den = 1
    pairs = []
    for v in values:
        if isinstance(v, GaussianRational):
            fr, fi = v.re, v.im
        elif isinstance(v, (int, Fraction)):
            fr, fi = Fraction(v), Fraction(0)
        else:
            raise TypeError(f"cannot use {type(v).__name__} as a vector entry")
        pairs.append((fr, fi))
        den = den * fr.denominator // math.gcd(den, fr.denominator)
        den = den * fi.denominator // math.gcd(den, fi.denominator)
    re = [int(fr * den) for fr, _ in pairs]
    im = [int(fi * den) for _, fi in pairs]
    return [re, im, den]


def _row_normalize(row: _Row) -> None:
    re, im, den = row
    g = den
    for v in re:
        if v:
            g = math.gcd(g, abs(v))
            if g == 1:
                return
    for v in im:
        if v:
            g = math.gcd(g, abs(v))
            if g == 1:
                return
    if g > 1:
        row[0] = [v // g for v in re]
        row[1] = [v // g for v in im]
        row[2] = den // g


def _row_first_nonzero(row: _Row, limit: int) -> int:
    re, im, _ = row
    for j in range(limit):
        if re[j] or im[j]:
            return j
    return -1


def _row_make_pivot_one(row: _Row, col: int) -> None:
    re, im, _ = row
    a, b = re[col], im[col]
    if b == 0 and a > 0:
        # real positive pivot: just rescale the denominator
        row[2] = a
        _row_normalize(row)
        return
    norm = a * a + b * b
    row[0] = [x * a + y * b for x, y in zip(re, im)]
    row[1] = [y * a - x * b for x, y in zip(re, im)]
    row[2] = norm
    _row_normalize(row)


def _row_eliminate(row: _Row, pivot_row: _Row, col: int) -> None:
    """row -= row[col] * pivot_row, assuming pivot_row[col] == 1."""
    r_re, r_im, r_den = row
    a, b = r_re[col], r_im[col]
    if not a and not b:
        return
    p_re, p_im, p_den = pivot_row
    new_re = [
        x * p_den - (a * pr - b * pi)
        for x, pr, pi in zip(r_re, p_re, p_im)
    ]
    new_im = [
        y * p_den - (a * pi + b * pr)
        for y, pr, pi in zip(r_im, p_re, p_im)
    ]
    row[0] = new_re
    row[1] = new_im
    row[2] = r_den * p_den
    _row_normalize(row)


class _Echelon:
    """Fully reduced row-echelon accumulator with optional pivot-column limit."""

    def __init__(self, n_cols: int, pivot_limit: int | None = None):
        self.n_cols = n_cols
        self.pivot_limit = n_cols if pivot_limit is None else pivot_limit
        self.rows: list[_Row] = []
        self.pivots: list[int] = []

    def reduce(self, row: _Row) -> _Row:
        for prow, col in zip(self.rows, self.pivots):
            _row_eliminate(row, prow, col)
        return row

    def reduce_with_coords(self, row: _Row):
        coords = []
        for prow, col in zip(self.rows, self.pivots):
            a, b = row[0][col], row[1][col]
            coords.append(GaussianRational(Fraction(a, row[2]), Fraction(b, row[2])))
            _row_eliminate(row, prow, col)
        return row, coords

    def insert(self, row: _Row) -> bool:
        """Insert a (copy-safe) row; True when the rank grew."""
        self.reduce(row)
        col = _row_first_nonzero(row, self.pivot_limit)
        if col < 0:
            return False
        _row_make_pivot_one(row, col)
        for other in self.rows:
            _row_eliminate(other, row, col)
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < col:
            pos += 1
        self.rows.insert(pos, row)
        self.pivots.insert(pos, col)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def value_rows(self) -> list[tuple[GaussianRational, ...]]:
        """The stored rows as exact value vectors, in pivot order."""
        out = []
        for re, im, den in self.rows:
            out.append(
                tuple(
                    GaussianRational(Fraction(r, den), Fraction(i, den))
                    for r, i in zip(re, im)
                )
            )
        return out

    def basis_mat(self) -> Mat:
        den = 1
        for row in self.rows:
            den = den * row[2] // math.gcd(den, row[2])
        re = []
        im = []
        for row in self.rows:
            f = den // row[2]
            re.extend(v * f for v in row[0])
            im.extend(v * f for v in row[1])
        return Mat._normalized(len(self.rows), self.n_cols, re, im, den)


class Subspace:
    """A linear subspace of Q(i)^ambient_dim in canonical RREF form."""

    __slots__ = ("ambient_dim", "basis_rows")

    def __init__(self, ambient_dim: int, basis_rows: Mat):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis_rows", basis_rows)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis_rows.n_rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def basis_vectors(self) -> list[tuple[GaussianRational, ...]]:
        m = self.basis_rows
        return [tuple(m.entry(i, j) for j in range(m.n_cols)) for i in range(m.n_rows)]

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.ambient_dim)
        for row in _rows_of(self.basis_rows):
            ech.insert(row)
        return ech

    def contains(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise ShapeError(
                f"vector of length {len(vector)} against ambient {self.ambient_dim}"
            )
        row = _row_from_values(vector)
        residue = self._echelon().reduce(row)
        return _row_first_nonzero(residue, self.ambient_dim) < 0

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        ech = self._echelon()
        for row in _rows_of(other.basis_rows):
            ech.reduce(row)
            if _row_first_nonzero(row, self.ambient_dim) >= 0:
                return False
        return True

    def coordinates(self, vector: Sequence):
        """Coefficients of vector against the RREF basis, or None if outside."""
        if len(vector) != self.ambient_dim:
            raise ShapeError(
                f"vector of length {len(vector)} against ambient {self.ambient_dim}"
            )
        row = _row_from_values(vector)
        residue, coords = self._echelon().reduce_with_coords(row)
        if _row_first_nonzero(residue, self.ambient_dim) >= 0:
            return None
        return coords

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis_rows == other.basis_rows

    def __hash__(self):
        return hash((self.ambient_dim, self.basis_rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of C^{self.ambient_dim})"


def canonicalize(vectors: Sequence[Sequence], ambient_dim: int | None = None) -> Subspace:
    """RREF span of the given vectors; idempotent and order-independent."""
    vectors = list(vectors)
    if ambient_dim is None:
        ambient_dim = len(vectors[0]) if vectors else 0
    ech = _Echelon(ambient_dim)
    for v in vectors:
        if len(v) != ambient_dim:
            raise ShapeError("vectors of mismatched ambient dimension")
        ech.insert(_row_from_values(v))
    return Subspace(ambient_dim, ech.basis_mat())


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    ech = a._echelon()
    for row in _rows_of(b.basis_rows):
        ech.insert(row)
    return Subspace(a.ambient_dim, ech.basis_mat())


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked-basis relation."""
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    k = a.ambient_dim
    a_rows = _rows_of(a.basis_rows)
    combos = _left_kernel(a_rows + _rows_of(b.basis_rows), k)
    ech = _Echelon(k)
    for combo in combos:
        acc = [[0] * k, [0] * k, 1]
        for coeff, row in zip(combo[: a.dim], a_rows):
            _row_add_scaled(acc, row, coeff)
        ech.insert(acc)
    return Subspace(k, ech.basis_mat())


def subspace_contains(a: Subspace, vector: Sequence) -> bool:
    return a.contains(vector)


def _rows_of(m: Mat) -> list[_Row]:
    out = []
    for i in range(m.n_rows):
        row = [
            list(m.re[i * m.n_cols : (i + 1) * m.n_cols]),
            list(m.im[i * m.n_cols : (i + 1) * m.n_cols]),
            m.den,
        ]
        _row_normalize(row)
        out.append(row)
    return out


def _row_add_scaled(acc: _Row, row: _Row, coeff: GaussianRational) -> None:
    """acc += coeff * row, in place."""
    if coeff.is_zero():
        return
    p = coeff.re.numerator * coeff.im.denominator
    q = coeff.im.numerator * coeff.re.denominator
    d = coeff.re.denominator * coeff.im.denominator
    a_re, a_im, a_den = acc
    r_re, r_im, r_den = row
    new_den = a_den * r_den * d
    f_acc = r_den * d
    acc[0] = [
        x * f_acc + (p * rr - q * ri) * a_den
        for x, rr, ri in zip(a_re, r_re, r_im)
    ]
    acc[1] = [
        y * f_acc + (p * ri + q * rr) * a_den
        for y, rr, ri in zip(a_im, r_re, r_im)
    ]
    acc[2] = new_den
    _row_normalize(acc)


def _left_kernel(rows: list[_Row], n_cols: int) -> list[list[GaussianRational]]:
    """All coefficient vectors x with sum_i x_i * rows_i = 0, as a basis."""
    m = len(rows)
    ech = _Echelon(n_cols + m, pivot_limit=n_cols)
    kernel = []
    for i, row in enumerate(rows):
        # the tail entry must equal 1, i.e. den/den, under the row's denominator
        tail_re = [0] * m
        tail_re[i] = row[2]
        work = [row[0] + tail_re, row[1] + [0] * m, row[2]]
        if not ech.insert(work):
            den = work[2]
            kernel.append(
                [
                    GaussianRational(
                        Fraction(work[0][n_cols + j], den),
                        Fraction(work[1][n_cols + j], den),
                    )
                    for j in range(m)
                ]
            )
    return kernel


def mat_span(mats: Sequence[Mat], n: int | None = None) -> Subspace:
    """Span of square matrices inside flattened gl(n)."""
    mats = list(mats)
    if n is None:
        if not mats:
            raise ValueError("mat_span needs a matrix or an explicit size")
        n = mats[0].n_rows
    ech = _Echelon(n * n)
    for m in mats:
        if m.shape != (n, n):
            raise ShapeError("matrices of mixed shapes in span")
        row = [list(m.re), list(m.im), m.den]
        _row_normalize(row)
        ech.insert(row)
    return Subspace(n * n, ech.basis_mat())


def column_kernel(m: Mat) -> list[tuple[GaussianRational, ...]]:
    """Basis of {x : m @ x = 0}, exact."""
    t = m.transpose()
    combos = _left_kernel(_rows_of(t), t.n_cols)
    return [tuple(c) for c in combos]


def mat_inverse(m: Mat) -> Mat:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.n_rows
    ech = _Echelon(2 * n, pivot_limit=n)
    for i, row in enumerate(_rows_of(m)):
        tail = [0] * n
        tail[i] = row[2]
        work = [row[0] + tail, row[1] + [0] * n, row[2]]
        if not ech.insert(work):
            raise ValueError("matrix is singular")
    if ech.pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv_rows = []
    for row in ech.rows:
        re, im, den = row
        inv_rows.append(
            [
                GaussianRational(Fraction(re[n + j], den), Fraction(im[n + j], den))
                for j in range(n)
            ]
        )
    return Mat.from_rows(inv_rows)


def stack_vertical(mats: Sequence[Mat]) -> Mat:
    """Stack equal-width matrices on top of each other."""
    if not mats:
        raise ValueError("nothing to stack")
    width = mats[0].n_cols
    rows = []
    for m in mats:
        if m.n_cols != width:
            raise ShapeError("mixed widths in stack")
        rows.extend(m.rows())
    return Mat.from_rows(rows)


def span_basis_mats(s: Subspace, n: int) -> list[Mat]:
    """The RREF basis of a flattened-gl(n) subspace, as n x n matrices."""
    if s.ambient_dim != n * n:
        raise ShapeError(f"subspace ambient {s.ambient_dim} is not {n}*{n}")
    m = s.basis_rows
    out = []
    for i in range(m.n_rows):
        re = list(m.re[i * m.n_cols : (i + 1) * m.n_cols])
        im = list(m.im[i * m.n_cols : (i + 1) * m.n_cols])
        row = Mat._normalized(n, n, re, im, m.den)
        out.append(row)
    return out
