"""Structural computations for matrix Lie algebras over Q(i).

Everything here is exact: closures and series are fixpoints of bracketing
plus re-canonicalization, solvability runs through the derived series, and
quantified hypotheses ("every element of this subspace is nilpotent") are
decided by polynomial identities rather than sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .matrices import (
    Mat,
    ShapeError,
    bracket,
    flatten,
    is_nilpotent_exact,
    jordan_product,
    trace_product,
    triple_product,
)
from .scalars import GaussianRational
from .subspaces import Subspace, _Echelon, _left_kernel, mat_span, span_basis_mats

__all__ = [
    "LieAlgebra",
    "SeriesReport",
    "KillingGram",
    "lie_closure",
    "ad_matrix",
    "derived_series",
    "lower_central_series",
    "is_solvable",
    "is_nilpotent_lie",
    "killing_form",
    "cartan_test",
    "is_engel_element",
    "is_nil_subspace",
    "trace_orthogonal_ideal",
    "is_ideal",
    "center",
    "is_scalar_set",
    "engel_sum_check",
    "jordan_product",
    "triple_product",
    "NotClosedError",
    "NormalizerError",
    "ClosureCapError",
    "PreconditionError",
]


class NotClosedError(ValueError):
    """A set of matrices expected to be bracket-closed is not."""


class NormalizerError(ValueError):
    """An element does not normalize the algebra it is applied to."""


class ClosureCapError(RuntimeError):
    """Defensive guard: closure iteration exceeded its dimension cap."""


class PreconditionError(ValueError):
    """A stated operation precondition was violated by the inputs."""


class LieAlgebra:
    """A bracket-closed subspace of gl(n) with a canonical matrix basis."""

    __slots__ = ("ambient_dim", "basis_mats", "span")

    def __init__(self, ambient_dim: int, basis_mats: tuple[Mat, ...], span: Subspace):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis_mats", basis_mats)
        object.__setattr__(self, "span", span)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @classmethod
    def from_matrices(
        cls, mats: Sequence[Mat], ambient_dim: int | None = None, verify: bool = True
    ) -> "LieAlgebra":
        mats = [m for m in mats if not m.is_zero()]
        if ambient_dim is None:
            if not mats:
                raise ValueError("ambient_dim required for the zero algebra")
            ambient_dim = mats[0].n_rows
        span = mat_span(mats, ambient_dim)
        basis = tuple(span_basis_mats(span, ambient_dim))
        alg = cls(ambient_dim, basis, span)
        if verify:
            ech = span._echelon()
            for i, a in enumerate(basis):
                for b in basis[i + 1 :]:
                    row = _mat_row(bracket(a, b))
                    ech.reduce(row)
                    if any(row[0]) or any(row[1]):
                        raise NotClosedError(
                            "matrix set is not closed under the commutator"
                        )
        return alg

    @classmethod
    def from_span(cls, span: Subspace, ambient_dim: int) -> "LieAlgebra":
        """Trusted constructor for spans already known to be bracket-closed."""
        return cls(ambient_dim, tuple(span_basis_mats(span, ambient_dim)), span)

    @property
    def dim(self) -> int:
        return self.span.dim

    def contains_mat(self, m: Mat) -> bool:
        if m.shape != (self.ambient_dim, self.ambient_dim):
            return False
        row = _mat_row(m)
        self.span._echelon().reduce(row)
        return not any(row[0]) and not any(row[1])

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.span == other.span

    def __hash__(self):
        return hash((self.ambient_dim, self.span))

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim} in gl({self.ambient_dim}))"


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "lower-central" | "derived"
    terms: tuple[Subspace, ...]
    stabilized: bool
    terminal_dim: int


@dataclass(frozen=True)
class KillingGram:
    gram: Mat


def _mat_row(m: Mat):
    return [list(m.re), list(m.im), m.den]


def lie_closure(
    generators: Sequence[Mat], cap: int | None = None, ambient_dim: int | None = None
) -> LieAlgebra:
    """Smallest bracket-closed subspace containing the generators."""
    gens = list(generators)
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim required for an empty generating set")
        ambient_dim = gens[0].n_rows
    n = ambient_dim
    for g in gens:
        if g.shape != (n, n):
            raise ShapeError("generators must be square and of equal size")
    if cap is None:
        cap = n * n
    elif cap < n * n:
        raise ValueError(f"cap {cap} below the ambient bound {n * n}")
    ech = _Echelon(n * n)
    basis: list[Mat] = []
    work = list(gens)
    while work:
        m = work.pop()
        if m.is_zero():
            continue
        if not ech.insert(_mat_row(m)):
            continue
        for b in basis:
            work.append(bracket(m, b))
        basis.append(m)
        if len(basis) > cap:
            raise ClosureCapError(f"closure exceeded cap {cap}")
    span = Subspace(n * n, ech.basis_mat())
    return LieAlgebra(n, tuple(span_basis_mats(span, n)), span)


def ad_matrix(algebra: LieAlgebra, a: Mat) -> Mat:
    """The adjoint action x -> [a, x] in the algebra's canonical basis."""
    n = algebra.ambient_dim
    if a.shape != (n, n):
        raise ShapeError(f"expected a {n}x{n} matrix")
    d = algebra.dim
    ech = algebra.span._echelon()
    cols: list[list[GaussianRational]] = []
    for b in algebra.basis_mats:
        row = _mat_row(bracket(a, b))
        residue, coords = ech.reduce_with_coords(row)
        if any(residue[0]) or any(residue[1]):
            raise NormalizerError("element does not normalize the algebra")
        cols.append(coords)
    return Mat.from_rows([[cols[j][i] for j in range(d)] for i in range(d)])


def _bracket_span(left: Sequence[Mat], right: Sequence[Mat], n: int, same: bool) -> Subspace:
    ech = _Echelon(n * n)
    if same:
        for i, a in enumerate(left):
            for b in left[i + 1 :]:
                ech.insert(_mat_row(bracket(a, b)))
    else:
        for a in left:
            for b in right:
                ech.insert(_mat_row(bracket(a, b)))
    return Subspace(n * n, ech.basis_mat())


def _series(algebra: LieAlgebra, kind: str) -> SeriesReport:
    n = algebra.ambient_dim
    terms = [algebra.span]
    term_mats = list(algebra.basis_mats)
    while True:
        if kind == "derived":
            nxt = _bracket_span(term_mats, term_mats, n, same=True)
        else:
            nxt = _bracket_span(list(algebra.basis_mats), term_mats, n, same=False)
        terms.append(nxt)
        if nxt == terms[-2]:
            return SeriesReport(kind, tuple(terms), True, nxt.dim)
        term_mats = span_basis_mats(nxt, n)
        if nxt.is_zero():
            terms.append(nxt)
            return SeriesReport(kind, tuple(terms), True, 0)


def derived_series(algebra: LieAlgebra) -> SeriesReport:
    return _series(algebra, "derived")


def lower_central_series(algebra: LieAlgebra) -> SeriesReport:
    return _series(algebra, "lower-central")


def is_solvable(algebra: LieAlgebra) -> bool:
    return derived_series(algebra).terminal_dim == 0


def is_nilpotent_lie(algebra: LieAlgebra) -> bool:
    return lower_central_series(algebra).terminal_dim == 0


def derived_subalgebra_mats(algebra: LieAlgebra) -> list[Mat]:
    """A canonical basis of [L, L]."""
    span = _bracket_span(list(algebra.basis_mats), [], algebra.ambient_dim, same=True)
    return span_basis_mats(span, algebra.ambient_dim)


def killing_form(algebra: LieAlgebra) -> KillingGram:
    """Gram matrix tr(ad b_i * ad b_j) over the canonical basis."""
    d = algebra.dim
    ads = [ad_matrix(algebra, b) for b in algebra.basis_mats]
    grid = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            v = trace_product(ads[i], ads[j])
            grid[i][j] = v
            grid[j][i] = v
    if d == 0:
        return KillingGram(Mat.zeros(0, 0))
    return KillingGram(Mat.from_rows(grid))


def cartan_test(algebra: LieAlgebra) -> bool:
    """True iff tr(a b) = 0 for all a in [L, L] and b in L (checked on bases)."""
    for a in derived_subalgebra_mats(algebra):
        for b in algebra.basis_mats:
            if not trace_product(a, b).is_zero():
                return False
    return True


def is_engel_element(algebra: LieAlgebra, a: Mat) -> bool:
    """True iff ad a is nilpotent on the algebra, exactly."""
    if algebra.dim == 0:
        return True
    return is_nilpotent_exact(ad_matrix(algebra, a))


# -- nil-subspace decision --------------------------------------------------
#
# A subspace V = span{A_1..A_d} of m x m matrices consists of nilpotents iff
# tr((l_1 A_1 + ... + l_d A_d)^k) vanishes identically for k = 1..m.  The
# monomial coefficients of these traces are the symmetrized sums of traces of
# products over all orderings of each multiset of basis elements; they are
# extracted here by exact homogeneous polynomial arithmetic.

_Poly = dict  # exponent tuple -> (re, im) Gaussian integer pair


def _poly_mul_linear(p: _Poly, var: int, coeff: tuple[int, int]) -> _Poly:
    cr, ci = coeff
    out: _Poly = {}
    for mono, (ar, ai) in p.items():
        key = mono[:var] + (mono[var] + 1,) + mono[var + 1 :]
        out[key] = (ar * cr - ai * ci, ar * ci + ai * cr)
    return out


def _poly_add_into(acc: _Poly, p: _Poly) -> None:
    for mono, (ar, ai) in p.items():
        br, bi = acc.get(mono, (0, 0))
        s = (ar + br, ai + bi)
        if s == (0, 0):
            acc.pop(mono, None)
        else:
            acc[mono] = s


def _integer_grids(mats: Sequence[Mat]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    # nilpotency of combinations is invariant under scaling each generator
    return [(m.re, m.im) for m in mats]


def is_nil_subspace(v, ambient_side: int | None = None) -> bool:
    """True iff every element of the subspace is nilpotent, decided exactly.

    Accepts a Subspace of flattened gl(m) or a sequence of m x m matrices
    (used as a spanning set).
    """
    if isinstance(v, Subspace):
        if v.is_zero():
            return True
        m_side = ambient_side
        if m_side is None:
            m_side = int(round(v.ambient_dim ** 0.5))
            if m_side * m_side != v.ambient_dim:
                raise ShapeError("subspace ambient is not a flattened square")
        mats = span_basis_mats(v, m_side)
    else:
        mats = [m for m in v if not m.is_zero()]
        if not mats:
            return True
        mats = span_basis_mats(mat_span(mats), mats[0].n_rows)
    if not mats:
        return True
    m_side = mats[0].n_rows
    for m in mats:
        if not is_nilpotent_exact(m):
            return False
    d = len(mats)
    if d == 1:
        return True
    grids = _integer_grids(mats)
    # X[i][j] is a linear form in the coefficients
    x: list[list[_Poly]] = [[{} for _ in range(m_side)] for _ in range(m_side)]
    zero_mono = (0,) * d
    for var, (gre, gim) in enumerate(grids):
        for i in range(m_side):
            for j in range(m_side):
                c = (gre[i * m_side + j], gim[i * m_side + j])
                if c != (0, 0):
                    mono = zero_mono[:var] + (1,) + zero_mono[var + 1 :]
                    cell = x[i][j]
                    prev = cell.get(mono, (0, 0))
                    cell[mono] = (prev[0] + c[0], prev[1] + c[1])
    power = x
    for k in range(1, m_side + 1):
        if k > 1:
            nxt: list[list[_Poly]] = [[{} for _ in range(m_side)] for _ in range(m_side)]
            for i in range(m_side):
                rowp = power[i]
                for l in range(m_side):
                    p = rowp[l]
                    if not p:
                        continue
                    for j in range(m_side):
                        c = x[l][j]
                        for mono, coeff in c.items():
                            var = mono.index(1)
                            _poly_add_into(nxt[i][j], _poly_mul_linear(p, var, coeff))
            power = nxt
        trace_poly: _Poly = {}
        for i in range(m_side):
            _poly_add_into(trace_poly, power[i][i])
        if trace_poly:
            return False
    return True


def trace_orthogonal_ideal(algebra: LieAlgebra) -> Subspace:
    """The ideal {x in L : tr(x b) = 0 for every b in L}."""
    n = algebra.ambient_dim
    basis = algebra.basis_mats
    d = len(basis)
    if d == 0:
        return Subspace.zero(n * n)
    gram_rows = []
    for a in basis:
        row = [trace_product(a, b) for b in basis]
        gram_rows.append(_values_row(row))
    combos = _left_kernel(gram_rows, d)
    mats = []
    for combo in combos:
        acc = Mat.zeros(n)
        for coeff, b in zip(combo, basis):
            acc = acc + b.scale(coeff)
        mats.append(acc)
    ideal = mat_span(mats, n)
    if not is_ideal(algebra, ideal):
        raise AssertionError("trace-orthogonal subspace failed the ideal check")
    return ideal


def _values_row(values: Sequence[GaussianRational]):
    den = 1
    for v in values:
        den = den * v.re.denominator // math.gcd(den, v.re.denominator)
        den = den * v.im.denominator // math.gcd(den, v.im.denominator)
    re = [int(v.re * den) for v in values]
    im = [int(v.im * den) for v in values]
    return [re, im, den]


def is_ideal(algebra: LieAlgebra, candidate: Subspace) -> bool:
    """True iff [L, candidate] is contained in candidate; candidate must lie in L."""
    n = algebra.ambient_dim
    if not algebra.span.contains_subspace(candidate):
        raise PreconditionError("candidate subspace is not inside the algebra")
    cand_mats = span_basis_mats(candidate, n)
    ech = candidate._echelon()
    for b in algebra.basis_mats:
        for x in cand_mats:
            row = _mat_row(bracket(b, x))
            ech.reduce(row)
            if any(row[0]) or any(row[1]):
                return False
    return True


def center(algebra: LieAlgebra) -> Subspace:
    """Kernel of all adjoint maps, as a subspace of flattened gl(n)."""
    n = algebra.ambient_dim
    basis = algebra.basis_mats
    d = len(basis)
    if d == 0:
        return Subspace.zero(n * n)
    rows = []
    for a in basis:
        re_cat: list[int] = []
        im_cat: list[int] = []
        den = 1
        parts = [bracket(a, b) for b in basis]
        for p in parts:
            den = den * p.den // math.gcd(den, p.den)
        for p in parts:
            f = den // p.den
            re_cat.extend(v * f for v in p.re)
            im_cat.extend(v * f for v in p.im)
        rows.append([re_cat, im_cat, den])
    combos = _left_kernel(rows, d * n * n)
    mats = []
    for combo in combos:
        acc = Mat.zeros(n)
        for coeff, b in zip(combo, basis):
            acc = acc + b.scale(coeff)
        mats.append(acc)
    return mat_span(mats, n)


def is_scalar_set(v: Subspace, side: int | None = None) -> bool:
    """True iff the subspace consists of scalar multiples of the identity."""
    if v.is_zero():
        return True
    if side is None:
        side = int(round(v.ambient_dim ** 0.5))
        if side * side != v.ambient_dim:
            raise ShapeError("subspace ambient is not a flattened square")
    return all(m.is_scalar() for m in span_basis_mats(v, side))


def engel_sum_check(algebra: LieAlgebra, a: Mat, b: Mat) -> bool:
    """In a solvable algebra, the sum of two ad-nilpotent members stays ad-nilpotent."""
    if not is_solvable(algebra):
        raise PreconditionError("algebra is not solvable")
    for name, m in (("a", a), ("b", b)):
        if not algebra.contains_mat(m):
            raise PreconditionError(f"{name} is not in the algebra")
        if not is_engel_element(algebra, m):
            raise PreconditionError(f"{name} is not an Engel element")
    return is_engel_element(algebra, a + b)


def ad_image_mats(algebra: LieAlgebra, mats: Sequence[Mat]) -> list[Mat]:
    """Adjoint matrices of the given members, for nil-subspace decisions."""
    return [ad_matrix(algebra, m) for m in mats]


def jacobi_defect(a: Mat, b: Mat, c: Mat) -> Mat:
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]]; identically zero, kept for tests."""
    return (
        bracket(a, bracket(b, c))
        + bracket(b, bracket(c, a))
        + bracket(c, bracket(a, b))
    )
