import random
from fractions import Fraction

import pytest

from gradelie.scalars import Q
from gradelie.matrices import Mat, ShapeError, flatten
from gradelie.subspaces import (
    Subspace,
    canonicalize,
    column_kernel,
    mat_inverse,
    mat_span,
    span_basis_mats,
    stack_vertical,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)


def test_canonicalize_examples():
    assert canonicalize([]).dim == 0
    full = canonicalize([[0, 1], [1, 0]])
    assert full == Subspace.full(2)
    s = canonicalize([[1, 1, 0], [2, 2, 0], [0, 0, 3]])
    assert s.dim == 2
    assert s.basis_rows == Mat.from_rows([[1, 1, 0], [0, 0, 1]])


def test_canonicalize_idempotent_and_order_independent():
    rng = random.Random(1)
    for _ in range(50):
        k = rng.randint(1, 5)
        vecs = [
            [rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(0, 4))
        ]
        s = canonicalize(vecs, ambient_dim=k)
        assert canonicalize(s.basis_vectors(), ambient_dim=k) == s
        rng.shuffle(vecs)
        assert canonicalize(vecs, ambient_dim=k) == s


def test_sum_examples():
    a = canonicalize([[1, 1]])
    zero = Subspace.zero(2)
    assert subspace_sum(a, zero) == a
    assert subspace_sum(canonicalize([[1, 0]]), canonicalize([[0, 1]])) == Subspace.full(2)
    assert subspace_sum(canonicalize([[1, 1]]), canonicalize([[1, -1]])) == Subspace.full(2)


def test_intersect_examples():
    a = canonicalize([[1, 2, 3], [0, 1, 1]])
    assert subspace_intersect(a, a) == a
    assert subspace_intersect(canonicalize([[1, 0]]), canonicalize([[0, 1]])).dim == 0
    got = subspace_intersect(Subspace.full(2), canonicalize([[1, 1]]))
    assert got == canonicalize([[1, 1]])


def test_dimension_identity():
    rng = random.Random(4)
    for _ in range(80):
        k = rng.randint(1, 6)
        va = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(rng.randint(0, 3))]
        vb = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(rng.randint(0, 3))]
        a = canonicalize(va, ambient_dim=k)
        b = canonicalize(vb, ambient_dim=k)
        s = subspace_sum(a, b)
        i = subspace_intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim
        for v in i.basis_vectors():
            assert a.contains(v) and b.contains(v)


def test_contains():
    assert subspace_contains(canonicalize([[1, 1, 1]]), [3, 3, 3])
    assert not subspace_contains(canonicalize([[1, 0]]), [1, 1])
    assert subspace_contains(Subspace.zero(3), [0, 0, 0])
    with pytest.raises(ShapeError):
        canonicalize([[1, 0]]).contains([1, 0, 0])


def test_coordinates():
    s = canonicalize([[1, 0, 1], [0, 1, 1]])
    coords = s.coordinates([2, 3, 5])
    assert coords == [Q(2), Q(3)]
    assert s.coordinates([1, 0, 0]) is None


def test_rational_kernel_regression():
    # regression: kernels of matrices with non-unit denominators
    a = Mat.from_rows(
        [
            [Fraction(1), Fraction(40, 21), Fraction(10, 7), Fraction(20, 21)],
            [Fraction(-3, 14), Fraction(-20, 21), Fraction(-1, 7), Fraction(-10, 21)],
            [Fraction(19, 14), Fraction(4, 3), Fraction(1, 7), Fraction(26, 21)],
            [Fraction(-9, 7), Fraction(-44, 21), Fraction(-10, 7), Fraction(-40, 21)],
        ]
    )
    lam = Q(Fraction(8, 7))
    ker = column_kernel(a - Mat.identity(4).scale(lam))
    assert len(ker) == 1
    v = ker[0]
    image = [sum((a.entry(i, j) * v[j] for j in range(4)), Q(0)) for i in range(4)]
    assert image == [lam * x for x in v]


def test_column_kernel_random():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = Mat.from_int_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        for v in column_kernel(m):
            image = [sum((m.entry(i, j) * v[j] for j in range(n)), Q(0)) for i in range(n)]
            assert all(x.is_zero() for x in image)


def test_mat_inverse():
    m = Mat.from_rows([[Fraction(1, 2), Fraction(1, 3)], [0, Fraction(2, 5)]])
    inv = mat_inverse(m)
    assert m @ inv == Mat.identity(2)
    assert inv @ m == Mat.identity(2)
    with pytest.raises(ValueError):
        mat_inverse(Mat.from_int_rows([[1, 2], [2, 4]]))


def test_mat_span_round_trip():
    mats = [Mat.unit(2, 0, 1), Mat.unit(2, 1, 0), Mat.identity(2)]
    s = mat_span(mats)
    assert s.dim == 3
    back = span_basis_mats(s, 2)
    assert mat_span(back) == s
    for m in back:
        assert s.contains(flatten(m))


def test_stack_vertical():
    a = Mat.from_int_rows([[1, 2]])
    b = Mat.from_int_rows([[3, 4], [5, 6]])
    assert stack_vertical([a, b]) == Mat.from_int_rows([[1, 2], [3, 4], [5, 6]])
