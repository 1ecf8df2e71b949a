import random
from fractions import Fraction

import pytest

from gradelie.scalars import GaussianRational, Q
from gradelie.matrices import (
    Mat,
    NumMat,
    ShapeError,
    bracket,
    flatten,
    is_nilpotent_exact,
    jordan_product,
    to_numeric,
    trace_product,
    triple_product,
    unflatten,
)


def pauli():
    a = Mat.from_rows([[0, 1], [-1, 0]])
    b = Mat.from_rows([[Q(0), Q(0, -1)], [Q(0, -1), Q(0)]])
    c = Mat.from_rows([[Q(0, -1), Q(0)], [Q(0), Q(0, 1)]])
    return a, b, c


def test_pauli_bracket_relations():
    a, b, c = pauli()
    assert bracket(a, b) == c.scale(2)
    assert bracket(b, c) == a.scale(2)
    assert bracket(c, a) == b.scale(2)
    assert bracket(a, a).is_zero()


def test_weight_basis_relations():
    e = Mat.unit(2, 0, 1)
    f = Mat.unit(2, 1, 0).scale(Fraction(1, 2))
    g = Mat.from_rows([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]])
    assert bracket(e, f) == g
    assert bracket(g, e) == e
    assert bracket(g, f) == -f


def test_bracket_trace_zero():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = Mat.from_int_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        b = Mat.from_int_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        assert bracket(a, b).trace().is_zero()


def test_addition_mixed_denominators():
    # regression: the sum denominator must be the lcm, not den^2 / gcd
    a = Mat.from_rows([[Fraction(1, 2), 0], [0, 0]])
    b = Mat.from_rows([[Fraction(1, 3), 0], [0, 0]])
    s = a + b
    assert s.entry(0, 0) == Q(Fraction(5, 6))
    assert s.den == 6
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 3)
        x = Mat.from_rows(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(n)] for _ in range(n)]
        )
        y = Mat.from_rows(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(n)] for _ in range(n)]
        )
        z = Mat.from_rows(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(n)] for _ in range(n)]
        )
        assert (x + y) @ z == x @ z + y @ z
        assert bracket(x + y, z) == bracket(x, z) + bracket(y, z)


def test_matmul_big_entries_fallback():
    big = 10**12
    a = Mat.from_int_rows([[big, 0], [0, big]])
    assert a @ a == Mat.from_int_rows([[big * big, 0], [0, big * big]])


def test_shape_errors():
    a = Mat.from_int_rows([[1, 2]])
    with pytest.raises(ShapeError):
        a @ a
    with pytest.raises(ShapeError):
        a.trace()
    with pytest.raises(ShapeError):
        bracket(a, a)


def test_nilpotency_examples():
    upper = Mat.from_rows([[0, 1, 5], [0, 0, -2], [0, 0, 0]])
    assert is_nilpotent_exact(upper)
    assert not is_nilpotent_exact(Mat.identity(3))
    a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert is_nilpotent_exact(a + b)
    assert (a + b).power(3).is_zero()


def _char_poly_coeffs(a: Mat):
    """Faddeev-LeVerrier; independent oracle for the nilpotency test."""
    n = a.n_rows
    coeffs = [GaussianRational(1)]
    m = Mat.zeros(n)
    c = GaussianRational(1)
    for k in range(1, n + 1):
        m = a @ m + Mat.identity(n).scale(c)
        c = (a @ m).trace() * GaussianRational(Fraction(-1, k))
        coeffs.append(c)
    return coeffs


def test_nilpotency_matches_char_poly_oracle():
    rng = random.Random(11)
    for _ in range(120):
        n = rng.randint(1, 5)
        a = Mat.from_int_rows(
            [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        )
        if rng.random() < 0.5:
            # bias towards nilpotent inputs
            a = Mat.from_int_rows(
                [
                    [rng.randint(-2, 2) if j > i else 0 for j in range(n)]
                    for i in range(n)
                ]
            )
        coeffs = _char_poly_coeffs(a)
        oracle = all(c.is_zero() for c in coeffs[1:])
        assert is_nilpotent_exact(a) == oracle


def test_flatten_unflatten():
    a, b, c = pauli()
    assert flatten(Mat.identity(2)) == (Q(1), Q(0), Q(0), Q(1))
    assert flatten(c) == (Q(0, -1), Q(0), Q(0), Q(0, 1))
    for m in (a, b, c):
        assert unflatten(flatten(m), 2) == m
    with pytest.raises(ShapeError):
        unflatten((Q(1),) * 3, 2)


def test_jordan_and_triple_products():
    e = Mat.unit(2, 0, 1)
    f = Mat.unit(2, 1, 0)
    assert jordan_product(e, Mat.zeros(2)).is_zero()
    assert jordan_product(e, f) == Mat.identity(2)
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 3)
        mats = [
            Mat.from_int_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            for _ in range(3)
        ]
        a, b, c = mats
        lhs = triple_product(a, b, c)
        rhs = jordan_product(jordan_product(a, b), c) - jordan_product(
            jordan_product(a, c), b
        )
        assert lhs == rhs


def test_to_numeric():
    m = Mat.from_rows([[Fraction(1, 3), Q(Fraction(1, 2), Fraction(1, 2))], [0, 1]])
    nm = to_numeric(m)
    assert nm.array[0, 0] == pytest.approx(1 / 3)
    assert nm.array[0, 1] == pytest.approx(0.5 + 0.5j)
    assert to_numeric(Mat.zeros(2)).array.sum() == 0


def test_to_numeric_overflow_surfaces():
    huge = Mat.from_int_rows([[10**400]])
    with pytest.raises(OverflowError):
        to_numeric(huge)


def test_nummat_rejects_nonfinite():
    with pytest.raises(ValueError):
        NumMat([[float("nan"), 0], [0, 0]])
    with pytest.raises(ValueError):
        NumMat([[float("inf"), 0], [0, 0]])


def test_trace_product_matches_full_product():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = Mat.from_int_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        b = Mat.from_int_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        assert trace_product(a, b) == (a @ b).trace()


def test_scalar_detection():
    assert Mat.identity(3).scale(Q(0, 2)).is_scalar()
    assert not Mat.from_rows([[1, 0, 0], [0, -2, 0], [0, 0, 1]]).is_scalar()
    assert Mat.zeros(2).is_scalar()
