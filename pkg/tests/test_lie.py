import random
from fractions import Fraction

import pytest

from gradelie.scalars import Q
from gradelie.matrices import Mat, bracket, is_nilpotent_exact, trace_product
from gradelie.subspaces import mat_span, span_basis_mats
from gradelie.lie import (
    LieAlgebra,
    NormalizerError,
    NotClosedError,
    PreconditionError,
    ad_matrix,
    cartan_test,
    center,
    derived_series,
    engel_sum_check,
    is_engel_element,
    is_ideal,
    is_nil_subspace,
    is_nilpotent_lie,
    is_scalar_set,
    is_solvable,
    jacobi_defect,
    killing_form,
    lie_closure,
    lower_central_series,
    trace_orthogonal_ideal,
)

E = Mat.unit


def heisenberg():
    return lie_closure([E(3, 0, 1), E(3, 0, 2), E(3, 1, 2)])


def weight_sl2():
    e = E(2, 0, 1)
    f = E(2, 1, 0).scale(Fraction(1, 2))
    g = Mat.from_rows([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]])
    return e, f, g, lie_closure([e, f])


def test_closure_examples():
    zero = lie_closure([Mat.zeros(2)], ambient_dim=2)
    assert zero.dim == 0
    a = Mat.from_rows([[0, 1], [-1, 0]])
    b = Mat.from_rows([[Q(0), Q(0, -1)], [Q(0, -1), Q(0)]])
    pauli_closure = lie_closure([a, b])
    assert pauli_closure.dim == 3
    c = Mat.from_rows([[Q(0, -1), Q(0)], [Q(0), Q(0, 1)]])
    assert pauli_closure.contains_mat(c)
    e2a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    e2b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert lie_closure([e2a, e2b]).dim == 8


def test_closure_idempotent():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(2, 3)
        gens = [
            Mat.from_int_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            for _ in range(2)
        ]
        l1 = lie_closure(gens)
        l2 = lie_closure(list(l1.basis_mats), ambient_dim=n)
        assert l1.span == l2.span


def test_closure_cap_guard():
    with pytest.raises(ValueError):
        lie_closure([Mat.identity(2)], cap=1)


def test_from_matrices_verifies_closure():
    with pytest.raises(NotClosedError):
        LieAlgebra.from_matrices([E(2, 0, 1), E(2, 1, 0)])


def test_ad_matrix_examples():
    e, f, g, sl2 = weight_sl2()
    # central element of an abelian algebra has zero ad
    ab = lie_closure([Mat.identity(2)])
    assert ad_matrix(ab, Mat.identity(2)).is_zero()
    adg = ad_matrix(sl2, g)
    assert not is_nilpotent_exact(adg)
    # trace of (ad x)(ad y) is basis independent: Killing values in the weight basis
    ade, adf = ad_matrix(sl2, e), ad_matrix(sl2, f)
    assert trace_product(ade, adf) == Q(2)
    assert trace_product(adg, adg) == Q(2)
    assert trace_product(ade, ade) == Q(0)
    with pytest.raises(NormalizerError):
        ad_matrix(heisenberg(), Mat.from_int_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]]))


def test_series_examples():
    ab = lie_closure([Mat.from_rows([[1, 0], [0, 2]])])
    ds = derived_series(ab)
    assert ds.stabilized and ds.terminal_dim == 0
    assert [t.dim for t in ds.terms][:2] == [1, 0]
    heis = heisenberg()
    lc = lower_central_series(heis)
    assert [t.dim for t in lc.terms][:3] == [3, 1, 0]
    _, _, _, sl2 = weight_sl2()
    ds2 = derived_series(sl2)
    assert ds2.stabilized and ds2.terminal_dim == 3
    assert all(t.dim == 3 for t in ds2.terms)


def test_solvability_wrappers():
    zero = lie_closure([], ambient_dim=2)
    assert is_solvable(zero) and is_nilpotent_lie(zero)
    heis = heisenberg()
    assert is_solvable(heis) and is_nilpotent_lie(heis)
    _, _, _, sl2 = weight_sl2()
    assert not is_solvable(sl2) and not is_nilpotent_lie(sl2)


def test_killing_form():
    ab = lie_closure([Mat.from_rows([[1, 0], [0, 2]]), Mat.identity(2)])
    kg = killing_form(ab)
    assert kg.gram.is_zero()
    _, _, _, sl2 = weight_sl2()
    kg2 = killing_form(sl2).gram
    assert kg2 == kg2.transpose()
    det = (
        kg2.entry(0, 0) * (kg2.entry(1, 1) * kg2.entry(2, 2) - kg2.entry(1, 2) * kg2.entry(2, 1))
        - kg2.entry(0, 1) * (kg2.entry(1, 0) * kg2.entry(2, 2) - kg2.entry(1, 2) * kg2.entry(2, 0))
        + kg2.entry(0, 2) * (kg2.entry(1, 0) * kg2.entry(2, 1) - kg2.entry(1, 1) * kg2.entry(2, 0))
    )
    assert not det.is_zero()  # nondegenerate Killing form: semisimple


def test_cartan_test_examples():
    ab = lie_closure([Mat.identity(2)])
    assert cartan_test(ab)
    assert cartan_test(heisenberg())
    e, f, g, sl2 = weight_sl2()
    assert not trace_product(e, f).is_zero()
    assert not cartan_test(sl2)


def test_cartan_matches_solvability():
    rng = random.Random(12)
    for _ in range(60):
        n = rng.randint(2, 4)
        gens = [
            Mat.from_int_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            for _ in range(rng.randint(1, 3))
        ]
        algebra = lie_closure(gens)
        assert cartan_test(algebra) == is_solvable(algebra)


def test_engel_elements():
    e, f, g, sl2 = weight_sl2()
    heis = heisenberg()
    assert is_engel_element(heis, E(3, 0, 2))  # central
    assert not is_engel_element(sl2, g)
    assert is_engel_element(sl2, e)
    e2a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    e2b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    lm = lie_closure([e2a, e2b])
    assert is_engel_element(lm, e2a)
    assert is_engel_element(lm, e2b)


def test_nil_subspace():
    assert is_nil_subspace(mat_span([E(3, 0, 1), E(3, 0, 2), E(3, 1, 2)]))
    assert not is_nil_subspace(mat_span([Mat.identity(2)]))
    e2a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    e2b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert is_nil_subspace(mat_span([e2a, e2b]))
    assert not is_nil_subspace([e2a, bracket(e2a, e2b)])
    assert is_nil_subspace([], )


def test_nil_subspace_matches_grid_oracle():
    # polarization agrees with exhaustive nilpotency over the {-2..2} grid
    rng = random.Random(5)
    import itertools

    for _ in range(40):
        n = rng.randint(2, 4)
        d = rng.randint(1, 3)
        mats = []
        for _ in range(d):
            if rng.random() < 0.6:
                grid = [
                    [rng.randint(-2, 2) if j > i else 0 for j in range(n)]
                    for i in range(n)
                ]
            else:
                grid = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)]
            mats.append(Mat.from_int_rows(grid))
        mats = [m for m in mats if not m.is_zero()]
        if not mats:
            continue
        span = mat_span(mats, n)
        basis = span_basis_mats(span, n)
        grid_ok = True
        for coeffs in itertools.product(range(-2, 3), repeat=len(basis)):
            acc = Mat.zeros(n)
            for c, m in zip(coeffs, basis):
                if c:
                    acc = acc + m.scale(c)
            if not is_nilpotent_exact(acc):
                grid_ok = False
                break
        assert is_nil_subspace(span, n) == grid_ok


def test_trace_orthogonal_ideal():
    heis = heisenberg()
    assert trace_orthogonal_ideal(heis) == heis.span
    _, _, _, sl2 = weight_sl2()
    assert trace_orthogonal_ideal(sl2).dim == 0
    com = lie_closure([E(3, 0, 2), E(3, 1, 2)])
    ideal = trace_orthogonal_ideal(com)
    assert ideal == com.span
    assert is_ideal(com, ideal)


def test_ideal_center_scalar():
    heis = heisenberg()
    assert is_ideal(heis, heis.span)
    assert center(heis) == mat_span([E(3, 0, 2)])
    assert is_scalar_set(mat_span([Mat.identity(3)]))
    assert not is_scalar_set(mat_span([Mat.from_rows([[1, 0, 0], [0, -2, 0], [0, 0, 1]])]))
    assert is_scalar_set(mat_span([Mat.zeros(2), Mat.identity(2)]))
    with pytest.raises(PreconditionError):
        is_ideal(heis, mat_span([Mat.identity(3)]))


def test_jacobi_identity():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(2, 4)
        mats = [
            Mat.from_int_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            for _ in range(3)
        ]
        assert jacobi_defect(*mats).is_zero()


def test_engel_sum_check():
    heis = heisenberg()
    assert engel_sum_check(heis, Mat.zeros(3), Mat.zeros(3))
    assert engel_sum_check(heis, E(3, 0, 1), E(3, 1, 2))
    _, _, _, sl2 = weight_sl2()
    with pytest.raises(PreconditionError):
        engel_sum_check(sl2, E(2, 0, 1), E(2, 1, 0))
    with pytest.raises(PreconditionError):
        engel_sum_check(heis, Mat.identity(3), E(3, 0, 1))


def test_solvable_derived_is_nil():
    rng = random.Random(13)
    from gradelie.lie import derived_subalgebra_mats

    for seed in range(15):
        from gradelie.generators import gen_solvable

        algebra = gen_solvable(rng.randint(2, 4), seed)
        assert is_solvable(algebra)
        derived = derived_subalgebra_mats(algebra)
        assert is_nil_subspace(derived or [], )
