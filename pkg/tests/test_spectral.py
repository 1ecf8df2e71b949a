import random

import numpy as np
import pytest

from gradelie.scalars import Q
from gradelie.matrices import Mat, NumMat, to_numeric
from gradelie.subspaces import canonicalize, mat_inverse
from gradelie.lie import PreconditionError, is_solvable, lie_closure
from gradelie.spectral import (
    Flag,
    TriangularizationError,
    assoc_closure_dim,
    decide_irreducible,
    eig_numeric,
    generalized_eigenspace_numeric,
    spectral_radius,
    triangularize_solvable,
    verify_flag,
)

E = Mat.unit


def pauli():
    a = Mat.from_rows([[0, 1], [-1, 0]])
    b = Mat.from_rows([[Q(0), Q(0, -1)], [Q(0, -1), Q(0)]])
    c = Mat.from_rows([[Q(0, -1), Q(0)], [Q(0), Q(0, 1)]])
    return a, b, c


def test_eig_examples():
    vals = sorted(eig_numeric(Mat.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])), key=lambda z: z.real)
    assert np.allclose(vals, [1, 2, 3])
    a, _, _ = pauli()
    va = sorted(eig_numeric(a), key=lambda z: z.imag)
    assert np.allclose(va, [-1j, 1j], atol=1e-9)
    nil = Mat.from_rows([[0, 1, 7], [0, 0, 3], [0, 0, 0]])
    assert max(abs(v) for v in eig_numeric(nil)) < 1e-9


def test_eig_accepts_nummat():
    vals = eig_numeric(NumMat([[2.0, 0], [0, 5.0]]))
    assert sorted(v.real for v in vals) == pytest.approx([2, 5])


def test_spectral_radius_examples():
    assert spectral_radius(Mat.zeros(3)) == 0.0
    a, b, c = pauli()
    for m in (a, b, c):
        assert spectral_radius(m) == pytest.approx(1.0, abs=1e-9)
    grid = [Q(1), Q(-1), Q(0, 1), Q(0, -1), Q(1, 1)]
    for x, y in ((a, b), (b, c), (a, c)):
        for lam in grid:
            for mu in grid:
                m = x.scale(lam) + y.scale(mu)
                want = abs(complex(lam * lam + mu * mu)) ** 0.5
                assert spectral_radius(m) == pytest.approx(want, abs=1e-9)


def test_spectral_radius_below_norm():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = Mat.from_int_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        fro = float(np.linalg.norm(to_numeric(m).array))
        assert spectral_radius(m) <= fro + 1e-9


def test_radius_subadditive_on_solvable_not_on_sl2():
    from gradelie.generators import gen_solvable

    for seed in range(10):
        algebra = gen_solvable(3, seed)
        basis = list(algebra.basis_mats)
        rng = random.Random(seed)
        for _ in range(5):
            x = basis[rng.randrange(len(basis))]
            y = basis[rng.randrange(len(basis))]
            assert spectral_radius(x + y) <= spectral_radius(x) + spectral_radius(y) + 1e-7
    e, f = E(2, 0, 1), E(2, 1, 0)
    assert spectral_radius(e + f) == pytest.approx(1.0, abs=1e-9)
    assert spectral_radius(e) + spectral_radius(f) < 1e-9


def test_generalized_eigenspaces():
    assert generalized_eigenspace_numeric(Mat.identity(3), 1.0).shape == (3, 3)
    j2 = Mat.from_rows([[0, 1], [0, 0]])
    assert generalized_eigenspace_numeric(j2, 0.0).shape == (2, 2)
    d = Mat.from_rows([[1, 0], [0, 2]])
    space = generalized_eigenspace_numeric(d, 1.0)
    assert space.shape == (2, 1)
    assert abs(space[1, 0]) < 1e-9
    assert generalized_eigenspace_numeric(d, 7.0).shape == (2, 0)


def test_assoc_closure_dims():
    assert assoc_closure_dim([]) == 1
    assert assoc_closure_dim([Mat.identity(2)]) == 1
    a, b, c = pauli()
    assert assoc_closure_dim([a, b, c]) == 4
    heis = [E(3, 0, 1), E(3, 0, 2), E(3, 1, 2)]
    assert assoc_closure_dim(heis) < 9
    # monotone under adding generators, capped by n^2
    assert assoc_closure_dim(heis + [E(3, 1, 0)]) >= assoc_closure_dim(heis)
    assert assoc_closure_dim(heis + [E(3, 1, 0), E(3, 2, 1)]) <= 9


def test_decide_irreducible_examples():
    v = decide_irreducible([Mat.identity(2)])
    assert not v.irreducible and v.assoc_dim == 1
    assert v.witness is not None and v.witness.dim == 1
    a, b, c = pauli()
    vp = decide_irreducible([a, b, c])
    assert vp.irreducible and vp.assoc_dim == 4 and vp.witness is None
    e2a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    e2b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    lm = lie_closure([e2a, e2b])
    ve = decide_irreducible(list(lm.basis_mats))
    assert ve.irreducible and ve.assoc_dim == 9


def test_witness_is_invariant():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(2, 4)
        mats = [
            Mat.from_int_rows(
                [[rng.randint(-2, 2) if j >= i else 0 for j in range(n)] for i in range(n)]
            )
            for _ in range(rng.randint(1, 3))
        ]
        verdict = decide_irreducible(mats)
        assert not verdict.irreducible  # triangular sets are always reducible
        w = verdict.witness
        assert 0 < w.dim < n
        for m in mats:
            for v in w.basis_vectors():
                image = [
                    sum((m.entry(i, j) * v[j] for j in range(n)), Q(0))
                    for i in range(n)
                ]
                assert w.contains(image)


def test_irreducible_consistency_small_probes():
    # exhaustive small-grid probe: every nonzero orbit is full iff irreducible
    import itertools

    a, b, c = pauli()
    mats = [a, b]
    n = 2
    from gradelie.spectral import _orbit_span

    full = True
    for probe in itertools.product(range(-1, 2), repeat=2):
        if probe == (0, 0):
            continue
        vec = tuple(Q(x) for x in probe)
        if _orbit_span(mats, vec, n).dim < n:
            full = False
    assert full == decide_irreducible(mats).irreducible


def test_triangularize_diagonal():
    algebra = lie_closure([Mat.from_rows([[1, 0], [0, 2]])])
    flag = triangularize_solvable(algebra)
    assert [s.dim for s in flag.chain] == [1]
    assert verify_flag(list(algebra.basis_mats), flag, 0.0).all_ok


def test_triangularize_heisenberg_chain():
    heis = lie_closure([E(3, 0, 1), E(3, 0, 2), E(3, 1, 2)])
    flag = triangularize_solvable(heis)
    assert flag.chain[0] == canonicalize([[1, 0, 0]], 3)
    assert flag.chain[1] == canonicalize([[1, 0, 0], [0, 1, 0]], 3)
    assert verify_flag(list(heis.basis_mats), flag, 0.0).all_ok


def test_triangularize_requires_solvable():
    sl2 = lie_closure([E(2, 0, 1), E(2, 1, 0)])
    with pytest.raises(PreconditionError):
        triangularize_solvable(sl2)


def test_verify_flag_modes():
    uppers = [Mat.from_rows([[1, 5], [0, 2]]), Mat.from_rows([[0, 1], [0, 0]])]
    coord = Flag((canonicalize([[1, 0]], 2),), Mat.identity(2))
    assert verify_flag(uppers, coord, 0.0).all_ok
    assert verify_flag(uppers, coord, 1e-9).all_ok
    sl2mats = [E(2, 0, 1), E(2, 1, 0), Mat.from_rows([[1, 0], [0, -1]])]
    for u in (Mat.identity(2), Mat.from_rows([[0, 1], [1, 0]])):
        flag = Flag((canonicalize([[u.entry(0, 0), u.entry(1, 0)]], 2),), u)
        assert not verify_flag(sl2mats, flag, 0.0).all_ok
        assert not verify_flag(sl2mats, flag, 1e-9).all_ok


def test_flag_shape_validation():
    with pytest.raises(TriangularizationError):
        Flag((canonicalize([[1, 0], [0, 1]], 2),), Mat.identity(2))


def test_triangularize_fuzz_conjugated_uppers():
    rng = random.Random(31)
    for trial in range(30):
        n = rng.randint(2, 4)
        while True:
            g = Mat.from_int_rows(
                [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            )
            try:
                gi = mat_inverse(g)
                break
            except ValueError:
                continue
        ups = []
        for _ in range(rng.randint(1, 3)):
            grid = [
                [rng.randint(-2, 2) if j >= i else 0 for j in range(n)]
                for i in range(n)
            ]
            ups.append(g @ Mat.from_int_rows(grid) @ gi)
        algebra = lie_closure(ups)
        assert is_solvable(algebra)
        flag = triangularize_solvable(algebra)
        assert verify_flag(list(algebra.basis_mats), flag, 1e-9).all_ok
        assert verify_flag(list(algebra.basis_mats), flag, 0.0).all_ok
