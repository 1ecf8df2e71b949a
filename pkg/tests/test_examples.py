from fractions import Fraction

import pytest

from gradelie.scalars import Q
from gradelie.matrices import Mat, bracket, is_nilpotent_exact
from gradelie.documents import materialize
from gradelie.examples import build_example
from gradelie.lie import is_engel_element, is_solvable


def test_pauli_identities():
    doc = build_example("pauli")
    (a,) = doc.components[(0, 1)]
    (b,) = doc.components[(1, 0)]
    (c,) = doc.components[(1, 1)]
    assert a == Mat.from_rows([[0, 1], [-1, 0]])
    assert b == Mat.from_rows([[Q(0), Q(0, -1)], [Q(0, -1), Q(0)]])
    assert c == Mat.from_rows([[Q(0, -1), Q(0)], [Q(0), Q(0, 1)]])
    assert bracket(a, b) == c.scale(2)
    assert bracket(b, c) == a.scale(2)
    assert bracket(c, a) == b.scale(2)
    s = materialize(doc)
    assert s.is_direct and s.component((0, 0)).dim == 0


def test_e1_identities():
    doc = build_example("e1")
    (g,) = doc.components[(0,)]
    (e,) = doc.components[(1,)]
    (f,) = doc.components[(2,)]
    assert g == Mat.from_rows([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]])
    assert bracket(e, f) == g
    assert bracket(g, e) == e
    assert bracket(g, f) == -f
    s = materialize(doc)
    assert s.is_direct
    assert is_nilpotent_exact(e) and is_nilpotent_exact(f)
    assert not is_engel_element(s.algebra, g)


def test_e2_matrices():
    doc = build_example("e2")
    a, b = doc.generators
    assert a == Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    assert b == Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert is_nilpotent_exact(a + b)
    assert bracket(a, b) == Mat.from_rows([[1, 0, 0], [0, -2, 0], [0, 0, 1]])


def test_heisenberg_and_sl2():
    heis = materialize(build_example("heisenberg"))
    assert heis.dim == 3 and is_solvable(heis)
    sl2 = materialize(build_example("sl2"))
    assert sl2.dim == 3 and not is_solvable(sl2)


def test_jordan_upper():
    from gradelie.structures import is_jordan_algebra

    j = materialize(build_example("jordan_upper"))
    assert j.dim == 3
    assert is_jordan_algebra(j)


def test_unknown_example():
    with pytest.raises(KeyError):
        build_example("nope")
