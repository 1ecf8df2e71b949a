"""Built-in worked examples, bit-exact.

pauli          the Pauli spin basis of sl(2) with its Klein four-group grading
e1             sl(2) in weight basis e, f, g with the three-component cyclic grading
e2             the 3x3 nilpotent pair spanning an irreducible five-fold bracket-power system
heisenberg     strictly upper triangular 3x3 matrices
sl2            sl(2) from the elementary matrix generators
jordan_upper   upper triangular 2x2 matrices as a Jordan algebra
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Q
from .matrices import Mat
from .groups import FinAbGroup
from .documents import AlgebraDocument

__all__ = ["EXAMPLE_NAMES", "build_example"]


def _pauli_mats() -> tuple[Mat, Mat, Mat]:
    a = Mat.from_rows([[0, 1], [-1, 0]])
    b = Mat.from_rows([[Q(0), Q(0, -1)], [Q(0, -1), Q(0)]])
    c = Mat.from_rows([[Q(0, -1), Q(0)], [Q(0), Q(0, 1)]])
    return a, b, c


def _e1_mats() -> tuple[Mat, Mat, Mat]:
    e = Mat.unit(2, 0, 1)
    f = Mat.unit(2, 1, 0).scale(Fraction(1, 2))
    g = Mat.from_rows([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]])
    return e, f, g


def _e2_mats() -> tuple[Mat, Mat]:
    a = Mat.from_rows([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    b = Mat.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    return a, b


def build_example(name: str) -> AlgebraDocument:
    """Return the named example as an exact document."""
    if name == "pauli":
        a, b, c = _pauli_mats()
        return AlgebraDocument(
            2,
            "subgraded",
            FinAbGroup([2, 2]),
            None,
            {(0, 1): (a,), (1, 0): (b,), (1, 1): (c,)},
        )
    if name == "e1":
        e, f, g = _e1_mats()
        return AlgebraDocument(
            2, "subgraded", FinAbGroup([3]), None, {(0,): (g,), (1,): (e,), (2,): (f,)}
        )
    if name == "e2":
        a, b = _e2_mats()
        return AlgebraDocument(3, "triple", None, (a, b), None)
    if name == "heisenberg":
        return AlgebraDocument(
            3, "lie", None, (Mat.unit(3, 0, 1), Mat.unit(3, 0, 2), Mat.unit(3, 1, 2)), None
        )
    if name == "sl2":
        e = Mat.unit(2, 0, 1)
        f = Mat.unit(2, 1, 0)
        h = Mat.from_rows([[1, 0], [0, -1]])
        return AlgebraDocument(2, "lie", None, (e, f, h), None)
    if name == "jordan_upper":
        return AlgebraDocument(
            2,
            "jordan",
            None,
            (Mat.unit(2, 0, 0), Mat.unit(2, 0, 1), Mat.unit(2, 1, 1)),
            None,
        )
    raise KeyError(f"unknown example {name!r}; known: {', '.join(EXAMPLE_NAMES)}")


EXAMPLE_NAMES = ("pauli", "e1", "e2", "heisenberg", "sl2", "jordan_upper")
