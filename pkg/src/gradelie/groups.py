"""Finite abelian groups as direct products of cyclic groups.

Group elements are canonical residue tuples.  Quotients and invariant factors
go through an integer Smith normal form, so the cyclic/non-cyclic structure
questions (and the non-cyclic pair relation) are decided exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .matrices import Mat

__all__ = [
    "FinAbGroup",
    "GroupElem",
    "noncyclic_pairs",
    "regular_rep",
    "quotient_group",
    "diagonalize_relations",
]

GroupElem = tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Z_{n_1} x ... x Z_{n_k}; moduli all >= 1, possibly empty (trivial group)."""

    moduli: tuple[int, ...]

    def __init__(self, moduli: Iterable[int]):
        mods = tuple(int(m) for m in moduli)
        if any(m < 1 for m in mods):
            raise ValueError("moduli must be >= 1")
        object.__setattr__(self, "moduli", mods)

    @property
    def order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def zero(self) -> GroupElem:
        return (0,) * len(self.moduli)

    def element(self, residues: Sequence[int]) -> GroupElem:
        if len(residues) != len(self.moduli):
            raise ValueError(
                f"element of length {len(residues)} in a rank-{len(self.moduli)} group"
            )
        return tuple(int(r) % m for r, m in zip(residues, self.moduli))

    def contains(self, g: GroupElem) -> bool:
        return len(g) == len(self.moduli) and all(
            0 <= r < m for r, m in zip(g, self.moduli)
        )

    def add(self, a: GroupElem, b: GroupElem) -> GroupElem:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GroupElem) -> GroupElem:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def elements(self) -> list[GroupElem]:
        return [tuple(t) for t in itertools.product(*(range(m) for m in self.moduli))]

    def element_order(self, g: GroupElem) -> int:
        acc = g
        k = 1
        zero = self.zero()
        while acc != zero:
            acc = self.add(acc, g)
            k += 1
        return k

    def subgroup(self, generators: Sequence[GroupElem]) -> frozenset[GroupElem]:
        for g in generators:
            if not self.contains(g):
                raise ValueError(f"generator {g} outside the group")
        seen = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            cur = frontier.pop()
            for g in generators:
                nxt = self.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    def invariant_factors(self) -> tuple[int, ...]:
        """Divisor-chain form of the group; trivial group gives ()."""
        return _divisor_chain(self.moduli)

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors()) <= 1


def _divisor_chain(diag: Sequence[int]) -> tuple[int, ...]:
    # Z_a + Z_b = Z_gcd(a,b) + Z_lcm(a,b); iterate to the chain form
    d = [x for x in diag if x > 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(d) - 1):
            if d[i + 1] % d[i] != 0:
                g = math.gcd(d[i], d[i + 1])
                d[i], d[i + 1] = g, d[i] * d[i + 1] // g
                changed = True
    return tuple(x for x in d if x > 1)


def diagonalize_relations(rows: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalize an integer relation matrix by unimodular row/column operations.

    Returns (d, V) with U*A*V = diag(d) for some unimodular U; V is the
    accumulated column operation matrix (k x k for a matrix with k columns).
    The diagonal is positive but not necessarily a divisor chain.  Requires
    the row lattice to have full column rank (true for group relation
    matrices, which contain diag(moduli)).
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    k = len(a[0]) if m else 0
    v = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, mult):
        a[dst] = [x + mult * y for x, y in zip(a[dst], a[src])]

    def add_col(src, dst, mult):
        for r in a:
            r[dst] += mult * r[src]
        for r in v:
            r[dst] += mult * r[src]

    def negate_col(i):
        for r in a:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]

    t = 0
    while t < k and t < m:
        # find a pivot
        found = None
        for i in range(t, m):
            for j in range(t, k):
                if a[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        swap_rows(t, found[0])
        swap_cols(t, found[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, k):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            negate_col(t)
        t += 1
    d = [a[i][i] if i < m else 0 for i in range(k)]
    if any(x == 0 for x in d):
        raise ValueError("relation lattice does not have full column rank")
    return d, v


def quotient_group(
    group: FinAbGroup, subgroup_gens: Sequence[GroupElem]
) -> tuple[FinAbGroup, dict[GroupElem, GroupElem]]:
    """The quotient by the subgroup the generators produce, plus the projection map."""
    for g in subgroup_gens:
        if not group.contains(g):
            raise ValueError(f"generator {g} outside the group")
    k = len(group.moduli)
    if k == 0:
        return FinAbGroup(()), {(): ()}
    relations = [
        [group.moduli[i] if i == j else 0 for j in range(k)] for i in range(k)
    ]
    relations.extend(list(g) for g in subgroup_gens)
    d, v = diagonalize_relations(relations)
    keep = [i for i in range(k) if d[i] > 1]
    quo = FinAbGroup(tuple(d[i] for i in keep))
    proj: dict[GroupElem, GroupElem] = {}
    for g in group.elements():
        image = [sum(g[r] * v[r][c] for r in range(k)) for c in range(k)]
        proj[g] = tuple(image[i] % d[i] for i in keep)
    return quo, proj


def noncyclic_pairs(group: FinAbGroup) -> set[tuple[GroupElem, GroupElem]]:
    """All ordered pairs contained in no common cyclic subgroup; symmetric."""
    elems = group.elements()
    orders = {g: group.element_order(g) for g in elems}
    out: set[tuple[GroupElem, GroupElem]] = set()
    for a, b in itertools.combinations(elems, 2):
        sub = group.subgroup([a, b])
        if max(orders[g] for g in sub) != len(sub):
            out.add((a, b))
            out.add((b, a))
    return out


def regular_rep(group: FinAbGroup) -> dict[GroupElem, Mat]:
    """Faithful permutation representation by translation on the group itself."""
    elems = sorted(group.elements())
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    out = {}
    for g in elems:
        grid = [[0] * n for _ in range(n)]
        for h in elems:
            grid[index[group.add(g, h)]][index[h]] = 1
        out[g] = Mat.from_int_rows(grid)
    return out
