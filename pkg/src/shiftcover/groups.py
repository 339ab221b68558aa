"""Finite groups stored as full multiplication tables.

Every group carries its identity at index 0. Groups built from permutations
keep the permutation images so that labels stay human readable; groups read
from a table carry plain integer labels.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import ParseError, ShiftcoverError, SizeLimitError

DEFAULT_ORDER_BOUND = 10_000

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the index set ``0..order-1``.

    ``mul[a][b]`` is the index of the product ``a*b``; for permutation groups
    this is the composition ``a∘b`` (apply ``b`` first).
    """

    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    elements: tuple = ()
    degree: int | None = None
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.inv)

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    def conj(self, g: int, x: int) -> int:
        """Return ``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def index_of(self, label) -> int:
        return self._index[tuple(label) if isinstance(label, list) else label]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(n) for b in range(a + 1, n))

    def centralizer_order(self, xs: Sequence[int]) -> int:
        """Order of the subgroup commuting with every element of ``xs``."""
        m = self.mul
        return sum(1 for g in range(self.order) if all(m[g][x] == m[x][g] for x in xs))

    def check_axioms(self) -> None:
        """Exhaustively verify identity, inverses and associativity.

        Cubic in the order; intended for groups of a few hundred elements.
        """
        n = self.order
        m = self.mul
        for a in range(n):
            if m[0][a] != a or m[a][0] != a:
                raise ShiftcoverError(f"index 0 is not an identity (fails at {a})")
            if m[a][self.inv[a]] != 0 or m[self.inv[a]][a] != 0:
                raise ShiftcoverError(f"inv[{a}] is not an inverse")
        for a in range(n):
            row_a = m[a]
            for b in range(n):
                ab = row_a[b]
                row_b = m[b]
                row_ab = m[ab]
                for c in range(n):
                    if row_ab[c] != row_a[row_b[c]]:
                        raise ShiftcoverError(f"not associative at ({a}, {b}, {c})")


@dataclass(frozen=True)
class ConjClassTable:
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    centralizer_orders: tuple[int, ...]

    def __len__(self):
        return len(self.representatives)


def _compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def _table_group(elements: list, product, name: str, degree: int | None) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    mul = tuple(tuple(index[product(a, b)] for b in elements) for a in elements)
    inv = tuple(row.index(0) for row in mul)
    return FiniteGroup(mul=mul, inv=inv, elements=tuple(elements), degree=degree,
                       name=name, _index=index)


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            max_order: int = DEFAULT_ORDER_BOUND,
                            name: str = "") -> FiniteGroup:
    """Close a set of permutations of ``{0..degree-1}`` under composition.

    Elements are discovered breadth first from the identity by right
    multiplication with the generators (in input order); within one
    breadth-first layer elements are sorted by their images, so the ordering
    depends only on the input.
    """
    if degree < 1:
        raise ShiftcoverError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ShiftcoverError(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)

    identity = tuple(range(degree))
    elements = [identity]
    seen = {identity}
    layer = [identity]
    while layer:
        found = []
        for x in layer:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    found.append(y)
                    if len(seen) > max_order:
                        raise SizeLimitError("group order", max_order)
        found.sort()
        elements.extend(found)
        layer = found
    return _table_group(elements, _compose, name, degree)


def group_from_table(rows: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Build a group from an explicit multiplication table (identity at 0)."""
    n = len(rows)
    mul = tuple(tuple(int(x) for x in row) for row in rows)
    if n == 0 or any(len(row) != n for row in mul):
        raise ShiftcoverError("multiplication table must be square and nonempty")
    if any(not 0 <= x < n for row in mul for x in row):
        raise ShiftcoverError("multiplication table entry out of range")
    inv = []
    for a, row in enumerate(mul):
        if 0 not in row:
            raise ShiftcoverError(f"element {a} has no inverse (is index 0 the identity?)")
        inv.append(row.index(0))
    G = FiniteGroup(mul=mul, inv=tuple(inv), elements=tuple(range(n)), name=name,
                    _index={i: i for i in range(n)})
    G.check_axioms()
    return G


def cyclic(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if n < 1:
        raise ShiftcoverError("cyclic(n) needs n >= 1")
    gens = [tuple((i + 1) % n for i in range(n))] if n > 1 else []
    return group_from_permutations(n, gens, max_order, name=f"cyclic({n})")


def dihedral(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    if n < 1:
        raise ShiftcoverError("dihedral(n) needs n >= 1")
    name = f"dihedral({n})"
    if n == 1:
        return group_from_permutations(2, [(1, 0)], max_order, name=name)
    if n == 2:
        return group_from_permutations(4, [(1, 0, 3, 2), (2, 3, 0, 1)], max_order, name=name)
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return group_from_permutations(n, [rotation, reflection], max_order, name=name)


def symmetric(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if n < 1:
        raise ShiftcoverError("symmetric(n) needs n >= 1")
    if math.factorial(n) > max_order:
        raise SizeLimitError("group order", max_order)
    gens = []
    if n > 1:
        gens.append(tuple((i + 1) % n for i in range(n)))
    if n > 2:
        gens.append((1, 0) + tuple(range(2, n)))
    return group_from_permutations(n, gens, max_order, name=f"symmetric({n})")


_NAMED = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
_SHORT = {"C": cyclic, "Z": cyclic, "D": dihedral, "S": symmetric}


def named_group(spec: str, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Parse ``cyclic(n)``, ``dihedral(n)`` or ``symmetric(n)``.

    The short forms ``Cn``/``Zn``, ``Dn`` (order 2n) and ``Sn`` are accepted too.
    """
    s = spec.strip()
    m = re.fullmatch(r"(cyclic|dihedral|symmetric)\s*\(\s*(\d+)\s*\)", s)
    if m:
        return _NAMED[m.group(1)](int(m.group(2)), max_order)
    m = re.fullmatch(r"([CZDS])(\d+)", s)
    if m:
        return _SHORT[m.group(1)](int(m.group(2)), max_order)
    raise ParseError(f"unknown group name {spec!r}")


def conjugacy_classes(G: FiniteGroup) -> ConjClassTable:
    class_of = [-1] * G.order
    reps, sizes = [], []
    for x in range(G.order):
        if class_of[x] >= 0:
            continue
        cid = len(reps)
        members = {G.conj(g, x) for g in range(G.order)}
        for y in members:
            class_of[y] = cid
        reps.append(x)
        sizes.append(len(members))
    cent = tuple(G.order // sizes[class_of[x]] for x in range(G.order))
    return ConjClassTable(tuple(class_of), tuple(reps), tuple(sizes), cent)
