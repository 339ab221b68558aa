"""Finite-group TQFT transfer matrices on algebraic cobordism data.

Convention used throughout: a transfer matrix maps the incoming boundary
basis to the outgoing one, so **columns are incoming basis elements and rows
are outgoing**. Composition is ``late @ early``.

Two theories are supported:

* ``closed`` -- basis is conjugation orbits of ``Hom(domain, G)``; the entry
  at ``([a'], [a])`` counts homs ``b`` of the total group with ``b∘in_map``
  equal to a fixed representative ``a`` and ``b∘out_map`` in the orbit ``[a']``.
* ``relative`` -- basis is all of ``Hom(domain, G)``; the entry at
  ``(d2, g)`` counts homs ``b`` with ``b∘in_map = g`` and ``b∘out_map = d2``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DataConsistencyError, DivisibilityError, MalformedWordError, ShapeError
from .groups import FiniteGroup
from .presentations import (
    DEFAULT_WORK_BUDGET,
    Presentation,
    Word,
    check_word,
    conjugate_images,
    count_homs,
    evaluate,
    image_orbits,
    iter_hom_images,
)

CLOSED = "closed"
RELATIVE = "relative"

Label = tuple[int, ...]


@dataclass(frozen=True)
class CobordismData:
    """Presented fundamental-domain cobordism with its two boundary inclusions.

    ``in_map`` holds one word in the total group's generators per domain
    generator, ``out_map`` one per codomain generator. Any basepoint path is
    assumed already absorbed into ``out_map``.
    """

    total: Presentation
    domain: Presentation
    codomain: Presentation
    in_map: tuple[Word, ...]
    out_map: tuple[Word, ...]
    relative: bool = False

    def __post_init__(self):
        n = self.total.gen_count
        object.__setattr__(self, "in_map", tuple(check_word(w, n) for w in self.in_map))
        object.__setattr__(self, "out_map", tuple(check_word(w, n) for w in self.out_map))
        if len(self.in_map) != self.domain.gen_count:
            raise MalformedWordError("in_map needs one word per domain generator")
        if len(self.out_map) != self.codomain.gen_count:
            raise MalformedWordError("out_map needs one word per codomain generator")

    @classmethod
    def identity(cls, rank: int, relative: bool = False) -> "CobordismData":
        F = Presentation.free(rank)
        gens = tuple((i + 1,) for i in range(rank))
        return cls(F, F, F, gens, gens, relative)

    @classmethod
    def twisted_product(cls, rank: int, phi: Sequence[Word],
                        relative: bool = False) -> "CobordismData":
        """Product cobordism on a free group whose outgoing end is glued by ``phi``."""
        F = Presentation.free(rank)
        return cls(F, F, F, tuple((i + 1,) for i in range(rank)), tuple(phi), relative)

    def glue(self, later: "CobordismData") -> "CobordismData":
        """Stack ``later`` on top of ``self`` (van Kampen by generator union).

        The glued total group has the generators of both pieces and extra
        relators identifying ``self.out_map`` with ``later.in_map``.
        """
        if self.codomain != later.domain:
            raise ShapeError("outgoing boundary of the earlier piece must match the later domain")
        n1 = self.total.gen_count
        shift = lambda w: tuple(x + n1 if x > 0 else x - n1 for x in w)
        rels = list(self.total.relators) + [shift(r) for r in later.total.relators]
        for a, b in zip(self.out_map, later.in_map):
            rels.append(a + tuple(-x for x in reversed(shift(b))))
        total = Presentation(n1 + later.total.gen_count, tuple(rels))
        return CobordismData(total, self.domain, later.codomain, self.in_map,
                             tuple(shift(w) for w in later.out_map), self.relative)


@dataclass(frozen=True)
class TransferMatrix:
    entries: linalg.Matrix
    rows: tuple[Label, ...]
    cols: tuple[Label, ...]
    theory: str = RELATIVE
    # (column index, row index, total-group images) per counted hom
    edges: tuple[tuple[int, int, Label], ...] | None = field(default=None, compare=False,
                                                             repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_dict(self) -> dict:
        return {
            "theory": self.theory,
            "rows": [list(r) for r in self.rows],
            "cols": [list(c) for c in self.cols],
            "shape": list(self.shape),
            "entries": [x for row in self.entries for x in row],
        }


def _boundary_images(cob: CobordismData, G: FiniteGroup, budget: int):
    """Yield ``(beta, beta∘in_map, beta∘out_map)`` for every hom of the total group."""
    checked: dict[tuple[Label, bool], None] = {}
    for beta in iter_hom_images(cob.total, G, budget):
        a_in = tuple(evaluate(beta, w, G) for w in cob.in_map)
        a_out = tuple(evaluate(beta, w, G) for w in cob.out_map)
        for side, img, pres in ((False, a_in, cob.domain), (True, a_out, cob.codomain)):
            if (img, side) in checked:
                continue
            for rel in pres.relators:
                if evaluate(img, rel, G) != 0:
                    end = "codomain" if side else "domain"
                    raise DataConsistencyError(
                        f"hom {beta} of the total group does not restrict to a hom of the {end}")
            checked[(img, side)] = None
        yield beta, a_in, a_out


def hom_basis(P: Presentation, G: FiniteGroup, budget: int = DEFAULT_WORK_BUDGET) -> list[Label]:
    return list(iter_hom_images(P, G, budget))


def orbit_basis(P: Presentation, G: FiniteGroup, budget: int = DEFAULT_WORK_BUDGET):
    """Conjugation orbits of ``Hom(P, G)`` as lists of image tuples, least member first."""
    homs = hom_basis(P, G, budget)
    return [[homs[i] for i in orbit] for orbit in image_orbits(homs, G)]


def transfer_matrix_relative(cob: CobordismData, G: FiniteGroup,
                             budget: int = DEFAULT_WORK_BUDGET,
                             keep_edges: bool = True) -> TransferMatrix:
    cols = hom_basis(cob.domain, G, budget)
    rows = cols if cob.codomain == cob.domain else hom_basis(cob.codomain, G, budget)
    col_index = {c: i for i, c in enumerate(cols)}
    row_index = {r: i for i, r in enumerate(rows)}
    counts: Counter = Counter()
    edges = []
    for beta, a_in, a_out in _boundary_images(cob, G, budget):
        key = (row_index[a_out], col_index[a_in])
        counts[key] += 1
        if keep_edges:
            edges.append((key[1], key[0], beta))
    entries = tuple(tuple(counts[(i, j)] for j in range(len(cols))) for i in range(len(rows)))
    return TransferMatrix(entries, tuple(rows), tuple(cols), RELATIVE,
                          tuple(edges) if keep_edges else None)


def transfer_matrix(cob: CobordismData, G: FiniteGroup, budget: int = DEFAULT_WORK_BUDGET,
                    representative: str = "least") -> TransferMatrix:
    """Closed-theory matrix on the conjugation-orbit bases.

    ``representative`` selects which orbit member is used as the fixed
    incoming hom for each column (``"least"`` or ``"greatest"``); basis
    labels are always the least member, so both choices are directly
    comparable.
    """
    if representative not in ("least", "greatest"):
        raise ValueError("representative must be 'least' or 'greatest'")
    col_orbits = orbit_basis(cob.domain, G, budget)
    row_orbits = (col_orbits if cob.codomain == cob.domain
                  else orbit_basis(cob.codomain, G, budget))
    pick = 0 if representative == "least" else -1
    chosen = {orbit[pick]: j for j, orbit in enumerate(col_orbits)}
    row_of = {img: i for i, orbit in enumerate(row_orbits) for img in orbit}
    counts: Counter = Counter()
    for _, a_in, a_out in _boundary_images(cob, G, budget):
        j = chosen.get(a_in)
        if j is not None:
            counts[(row_of[a_out], j)] += 1
    entries = tuple(tuple(counts[(i, j)] for j in range(len(col_orbits)))
                    for i in range(len(row_orbits)))
    return TransferMatrix(entries, tuple(o[0] for o in row_orbits),
                          tuple(o[0] for o in col_orbits), CLOSED)


def build_matrix(cob: CobordismData, G: FiniteGroup,
                 budget: int = DEFAULT_WORK_BUDGET) -> TransferMatrix:
    if cob.relative:
        return transfer_matrix_relative(cob, G, budget)
    return transfer_matrix(cob, G, budget)


def compose(late: TransferMatrix, early: TransferMatrix) -> TransferMatrix:
    if late.theory != early.theory:
        raise ShapeError("cannot compose matrices from different theories")
    if early.rows != late.cols:
        raise ShapeError("basis mismatch: early rows must equal late columns")
    return TransferMatrix(linalg.matmul(late.entries, early.entries), late.rows, early.cols,
                          late.theory)


def closed_invariant(P: Presentation, G: FiniteGroup,
                     budget: int = DEFAULT_WORK_BUDGET) -> Fraction:
    """``#Hom(P, G) / #G``, cross-checked against the sum of inverse centralizer orders."""
    homs = hom_basis(P, G, budget)
    direct = Fraction(len(homs), G.order)
    if centralizer_sum(P, G, budget, homs) != direct:
        raise DataConsistencyError("orbit sum disagrees with #Hom/#G")
    return direct


def centralizer_sum(P: Presentation, G: FiniteGroup, budget: int = DEFAULT_WORK_BUDGET,
                    homs: list[Label] | None = None) -> Fraction:
    """Sum over conjugation classes of homs of ``1 / #C_beta``.

    ``C_beta`` is computed directly as the centralizer of the image, not
    from the orbit size.
    """
    if homs is None:
        homs = hom_basis(P, G, budget)
    total = Fraction(0)
    for orbit in image_orbits(homs, G):
        total += Fraction(1, G.centralizer_order(homs[orbit[0]]))
    return total


def closed_invariant_relative(P: Presentation, G: FiniteGroup,
                              budget: int = DEFAULT_WORK_BUDGET) -> int:
    return count_homs(P, G, budget)


def _square(M: TransferMatrix | Sequence[Sequence[int]]):
    if isinstance(M, TransferMatrix):
        if not M.is_square:
            raise ShapeError("matrix is not an endomorphism (row basis != column basis)")
        return M.entries
    rows, cols = linalg.shape(M)
    if rows != cols:
        raise ShapeError("matrix is not square")
    return M


def cover_count(M: TransferMatrix, d: int, G: FiniteGroup) -> int:
    """Hom count of the d-fold cyclic cover: ``#G·tr(M^d)`` (closed) or ``tr(M^d)`` (relative)."""
    t = linalg.trace(linalg.matpow(_square(M), d))
    return G.order * t if M.theory == CLOSED else t


def cover_counts(M: TransferMatrix, G: FiniteGroup, dmax: int) -> list[int]:
    traces = linalg.trace_powers(_square(M), dmax)
    return [G.order * t for t in traces] if M.theory == CLOSED else traces


def branched_cover_counts(M: TransferMatrix, G: FiniteGroup, mu: int, dmax: int) -> list[int]:
    """``#Hom(pi_1(B_d), G)`` for ``d = 1..dmax`` from a relative matrix.

    The relative trace counts homs of ``pi_1(B_d) * F_(mu-1)``, so it must be
    divisible by ``#G^(mu-1)``; a remainder signals a wrong ``mu``.
    """
    if M.theory != RELATIVE:
        raise ShapeError("branched counts need a relative-theory matrix")
    if mu < 1:
        raise ValueError("mu must be at least 1")
    scale = G.order ** (mu - 1)
    out = []
    for d, t in enumerate(linalg.trace_powers(_square(M), dmax), start=1):
        q, r = divmod(t, scale)
        if r:
            raise DivisibilityError(f"trace at d={d} is {t}, not divisible by {G.order}^{mu - 1}")
        out.append(q)
    return out


def periodic_point_counts(M, dmax: int) -> list[int]:
    return linalg.trace_powers(_square(M), dmax)


def char_poly(M) -> list[int]:
    return linalg.char_poly(_square(M))


@dataclass(frozen=True)
class RecursionCheck:
    ok: bool
    first_violation: int | None = None  # 0-based index into counts

    def __bool__(self):
        return self.ok


def verify_recursion(counts: Sequence[int], charpoly: Sequence[int]) -> RecursionCheck:
    """Check the linear recurrence given by a monic characteristic polynomial.

    With ``charpoly = [1, c1, ..., cn]`` and ``counts[k]`` the value at
    ``d = k + 1``, every ``counts[k]`` with ``k >= n`` must equal
    ``-(c1 counts[k-1] + ... + cn counts[k-n])``.
    """
    n = len(charpoly) - 1
    if charpoly[0] != 1:
        raise ValueError("characteristic polynomial must be monic")
    if len(counts) <= n:
        raise ValueError(f"need more than {n} terms to test a degree-{n} recursion")
    for k in range(n, len(counts)):
        predicted = -sum(charpoly[i] * counts[k - i] for i in range(1, n + 1))
        if counts[k] != predicted:
            return RecursionCheck(False, k)
    return RecursionCheck(True)


@dataclass(frozen=True)
class DirectedMultigraph:
    """Vertices with ``adjacency[v][w]`` parallel edges ``v -> w``."""

    labels: tuple[Label, ...]
    adjacency: linalg.Matrix
    edges: tuple[tuple[int, int, Label], ...] | None = field(default=None, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(map(sum, self.adjacency))

    def transfer_entries(self) -> linalg.Matrix:
        """Adjacency read back in the column-incoming transfer-matrix convention."""
        return linalg.transpose(self.adjacency)


def graph_hat(M: TransferMatrix) -> DirectedMultigraph:
    """Edge-shift graph of a square relative matrix; one edge per counted hom."""
    if M.theory != RELATIVE:
        raise ShapeError("graph_hat needs a relative-theory matrix")
    entries = _square(M)
    edges = None
    if M.edges is not None:
        edges = tuple(sorted(M.edges))
    return DirectedMultigraph(M.cols, linalg.transpose(entries), edges)


def graph_folded(ghat: DirectedMultigraph, G: FiniteGroup) -> DirectedMultigraph:
    """Quotient of ``ghat`` by conjugation of its hom labels.

    The edge count ``[v] -> [w]`` is the number of edges from the least
    member ``v`` of its orbit into any vertex of the orbit of ``w``.
    """
    labels = list(ghat.labels)
    index = {lab: i for i, lab in enumerate(labels)}
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    orbit_of = [-1] * len(labels)
    reps = []
    for i in order:
        if orbit_of[i] >= 0:
            continue
        members = {index[conjugate_images(G, g, labels[i])] for g in range(G.order)}
        for j in members:
            orbit_of[j] = len(reps)
        reps.append(i)
    k = len(reps)
    adj = [[0] * k for _ in range(k)]
    for a, v in enumerate(reps):
        for w, mult in enumerate(ghat.adjacency[v]):
            if mult:
                adj[a][orbit_of[w]] += mult
    edges = None
    if ghat.edges is not None:
        rep_pos = {v: a for a, v in enumerate(reps)}
        edges = tuple((rep_pos[s], orbit_of[t], lab) for s, t, lab in ghat.edges
                      if s in rep_pos)
    return DirectedMultigraph(tuple(labels[v] for v in reps), linalg.as_matrix(adj), edges)


def to_dot(graph: DirectedMultigraph, edge_labels: bool = False, name: str = "G") -> str:
    def fmt(label):
        return "(" + ",".join(map(str, label)) + ")"

    lines = [f"digraph {name} {{"]
    for i, lab in enumerate(graph.labels):
        lines.append(f'  v{i} [label="{fmt(lab)}"];')
    if edge_labels and graph.edges is not None:
        for s, t, lab in graph.edges:
            lines.append(f'  v{s} -> v{t} [label="{fmt(lab)}"];')
    else:
        for s, row in enumerate(graph.adjacency):
            for t, mult in enumerate(row):
                for _ in range(mult):
                    lines.append(f"  v{s} -> v{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"
