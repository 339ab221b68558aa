"""Strong shift equivalence moves, bounded search, and shift-equivalence invariants.

A move ``(R, S)`` is an elementary equivalence from ``A = R S`` to
``B = S R``. The search here only ever *finds* chains of moves; failing to
find one says nothing about whether the matrices are equivalent. Disproofs
come from the invariants, which agree on any pair joined by a move.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import linalg
from .errors import ShapeError


@dataclass(frozen=True)
class NNMatrix:
    rows: linalg.Matrix

    def __post_init__(self):
        rows = linalg.as_matrix(self.rows)
        if len({len(r) for r in rows}) > 1:
            raise ShapeError("ragged matrix")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, A) -> "NNMatrix":
        if isinstance(A, NNMatrix):
            return A
        entries = getattr(A, "entries", A)
        return cls(entries)

    @property
    def shape(self) -> tuple[int, int]:
        return linalg.shape(self.rows)

    @property
    def is_square(self) -> bool:
        m, n = self.shape
        return m == n

    def __matmul__(self, other: "NNMatrix") -> "NNMatrix":
        return NNMatrix(linalg.matmul(self.rows, other.rows))

    def transpose(self) -> "NNMatrix":
        return NNMatrix(linalg.transpose(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SSEMove:
    R: NNMatrix
    S: NNMatrix

    def __post_init__(self):
        R, S = NNMatrix.of(self.R), NNMatrix.of(self.S)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "S", S)
        (m, k), (k2, m2) = R.shape, S.shape
        if k != k2 or m != m2:
            raise ShapeError(f"R is {m}x{k} but S is {k2}x{m2}")

    @property
    def RS(self) -> NNMatrix:
        return self.R @ self.S

    @property
    def SR(self) -> NNMatrix:
        return self.S @ self.R


@dataclass(frozen=True)
class SSECertificate:
    """Chain of moves from ``start`` to ``end``.

    A forward move steps from ``R S`` to ``S R``; a backward one from
    ``S R`` to ``R S``.
    """

    start: NNMatrix
    end: NNMatrix
    moves: tuple[SSEMove, ...] = ()
    forward: tuple[bool, ...] = ()

    def __len__(self):
        return len(self.moves)

    def chain(self) -> list[NNMatrix]:
        mats = [self.start]
        for move, fwd in zip(self.moves, self.forward):
            mats.append(move.SR if fwd else move.RS)
        return mats

    def verify(self) -> bool:
        if len(self.moves) != len(self.forward):
            return False
        current = self.start
        for move, fwd in zip(self.moves, self.forward):
            src, dst = (move.RS, move.SR) if fwd else (move.SR, move.RS)
            if src != current:
                return False
            current = dst
        return current == self.end


def is_elementary_equivalence(A, B, move: SSEMove) -> bool:
    A, B = NNMatrix.of(A), NNMatrix.of(B)
    (m, k), (k2, m2) = move.R.shape, move.S.shape
    if A.shape != (m, m) or B.shape != (k, k):
        raise ShapeError(f"move shapes {m}x{k}, {k2}x{m2} do not fit A {A.shape} and B {B.shape}")
    return move.RS == A and move.SR == B


def permutation_matrix(perm: Sequence[int]) -> NNMatrix:
    """``P`` with ``P e_i = e_perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation")
    rows = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[p][i] = 1
    return NNMatrix(rows)


def permutation_similarity_move(A, perm: Sequence[int]) -> SSEMove:
    """Move from ``A`` to ``P A P^-1``: ``R = A P^-1`` and ``S = P``."""
    A = NNMatrix.of(A)
    P = permutation_matrix(perm)
    return SSEMove(A @ P.transpose(), P)


def _column_solutions(R: linalg.Matrix, target: Sequence[int], bound: int) -> list[tuple[int, ...]]:
    m, k = linalg.shape(R)
    sols = []
    s = [0] * k
    residual = list(target)

    def rec(j):
        if j == k:
            if not any(residual):
                sols.append(tuple(s))
            return
        col = [R[i][j] for i in range(m)]
        for v in range(bound + 1):
            if v and any(c and c * v > r for c, r in zip(col, residual)):
                break
            s[j] = v
            for i in range(m):
                residual[i] -= col[i] * v
            rec(j + 1)
            for i in range(m):
                residual[i] += col[i] * v
        s[j] = 0

    rec(0)
    return sols


def elementary_factorizations(A: NNMatrix, k: int, entry_bound: int,
                              budget: list[int] | None = None) -> Iterator[SSEMove]:
    """All ``A = R S`` with ``R`` of size ``m x k`` and entries in ``0..entry_bound``.

    ``R`` runs in lexicographic order of its row-major entries and ``S`` in
    lexicographic order of its solution columns. Factorizations where ``R``
    has a zero column or ``S`` a zero row are skipped: they only add an
    isolated, inessential state. ``budget`` is a one-element countdown of ``R``
    candidates; the iteration stops silently once it reaches zero.
    """
    m, _ = A.shape
    cols = linalg.transpose(A.rows)
    for flat in itertools.product(range(entry_bound + 1), repeat=m * k):
        if budget is not None:
            if budget[0] <= 0:
                return
            budget[0] -= 1
        R = tuple(flat[i * k:(i + 1) * k] for i in range(m))
        if any(not any(R[i][j] for i in range(m)) for j in range(k)):
            continue
        per_col = []
        for c in cols:
            sols = _column_solutions(R, c, entry_bound)
            if not sols:
                break
            per_col.append(sols)
        else:
            for choice in itertools.product(*per_col):
                S = linalg.transpose(choice)
                if any(not any(row) for row in S):
                    continue
                yield SSEMove(NNMatrix(R), NNMatrix(S))


@dataclass(frozen=True)
class SSESearchResult:
    certificate: SSECertificate | None
    status: str  # "found", "not-found-within-bounds" or "budget-exhausted"
    explored: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def sse_search(A, B, max_depth: int = 3, max_dim: int | None = None,
               entry_bound: int | None = None, max_work: int = 200_000) -> SSESearchResult:
    """Bidirectional breadth-first search for a chain of elementary equivalences.

    Both endpoints are expanded one layer at a time; inner dimensions run
    from 1 to ``max_dim`` and factorizations follow
    :func:`elementary_factorizations` order, so the first meeting found is
    a shortest certificate within the bounds.
    """
    A, B = NNMatrix.of(A), NNMatrix.of(B)
    if not (A.is_square and B.is_square):
        raise ShapeError("SSE search needs square matrices")
    if A == B:
        return SSESearchResult(SSECertificate(A, B), "found", 1)
    if max_dim is None:
        max_dim = max(A.shape[0], B.shape[0]) + 1
    if entry_bound is None:
        entry_bound = max([1] + [x for M in (A, B) for r in M.rows for x in r])
    budget = [max_work]

    # state -> list of (move, forward flag) leading from the side's root to the state
    paths = ({A: []}, {B: []})
    frontiers = ([A], [B])
    depth = (0, 0)
    exhausted_budget = False
    while depth[0] + depth[1] < max_depth:
        side = 0 if depth[0] <= depth[1] else 1
        own, other = paths[side], paths[1 - side]
        new_frontier = []
        meeting = None
        for state in frontiers[side]:
            for k in range(1, max_dim + 1):
                for move in elementary_factorizations(state, k, entry_bound, budget):
                    nxt = move.SR
                    if nxt in own:
                        continue
                    own[nxt] = own[state] + [(move, True)]
                    new_frontier.append(nxt)
                    if nxt in other and meeting is None:
                        meeting = nxt
                if budget[0] <= 0:
                    exhausted_budget = True
                if meeting is not None or exhausted_budget:
                    break
            if meeting is not None or exhausted_budget:
                break
        if meeting is not None:
            a_path = paths[0][meeting]
            b_path = paths[1][meeting]
            moves = [m for m, _ in a_path] + [m for m, _ in reversed(b_path)]
            flags = [True] * len(a_path) + [False] * len(b_path)
            cert = SSECertificate(A, B, tuple(moves), tuple(flags))
            if not cert.verify():
                raise AssertionError("search produced an invalid certificate")
            return SSESearchResult(cert, "found", max_work - budget[0])
        if exhausted_budget:
            return SSESearchResult(None, "budget-exhausted", max_work)
        frontiers = (new_frontier, frontiers[1]) if side == 0 else (frontiers[0], new_frontier)
        depth = (depth[0] + 1, depth[1]) if side == 0 else (depth[0], depth[1] + 1)
        if not new_frontier:
            break
    return SSESearchResult(None, "not-found-within-bounds", max_work - budget[0])


@dataclass(frozen=True)
class ShiftInvariants:
    """Computable invariants of the shift-equivalence class of a square matrix.

    Polynomials are integer coefficient tuples. ``zeta_denominator`` is
    ``det(I - tA)`` in ascending powers of ``t`` (the zeta function is
    ``zeta_numerator / zeta_denominator``); ``cp_away_from_zero`` and the
    ``invertible_part`` invariant factors are in descending powers.
    ``bowen_franks`` lists all invariant factors of ``I - A``, ``0`` marking
    a free summand.
    """

    zeta_numerator: tuple[int, ...]
    zeta_denominator: tuple[int, ...]
    cp_away_from_zero: tuple[int, ...]
    bowen_franks: tuple[int, ...]
    invertible_part: tuple[tuple[int, ...], ...]
    dimension: int

    @property
    def bowen_franks_group(self) -> tuple[int, ...]:
        """Invariant factors of the cokernel with unit factors dropped."""
        return tuple(x for x in self.bowen_franks if x != 1)

    @property
    def invertible_dimension(self) -> int:
        return sum(len(p) - 1 for p in self.invertible_part)


def bowen_franks(A) -> tuple[int, ...]:
    A = NNMatrix.of(A)
    n = A.shape[0]
    I_minus_A = [[(1 if i == j else 0) - A.rows[i][j] for j in range(n)] for i in range(n)]
    return tuple(linalg.smith_normal_form(I_minus_A)[0])


def invertible_part(A) -> tuple[tuple[int, ...], ...]:
    """Rational canonical form data of ``A`` on its eventual image.

    Returned as the invariant factors (monic, descending coefficients) of the
    restriction; two matrices have similar invertible parts over Q exactly
    when these tuples agree.
    """
    B = linalg.eventual_image_restriction(NNMatrix.of(A).rows)
    return tuple(linalg.to_integer_descending(p) for p in linalg.polynomial_invariant_factors(B))


def shift_invariants(A) -> ShiftInvariants:
    A = NNMatrix.of(A)
    if not A.is_square:
        raise ShapeError("shift invariants need a square matrix")
    cp = linalg.strip_zero_roots(linalg.char_poly(A.rows))
    return ShiftInvariants(
        zeta_numerator=(1,),
        # det(I - tA) ascending equals the char poly away from zero read descending
        zeta_denominator=cp,
        cp_away_from_zero=cp,
        bowen_franks=bowen_franks(A),
        invertible_part=invertible_part(A),
        dimension=A.shape[0],
    )


INVARIANT_FIELDS = ("zeta", "cp_away_from_zero", "bowen_franks", "invertible_part")


def invariants_agree(inv1: ShiftInvariants, inv2: ShiftInvariants) -> tuple[bool, list[str]]:
    differing = []
    if (inv1.zeta_numerator, inv1.zeta_denominator) != (inv2.zeta_numerator, inv2.zeta_denominator):
        differing.append("zeta")
    if inv1.cp_away_from_zero != inv2.cp_away_from_zero:
        differing.append("cp_away_from_zero")
    if inv1.bowen_franks_group != inv2.bowen_franks_group:
        differing.append("bowen_franks")
    if sorted(inv1.invertible_part) != sorted(inv2.invertible_part):
        differing.append("invertible_part")
    return not differing, differing


def smith_normal_form(M: Sequence[Sequence[int]]):
    return linalg.smith_normal_form(M)
