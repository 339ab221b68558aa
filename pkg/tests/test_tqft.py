import random
from fractions import Fraction

import pytest

import oracles
from helpers import random_automorphism, random_nonnegative, random_presentation
from shiftcover import (
    CobordismData,
    DataConsistencyError,
    DivisibilityError,
    Presentation,
    ShapeError,
    branched_cover_counts,
    closed_invariant,
    count_homs,
    cover_count,
    cyclic,
    dihedral,
    fibered_to_cobordism,
    graph_folded,
    graph_hat,
    mapping_torus_presentation,
    symmetric,
    transfer_matrix,
    transfer_matrix_relative,
    verify_recursion,
)
from shiftcover import linalg
from shiftcover.presentations import evaluate
from shiftcover.tqft import centralizer_sum, compose, cover_counts, hom_basis, to_dot

F1 = Presentation.free(1)
F2 = Presentation.free(2)


def disjoint_ends(rank):
    """Cobordism whose two ends are independent free factors."""
    total = Presentation.free(2 * rank)
    return CobordismData(total, Presentation.free(rank), Presentation.free(rank),
                         tuple((i + 1,) for i in range(rank)),
                         tuple((rank + i + 1,) for i in range(rank)))


def conjugating(rank):
    """Ends identified through conjugation by an extra generator."""
    t = rank + 1
    total = Presentation.free(rank + 1)
    F = Presentation.free(rank)
    return CobordismData(total, F, F, tuple((i + 1,) for i in range(rank)),
                         tuple((t, i + 1, -t) for i in range(rank)))


class TestShapes:
    def test_identity_relative(self, S3):
        M = transfer_matrix_relative(CobordismData.identity(2, True), S3)
        assert M.entries == linalg.identity(36)
        assert M.rows == M.cols == tuple(hom_basis(F2, S3))

    def test_identity_closed(self, S3):
        M = transfer_matrix(CobordismData.identity(2), S3)
        assert M.entries == linalg.identity(11)

    def test_disjoint_ends_all_ones(self, S3):
        M = transfer_matrix_relative(disjoint_ends(1), S3)
        assert M.entries == tuple((1,) * 6 for _ in range(6))
        # closed entry at ([a'], [a]) is the size of the orbit [a']
        C = transfer_matrix(disjoint_ends(1), S3)
        assert C.shape == (3, 3)
        for label, row in zip(C.rows, C.entries):
            size = len({S3.conj(g, label[0]) for g in range(6)})
            assert row == (size,) * 3

    def test_conjugating_closed_is_scaled_identity(self, S3):
        C = transfer_matrix(conjugating(1), S3)
        assert C.entries == tuple(tuple(6 * (i == j) for j in range(3)) for i in range(3))

    def test_twisted_relative_is_permutation(self, trefoil, S3):
        M = transfer_matrix_relative(fibered_to_cobordism(trefoil, True), S3)
        assert M.shape == (36, 36)
        assert all(sum(row) == 1 for row in M.entries)
        assert all(sum(col) == 1 for col in zip(*M.entries))
        # column gamma has its 1 in row gamma∘phi
        for j, gamma in enumerate(M.cols):
            target = tuple(evaluate(gamma, w, S3) for w in trefoil.monodromy)
            assert M.entries[M.rows.index(target)][j] == 1

    def test_column_sums_relative(self, S3):
        rng = random.Random(3)
        for _ in range(5):
            phi = random_automorphism(rng, 2)
            M = transfer_matrix_relative(CobordismData.twisted_product(2, phi, True), S3)
            assert all(sum(col) == 1 for col in zip(*M.entries))

    def test_inconsistent_boundary(self, C3):
        cob = CobordismData(F1, Presentation(1, ((1, 1),)), Presentation(1, ((1, 1),)),
                            ((1,),), ((1,),))
        with pytest.raises(DataConsistencyError):
            transfer_matrix_relative(cob, C3)

    def test_to_dict(self, C3):
        d = transfer_matrix_relative(CobordismData.identity(1, True), C3).to_dict()
        assert d["shape"] == [3, 3]
        assert d["entries"] == [1, 0, 0, 0, 1, 0, 0, 0, 1]
        assert d["theory"] == "relative"


class TestFunctoriality:
    @pytest.mark.parametrize("relative", [True, False])
    def test_glue_twisted(self, relative):
        rng = random.Random(11 + relative)
        for G in (symmetric(3), dihedral(4), cyclic(4)):
            a, b = random_automorphism(rng, 2), random_automorphism(rng, 2)
            c1 = CobordismData.twisted_product(2, a, relative)
            c2 = CobordismData.twisted_product(2, b, relative)
            build = transfer_matrix_relative if relative else transfer_matrix
            glued = build(c1.glue(c2), G)
            assert glued == compose(build(c2, G), build(c1, G))

    @pytest.mark.parametrize("relative", [True, False])
    def test_glue_nontrivial_pieces(self, S3, relative):
        c1, c2 = disjoint_ends(1), conjugating(1)
        c1 = CobordismData(c1.total, c1.domain, c1.codomain, c1.in_map, c1.out_map, relative)
        c2 = CobordismData(c2.total, c2.domain, c2.codomain, c2.in_map, c2.out_map, relative)
        build = transfer_matrix_relative if relative else transfer_matrix
        for x, y in ((c1, c2), (c2, c1), (c2, c2)):
            assert build(x.glue(y), S3) == compose(build(y, S3), build(x, S3))

    def test_compose_rejects_mismatch(self, S3, C3):
        A = transfer_matrix_relative(CobordismData.identity(1, True), S3)
        B = transfer_matrix_relative(CobordismData.identity(1, True), C3)
        with pytest.raises(ShapeError):
            compose(A, B)
        with pytest.raises(ShapeError):
            compose(A, transfer_matrix(CobordismData.identity(1), S3))


class TestWellDefined:
    def test_greatest_representative(self, trefoil, S3):
        cob = fibered_to_cobordism(trefoil, False)
        assert transfer_matrix(cob, S3, representative="greatest") == transfer_matrix(cob, S3)

    def test_greatest_representative_nontrivial(self, S3):
        for cob in (disjoint_ends(1), conjugating(1), conjugating(2)):
            assert (transfer_matrix(cob, S3, representative="greatest")
                    == transfer_matrix(cob, S3))

    def test_bad_representative(self, S3):
        with pytest.raises(ValueError):
            transfer_matrix(CobordismData.identity(1), S3, representative="middle")


class TestCounts:
    def test_torus_closed_invariant(self, S3):
        torus = Presentation(2, ((1, 2, -1, -2),))
        assert closed_invariant(torus, S3) == 3
        assert closed_invariant(F1, S3) == 1

    def test_centralizer_sum_random(self, small_groups):
        rng = random.Random(5)
        for _ in range(10):
            P = random_presentation(rng)
            for G in small_groups:
                assert centralizer_sum(P, G) == Fraction(count_homs(P, G), G.order)

    def test_trefoil_c3(self, trefoil, C3):
        M = transfer_matrix_relative(fibered_to_cobordism(trefoil, True), C3)
        assert branched_cover_counts(M, C3, 1, 6) == [1, 3, 1, 3, 1, 9]

    def test_trefoil_closed_matches_mapping_torus(self, trefoil, C3):
        M = transfer_matrix(fibered_to_cobordism(trefoil, False), C3)
        for d in range(1, 5):
            P = mapping_torus_presentation(2, trefoil.monodromy, d)
            assert cover_count(M, d, C3) == count_homs(P, C3)
        assert cover_counts(M, C3, 4) == [3, 9, 3, 9]

    def test_identity_monodromy_constant(self, S3):
        M = transfer_matrix_relative(CobordismData.identity(2, True), S3)
        assert branched_cover_counts(M, S3, 1, 5) == [36] * 5

    def test_wrong_mu(self, trefoil, S3):
        M = transfer_matrix_relative(fibered_to_cobordism(trefoil, True), S3)
        with pytest.raises(DivisibilityError):
            branched_cover_counts(M, S3, 2, 3)

    def test_closed_matrix_rejected_for_branched(self, trefoil, S3):
        M = transfer_matrix(fibered_to_cobordism(trefoil, False), S3)
        with pytest.raises(ShapeError):
            branched_cover_counts(M, S3, 1, 3)


class TestRecursion:
    def test_random_matrices(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(1, 5)
            A = random_nonnegative(rng, n, n)
            counts = [oracles.trace_power_naive(A, d) for d in range(1, 2 * n + 5)]
            assert verify_recursion(counts, linalg.char_poly(A))

    def test_corruption_detected(self):
        A = [[1, 1], [1, 0]]
        counts = linalg.trace_powers(A, 8)
        counts[5] += 1
        check = verify_recursion(counts, linalg.char_poly(A))
        assert not check and check.first_violation == 5

    def test_too_short(self):
        with pytest.raises(ValueError):
            verify_recursion([1, 2], [1, -1, -1])


class TestGraphs:
    def test_hat_roundtrip(self, trefoil, S3):
        M = transfer_matrix_relative(fibered_to_cobordism(trefoil, True), S3)
        g = graph_hat(M)
        assert g.vertex_count == 36 and g.edge_count == 36
        assert g.transfer_entries() == M.entries

    def test_folded_matches_closed(self, trefoil, S3):
        M = transfer_matrix_relative(fibered_to_cobordism(trefoil, True), S3)
        C = transfer_matrix(fibered_to_cobordism(trefoil, False), S3)
        folded = graph_folded(graph_hat(M), S3)
        assert folded.vertex_count == 11
        assert folded.labels == C.cols
        assert folded.transfer_entries() == C.entries

    def test_abelian_folding_is_identity(self, trefoil, C3):
        g = graph_hat(transfer_matrix_relative(fibered_to_cobordism(trefoil, True), C3))
        assert graph_folded(g, C3) == g

    def test_identity_self_loops(self, C3):
        g = graph_hat(transfer_matrix_relative(CobordismData.identity(1, True), C3))
        dot = to_dot(g)
        assert dot.startswith("digraph G {")
        assert dot.count("->") == 3
        for i in range(3):
            assert f"v{i} -> v{i};" in dot

    def test_dot_edge_labels(self, C3):
        g = graph_hat(transfer_matrix_relative(CobordismData.identity(1, True), C3))
        assert 'v1 -> v1 [label="(1)"];' in to_dot(g, edge_labels=True)

    def test_hat_needs_relative(self, S3):
        with pytest.raises(ShapeError):
            graph_hat(transfer_matrix(CobordismData.identity(1), S3))
