import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from shiftcover import (
    BudgetError,
    Homomorphism,
    MalformedWordError,
    Presentation,
    branched_quotient_presentation,
    count_homs,
    cyclic,
    dihedral,
    enumerate_homs,
    evaluate_word,
    free_product_with_free,
    hom_classes,
    mapping_torus_presentation,
    symmetric,
)
from shiftcover.presentations import (
    automorphism_power,
    free_reduce,
    inverse_word,
    iter_hom_images,
    substitute,
)

TRIVIAL = Presentation(0, ())


def words(gen_count, max_len=6):
    letters = st.sampled_from([x for g in range(1, gen_count + 1) for x in (g, -g)])
    return st.lists(letters, max_size=max_len).map(tuple)


@st.composite
def presentations(draw, max_gens=2, max_rels=2, max_len=6):
    n = draw(st.integers(1, max_gens))
    rels = draw(st.lists(words(n, max_len), max_size=max_rels))
    return Presentation(n, tuple(rels))


class TestEvaluate:
    def test_cancelling_word(self, S3):
        h = Homomorphism((3,), S3, Presentation.free(1))
        assert evaluate_word(h, (1, -1)) == 0

    def test_order_three(self, C3):
        h = Homomorphism((1,), C3, Presentation.free(1))
        assert evaluate_word(h, (1, 1, 1)) == 0

    def test_conjugate_transposition(self, S3):
        a = S3.index_of((1, 0, 2))
        b = S3.index_of((0, 2, 1))
        h = Homomorphism((a, b), S3, Presentation.free(2))
        assert S3.elements[evaluate_word(h, (1, 2, -1))] == (2, 1, 0)

    def test_out_of_range_letter(self, S3):
        h = Homomorphism((1,), S3, Presentation.free(1))
        with pytest.raises(MalformedWordError):
            evaluate_word(h, (2,))

    def test_presentation_validates_letters(self):
        with pytest.raises(MalformedWordError):
            Presentation(1, ((1, 2),))


class TestEnumerate:
    def test_free_rank_two(self, S3):
        assert len(enumerate_homs(Presentation.free(2), S3)) == 36

    def test_order_three_relator(self, S3):
        homs = enumerate_homs(Presentation(1, ((1, 1, 1),)), S3)
        assert len(homs) == 3
        assert sorted(S3.element_order(h.images[0]) for h in homs) == [1, 3, 3]

    def test_trivial_target(self):
        P = Presentation(2, ((1, 2, 1), (2, 2, -1)))
        assert len(enumerate_homs(P, cyclic(1))) == 1

    def test_trivial_presentation(self, S3):
        assert [h.images for h in enumerate_homs(TRIVIAL, S3)] == [()]

    def test_lexicographic_order(self, S3):
        P = Presentation(2, ((1, 2, -1, -2),))
        images = [h.images for h in enumerate_homs(P, S3)]
        assert images == sorted(images)
        brute = [(a, b) for a in range(6) for b in range(6) if S3.mul[a][b] == S3.mul[b][a]]
        assert images == brute

    def test_budget(self, S3):
        P = Presentation(3, ((1, 2, 3, -1, -2, -3),))
        with pytest.raises(BudgetError) as err:
            count_homs(P, S3, budget=100)
        assert err.value.bound == 100

    @settings(max_examples=60, deadline=None)
    @given(presentations())
    def test_matches_brute_force_s3(self, P):
        elements = oracles.s3()
        expected = oracles.brute_hom_count_perm(elements, P.gen_count, P.relators)
        assert count_homs(P, symmetric(3)) == expected

    @settings(max_examples=60, deadline=None)
    @given(presentations(), st.integers(1, 8))
    def test_matches_brute_force_cyclic(self, P, n):
        expected = oracles.brute_hom_count_cyclic(n, P.gen_count, P.relators)
        assert count_homs(P, cyclic(n)) == expected

    @settings(max_examples=30, deadline=None)
    @given(presentations())
    def test_trivial_hom_always_present(self, P):
        assert (0,) * P.gen_count in set(iter_hom_images(P, dihedral(4)))


class TestClasses:
    def test_rank_one_s3(self, S3):
        orbits = hom_classes(enumerate_homs(Presentation.free(1), S3), S3)
        assert sorted(map(len, orbits)) == [1, 2, 3]

    def test_abelian_singletons(self):
        G = cyclic(6)
        orbits = hom_classes(enumerate_homs(Presentation.free(2), G), G)
        assert all(len(o) == 1 for o in orbits)

    def test_rank_two_s3(self, S3):
        homs = enumerate_homs(Presentation.free(2), S3)
        orbits = hom_classes(homs, S3)
        assert len(orbits) == 11 == oracles.conjugation_orbit_count(oracles.s3(), 2)

    @settings(max_examples=40, deadline=None)
    @given(presentations(), st.sampled_from(["S3", "D4", "C4"]))
    def test_partition_and_burnside(self, P, gname):
        G = {"S3": symmetric(3), "D4": dihedral(4), "C4": cyclic(4)}[gname]
        homs = enumerate_homs(P, G)
        orbits = hom_classes(homs, G)
        assert sorted(i for o in orbits for i in o) == list(range(len(homs)))
        assert all(o == sorted(o) for o in orbits)
        fixed = 0
        for g in range(G.order):
            fixed += sum(1 for h in homs if all(G.conj(g, x) == x for x in h.images))
        assert fixed % G.order == 0 and len(orbits) == fixed // G.order


class TestConstructors:
    def test_free_product(self, S3):
        P = Presentation(1, ((1, 1, 1),))
        Q = free_product_with_free(P, 1)
        assert Q == Presentation(2, ((1, 1, 1),))
        assert count_homs(Q, S3) == 6 * count_homs(P, S3)
        assert free_product_with_free(P, 0) == P
        assert free_product_with_free(TRIVIAL, 2) == Presentation.free(2)

    @settings(max_examples=30, deadline=None)
    @given(presentations(), st.integers(0, 2), st.sampled_from([1, 2, 3, 6]))
    def test_free_product_multiplies(self, P, k, n):
        G = symmetric(3) if n == 6 else cyclic(n)
        assert count_homs(free_product_with_free(P, k), G) == count_homs(P, G) * G.order ** k

    def test_mapping_torus_identity_rank_one(self, S3):
        P = mapping_torus_presentation(1, [(1,)], 1)
        assert P == Presentation(2, ((2, 1, -2, -1),))
        commuting = sum(1 for a in range(6) for b in range(6) if S3.mul[a][b] == S3.mul[b][a])
        assert count_homs(P, S3) == commuting == 18

    def test_mapping_torus_identity_rank_two(self):
        for d in (1, 3):
            P = mapping_torus_presentation(2, [(1,), (2,)], d)
            assert P == Presentation(3, ((3, 1, -3, -1), (3, 2, -3, -2)))

    def test_mapping_torus_trefoil(self, trefoil, S3):
        P = mapping_torus_presentation(2, trefoil.monodromy, 1)
        assert P.gen_count == 3 and len(P.relators) == 2
        expected = oracles.brute_hom_count_perm(oracles.s3(), 3, P.relators)
        assert count_homs(P, S3) == expected == 12

    def test_branched_identity(self):
        P = branched_quotient_presentation(2, [(1,), (2,)], 1)
        assert P.relators == ((), ())
        assert count_homs(P, symmetric(3)) == 36

    def test_branched_trefoil_cyclic(self, trefoil, C3):
        assert count_homs(branched_quotient_presentation(2, trefoil.monodromy, 1), C3) == 1
        assert count_homs(branched_quotient_presentation(2, trefoil.monodromy, 6), C3) == 9

    def test_word_length_budget(self, figure8):
        with pytest.raises(BudgetError):
            automorphism_power(figure8.monodromy, 20, max_length=1000)


@given(words(3, 12))
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


@given(words(2, 10))
def test_inverse_word_cancels(w):
    assert free_reduce(w + inverse_word(w)) == ()


def test_substitution_is_homomorphic(trefoil):
    u, v = (1, 2, -1), (2, 2, 1)
    phi = trefoil.monodromy
    assert substitute(u + v, phi) == free_reduce(substitute(u, phi) + substitute(v, phi))
    assert automorphism_power(phi, 2) == tuple(substitute(w, phi) for w in phi)
