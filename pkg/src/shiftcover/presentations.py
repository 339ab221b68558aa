"""Finitely presented groups and homomorphisms into finite groups.

Words are tuples of nonzero signed integers: letter ``k > 0`` is generator
``k`` (1-based) and ``-k`` its inverse. The empty tuple is the identity.
Homomorphisms are stored as image tuples, one group element index per
generator, and are always enumerated in lexicographic order of those tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetError, MalformedWordError
from .groups import FiniteGroup

Word = tuple[int, ...]

DEFAULT_WORK_BUDGET = 10**8
DEFAULT_MAX_WORD_LENGTH = 10**6


def check_word(word: Sequence[int], gen_count: int) -> Word:
    w = tuple(int(x) for x in word)
    for x in w:
        if x == 0 or abs(x) > gen_count:
            raise MalformedWordError(f"letter {x} out of range for {gen_count} generators")
    return w


def inverse_word(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def substitute(word: Word, images: Sequence[Word], reduce: bool = True) -> Word:
    """Replace every letter of ``word`` by its image word (inverted for negative letters)."""
    out: list[int] = []
    for x in word:
        if x > 0:
            out.extend(images[x - 1])
        else:
            out.extend(inverse_word(images[-x - 1]))
    return free_reduce(out) if reduce else tuple(out)


def compose_maps(outer: Sequence[Word], inner: Sequence[Word]) -> tuple[Word, ...]:
    """Word map of ``outer ∘ inner``: generator i goes to ``outer(inner(x_i))``."""
    return tuple(substitute(w, outer) for w in inner)


def automorphism_power(phi: Sequence[Word], d: int,
                       max_length: int = DEFAULT_MAX_WORD_LENGTH) -> tuple[Word, ...]:
    """``phi`` composed with itself ``d`` times, freely reduced after every step."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    r = len(phi)
    result = tuple((i + 1,) for i in range(r))
    for _ in range(d):
        result = tuple(substitute(w, phi) for w in result)
        if sum(map(len, result)) > max_length:
            raise BudgetError("automorphism word length", max_length)
    return result


@dataclass(frozen=True)
class Presentation:
    gen_count: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.gen_count < 0:
            raise ValueError("gen_count must be nonnegative")
        rels = tuple(check_word(r, self.gen_count) for r in self.relators)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls(rank, ())


@dataclass(frozen=True)
class Homomorphism:
    images: tuple[int, ...]
    group: FiniteGroup = field(compare=False, repr=False)
    presentation: Presentation = field(compare=False, repr=False)


def evaluate(images: Sequence[int], word: Word, G: FiniteGroup) -> int:
    """Product of the images of the letters of ``word`` in ``G``."""
    mul, inv = G.mul, G.inv
    x = 0
    n = len(images)
    for letter in word:
        if letter > 0 and letter <= n:
            x = mul[x][images[letter - 1]]
        elif letter < 0 and -letter <= n:
            x = mul[x][inv[images[-letter - 1]]]
        else:
            raise MalformedWordError(f"letter {letter} out of range for {n} generators")
    return x


def evaluate_word(h: Homomorphism, w: Word) -> int:
    return evaluate(h.images, w, h.group)


def _compile(word: Word) -> list[tuple[int, bool]]:
    return [(abs(x) - 1, x < 0) for x in word]


def iter_hom_images(P: Presentation, G: FiniteGroup,
                    budget: int = DEFAULT_WORK_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield every image tuple killing all relators, in lexicographic order.

    Each relator is checked as soon as the last generator it mentions has
    been assigned, which prunes the search without changing the output
    order. ``budget`` caps the work done: one unit per candidate image
    assignment plus one per relator letter evaluated.
    """
    n = P.gen_count
    order = G.order
    mul, inv = G.mul, G.inv
    # relators grouped by the depth at which they become decidable
    checks: list[list[list[tuple[int, bool]]]] = [[] for _ in range(n)]
    for rel in P.relators:
        if rel:
            checks[max(abs(x) for x in rel) - 1].append(_compile(rel))
    if n == 0:
        yield ()
        return

    images = [0] * n
    work = 0

    def ok(depth: int) -> bool:
        nonlocal work
        work += 1
        if work > budget:
            raise BudgetError("homomorphism enumeration work", budget)
        for rel in checks[depth]:
            work += len(rel)
            if work > budget:
                raise BudgetError("homomorphism enumeration work", budget)
            x = 0
            for g, neg in rel:
                y = images[g]
                x = mul[x][inv[y] if neg else y]
            if x != 0:
                return False
        return True

    depth = 0
    images[0] = -1
    while depth >= 0:
        images[depth] += 1
        if images[depth] >= order:
            depth -= 1
            continue
        if not ok(depth):
            continue
        if depth == n - 1:
            yield tuple(images)
        else:
            depth += 1
            images[depth] = -1


def enumerate_homs(P: Presentation, G: FiniteGroup,
                   budget: int = DEFAULT_WORK_BUDGET) -> list[Homomorphism]:
    return [Homomorphism(img, G, P) for img in iter_hom_images(P, G, budget)]


def count_homs(P: Presentation, G: FiniteGroup, budget: int = DEFAULT_WORK_BUDGET) -> int:
    return sum(1 for _ in iter_hom_images(P, G, budget))


def conjugate_images(G: FiniteGroup, g: int, images: Sequence[int]) -> tuple[int, ...]:
    return tuple(G.conj(g, x) for x in images)


def image_orbits(images: Sequence[tuple[int, ...]], G: FiniteGroup) -> list[list[int]]:
    """Conjugation orbits of a lexicographically sorted, conjugation-closed list of tuples."""
    index = {img: i for i, img in enumerate(images)}
    seen = [False] * len(images)
    orbits = []
    for i, img in enumerate(images):
        if seen[i]:
            continue
        orbit = sorted({index[conjugate_images(G, g, img)] for g in range(G.order)})
        for j in orbit:
            seen[j] = True
        orbits.append(orbit)
    return orbits


def hom_classes(homs: Sequence[Homomorphism], G: FiniteGroup) -> list[list[int]]:
    """Orbits of simultaneous conjugation on a complete hom set.

    Each orbit is a sorted list of indices into ``homs``; since ``homs`` is in
    lexicographic order the first index is the lexicographically least member.
    """
    return image_orbits([h.images for h in homs], G)


def free_product_with_free(P: Presentation, k: int) -> Presentation:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Presentation(P.gen_count + k, P.relators)


def mapping_torus_presentation(rank: int, phi: Sequence[Word], d: int,
                               max_length: int = DEFAULT_MAX_WORD_LENGTH) -> Presentation:
    """Group of the mapping torus of ``phi**d`` on a free group of the given rank.

    Generators ``x_1..x_rank`` then the stable letter ``t``; relators
    ``t x_i t^-1 phi^d(x_i)^-1``.
    """
    phi = tuple(check_word(w, rank) for w in phi)
    if len(phi) != rank:
        raise ValueError("phi needs one word per generator")
    t = rank + 1
    power = automorphism_power(phi, d, max_length)
    rels = tuple((t, i + 1, -t) + inverse_word(w) for i, w in enumerate(power))
    return Presentation(rank + 1, rels)


def branched_quotient_presentation(rank: int, phi: Sequence[Word], d: int,
                                   max_length: int = DEFAULT_MAX_WORD_LENGTH) -> Presentation:
    """``<x_1..x_rank | phi^d(x_i) x_i^-1>``: homs are the ``phi^d``-fixed homs of the free group."""
    phi = tuple(check_word(w, rank) for w in phi)
    if len(phi) != rank:
        raise ValueError("phi needs one word per generator")
    power = automorphism_power(phi, d, max_length)
    rels = tuple(free_reduce(w + (-(i + 1),)) for i, w in enumerate(power))
    return Presentation(rank, rels)
