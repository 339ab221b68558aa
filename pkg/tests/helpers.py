"""Random inputs shared by several test modules."""

from __future__ import annotations

from shiftcover import Presentation
from shiftcover.presentations import compose_maps, free_reduce


def nielsen_moves(rank):
    """Elementary Nielsen automorphisms of the free group of the given rank."""
    ident = [(i + 1,) for i in range(rank)]
    moves = []
    for i in range(rank):
        inv = list(ident)
        inv[i] = (-(i + 1),)
        moves.append(tuple(inv))
        for j in range(rank):
            if i != j:
                right = list(ident)
                right[i] = (i + 1, j + 1)
                left = list(ident)
                left[i] = (j + 1, i + 1)
                swap = list(ident)
                swap[i], swap[j] = ident[j], ident[i]
                moves.extend([tuple(right), tuple(left), tuple(swap)])
    return moves


def random_automorphism(rng, rank, length=3):
    phi = tuple((i + 1,) for i in range(rank))
    moves = nielsen_moves(rank)
    for _ in range(length):
        phi = compose_maps(rng.choice(moves), phi)
    return tuple(free_reduce(w) for w in phi)


def random_presentation(rng, max_gens=2, max_rels=2, max_len=6):
    n = rng.randint(1, max_gens)
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        rels.append(tuple(rng.choice([1, -1]) * rng.randint(1, n)
                          for _ in range(rng.randint(0, max_len))))
    return Presentation(n, tuple(rels))


def random_nonnegative(rng, rows, cols, hi=3):
    return [[rng.randint(0, hi) for _ in range(cols)] for _ in range(rows)]
