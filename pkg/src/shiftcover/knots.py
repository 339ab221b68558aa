"""Knot inputs: built-in fibered knots, braid words, and their presentations.

The built-in monodromies are products of the two Dehn twists of the
once-punctured torus,

    T_x: x -> x,    y -> y x
    T_y: x -> x y,  y -> y

both of which fix the boundary word ``x y x^-1 y^-1`` exactly. Hence the
stable letter of the mapping torus is a meridian and killing its d-th power
gives the d-fold branched cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import BudgetError, ShiftcoverError
from .presentations import (
    DEFAULT_MAX_WORD_LENGTH,
    Presentation,
    Word,
    automorphism_power,
    check_word,
    compose_maps,
    free_reduce,
    inverse_word,
    substitute,
)
from .tqft import CobordismData

BOUNDARY_WORD: Word = (1, 2, -1, -2)


@dataclass(frozen=True)
class FiberedKnotData:
    name: str
    rank: int
    monodromy: tuple[Word, ...]
    mu: int = 1

    def __post_init__(self):
        mono = tuple(free_reduce(check_word(w, self.rank)) for w in self.monodromy)
        if len(mono) != self.rank:
            raise ShiftcoverError(f"{self.name}: need {self.rank} monodromy words")
        object.__setattr__(self, "monodromy", mono)

    def abelianization(self) -> linalg.Matrix:
        return abelianize(self.monodromy, self.rank)

    def validate(self, depth: int = 3) -> None:
        """Check the monodromy looks like a free-group automorphism.

        Iterates stay nonempty on every generator and the abelianized map is
        unimodular. Bijectivity itself is a caller precondition.
        """
        if abs(linalg.det(self.abelianization())) != 1:
            raise ShiftcoverError(f"{self.name}: abelianized monodromy is not unimodular")
        for d in range(1, depth + 1):
            if any(not w for w in automorphism_power(self.monodromy, d)):
                raise ShiftcoverError(f"{self.name}: monodromy power {d} kills a generator")


def abelianize(words: Sequence[Word], rank: int) -> linalg.Matrix:
    """Integer matrix whose column ``j`` is the exponent-sum vector of ``words[j]``."""
    cols = []
    for w in words:
        v = [0] * rank
        for x in w:
            v[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(v)
    return linalg.transpose(cols) if cols else ()


T_X: tuple[Word, ...] = ((1,), (2, 1))
T_Y: tuple[Word, ...] = ((1, 2), (2,))
T_Y_INV: tuple[Word, ...] = ((1, -2), (2,))

_BUILTIN = {
    # T_x ∘ T_y^-1: x -> y^-1, y -> y x; abelianization has char poly t^2 - t + 1
    "trefoil": compose_maps(T_X, T_Y_INV),
    # T_x ∘ T_y: x -> x y x, y -> y x; abelianization has char poly t^2 - 3t + 1
    "figure8": compose_maps(T_X, T_Y),
}
_ALEXANDER = {"trefoil": [1, -1, 1], "figure8": [1, -3, 1]}


def builtin(name: str) -> FiberedKnotData:
    key = {"figure-eight": "figure8", "4_1": "figure8", "3_1": "trefoil"}.get(name, name)
    if key not in _BUILTIN:
        raise ShiftcoverError(f"unknown built-in knot {name!r} (known: trefoil, figure8)")
    k = FiberedKnotData(key, 2, _BUILTIN[key])
    k.validate()
    if linalg.char_poly(k.abelianization()) != _ALEXANDER[key]:
        raise AssertionError(f"{key}: abelianized monodromy does not match the Alexander polynomial")
    if substitute(BOUNDARY_WORD, k.monodromy) != BOUNDARY_WORD:
        raise AssertionError(f"{key}: monodromy does not fix the boundary word")
    return k


def fibered_to_cobordism(k: FiberedKnotData, relative: bool) -> CobordismData:
    """Product cobordism on the fiber group, outgoing end twisted by the monodromy."""
    return CobordismData.twisted_product(k.rank, k.monodromy, relative)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ShiftcoverError("a braid needs at least 2 strands")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise ShiftcoverError(f"braid letter {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))


def _artin_generator(n: int, letter: int) -> tuple[Word, ...]:
    i = abs(letter)  # 1-based: sigma_i acts on x_i, x_{i+1}
    images = [(j + 1,) for j in range(n)]
    if letter > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return tuple(images)


def braid_to_artin(b: BraidWord,
                   max_length: int = DEFAULT_MAX_WORD_LENGTH) -> tuple[Word, ...]:
    """Artin automorphism of a braid word, composed in reading order.

    ``sigma_i`` sends ``x_i -> x_i x_{i+1} x_i^-1`` and ``x_{i+1} -> x_i``;
    the word ``s1 s2 ... sk`` gives ``s1 ∘ s2 ∘ ... ∘ sk``.
    """
    n = b.strands
    result = tuple((j + 1,) for j in range(n))
    for letter in b.letters:
        result = compose_maps(result, _artin_generator(n, letter))
        if sum(map(len, result)) > max_length:
            raise BudgetError("braid automorphism word length", max_length)
    return result


def braid_closure_presentation(b: BraidWord,
                               max_length: int = DEFAULT_MAX_WORD_LENGTH) -> Presentation:
    """Group of the closure complement: ``<x_1..x_n | beta(x_i) x_i^-1, i < n>``."""
    beta = braid_to_artin(b, max_length)
    rels = tuple(free_reduce(beta[i] + inverse_word(((i + 1),))) for i in range(b.strands - 1))
    return Presentation(b.strands, rels)
