"""Decidable preorders on finite alphabets, words, embedding, and badness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .streams import Stream


@dataclass(frozen=True)
class Preorder:
    """A finite alphabet 0..size-1 with a reflexive transitive relation."""

    size: int
    rel: tuple[tuple[bool, ...], ...]
    default_letter: int = 0

    def le(self, a: int, b: int) -> bool:
        return self.rel[a][b]


def validate_preorder(rel: Sequence[Sequence[object]], default_letter: int = 0) -> Preorder:
    """Build a Preorder, checking reflexivity and transitivity.

    Raises ValueError naming the first offending diagonal entry or triple.
    """
    size = len(rel)
    if size == 0:
        raise ValueError("empty relation matrix")
    mat = tuple(tuple(bool(v) for v in row) for row in rel)
    for row in mat:
        if len(row) != size:
            raise ValueError("relation matrix is not square")
    for a in range(size):
        if not mat[a][a]:
            raise ValueError(f"not reflexive at {a}")
    for a in range(size):
        for b in range(size):
            if not mat[a][b]:
                continue
            for c in range(size):
                if mat[b][c] and not mat[a][c]:
                    raise ValueError(f"not transitive ({a},{b},{c})")
    if not 0 <= default_letter < size:
        raise ValueError(f"default letter {default_letter} out of range for size {size}")
    return Preorder(size=size, rel=mat, default_letter=default_letter)


@dataclass(frozen=True)
class Word:
    """A finite sequence of letter indices."""

    letters: tuple[int, ...] = ()

    @classmethod
    def over(cls, order: Preorder, letters) -> "Word":
        ls = tuple(int(x) for x in letters)
        for x in ls:
            if not 0 <= x < order.size:
                raise ValueError(f"letter {x} out of range for alphabet of size {order.size}")
        return cls(ls)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i: int) -> int:
        return self.letters[i]

    def is_initial_segment_of(self, other: "Word") -> bool:
        return len(self.letters) <= len(other.letters) and other.letters[: len(self.letters)] == self.letters

    def is_proper_prefix_of(self, other: "Word") -> bool:
        return len(self.letters) < len(other.letters) and other.letters[: len(self.letters)] == self.letters


EMPTY_WORD = Word()


@dataclass(frozen=True)
class GoodPair:
    """Positions i0 < i1 whose words embed in order."""

    i0: int
    i1: int

    def __post_init__(self):
        if not 0 <= self.i0 < self.i1:
            raise ValueError(f"good pair needs 0 <= i0 < i1, got ({self.i0}, {self.i1})")


def word_embeds(order: Preorder, a: Word, b: Word) -> bool:
    """Whether a maps into b by a strictly increasing, letterwise dominated map.

    Greedy earliest-match scanning is complete for this relation: committing
    each letter of a to the first usable position of b never blocks a later
    letter that some other increasing map could have placed.
    """
    rel = order.rel
    bl = b.letters
    j = 0
    for x in a.letters:
        while j < len(bl) and not rel[x][bl[j]]:
            j += 1
        if j == len(bl):
            return False
        j += 1
    return True


def theta(order: Preorder, u, j: int) -> bool:
    """True when the first j+1 entries of u form a bad sequence."""
    words = [u[i] for i in range(j + 1)]
    for i1 in range(1, j + 1):
        for i0 in range(i1):
            if word_embeds(order, words[i0], words[i1]):
                return False
    return True


def find_good_pair(order: Preorder, u, bound: int) -> Optional[GoodPair]:
    """Least embedded pair (by i1, then i0) with i1 <= bound, if any.

    Returns None exactly when theta(order, u, bound) holds.
    """
    words = [u[i] for i in range(bound + 1)]
    for i1 in range(1, bound + 1):
        for i0 in range(i1):
            if word_embeds(order, words[i0], words[i1]):
                return GoodPair(i0, i1)
    return None


def ft_lt(w: Word, order: Preorder) -> tuple[Word, int]:
    """Split w into (all but the last letter, last letter).

    The empty word splits into (empty, default letter) so the operation is
    total; only that case consults the order.
    """
    if not w.letters:
        return EMPTY_WORD, order.default_letter
    return Word(w.letters[:-1]), w.letters[-1]


def diagonals(p, order: Preorder) -> tuple[Stream, Stream]:
    """Diagonal first-part and last-letter streams of a family of word streams.

    Entry i of each output is taken from word i of the i-th stream in the
    family; p may be any int-indexable collection of word streams.
    """

    def fts_at(i: int) -> Word:
        return ft_lt(p[i][i], order)[0]

    def lts_at(i: int) -> int:
        return ft_lt(p[i][i], order)[1]

    return Stream(fts_at, EMPTY_WORD), Stream(lts_at, order.default_letter)
