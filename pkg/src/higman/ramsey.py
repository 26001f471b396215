"""Monotone-subsequence realizers for letter streams over finite alphabets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

from .errors import BudgetExhaustedError
from .streams import Stream
from .wqo import Preorder

DEFAULT_SCAN_CAP = 1 << 20


class RamseyRealizer(Protocol):
    """Anything that can defeat a counterexample functional on a letter stream.

    realize(x, phi) must return a strictly increasing position stream g such
    that for all i < j <= phi(g), the letters x[g(i)] and x[g(j)] are related
    in the ambient order.
    """

    def realize(self, x: Stream, phi: Callable[[Callable[[int], int]], int]) -> Stream: ...


def pigeonhole_realizer(
    order: Preorder,
    x: Stream,
    phi: Callable[[Callable[[int], int]], int],
    *,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> Stream:
    """Defeat phi with an equal-letter position enumeration.

    Scans geometrically growing prefixes of x. Each scan enumerates, in
    increasing order, the positions of the most frequent letter seen (ties
    broken toward the smallest letter index), extended past the last
    occurrence by consecutive integers so the candidate is total and strictly
    monotone everywhere. The first candidate g whose occurrence count m
    satisfies phi(g) < m is returned: below that point every g(i) is a
    genuine position of the chosen letter, so related positions follow from
    reflexivity of the order.
    """
    return pigeonhole_realizer_scored(order, x, phi, scan_cap=scan_cap)[0]


def pigeonhole_realizer_scored(
    order: Preorder,
    x: Stream,
    phi: Callable[[Callable[[int], int]], int],
    *,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> tuple[Stream, int]:
    """As pigeonhole_realizer, but also report phi's value at the winner.

    The winning probe already evaluated phi there, and callers that need the
    value again can skip an arbitrarily expensive recomputation.
    """
    size = order.size
    counts = [0] * size
    positions: list[list[int]] = [[] for _ in range(size)]
    seen = 0
    k = 1
    while k <= scan_cap:
        for i in range(seen, k):
            v = x[i]
            if not 0 <= v < size:
                raise ValueError(f"letter {v} out of range for alphabet of size {size}")
            counts[v] += 1
            positions[v].append(i)
        seen = k
        best = 0
        for c in range(1, size):
            if counts[c] > counts[best]:
                best = c
        pos = tuple(positions[best])
        m = len(pos)
        last = pos[-1]

        def at(i: int, pos=pos, m=m, last=last) -> int:
            return pos[i] if i < m else last + 1 + (i - m)

        score = phi(at)
        if score < m:
            return Stream(at, 0), score
        k *= 2
    raise BudgetExhaustedError(f"pigeonhole scan cap exceeded ({scan_cap})")


@dataclass(frozen=True)
class PigeonholeRealizer:
    """Default realizer; see pigeonhole_realizer.

    realize_scored is an optional extension of the realizer interface: it
    additionally returns phi's value at the returned stream, so callers can
    avoid recomputing it."""

    order: Preorder
    scan_cap: int = DEFAULT_SCAN_CAP

    def realize(self, x: Stream, phi: Callable[[Callable[[int], int]], int]) -> Stream:
        return pigeonhole_realizer(self.order, x, phi, scan_cap=self.scan_cap)

    def realize_scored(
        self, x: Stream, phi: Callable[[Callable[[int], int]], int]
    ) -> tuple[Stream, int]:
        return pigeonhole_realizer_scored(self.order, x, phi, scan_cap=self.scan_cap)
