"""Total infinite sequences with memoized access and canonical extension.

Streams are the common currency of the package: word sequences, letter
sequences, position enumerations, and plays of the selection-function game
are all represented as index-addressed total sequences. Entries are cached
so that repeated access returns the identical value even when the generator
is an expensive suspended computation, which keeps evaluation observationally
pure no matter the order indices are first demanded in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

_MISSING = object()


class Stream:
    """An index-addressed total sequence with a memoizing generator.

    ``default`` is the element canonical extension continues with. ``base``
    is set when the stream is a canonical extension of a finite prefix; it
    lets consumers key caches by the prefix value instead of object identity.
    ``note`` is a scratch slot a consumer may use to pin a computed value to
    the object; it belongs to whichever single evaluator the stream flows
    through and is never touched by the stream itself.
    """

    __slots__ = ("_gen", "_memo", "default", "base", "note")

    def __init__(self, gen: Callable[[int], object], default, base: tuple | None = None):
        self._gen = gen
        self._memo: dict[int, object] = {}
        self.default = default
        self.base = base
        self.note = None

    def __getitem__(self, i: int):
        value = self._memo.get(i, _MISSING)
        if value is _MISSING:
            if i < 0:
                raise IndexError(f"stream index must be nonnegative, got {i}")
            value = self._memo[i] = self._gen(i)
        return value


def canonical_extension(s: Sequence, default) -> Stream:
    """The stream that plays out s and then repeats the default element."""
    base = s if type(s) is tuple else tuple(s)
    n = len(base)
    return Stream(lambda i: base[i] if i < n else default, default, base=base)


def constant_stream(value) -> Stream:
    return canonical_extension((), value)


def periodic_stream(prefix: Sequence, cycle: Sequence, default) -> Stream:
    """Eventually periodic stream: the prefix, then the cycle forever."""
    pre = tuple(prefix)
    cyc = tuple(cycle)
    if not cyc:
        raise ValueError("cycle must be non-empty")
    n = len(pre)
    return Stream(lambda i: pre[i] if i < n else cyc[(i - n) % len(cyc)], default)


def prepend(prefix: Sequence, alpha: Stream) -> Stream:
    pre = tuple(prefix)
    n = len(pre)
    return Stream(lambda i: pre[i] if i < n else alpha[i - n], alpha.default)


def initial_segment(alpha, n: int) -> tuple:
    """First n entries as a tuple; works on streams and other indexables."""
    return tuple(alpha[i] for i in range(n))


def smin(u, v, n: int) -> bool:
    """u agrees with v below index n and u_n is an initial segment of v_n."""
    for i in range(n):
        if u[i] != v[i]:
            return False
    return u[n].is_initial_segment_of(v[n])


def psmin(u, v, n: int) -> bool:
    """u agrees with v below index n and u_n is a proper prefix of v_n."""
    for i in range(n):
        if u[i] != v[i]:
            return False
    return u[n].is_proper_prefix_of(v[n])


@dataclass(frozen=True, eq=False)
class YPair:
    """A word stream paired with its minimality witness.

    Compared and hashed by identity: the witness component is an opaque
    function value that is only ever applied, never inspected.
    """

    stream: Stream
    witness: Callable[[Stream], int]
