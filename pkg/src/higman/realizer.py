"""The certified bound functional and its supporting game functionals.

The bound computation wires three functionals over plays of the stage game:
a counterexample functional that scores a position enumeration by feeding a
stage witness the play spliced along it, the control that ends the game, and
the candidate sequence the minimality contracts are checked against. The
control and the bound are one and the same expression, built from whatever
position enumeration the subsequence realizer produces against the
counterexample functional. Every returned bound is certified by brute
force before it is reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ContractViolationError, SoundnessViolationError
from .eps import Budget, TraceLog
from .mbs import (
    check_badness_transfer,
    check_minimality,
    check_nesting,
    mbs_run,
    zero_witness,
)
from .ramsey import DEFAULT_SCAN_CAP, PigeonholeRealizer
from .streams import Stream, constant_stream, initial_segment
from .wqo import EMPTY_WORD, GoodPair, Preorder, diagonals, find_good_pair, ft_lt


@dataclass(frozen=True)
class Budgets:
    eps_calls: int = 1_000_000
    scan_cap: int = DEFAULT_SCAN_CAP


@dataclass
class HigmanInstance:
    """One bound computation: an order, a word stream, a subsequence
    realizer, and the run budgets."""

    order: Preorder
    u: Stream
    realizer: object = None
    budgets: Budgets = field(default_factory=Budgets)

    def __post_init__(self):
        if self.realizer is None:
            self.realizer = PigeonholeRealizer(self.order, self.budgets.scan_cap)


@dataclass
class BoundReport:
    bound: int
    witness: GoodPair
    horizon: int
    trace: Optional[TraceLog]
    eps_calls: int
    selection_calls: int
    wall_time_ms: int

    def to_json_dict(self) -> dict:
        return {
            "bound": self.bound,
            "witness": [self.witness.i0, self.witness.i1],
            "horizon": self.horizon,
            "eps_calls": self.eps_calls,
            "selection_calls": self.selection_calls,
            "wall_time_ms": self.wall_time_ms,
        }


def splice(p, fts: Stream, start: int, g: Callable[[int], int]) -> Stream:
    """The stage-(start-1) prefix of length start, then diagonal first
    parts sampled along g."""
    prefix = initial_segment(p[start - 1], start) if start > 0 else ()

    def at(i: int):
        return prefix[i] if i < start else fts[g(i - start)]

    return Stream(at, EMPTY_WORD)


def phi_counterexample(
    order: Preorder, p, f, *, fts: Stream | None = None
) -> Callable[[Callable[[int], int]], int]:
    """Counterexample functional over position enumerations.

    Scores g by handing the witness at stage g(0) the sequence rebuilt from
    that stage's prefix and the diagonal first parts sampled along g. The
    stage families p and f may be any int-indexable collections; callers that
    already hold the diagonal first parts can pass them in.
    """
    if fts is None:
        fts, _ = diagonals(p, order)

    def phi(g: Callable[[int], int]) -> int:
        start = g(0)
        witness = f[start]
        if witness is zero_witness:
            return 0
        return witness(splice(p, fts, start, g))

    return phi


def omega_phi_psi(instance: HigmanInstance, *, trace: TraceLog | None = None):
    """Control, bound, and candidate functionals over plays of the stage game.

    All three share one evaluation per distinct play prefix: the realizer is
    consulted once for the diagonal last letters against the counterexample
    functional, and the control and bound are the same number by definition.
    """
    order = instance.order
    cache: dict = {}
    empty_words = constant_stream(EMPTY_WORD)
    realize_scored = getattr(instance.realizer, "realize_scored", None)

    def evaluate(alpha: Stream) -> tuple[int, Stream]:
        hit = alpha.note
        if hit is not None:
            return hit
        base = alpha.base
        key = (base, alpha.default) if base is not None else alpha
        hit = cache.get(key)
        if hit is not None:
            alpha.note = hit
            return hit
        if base is not None:
            # Hot path: the play is a canonical extension, so the stage
            # families can index its base tuple directly instead of going
            # through wrapper streams, and each diagonal word is split once.
            n_base = len(base)
            default_pair = alpha.default

            def pair_at(n: int):
                return base[n] if n < n_base else default_pair

            splits: dict[int, tuple] = {}

            def split_at(i: int) -> tuple:
                s = splits.get(i)
                if s is None:
                    pair = base[i] if i < n_base else default_pair
                    s = splits[i] = ft_lt(pair.stream[i], order)
                return s

            fts = Stream(lambda i: split_at(i)[0], EMPTY_WORD)
            lts = Stream(lambda i: split_at(i)[1], order.default_letter)
            p = Stream(lambda n: pair_at(n).stream, empty_words)

            def phi(g: Callable[[int], int]) -> int:
                start = g(0)
                witness = pair_at(start).witness
                if witness is zero_witness:
                    return 0
                return witness(splice(p, fts, start, g))

        else:
            p = Stream(lambda n: alpha[n].stream, empty_words)
            f = Stream(lambda n: alpha[n].witness, zero_witness)
            fts, lts = diagonals(p, order)
            phi = phi_counterexample(order, p, f, fts=fts)
        if realize_scored is not None:
            g, phi_at_g = realize_scored(lts, phi)
        else:
            g = instance.realizer.realize(lts, phi)
            phi_at_g = phi(g.__getitem__)
        start = g[0]
        candidate = splice(p, fts, start, g.__getitem__)
        bound = g[phi_at_g] + 1
        if trace is not None:
            trace.append({"kind": "splice", "start": start, "phi_value": phi_at_g, "bound": bound})
        result = (bound, candidate)
        cache[key] = result
        alpha.note = result
        return result

    def omega(alpha: Stream) -> int:
        return evaluate(alpha)[0]

    def phi_fn(alpha: Stream) -> int:
        return evaluate(alpha)[0]

    def psi_fn(alpha: Stream) -> Stream:
        return evaluate(alpha)[1]

    return omega, phi_fn, psi_fn


def gamma(
    instance: HigmanInstance,
    *,
    trace: TraceLog | None = None,
    check_contracts: bool = False,
    verify_selections: bool = False,
) -> BoundReport:
    """Compute a certified goodness bound for the instance's word stream.

    Plays the stage game, evaluates the bound functional on the finished
    play, then requires the brute-force oracle to exhibit an embedded pair
    at or below the bound. Failing to find one is a hard error, never a
    result: the bound is only reported certified.
    """
    started = time.perf_counter()
    budget = Budget(limit=instance.budgets.eps_calls)
    omega, phi_fn, psi_fn = omega_phi_psi(instance, trace=trace)
    run = mbs_run(
        instance.order,
        instance.u,
        omega,
        phi_fn,
        psi_fn,
        budget=budget,
        trace=trace,
        verify=verify_selections,
    )
    bound = phi_fn(run.stream)
    if check_contracts:
        psi_value = psi_fn(run.stream)
        if not check_nesting(instance.order, instance.u, run):
            raise ContractViolationError("nesting contract failed")
        if not check_badness_transfer(instance.order, instance.u, run, bound):
            raise ContractViolationError("badness-transfer contract failed")
        if not check_minimality(instance.order, run, psi_value):
            raise ContractViolationError("minimality contract failed")
    witness = find_good_pair(instance.order, instance.u, bound)
    if witness is None:
        raise SoundnessViolationError(f"no embedded pair at or below bound {bound}; this is a bug")
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    return BoundReport(
        bound=bound,
        witness=witness,
        horizon=run.horizon,
        trace=trace,
        eps_calls=budget.eps_calls,
        selection_calls=budget.selection_calls,
        wall_time_ms=elapsed_ms,
    )
