"""Explicitly controlled products of selection functions.

The engine plays an unbounded sequential game. At each history it asks the
selection family for a move, handing it an evaluator that scores any
candidate move by the final outcome of optimally continuing the game after
it. A control functional ends the play once its value on the canonically
extended history drops below the history length. Results are finite move
lists canonically extended with the default move.

Two implementations are provided. ``eps`` threads one absolute history and
memoizes subgames, which is safe because all functionals involved are pure.
``eps_literal`` is a direct transcription of the defining recursion with
nested outcome closures and no sharing; it exists to be run differentially
against ``eps``.
"""

from __future__ import annotations

import gc
import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import BudgetExhaustedError
from .streams import Stream, canonical_extension, initial_segment, prepend

_MISSING = object()


@contextmanager
def paused_gc():
    """Pause cyclic garbage collection for the duration of a run.

    Everything the engine allocates stays reachable through its memo tables
    until the run finishes, so mid-run collections reclaim nothing and only
    burn time retracing an ever-growing live graph. The context does not
    collect on exit: a process about to terminate should just exit, and a
    driver looping over many runs should call reclaim_run_garbage between
    them, where the pause is billed to housekeeping rather than to a run.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def reclaim_run_garbage() -> None:
    """Reclaim the object graph a finished or abandoned run left behind.

    The engine's memo tables are cyclic, so a dropped run frees nothing by
    refcounting alone; left to the automatic collector, gigabytes get
    reclaimed piecemeal during whatever computation runs next, billing the
    pause to an innocent neighbour. Call this between runs — and after an
    abandoned run, only once the exception has been handled: while a handler
    runs, the traceback still reaches the whole graph and a collection would
    find nothing to free.
    """
    gc.collect()


@dataclass
class Budget:
    """Shared counters guarding one run; eps_calls is the hard limit."""

    limit: int = 1_000_000
    eps_calls: int = 0
    selection_calls: int = 0

    def tick_eps(self) -> None:
        self.eps_calls += 1
        if self.eps_calls > self.limit:
            raise BudgetExhaustedError(f"eps call budget exceeded ({self.limit})")

    def tick_selection(self) -> None:
        self.selection_calls += 1


@dataclass
class TraceLog:
    """Structured recursion diary; events are JSON-ready dicts."""

    events: list = field(default_factory=list)

    def append(self, event: dict) -> None:
        self.events.append(event)

    def eps_events(self) -> list:
        return [e for e in self.events if e["kind"] == "eps"]

    def write_jsonl(self, fp) -> None:
        for event in self.events:
            fp.write(json.dumps(event) + "\n")


@dataclass
class SelectionFamily:
    """History-indexed strategy: pick a move given an outcome evaluator."""

    select: Callable[[tuple, Callable], Any]


@dataclass
class GameInstance:
    """One game: control, selection family, outcome, and the default move.

    ``selections`` may be any object with a ``select(history, evaluator)``
    method or attribute. ``move_label`` optionally renders moves for traces.
    """

    control: Callable[[Stream], int]
    selections: Any
    outcome: Callable[[Stream], Any]
    default_move: Any
    move_label: Optional[Callable[[Any], Any]] = None


def eps(game: GameInstance, s=(), *, budget: Budget | None = None, trace: TraceLog | None = None) -> Stream:
    """Run the game from initial history s.

    Returns the continuation stream after s: the moves played, canonically
    extended with the default move once the control says the play is long
    enough. The outcome functional is anchored at s, meaning it is applied
    to continuation streams and never re-prefixed with s itself; the control
    functional always sees the full absolute history. Moves must be hashable;
    subgames and evaluator scores are cached, which is sound because every
    functional involved is required to be pure.
    """
    return _Run(game, tuple(s), budget if budget is not None else Budget(), trace).result()


class _Run:
    def __init__(self, game: GameInstance, s0: tuple, budget: Budget, trace: TraceLog | None):
        self.game = game
        self.s0 = s0
        self.anchor = len(s0)
        self.budget = budget
        self.trace = trace
        self.memo: dict[tuple, tuple] = {}

    def result(self) -> Stream:
        try:
            moves = self.play(self.s0)
        except RecursionError:
            raise BudgetExhaustedError("interpreter recursion limit hit inside eps") from None
        return canonical_extension(moves, self.game.default_move)

    def label(self, move):
        if self.game.move_label is not None:
            return self.game.move_label(move)
        return move if isinstance(move, (int, float, str, bool)) else type(move).__name__

    def play(self, h: tuple) -> tuple:
        cached = self.memo.get(h)
        if cached is not None:
            return cached
        self.budget.tick_eps()
        event = None
        if self.trace is not None:
            calls_before = self.budget.eps_calls
            event = {
                "kind": "eps",
                "depth": len(h) - self.anchor,
                "history_len": len(h),
                "move": None,
                "control": None,
                "stop": None,
                "nested_calls": None,
            }
            self.trace.append(event)
        control = self.game.control(canonical_extension(h, self.game.default_move))
        if control < len(h):
            moves: tuple = ()
        else:
            scored: dict = {}
            suffix = h[self.anchor:]

            def evaluate(x):
                value = scored.get(x, _MISSING)
                if value is _MISSING:
                    cont = self.play(h + (x,))
                    full = canonical_extension(suffix + (x,) + cont, self.game.default_move)
                    value = scored[x] = self.game.outcome(full)
                return value

            a = self.game.selections.select(h, evaluate)
            moves = (a,) + self.play(h + (a,))
        if event is not None:
            event["control"] = control
            event["stop"] = control < len(h)
            event["move"] = self.label(moves[0]) if moves else None
            event["nested_calls"] = self.budget.eps_calls - calls_before
        self.memo[h] = moves
        return moves


def eps_literal(game: GameInstance, s=(), *, budget: Budget | None = None) -> Stream:
    """Reference transcription of the defining recursion, sharing nothing.

    Outcome functionals are shifted one move at a time through nested
    closures and every subgame is recomputed. Agrees pointwise with eps.
    """
    budget = budget if budget is not None else Budget()
    default = game.default_move

    def rec(q, h: tuple) -> Stream:
        budget.tick_eps()
        if game.control(canonical_extension(h, default)) < len(h):
            return canonical_extension((), default)

        def evaluate(x):
            def q_x(alpha):
                return q(prepend((x,), alpha))

            return q_x(rec(q_x, h + (x,)))

        a = game.selections.select(h, evaluate)

        def q_a(alpha):
            return q(prepend((a,), alpha))

        return prepend((a,), rec(q_a, h + (a,)))

    try:
        return rec(game.outcome, tuple(s))
    except RecursionError:
        raise BudgetExhaustedError("interpreter recursion limit hit inside eps") from None


@dataclass
class SpectorEntry:
    n: int
    selection_consistent: bool
    outcome_consistent: bool


@dataclass
class SpectorReport:
    control_value: int
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.selection_consistent and e.outcome_consistent for e in self.entries)


def spector_check(
    game: GameInstance,
    eq_r: Callable[[Any, Any], bool] | None = None,
    *,
    eq_x: Callable[[Any, Any], bool] | None = None,
    budget: Budget | None = None,
) -> SpectorReport:
    """Verify both defining equations of the engine's output.

    For the finished play alpha and every n up to the control value: the
    n-th move must be what the selection family picks against the true
    continuation evaluator at that history, and the final outcome must equal
    that evaluator's score of the move actually taken. Equality on outcomes
    and on moves is pluggable for games whose values are streams or carry
    opaque functions.
    """
    if eq_r is None:
        eq_r = lambda a, b: a == b
    if eq_x is None:
        eq_x = lambda a, b: a == b
    alpha = eps(game, (), budget=budget)
    control_value = game.control(alpha)
    final_outcome = game.outcome(alpha)
    entries = []
    for n in range(control_value + 1):
        hist = initial_segment(alpha, n)

        def continuation_value(x, hist=hist):
            shifted = GameInstance(
                control=game.control,
                selections=game.selections,
                outcome=lambda beta: game.outcome(prepend(hist + (x,), beta)),
                default_move=game.default_move,
            )
            cont = eps(shifted, hist + (x,), budget=budget)
            return game.outcome(prepend(hist + (x,), cont))

        chosen = game.selections.select(hist, continuation_value)
        entries.append(
            SpectorEntry(
                n=n,
                selection_consistent=eq_x(chosen, alpha[n]),
                outcome_consistent=eq_r(final_outcome, continuation_value(alpha[n])),
            )
        )
    return SpectorReport(control_value=control_value, entries=entries)
