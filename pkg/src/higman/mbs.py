"""Stagewise selection of minimal bad sequence approximations.

Each stage of the game refines the previous stage's word sequence. The
selection function probes a descending chain of candidates, each shrinking
the stage word further, and keeps the largest one whose probe fails to
exhibit a strictly smaller sequence that stays bad. The witness functions
paired with the chosen sequences certify, later and on demand, that any
strictly smaller challenger at that stage goes good.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ContractViolationError
from .eps import Budget, GameInstance, TraceLog, eps
from .streams import Stream, YPair, constant_stream, initial_segment, psmin, smin
from .wqo import EMPTY_WORD, Preorder, theta


def zero_witness(_stream) -> int:
    return 0


def zero_ypair() -> YPair:
    """The default move: a constant empty-word stream with a zero witness."""
    return YPair(constant_stream(EMPTY_WORD), zero_witness)


@dataclass(frozen=True)
class MbsContext:
    """Stage data for one selection: the order, the stage index, and the
    sequence being refined (the previous stage's choice, or the input)."""

    order: Preorder
    n: int
    w: Stream


def a_pred(ctx: MbsContext, m: int, r, i: int) -> bool:
    """Bounded-shrink predicate: r agrees with w below the stage index,
    shrinks the stage word below length m, and stays bad through index i.
    The conjuncts are pure, so they are checked cheapest first."""
    return len(r[ctx.n]) < m and smin(r, ctx.w, ctx.n) and theta(ctx.order, r, i)


def _chain_witness(J: Callable[[YPair], int], prev: Callable[[Stream], int]) -> Callable[[Stream], int]:
    def witness(q: Stream) -> int:
        return J(YPair(q, prev))

    return witness


def selection(
    ctx: MbsContext,
    J: Callable[[YPair], int],
    Q: Callable[[YPair], Stream],
    *,
    trace: TraceLog | None = None,
    verify: bool = False,
) -> YPair:
    """Pick the stage entry for ctx against the probes J and Q.

    Candidates descend from the full stage word: the top sequence is w
    itself, and each probe's Q-value becomes the next, one letter shorter,
    candidate sequence. Witnesses chain the other way up: the bottom witness
    is constantly zero and each level defers to J with its predecessor. The
    first candidate, scanning downward, whose probe does not demonstrate a
    qualifying strictly smaller bad sequence is returned. Index 0 always
    qualifies because no word has negative length, so no probe is needed
    there and the search is total.
    """
    top = len(ctx.w[ctx.n])
    witnesses: list[Callable[[Stream], int]] = [zero_witness]
    for i in range(1, top + 1):
        witnesses.append(_chain_witness(J, witnesses[i - 1]))
    candidate = YPair(ctx.w, witnesses[top])
    chosen = 0
    probes = 0
    last_r = None
    last_probe = None
    for i in range(top, 0, -1):
        r = Q(candidate)
        probes += 1
        nxt = YPair(r, witnesses[i - 1])
        probe = J(nxt)
        if not a_pred(ctx, i, r, probe):
            chosen = i
            last_r = r
            last_probe = probe
            break
        candidate = nxt
    premise_fired: Optional[bool] = None
    if verify:
        # Reuse the values the loop already computed for the returned pair:
        # at a break, Q(candidate) is the last probe's r, and applying the
        # candidate's witness to it rebuilds exactly the last probe's J value.
        # When the loop exhausts, the stage word is empty, so the minimality
        # premise cannot fire and the probes below are the continuation's own.
        q_pair = last_r if chosen > 0 else Q(candidate)
        premise_fired = _verify_selection_values(ctx, candidate, J(candidate), q_pair, last_probe)
    if trace is not None:
        event = {
            "kind": "selection",
            "stage": ctx.n,
            "word_len": top,
            "chosen": chosen,
            "probes": probes,
        }
        if premise_fired is not None:
            event["minimality_premise_fired"] = premise_fired
        trace.append(event)
    return candidate


def check_selection_contract(
    ctx: MbsContext, J: Callable[[YPair], int], Q: Callable[[YPair], Stream], pair: YPair
) -> tuple[bool, bool, bool]:
    """Evaluate the three selection contract conjuncts on a returned pair.

    The chosen sequence must agree with the stage input below the stage
    index; badness of the input through J's value must transfer to the
    chosen sequence; and if Q's value is strictly smaller at the stage, the
    paired witness must catch it going good.
    """
    j_val = J(pair)
    q_val = Q(pair)
    first = initial_segment(ctx.w, ctx.n) == initial_segment(pair.stream, ctx.n)
    second = (not theta(ctx.order, ctx.w, j_val)) or theta(ctx.order, pair.stream, j_val)
    third = (not psmin(q_val, pair.stream, ctx.n)) or (not theta(ctx.order, q_val, pair.witness(q_val)))
    return first, second, third


def _verify_selection_values(ctx, pair: YPair, j_pair: int, q_pair, witness_at_q) -> bool:
    """Raise unless the contract conjuncts hold for precomputed probe values;
    return whether the minimality premise fired. witness_at_q may be None
    when the premise cannot fire, and is only consulted when it does."""
    if initial_segment(ctx.w, ctx.n) != initial_segment(pair.stream, ctx.n):
        raise ContractViolationError(f"selection contract: stage {ctx.n} prefix changed")
    if theta(ctx.order, ctx.w, j_pair) and not theta(ctx.order, pair.stream, j_pair):
        raise ContractViolationError(f"selection contract: badness lost at stage {ctx.n}")
    fired = psmin(q_pair, pair.stream, ctx.n)
    if fired:
        if witness_at_q is None:
            witness_at_q = pair.witness(q_pair)
        if theta(ctx.order, q_pair, witness_at_q):
            raise ContractViolationError(f"selection contract: minimality witness failed at stage {ctx.n}")
    return fired


class MbsSelectionFamily:
    """Stage-indexed family over move and witness pairs.

    Stage k rebuilds its context from the previous move's stream component;
    stage 0 refines the input sequence itself. The engine's evaluator is
    split into the two probes the selection works with: the first component
    scores a candidate, the second proposes the sequence to shrink to.
    """

    def __init__(
        self,
        order: Preorder,
        u: Stream,
        *,
        budget: Budget | None = None,
        trace: TraceLog | None = None,
        verify: bool = False,
    ):
        self.order = order
        self.u = u
        self.budget = budget
        self.trace = trace
        self.verify = verify

    def context_at(self, history: tuple) -> MbsContext:
        w = history[-1].stream if history else self.u
        return MbsContext(self.order, len(history), w)

    def select(self, history: tuple, evaluate: Callable[[YPair], tuple]) -> YPair:
        if self.budget is not None:
            self.budget.tick_selection()
        return selection(
            self.context_at(history),
            lambda y: evaluate(y)[0],
            lambda y: evaluate(y)[1],
            trace=self.trace,
            verify=self.verify,
        )


def family(
    order: Preorder,
    u: Stream,
    *,
    budget: Budget | None = None,
    trace: TraceLog | None = None,
    verify: bool = False,
) -> MbsSelectionFamily:
    return MbsSelectionFamily(order, u, budget=budget, trace=trace, verify=verify)


@dataclass
class MbsApproximation:
    """Finite approximation to a minimal bad sequence.

    p and f hold the per-stage sequences and witnesses up to the horizon;
    stream is the untruncated play the functionals evaluate against.
    """

    p: list
    f: list
    horizon: int
    stream: Stream


def mbs_run(
    order: Preorder,
    u: Stream,
    omega: Callable[[Stream], int],
    phi: Callable[[Stream], int],
    psi: Callable[[Stream], Stream],
    *,
    budget: Budget | None = None,
    trace: TraceLog | None = None,
    verify: bool = False,
) -> MbsApproximation:
    """Play the stage game under control omega and outcome (phi, psi), then
    truncate at the horizon the control assigns to the finished play."""
    fam = family(order, u, budget=budget, trace=trace, verify=verify)
    game = GameInstance(
        control=omega,
        selections=fam,
        outcome=lambda alpha: (phi(alpha), psi(alpha)),
        default_move=zero_ypair(),
    )
    alpha = eps(game, (), budget=budget, trace=trace)
    horizon = omega(alpha)
    return MbsApproximation(
        p=[alpha[i].stream for i in range(horizon + 1)],
        f=[alpha[i].witness for i in range(horizon + 1)],
        horizon=horizon,
        stream=alpha,
    )


def check_nesting(order: Preorder, u: Stream, approx: MbsApproximation) -> bool:
    """Each stage agrees with its predecessor below the stage index."""
    prev = u
    for n in range(approx.horizon + 1):
        cur = approx.p[n]
        if initial_segment(prev, n) != initial_segment(cur, n):
            return False
        prev = cur
    return True


def check_badness_transfer(
    order: Preorder,
    u: Stream,
    approx: MbsApproximation,
    phi_value: int,
    *,
    theta_fn: Callable = theta,
) -> bool:
    """Goodness propagates backward through the stages; checked
    contrapositively, stage by stage, at the final bound value."""
    prev = u
    for n in range(approx.horizon + 1):
        cur = approx.p[n]
        if theta_fn(order, prev, phi_value) and not theta_fn(order, cur, phi_value):
            return False
        prev = cur
    return True


def check_minimality(
    order: Preorder,
    approx: MbsApproximation,
    psi_stream: Stream,
    *,
    theta_fn: Callable = theta,
) -> bool:
    """A candidate strictly smaller at any stage must be caught going good
    by that stage's witness."""
    for n in range(approx.horizon + 1):
        if psmin(psi_stream, approx.p[n], n):
            if theta_fn(order, psi_stream, approx.f[n](psi_stream)):
                return False
    return True
