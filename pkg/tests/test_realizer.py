"""The bound functional: splicing, counterexample scoring, and certified
bound reports.

The frozen numbers in here were produced by this code and checked against
the brute-force good-pair search; they pin down the exact exploration so
that refactors that change behavior fail loudly.
"""

import random

import pytest

from higman.errors import BudgetExhaustedError, SoundnessViolationError
from higman.eps import TraceLog
from higman.mbs import zero_witness
from higman.realizer import (
    Budgets,
    HigmanInstance,
    gamma,
    omega_phi_psi,
    phi_counterexample,
    splice,
)
from higman.ramsey import PigeonholeRealizer
from higman.streams import Stream, constant_stream, periodic_stream
from higman.wqo import EMPTY_WORD, Word, find_good_pair, validate_preorder


def eq_order(size: int):
    return validate_preorder([[a == b for b in range(size)] for a in range(size)])


def w(*letters: int) -> Word:
    return Word(tuple(letters))


def listing(items, tail) -> Stream:
    return Stream(lambda i: items[i] if i < len(items) else tail, tail)


def eq2_instance(*words, budgets=None) -> HigmanInstance:
    order = eq_order(2)
    u = periodic_stream(tuple(words[:-1]), (words[-1],), EMPTY_WORD)
    if budgets is None:
        return HigmanInstance(order=order, u=u)
    return HigmanInstance(order=order, u=u, budgets=budgets)


def test_splice_from_stage_zero_is_the_diagonal_stream():
    fts = listing([w(0), w(1), w(0, 1)], EMPTY_WORD)
    spliced = splice(listing([], constant_stream(EMPTY_WORD)), fts, 0, lambda i: i)
    assert [spliced[i] for i in range(3)] == [w(0), w(1), w(0, 1)]


def test_splice_prefixes_the_previous_stage():
    # Starting at 2 keeps two entries of stage 1, then samples the diagonal
    # words at the positions the enumeration visits from its start.
    p = listing([listing([w(0)], EMPTY_WORD), listing([w(1), w(1, 1)], EMPTY_WORD)], constant_stream(EMPTY_WORD))
    fts = Stream(lambda i: Word((0,) * i), EMPTY_WORD)
    spliced = splice(p, fts, 2, lambda i: 2 * i + 2)
    assert spliced[0] == w(1)
    assert spliced[1] == w(1, 1)
    assert spliced[2] == Word((0, 0))
    assert spliced[3] == Word((0, 0, 0, 0))


def test_phi_counterexample_zero_witness_short_circuit():
    order = eq_order(2)
    p = listing([], constant_stream(EMPTY_WORD))
    f = listing([], zero_witness)
    phi = phi_counterexample(order, p, f)
    assert phi(lambda i: i) == 0
    assert phi(lambda i: 5 * i + 3) == 0


def test_phi_counterexample_hands_the_witness_the_spliced_sequence():
    order = eq_order(2)
    stage0 = listing([w(1, 0)], EMPTY_WORD)
    p = listing([stage0], constant_stream(EMPTY_WORD))
    seen = []

    def recorder(s) -> int:
        seen.append([s[i] for i in range(3)])
        return 7

    f = listing([recorder], zero_witness)
    fts = listing([w(1), w(0), w(0, 0)], EMPTY_WORD)
    phi = phi_counterexample(order, p, f, fts=fts)
    assert phi(lambda i: i) == 7
    assert seen == [[w(1), w(0), w(0, 0)]]


def test_control_and_bound_agree_on_the_all_default_play():
    order = eq_order(2)
    instance = HigmanInstance(order=order, u=constant_stream(w(0)))
    omega, phi_fn, psi_fn = omega_phi_psi(instance)
    from higman.mbs import zero_ypair

    alpha = constant_stream(zero_ypair())
    assert omega(alpha) == phi_fn(alpha) == 1
    assert [psi_fn(alpha)[i] for i in range(3)] == [EMPTY_WORD] * 3


def test_bound_for_a_stream_with_an_empty_head():
    report = gamma(eq2_instance(EMPTY_WORD, w(0)))
    assert report.bound == 1
    assert (report.witness.i0, report.witness.i1) == (0, 1)
    assert report.eps_calls == 4
    assert report.horizon == 1


def test_bound_for_a_constant_stream():
    report = gamma(eq2_instance(w(0)))
    assert report.bound == 2
    assert (report.witness.i0, report.witness.i1) == (0, 1)
    assert report.eps_calls == 33
    assert report.horizon == 2


def test_bound_for_a_short_bad_prefix():
    # Three bad words before the constant tail; the certified bound lands
    # past the first repeat and the witness is the first embedded pair.
    report = gamma(eq2_instance(w(1, 1), w(0, 1), w(0), w(0)), check_contracts=True)
    assert report.bound == 6
    assert (report.witness.i0, report.witness.i1) == (2, 3)
    assert report.eps_calls == 11625
    assert report.selection_calls == 6066
    assert report.horizon == 6


def test_contract_checks_pass_on_random_instances():
    from higman.selftest import SelftestCaps, random_instance_spec
    from higman.instance import to_higman_instance

    rng = random.Random(601)
    caps = SelftestCaps(eps_calls=200_000)
    done = 0
    while done < 12:
        spec = random_instance_spec(rng, caps)
        try:
            report = gamma(to_higman_instance(spec), check_contracts=True)
        except BudgetExhaustedError:
            continue
        done += 1
        pair = find_good_pair(spec.order, to_higman_instance(spec).u, report.bound)
        assert pair is not None
        assert (pair.i0, pair.i1) == (report.witness.i0, report.witness.i1)


def test_witness_sits_at_or_below_the_bound():
    report = gamma(eq2_instance(w(1), w(0), w(0)))
    assert 0 <= report.witness.i0 < report.witness.i1 <= report.bound


def test_unsound_realizer_is_caught():
    # A realizer that ignores the contract and replays position 0 forever
    # yields a bound of 1 on a stream whose first embedded pair sits later;
    # certification must refuse it rather than report it.
    class ConstantRealizer:
        def realize(self, x, phi):
            return constant_stream(0)

    order = eq_order(2)
    u = periodic_stream((w(1, 1), w(0, 1), w(0)), (w(0),), EMPTY_WORD)
    instance = HigmanInstance(order=order, u=u, realizer=ConstantRealizer())
    with pytest.raises(SoundnessViolationError, match="no embedded pair at or below bound"):
        gamma(instance)


def test_budget_exhaustion_propagates():
    with pytest.raises(BudgetExhaustedError, match=r"eps call budget exceeded \(3\)"):
        gamma(eq2_instance(w(1, 1), w(0, 1), w(0), budgets=Budgets(eps_calls=3)))


def test_gamma_is_deterministic():
    a = gamma(eq2_instance(w(1, 1), w(0, 1), w(0), w(0)))
    b = gamma(eq2_instance(w(1, 1), w(0, 1), w(0), w(0)))
    assert (a.bound, a.witness, a.horizon, a.eps_calls, a.selection_calls) == (
        b.bound,
        b.witness,
        b.horizon,
        b.eps_calls,
        b.selection_calls,
    )


def test_verify_selections_mode_changes_nothing():
    plain = gamma(eq2_instance(w(1, 1), w(0, 1), w(0), w(0)))
    checked = gamma(
        eq2_instance(w(1, 1), w(0, 1), w(0), w(0)),
        check_contracts=True,
        verify_selections=True,
    )
    assert (plain.bound, plain.witness, plain.horizon) == (checked.bound, checked.witness, checked.horizon)


def test_trace_records_all_three_event_kinds():
    trace = TraceLog()
    gamma(eq2_instance(w(0)), trace=trace)
    kinds = {event["kind"] for event in trace.events}
    assert "selection" in kinds
    assert "splice" in kinds
    assert trace.eps_events


def test_report_serialization_shape():
    report = gamma(eq2_instance(w(0)))
    data = report.to_json_dict()
    assert data == {
        "bound": 2,
        "witness": [0, 1],
        "horizon": 2,
        "eps_calls": 33,
        "selection_calls": data["selection_calls"],
        "wall_time_ms": data["wall_time_ms"],
    }
    assert isinstance(data["wall_time_ms"], int)


def test_explicit_realizer_matches_the_default():
    order = eq_order(2)
    u = periodic_stream((w(1), w(0)), (w(0),), EMPTY_WORD)
    default = gamma(HigmanInstance(order=order, u=u))
    explicit = gamma(HigmanInstance(order=order, u=u, realizer=PigeonholeRealizer(order)))
    assert (default.bound, default.witness, default.eps_calls) == (
        explicit.bound,
        explicit.witness,
        explicit.eps_calls,
    )
