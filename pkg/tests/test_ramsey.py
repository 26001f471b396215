"""The pigeonhole realizer: monotone related-position streams that defeat
bounded counterexample functionals.

The contract under test is checked after the fact: for the returned g and
the functional's own value at g, every pair of positions below that value
must be strictly increasing and carry related letters.
"""

import random

import pytest

from higman.errors import BudgetExhaustedError
from higman.ramsey import (
    DEFAULT_SCAN_CAP,
    PigeonholeRealizer,
    pigeonhole_realizer,
    pigeonhole_realizer_scored,
)
from higman.selftest import random_preorder
from higman.streams import Stream, periodic_stream
from higman.wqo import validate_preorder


def eq_order(size: int):
    return validate_preorder([[a == b for b in range(size)] for a in range(size)])


def chain_order(size: int):
    return validate_preorder([[a <= b for b in range(size)] for a in range(size)])


def letters(*cycle: int) -> Stream:
    """An infinite letter stream repeating the given cycle."""
    return periodic_stream((), [c for c in cycle], 0)


def table_phi(rng: random.Random, bound: int = 5):
    """A functional that reads g at 0 and 1 and looks the pair up in a
    bounded random table, so its value is deterministic in g alone."""
    table = {}

    def phi(g) -> int:
        key = (g(0), g(1))
        if key not in table:
            table[key] = rng.randint(0, bound)
        return table[key]

    return phi


def check_contract(order, x: Stream, g: Stream, score: int) -> None:
    for i in range(score + 1):
        for j in range(i + 1, score + 1):
            assert g[i] < g[j]
            assert order.le(x[g[i]], x[g[j]])


def test_constant_stream_yields_identity_positions():
    order = eq_order(2)
    g = pigeonhole_realizer(order, letters(0), lambda g_: 2)
    assert [g[i] for i in range(6)] == [0, 1, 2, 3, 4, 5]


def test_alternating_stream_yields_even_positions():
    # Letters 0 and 1 tie on counts; the tie breaks toward letter 0, whose
    # occurrences sit at the even positions.
    order = eq_order(2)
    x = letters(0, 1)
    g, score = pigeonhole_realizer_scored(order, x, lambda g_: 2)
    assert score == 2
    assert [g[i] for i in range(3)] == [0, 2, 4]
    assert all(x[g[i]] == 0 for i in range(3))


def test_zero_functional_accepts_first_scan():
    order = eq_order(3)
    g = pigeonhole_realizer(order, letters(2, 0, 1), lambda g_: 0)
    assert g[0] == 0


def test_positions_strictly_increase_past_the_occurrences():
    # Beyond the recorded occurrences the stream continues by consecutive
    # integers, so monotonicity holds at every index, not just scored ones.
    order = eq_order(2)
    g = pigeonhole_realizer(order, letters(0, 1), lambda g_: 1)
    for i in range(30):
        assert g[i] < g[i + 1]


def test_related_positions_on_chain_order():
    order = chain_order(3)
    x = letters(2, 1, 0, 1)
    g, score = pigeonhole_realizer_scored(order, x, lambda g_: 3)
    check_contract(order, x, g, score)


def test_scored_value_is_the_functionals_value():
    rng = random.Random(401)
    order = eq_order(2)
    phi = table_phi(rng)
    g, score = pigeonhole_realizer_scored(order, letters(0, 1, 1), phi)
    assert score == phi(g.__getitem__)


def test_realizer_object_agrees_with_the_function():
    rng = random.Random(402)
    order = chain_order(2)
    x = letters(1, 0)
    phi = table_phi(rng)
    realizer = PigeonholeRealizer(order)
    direct = pigeonhole_realizer(order, x, phi)
    via_object = realizer.realize(x, phi)
    scored_g, score = realizer.realize_scored(x, phi)
    assert [direct[i] for i in range(8)] == [via_object[i] for i in range(8)]
    assert [direct[i] for i in range(8)] == [scored_g[i] for i in range(8)]
    assert score == phi(direct.__getitem__)


def test_scan_cap_exhaustion_is_reported():
    order = eq_order(2)
    with pytest.raises(BudgetExhaustedError, match=r"pigeonhole scan cap exceeded \(8\)"):
        pigeonhole_realizer(order, letters(0), lambda g_: 10**9, scan_cap=8)


def test_out_of_range_letter_is_rejected():
    order = eq_order(2)
    with pytest.raises(ValueError, match="letter 5 out of range for alphabet of size 2"):
        pigeonhole_realizer(order, letters(5), lambda g_: 0)


def test_default_scan_cap_is_generous():
    assert DEFAULT_SCAN_CAP == 1 << 20


def test_random_pairs_satisfy_the_contract():
    """Seeded sweep: random orders, short random cycles, bounded table
    functionals; the post-hoc contract must hold every time."""
    rng = random.Random(403)
    for _ in range(150):
        order = random_preorder(rng, 3)
        cycle = [rng.randrange(order.size) for _ in range(rng.randint(1, 4))]
        x = letters(*cycle)
        phi = table_phi(rng)
        g, score = pigeonhole_realizer_scored(order, x, phi)
        assert score <= 5
        check_contract(order, x, g, score)


def test_determinism():
    rng_a = random.Random(404)
    rng_b = random.Random(404)
    order = chain_order(3)
    x = letters(0, 2, 1)
    ga = pigeonhole_realizer(order, x, table_phi(rng_a))
    gb = pigeonhole_realizer(order, x, table_phi(rng_b))
    assert [ga[i] for i in range(12)] == [gb[i] for i in range(12)]
