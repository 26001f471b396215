"""Randomized self-verification: generators and the selftest driver.

The generators here double as the test corpus builders: random preorders
arise as reflexive-transitive closures of random relations, random word
streams are eventually periodic with small caps, and random finite games
drive the engine checks. Everything is seeded; a selftest report is
reproducible byte for byte apart from its timing section.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExhaustedError, ContractViolationError, SoundnessViolationError
from .eps import Budget, GameInstance, SelectionFamily, paused_gc, reclaim_run_garbage, spector_check
from .instance import InstanceSpec, to_higman_instance
from .ramsey import DEFAULT_SCAN_CAP
from .realizer import Budgets, gamma
from .wqo import Preorder, Word, validate_preorder


def random_preorder(rng: random.Random, max_size: int = 3) -> Preorder:
    """A random preorder: reflexive-transitive closure of a random relation."""
    size = rng.randint(1, max_size)
    rel = [[a == b for b in range(size)] for a in range(size)]
    for a in range(size):
        for b in range(size):
            if a != b and rng.random() < 0.4:
                rel[a][b] = True
    for k in range(size):
        for a in range(size):
            for b in range(size):
                if rel[a][k] and rel[k][b]:
                    rel[a][b] = True
    return validate_preorder(rel, rng.randrange(size))


def random_word(rng: random.Random, order: Preorder, max_len: int = 3) -> Word:
    return Word(tuple(rng.randrange(order.size) for _ in range(rng.randint(0, max_len))))


@dataclass(frozen=True)
class SelftestCaps:
    """Size and budget caps for generated instances."""

    alphabet: int = 3
    prefix_words: int = 4
    word_len: int = 3
    cycle_words: int = 2
    eps_calls: int = 1_000_000
    scan_cap: int = DEFAULT_SCAN_CAP
    spector_games: int = 50


def random_instance_spec(rng: random.Random, caps: SelftestCaps = SelftestCaps()) -> InstanceSpec:
    order = random_preorder(rng, caps.alphabet)
    prefix = tuple(random_word(rng, order, caps.word_len) for _ in range(rng.randint(0, caps.prefix_words)))
    budgets = Budgets(eps_calls=caps.eps_calls, scan_cap=caps.scan_cap)
    if rng.random() < 0.5:
        return InstanceSpec(order=order, prefix=prefix, constant=random_word(rng, order, caps.word_len), budgets=budgets)
    cycle = tuple(random_word(rng, order, caps.word_len) for _ in range(rng.randint(1, caps.cycle_words)))
    return InstanceSpec(order=order, prefix=prefix, cycle=cycle, budgets=budgets)


def random_table_game(rng: random.Random, *, max_moves: int = 3, max_control: int = 3) -> GameInstance:
    """A finite game with table-driven control, outcome, and selections.

    Control reads the first two entries of the play, the outcome the first
    three; the per-stage selection mode is either a table constant or an
    extremum of the evaluator, so the recursion is exercised both ways.
    """
    moves = rng.randint(1, max_moves)
    control_table = {
        (a, b): rng.randint(0, max_control) for a in range(moves) for b in range(moves)
    }
    outcome_table = {
        (a, b, c): rng.randint(0, 9) for a in range(moves) for b in range(moves) for c in range(moves)
    }

    def control(alpha) -> int:
        return control_table[(alpha[0], alpha[1])]

    def outcome(alpha) -> int:
        return outcome_table[(alpha[0], alpha[1], alpha[2])]

    modes = [rng.choice(["argmax", "argmax", "argmin", "const"]) for _ in range(max_control + 2)]
    consts = [rng.randrange(moves) for _ in range(max_control + 2)]

    def select(history, evaluate):
        stage = min(len(history), len(modes) - 1)
        mode = modes[stage]
        if mode == "const":
            return consts[stage]
        best, best_val = 0, evaluate(0)
        for x in range(1, moves):
            val = evaluate(x)
            if (mode == "argmax" and val > best_val) or (mode == "argmin" and val < best_val):
                best, best_val = x, val
        return best

    return GameInstance(control=control, selections=SelectionFamily(select), outcome=outcome, default_move=0)


@dataclass
class SelftestReport:
    seed: int
    count: int
    caps: SelftestCaps
    attempts: int = 0
    completed: int = 0
    budget_exceeded: int = 0
    soundness_failures: int = 0
    contract_failures: int = 0
    spector_games: int = 0
    spector_failures: int = 0
    max_bound: int = 0
    failures: list = field(default_factory=list)
    times_ms: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.completed == self.count
            and self.soundness_failures == 0
            and self.contract_failures == 0
            and self.spector_failures == 0
            and self.budget_exceeded * 20 < max(self.count, 1)
        )

    def to_dict(self, *, include_timings: bool = True) -> dict:
        data = {
            "mode": "selftest",
            "seed": self.seed,
            "count": self.count,
            "caps": {
                "alphabet": self.caps.alphabet,
                "prefix_words": self.caps.prefix_words,
                "word_len": self.caps.word_len,
                "cycle_words": self.caps.cycle_words,
                "eps_calls": self.caps.eps_calls,
                "scan_cap": self.caps.scan_cap,
                "spector_games": self.caps.spector_games,
            },
            "instances": {
                "attempts": self.attempts,
                "completed": self.completed,
                "budget_exceeded": self.budget_exceeded,
                "soundness_failures": self.soundness_failures,
                "contract_failures": self.contract_failures,
            },
            "spector": {"games": self.spector_games, "failures": self.spector_failures},
            "max_bound": self.max_bound,
            "failures": list(self.failures),
            "ok": self.ok,
        }
        if include_timings:
            data["timings_ms"] = self.timing_summary()
        return data

    def timing_summary(self) -> dict:
        if not self.times_ms:
            return {"p50": 0, "p90": 0, "max": 0}
        ordered = sorted(self.times_ms)
        return {
            "p50": round(statistics.median(ordered), 3),
            "p90": round(ordered[min(len(ordered) - 1, int(0.9 * len(ordered)))], 3),
            "max": round(ordered[-1], 3),
        }

    def render_text(self) -> str:
        lines = [
            f"selftest seed={self.seed} count={self.count}",
            f"instances: attempts={self.attempts} completed={self.completed} "
            f"budget_exceeded={self.budget_exceeded} soundness_failures={self.soundness_failures} "
            f"contract_failures={self.contract_failures}",
            f"spector: games={self.spector_games} failures={self.spector_failures}",
            f"max_bound={self.max_bound}",
        ]
        for failure in self.failures:
            lines.append(f"failure: {failure}")
        lines.append("result: " + ("ok" if self.ok else "FAILED"))
        timings = self.timing_summary()
        lines.append(f"timings_ms: p50={timings['p50']} p90={timings['p90']} max={timings['max']}")
        return "\n".join(lines)


def run_selftest(
    seed: int = 0,
    count: int = 10,
    caps: SelftestCaps = SelftestCaps(),
    *,
    verify_selections: bool = False,
) -> SelftestReport:
    """Generate instances, certify each bound, and check every contract.

    Instances that exhaust their recursion budget are reported and replaced
    by fresh draws from the same seeded generator, so the report is
    deterministic for a given (seed, count, caps) apart from timings. Every
    completed instance has its nesting, badness-transfer, and minimality
    contracts checked on the finished run; per-selection verification is off
    by default because it adds a constant-factor overhead without changing
    what is checked at the end.
    """
    rng = random.Random(seed)
    report = SelftestReport(seed=seed, count=count, caps=caps)
    max_attempts = count * 2 + 10
    while report.completed < count and report.attempts < max_attempts:
        spec = random_instance_spec(rng, caps)
        report.attempts += 1
        instance = to_higman_instance(spec)
        abandoned = False
        try:
            # Timed inside the pause so the instance is billed for its own
            # computation only; reclaiming its graph is suite housekeeping.
            with paused_gc():
                started = time.perf_counter()
                bound_report = gamma(instance, check_contracts=True, verify_selections=verify_selections)
                elapsed_ms = (time.perf_counter() - started) * 1000.0
        except BudgetExhaustedError:
            report.budget_exceeded += 1
            abandoned = True
        except SoundnessViolationError as exc:
            report.soundness_failures += 1
            report.failures.append(f"instance {report.attempts}: {exc}")
            abandoned = True
        except ContractViolationError as exc:
            report.contract_failures += 1
            report.failures.append(f"instance {report.attempts}: {exc}")
            abandoned = True
        if abandoned:
            # Outside the handler the exception no longer pins the dead run's
            # graph, so this reclaims it instead of billing the next instance.
            reclaim_run_garbage()
            continue
        report.completed += 1
        report.max_bound = max(report.max_bound, bound_report.bound)
        report.times_ms.append(elapsed_ms)
        del bound_report
        reclaim_run_garbage()
    for i in range(caps.spector_games):
        game = random_table_game(rng)
        report.spector_games += 1
        check = spector_check(game, budget=Budget(100_000))
        if not check.ok:
            report.spector_failures += 1
            report.failures.append(f"spector game {i}: equations failed")
    return report
