"""Instance descriptions: JSON parsing, validation, and serialization.

An instance file names a finite preorder, an eventually periodic word
stream (a finite prefix with either a constant word tail or a repeating
cycle of words), optional run budgets, and an optional seed echoed back in
reports. Parsing is strict: unknown stream forms, out-of-range letters, and
malformed matrices are rejected with the offending field named.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import InstanceSpecError
from .realizer import Budgets, HigmanInstance
from .streams import Stream, periodic_stream
from .wqo import EMPTY_WORD, Preorder, Word, validate_preorder


@dataclass(frozen=True)
class InstanceSpec:
    """Parsed, validated instance description."""

    order: Preorder
    prefix: tuple[Word, ...]
    cycle: tuple[Word, ...] = ()
    constant: Optional[Word] = None
    budgets: Budgets = field(default_factory=Budgets)
    seed: Optional[int] = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InstanceSpecError(message)


def _parse_word(order: Preorder, data, where: str) -> Word:
    _require(isinstance(data, list), f"{where}: expected an array of letters")
    for x in data:
        _require(isinstance(x, int) and not isinstance(x, bool), f"{where}: letters must be integers")
    try:
        return Word.over(order, data)
    except ValueError as exc:
        raise InstanceSpecError(f"{where}: {exc}") from None


def parse_instance(data: dict) -> InstanceSpec:
    """Validate a decoded instance object; raises InstanceSpecError naming
    the offending field."""
    _require(isinstance(data, dict), "instance: expected a JSON object")
    unknown = set(data) - {"order", "stream", "budgets", "seed"}
    _require(not unknown, f"instance: unknown fields {sorted(unknown)}")

    order_data = data.get("order")
    _require(isinstance(order_data, dict), "order: expected an object")
    unknown = set(order_data) - {"size", "rel", "default_letter"}
    _require(not unknown, f"order: unknown fields {sorted(unknown)}")
    rel = order_data.get("rel")
    _require(isinstance(rel, list) and all(isinstance(row, list) for row in rel), "order.rel: expected a matrix")
    default_letter = order_data.get("default_letter", 0)
    _require(isinstance(default_letter, int) and not isinstance(default_letter, bool), "order.default_letter: expected an integer")
    try:
        order = validate_preorder(rel, default_letter)
    except ValueError as exc:
        raise InstanceSpecError(f"order: {exc}") from None
    size = order_data.get("size", order.size)
    _require(size == order.size, f"order.size: {size} does not match a {order.size}x{order.size} matrix")

    stream_data = data.get("stream")
    _require(isinstance(stream_data, dict), "stream: expected an object")
    unknown = set(stream_data) - {"prefix", "cycle", "constant"}
    _require(not unknown, f"stream: unknown fields {sorted(unknown)}")
    prefix_data = stream_data.get("prefix", [])
    _require(isinstance(prefix_data, list), "stream.prefix: expected an array of words")
    prefix = tuple(_parse_word(order, w, f"stream.prefix[{i}]") for i, w in enumerate(prefix_data))
    has_cycle = "cycle" in stream_data
    has_constant = "constant" in stream_data
    _require(has_cycle != has_constant, "stream: exactly one of 'cycle' or 'constant' is required")
    cycle: tuple[Word, ...] = ()
    constant: Optional[Word] = None
    if has_cycle:
        cycle_data = stream_data["cycle"]
        _require(isinstance(cycle_data, list) and cycle_data, "stream.cycle: expected a non-empty array of words")
        cycle = tuple(_parse_word(order, w, f"stream.cycle[{i}]") for i, w in enumerate(cycle_data))
    else:
        constant = _parse_word(order, stream_data["constant"], "stream.constant")

    budgets_data = data.get("budgets", {})
    _require(isinstance(budgets_data, dict), "budgets: expected an object")
    unknown = set(budgets_data) - {"eps_calls", "scan_cap"}
    _require(not unknown, f"budgets: unknown fields {sorted(unknown)}")
    defaults = Budgets()
    eps_calls = budgets_data.get("eps_calls", defaults.eps_calls)
    scan_cap = budgets_data.get("scan_cap", defaults.scan_cap)
    for name, value in (("eps_calls", eps_calls), ("scan_cap", scan_cap)):
        _require(isinstance(value, int) and not isinstance(value, bool) and value > 0, f"budgets.{name}: expected a positive integer")

    seed = data.get("seed")
    if seed is not None:
        _require(isinstance(seed, int) and not isinstance(seed, bool), "seed: expected an integer")

    return InstanceSpec(
        order=order,
        prefix=prefix,
        cycle=cycle,
        constant=constant,
        budgets=Budgets(eps_calls=eps_calls, scan_cap=scan_cap),
        seed=seed,
    )


def load_instance(path) -> InstanceSpec:
    """Parse an instance file, reporting JSON syntax errors with position."""
    with open(path) as fp:
        try:
            data = json.load(fp)
        except json.JSONDecodeError as exc:
            raise InstanceSpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(data)


def instance_to_dict(spec: InstanceSpec) -> dict:
    stream: dict = {"prefix": [list(w.letters) for w in spec.prefix]}
    if spec.constant is not None:
        stream["constant"] = list(spec.constant.letters)
    else:
        stream["cycle"] = [list(w.letters) for w in spec.cycle]
    data = {
        "order": {
            "size": spec.order.size,
            "rel": [list(row) for row in spec.order.rel],
            "default_letter": spec.order.default_letter,
        },
        "stream": stream,
        "budgets": {"eps_calls": spec.budgets.eps_calls, "scan_cap": spec.budgets.scan_cap},
    }
    if spec.seed is not None:
        data["seed"] = spec.seed
    return data


def build_stream(spec: InstanceSpec) -> Stream:
    cycle = spec.cycle if spec.constant is None else (spec.constant,)
    return periodic_stream(spec.prefix, cycle, EMPTY_WORD)


def to_higman_instance(spec: InstanceSpec, *, eps_calls: int | None = None) -> HigmanInstance:
    budgets = spec.budgets if eps_calls is None else Budgets(eps_calls=eps_calls, scan_cap=spec.budgets.scan_cap)
    return HigmanInstance(order=spec.order, u=build_stream(spec), budgets=budgets)
