"""Checkpointed reversible simulation driven by a pebbling strategy.

Node ``i`` of the pebble game stands for the machine description after
``i * segment_length`` steps.  A pebble on node ``i`` is a stored
checkpoint of that description; node 0 holds the initial description for
the whole run.

* ``Place i``: compute checkpoint ``i`` from checkpoint ``i - 1``.  The
  segment is run with a history log and then unwound, so only the copied
  result survives.
* ``Remove i``: recompute checkpoint ``i`` from ``i - 1``, check it equals
  the stored one, and drop it.  Nothing is lost since it can be recomputed.
* ``Erase i``: drop checkpoint ``i`` outright; its bits count as
  irreversibly erased.

Once the machine halts, later checkpoints are copies of the halting
description and cost no steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .game import IllegalMove, MoveKind, PebbleConfig, apply, reverse_moves
from .machine import (
    DEFAULT_STEP_CAP,
    InstantDesc,
    MachineSpec,
    execute,
    initial_desc,
    profile,
    symbol_bits,
    unwind,
)
from .strategies import Strategy, bennett_pebble, erasure_strategy, max_reachable

# fixed bits charged per checkpoint for the head position, on top of state and cells
HEAD_BITS = 32


class SimulationError(Exception):
    pass


class MissingCheckpoint(SimulationError):
    pass


class CancelMismatch(SimulationError):
    pass


class NotHalted(SimulationError):
    pass


class CapExceeded(SimulationError):
    def __init__(self, t_max: int):
        super().__init__(f"machine did not halt within {t_max} segments")
        self.t_max = t_max


class InvalidParameters(ValueError):
    pass


class SegmentResult(NamedTuple):
    desc: InstantDesc
    steps: int
    halted: bool


def advance_segment(spec: MachineSpec, start: InstantDesc, segment_length: int) -> SegmentResult:
    """Run ``segment_length`` steps (fewer on halt) and keep only the endpoint.

    The run keeps a history log that is unwound back to ``start`` before
    returning, so no history outlives the call.
    """
    if segment_length < 0:
        raise ValueError("segment_length must be non-negative")
    ex = execute(spec, start, segment_length, keep_log=True)
    result = ex.final
    restored = unwind(spec, ex.final, ex.log)
    if restored != start:
        raise CancelMismatch("history unwinding did not restore the segment start")
    return SegmentResult(result, ex.steps, ex.halted)


def checkpoint_bits(spec: MachineSpec, desc: InstantDesc) -> int:
    """Size of a stored description: tape span cells, state and head."""
    lo, hi = desc.span()
    state_bits = max(1, math.ceil(math.log2(len(spec.states))))
    return (hi - lo + 1) * symbol_bits(spec) + state_bits + HEAD_BITS


def block_bits(spec: MachineSpec, cells: int) -> int:
    """Bits of a checkpoint spanning ``cells`` tape cells."""
    state_bits = max(1, math.ceil(math.log2(len(spec.states))))
    return cells * symbol_bits(spec) + state_bits + HEAD_BITS


@dataclass
class ResourceReport:
    simulated_steps: int = 0  # forward machine steps, recomputations included
    unwound_steps: int = 0  # history-undo steps inside segments
    segments_computed: int = 0  # segment advances (Place and Remove)
    segments_recomputed: int = 0  # advances of a node computed before
    peak_checkpoints: int = 0  # excluding node 0
    erasures: int = 0
    bits_erased: int = 0
    wall_moves: int = 0
    halt_node: int | None = None
    halt_offset: int | None = None
    attempts: int = 1
    undo_phases: int = 0

    def line(self) -> str:
        return (
            f"REPORT simulated_steps={self.simulated_steps} "
            f"segments_computed={self.segments_computed} "
            f"segments_recomputed={self.segments_recomputed} "
            f"peak_checkpoints={self.peak_checkpoints} "
            f"erasures={self.erasures} bits_erased={self.bits_erased} "
            f"wall_moves={self.wall_moves} attempts={self.attempts} "
            f"undo_phases={self.undo_phases}"
        )


@dataclass
class CheckpointStore:
    """Checkpoints keyed by pebble-game node; node 0 is the initial description."""

    segment_length: int
    slots: dict = field(default_factory=dict)
    computed: set = field(default_factory=set)  # nodes ever computed

    @classmethod
    def start(cls, initial: InstantDesc, segment_length: int) -> "CheckpointStore":
        return cls(segment_length, {0: initial})

    @property
    def initial(self) -> InstantDesc:
        return self.slots[0]

    def keys(self) -> frozenset:
        return frozenset(self.slots)


class _Interpreter:
    """Plays moves on a store while mirroring them on a pebble board."""

    def __init__(self, spec, store, board, budget, report, events):
        self.spec = spec
        self.store = store
        self.board = board
        self.budget = budget
        self.report = report
        self.events = events

    def _emit(self, line: str) -> None:
        if self.events is not None:
            self.events.append(line)

    def _advance(self, node: int) -> InstantDesc:
        prev = self.store.slots.get(node - 1)
        if prev is None:
            raise MissingCheckpoint(f"node {node} needs checkpoint {node - 1}")
        seg = advance_segment(self.spec, prev, self.store.segment_length)
        r = self.report
        r.simulated_steps += seg.steps
        r.unwound_steps += seg.steps
        r.segments_computed += 1
        if node in self.store.computed:
            r.segments_recomputed += 1
        self.store.computed.add(node)
        self._emit(f"SEG {node} steps={seg.steps}")
        if seg.halted and r.halt_node is None and prev.state not in self.spec.halt:
            r.halt_node, r.halt_offset = node, seg.steps
            self._emit(f"HALT node={node} offset={seg.steps}")
        return seg.desc

    def play(self, move) -> None:
        self._emit(f"MOVE {move}")
        slots = self.store.slots
        node = move.node
        if move.kind is MoveKind.PLACE:
            if node - 1 not in slots:
                raise MissingCheckpoint(f"node {node} needs checkpoint {node - 1}")
            self._mirror(move)
            slots[node] = self._advance(node)
        elif move.kind is MoveKind.REMOVE:
            if node not in slots or node - 1 not in slots:
                raise MissingCheckpoint(f"cancelling {node} needs checkpoints {node - 1} and {node}")
            self._mirror(move)
            if self._advance(node) != slots[node]:
                raise CancelMismatch(f"recomputed checkpoint {node} differs from stored one")
            del slots[node]
        else:
            if node not in slots:
                raise MissingCheckpoint(f"cannot erase absent checkpoint {node}")
            self._mirror(move)
            self.report.erasures += 1
            self.report.bits_erased += checkpoint_bits(self.spec, slots.pop(node))
        self.report.wall_moves += 1
        self.report.peak_checkpoints = max(self.report.peak_checkpoints, len(slots) - 1)
        if self.store.keys() != self.board.occupied | {0}:
            raise SimulationError("checkpoint store out of step with pebble board")

    def _mirror(self, move) -> None:
        remaining = self.budget - self.report.erasures
        self.board = apply(self.board, move, remaining)


def _interpret(spec, store, strategy_moves, board, budget, report, events):
    interp = _Interpreter(spec, store, board, budget, report, events)
    for move in strategy_moves:
        interp.play(move)
    return interp.board


def _top(store: CheckpointStore) -> InstantDesc:
    return store.slots[max(store.slots)]


def simulate_with_strategy(
    spec: MachineSpec,
    tape_input,
    strategy: Strategy,
    segment_length: int,
    events: list | None = None,
) -> tuple[InstantDesc, ResourceReport]:
    """Reversibly simulate ``spec`` on ``tape_input`` following ``strategy``.

    The answer is read from the highest remaining checkpoint, which must be
    a halting description; with node 0 it forms the pair ``<x, f(x)>``.
    """
    if segment_length < 1:
        raise InvalidParameters("segment_length must be positive")
    if strategy.start:
        raise InvalidParameters("strategy must start from the empty board")
    initial = tape_input if isinstance(tape_input, InstantDesc) else initial_desc(spec, tape_input)
    store = CheckpointStore.start(initial, segment_length)
    report = ResourceReport()
    board = strategy.initial
    try:
        _interpret(spec, store, strategy.moves, board, strategy.declared_erasures, report, events)
    except IllegalMove as exc:
        raise SimulationError(f"strategy is not legal: {exc}") from exc
    final = _top(store)
    if final.state not in spec.halt:
        raise NotHalted(
            f"strategy covers {max(store.slots)} segments of {segment_length} steps "
            "but the machine has not halted"
        )
    if events is not None:
        events.append(report.line())
    return final, report


def doubling_strategy(t: int) -> Strategy:
    """Erasure-free strategy ending with a single checkpoint on node ``t = 2**i``."""
    if t < 1 or t & (t - 1):
        raise InvalidParameters("t must be a power of two")
    return erasure_strategy(t.bit_length() - 1, 1)


def simulate_unknown_T(
    spec: MachineSpec,
    tape_input,
    segment_length: int | None = None,
    max_segments: int = 1 << 20,
    events: list | None = None,
) -> tuple[InstantDesc, ResourceReport]:
    """Simulate without knowing the running time.

    Tries ``t = 2, 4, 8, ...`` segments.  An attempt that ends before the
    halt is played backwards until only node 0 is left, then ``t`` doubles.
    ``segment_length`` defaults to the input's tape span.
    """
    initial = tape_input if isinstance(tape_input, InstantDesc) else initial_desc(spec, tape_input)
    if segment_length is None:
        lo, hi = initial.span()
        segment_length = hi - lo + 1
    if segment_length < 1:
        raise InvalidParameters("segment_length must be positive")
    store = CheckpointStore.start(initial, segment_length)
    report = ResourceReport(attempts=0)
    t = 2
    while t <= max_segments:
        strategy = doubling_strategy(t)
        report.attempts += 1
        if events is not None:
            events.append(f"ATTEMPT t={t}")
        _interpret(spec, store, strategy.moves, strategy.initial, 0, report, events)
        final = _top(store)
        if final.state in spec.halt:
            if events is not None:
                events.append(report.line())
            return final, report
        if events is not None:
            events.append(f"UNDO t={t}")
        board = PebbleConfig(strategy.declared_game_length, store.keys() - {0}, strategy.declared_pebbles)
        _interpret(spec, store, reverse_moves(strategy.moves), board, 0, report, events)
        report.undo_phases += 1
        if store.keys() != {0}:
            raise SimulationError("undo phase left checkpoints behind")
        t *= 2
    raise CapExceeded(max_segments)


def unknown_time_bound(halting_segments: int) -> float:
    """``2 (4T)**log 3`` in segments."""
    return 2 * (4 * halting_segments) ** math.log2(3)


# -- planning -----------------------------------------------------------------


@dataclass(frozen=True)
class Plan:
    strategy: Strategy
    segment_length: int
    predicted: ResourceReport
    pebbles: int  # n of the erasure-free plan covering the run


def _parse_mode(mode: str) -> int | None:
    if mode == "min_space":
        return None
    kind, sep, k = mode.partition(":")
    if kind == "erasure" and sep and k.isdigit():
        return int(k)
    raise InvalidParameters(f"unknown plan mode {mode!r}; use min_space or erasure:<k>")


def plan(
    steps: int,
    space: int,
    mode: str = "min_space",
    spec: MachineSpec | None = None,
    segment_length: int | None = None,
) -> Plan:
    """Pick a strategy and segment length for a run of ``steps`` steps in ``space`` cells.

    ``min_space``: segments of ``space`` steps and the smallest ``n`` with
    ``2**n - 1`` segments covering the run.  ``erasure:k``: the springboard
    strategy with ``2**(k+2)`` rounds and ``n - k - 2`` bridging pebbles,
    i.e. ``n - k`` pebbles in all, using at most ``2**(k+2) - 1`` erasures.

    ``segment_length`` overrides the default of ``space`` steps per segment;
    erased bits are still predicted from checkpoints of ``space`` cells.
    """
    if segment_length is None:
        segment_length = space
    if steps < 1 or space < 1 or segment_length < 1:
        raise InvalidParameters("steps, space and segment_length must be positive")
    k = _parse_mode(mode)
    segments = -(-steps // segment_length)
    n = max(1, segments.bit_length())  # smallest n with 2**n - 1 >= segments
    assert max_reachable(n) >= segments
    if k is None:
        strategy = bennett_pebble(0, n)
    else:
        if not 1 <= k < n:
            raise InvalidParameters(f"erasure mode needs 1 <= k < n = {n}, got k={k}")
        depth = max(0, n - k - 2)
        rounds = min(1 << (k + 2), -(-segments // (1 << depth)))
        strategy = erasure_strategy(depth, rounds)
    trace = strategy.replay()
    advances = sum(m.kind is not MoveKind.ERASE for m in strategy.moves)
    bits = trace.erasures_used * block_bits(spec, space) if spec is not None else 0
    predicted = ResourceReport(
        simulated_steps=advances * segment_length,
        segments_computed=advances,
        peak_checkpoints=trace.peak_pebbles,
        erasures=trace.erasures_used,
        bits_erased=bits,
        wall_moves=len(strategy.moves),
    )
    return Plan(strategy, segment_length, predicted, n)


def plan_for(
    spec: MachineSpec,
    tape_input,
    mode: str = "min_space",
    segment_length: int | None = None,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Plan:
    """Profile a direct run for ``T`` and ``S`` and plan from them."""
    prof = profile(spec, tape_input, step_cap)
    return plan(max(1, prof.steps), prof.space, mode, spec, segment_length)
