"""Pebbling strategies and their closed-form resource bounds.

Two families are generated:

* the recursive pebble/unpebble pair, which with ``n`` pebbles reaches
  node ``2**n - 1`` in ``(3**n - 1) / 2`` moves without any erasure;
* the springboard strategy, which covers ``m * 2**n`` nodes with ``n + 2``
  pebbles by leapfrogging two springboard pebbles ``2**n`` nodes at a
  time and erasing the one left behind.

All logarithms are base 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .game import (
    Erase,
    GameTrace,
    Move,
    MoveKind,
    PebbleConfig,
    Place,
    Remove,
    format_trace,
    replay,
    reverse_moves,
)
from .solvability import _nearest_left, is_weakly_solvable

LOG3 = math.log2(3)


class StrategyMismatch(AssertionError):
    """Replay disagrees with the resources a strategy declares."""


@dataclass(frozen=True)
class Strategy:
    moves: tuple
    declared_game_length: int
    declared_pebbles: int
    declared_erasures: int
    declared_peak: int
    start: frozenset = frozenset()

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def initial(self) -> PebbleConfig:
        return PebbleConfig(self.declared_game_length, self.start, self.declared_pebbles)

    def replay(self) -> GameTrace:
        return replay(self.initial, self.moves, self.declared_erasures)

    def verify(self) -> GameTrace:
        """Replay and check the declared peak and erasure count."""
        trace = self.replay()
        if trace.peak_pebbles != self.declared_peak:
            raise StrategyMismatch(f"peak {trace.peak_pebbles} != declared {self.declared_peak}")
        if trace.erasures_used != self.declared_erasures:
            raise StrategyMismatch(
                f"erasures {trace.erasures_used} != declared {self.declared_erasures}"
            )
        return trace

    @property
    def erasures(self) -> int:
        return sum(m.kind is MoveKind.ERASE for m in self.moves)

    def to_text(self) -> str:
        return format_trace(
            self.moves,
            self.declared_game_length,
            self.declared_pebbles,
            self.declared_erasures,
            self.start,
        )


# -- recursive pebbling -------------------------------------------------------


def _pebble(s: int, n: int, out: list) -> None:
    if n == 0:
        return
    t = s + (1 << (n - 1))
    _pebble(s, n - 1, out)
    out.append(Place(t))
    _unpebble(s, n - 1, out)
    _pebble(t, n - 1, out)


def _unpebble(s: int, n: int, out: list) -> None:
    if n == 0:
        return
    t = s + (1 << (n - 1))
    _unpebble(t, n - 1, out)
    _pebble(s, n - 1, out)
    out.append(Remove(t))
    _unpebble(s, n - 1, out)


def pebble_moves(s: int, n: int) -> list[Move]:
    out: list[Move] = []
    _pebble(s, n, out)
    return out


def unpebble_moves(s: int, n: int) -> list[Move]:
    out: list[Move] = []
    _unpebble(s, n, out)
    return out


def _segment_strategy(moves: list, s: int, n: int) -> Strategy:
    start = frozenset({s}) if s > 0 else frozenset()
    base = len(start)
    return Strategy(
        moves=tuple(moves),
        declared_game_length=s + (1 << n) - 1,
        declared_pebbles=n + base,
        declared_erasures=0,
        declared_peak=n + base,
        start=start,
    )


def bennett_pebble(s: int, n: int) -> Strategy:
    """Pebble ``s + 2**(n-1), s + 2**(n-1) + 2**(n-2), ..., s + 2**n - 1`` from a pebbled ``s``."""
    if s < 0 or n < 0:
        raise ValueError("s and n must be non-negative")
    return _segment_strategy(pebble_moves(s, n), s, n)


def bennett_unpebble(s: int, n: int) -> Strategy:
    """Exact inverse of :func:`bennett_pebble`; starts from its final board."""
    if s < 0 or n < 0:
        raise ValueError("s and n must be non-negative")
    strat = _segment_strategy(unpebble_moves(s, n), s, n)
    final = bennett_final_nodes(s, n) | strat.start
    return Strategy(
        strat.moves,
        strat.declared_game_length,
        strat.declared_pebbles,
        0,
        strat.declared_peak,
        frozenset(final),
    )


def bennett_final_nodes(s: int, n: int) -> frozenset:
    """Nodes left pebbled by ``bennett_pebble(s, n)``: suffix sums of powers of two."""
    nodes = set()
    pos = s
    for k in range(n - 1, -1, -1):
        pos += 1 << k
        nodes.add(pos)
    return frozenset(nodes)


def move_count(n: int) -> int:
    """Board moves made by ``bennett_pebble(s, n)``: ``(3**n - 1) / 2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return (3**n - 1) // 2


def paper_step_count(n: int) -> int:
    """``t(n) = 3 t(n-1) + 1`` with ``t(0) = 1``, i.e. ``(3**(n+1) - 1) / 2``.

    This convention charges one unit for the empty base case, so it runs one
    level ahead of :func:`move_count`: ``paper_step_count(n) == move_count(n + 1)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return (3 ** (n + 1) - 1) // 2


def max_reachable(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return (1 << n) - 1


# -- springboard strategy with erasures ---------------------------------------


def erasure_strategy(n: int, m: int) -> Strategy:
    """Cover ``m * 2**n`` nodes with ``n + 2`` pebbles and at most ``m - 1`` erasures.

    Round ``i`` bridges from the springboard on ``i * 2**n`` to a new one on
    ``(i+1) * 2**n`` and then drops the old springboard.  The fixed pebble on
    node 0 is never dropped, and a springboard on node 1 (only when ``n == 0``)
    is dropped with an ordinary Remove since node 0 is always to its left.
    """
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    width = 1 << n
    moves: list[Move] = []
    erasures = 0
    for i in range(m):
        base = i * width
        moves += pebble_moves(base, n)
        moves.append(Place(base + width))
        moves += unpebble_moves(base, n)
        if i < m - 1 and base > 0:
            if base == 1:
                moves.append(Remove(base))
            else:
                moves.append(Erase(base))
                erasures += 1
    peak = n + 1 if m == 1 else n + 2
    return Strategy(tuple(moves), m * width, n + 2, erasures, peak)


def erasure_time_bound(n: int, m: int) -> float:
    """Approximate game length of the springboard strategy: ``2 m 3**(n-1) + 2``."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    return 2 * m * 3.0 ** (n - 1) + 2


def defer_erasures(moves: Sequence[Move], as_kind: MoveKind = MoveKind.REMOVE) -> list[Move]:
    """Strip every Erase and re-append it at the end as ``as_kind``."""
    kept = [mv for mv in moves if mv.kind is not MoveKind.ERASE]
    deferred = [Move(as_kind, mv.node) for mv in moves if mv.kind is MoveKind.ERASE]
    return kept + deferred


# -- space/irreversibility trade-off -----------------------------------------


@dataclass(frozen=True)
class TradeoffRow:
    k: int
    space_blocks: int
    erased_bits_blocks: int
    time_bound: float

    def csv(self) -> str:
        return f"{self.k},{self.space_blocks},{self.erased_bits_blocks},{self.time_bound:.6g}"


TRADEOFF_CSV_HEADER = "k,space_blocks,erased_bits_blocks,time_bound"


def tradeoff_row(n: int, k: int, segment_space: float = 1.0) -> TradeoffRow:
    """Resources for simulating ``T = (2**n - 1) S`` steps with ``n - k`` blocks of space.

    ``time_bound`` is ``2**((k+1)(1 - log 3) + 1) (T/S)**log 3 S``.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    segments = (1 << n) - 1
    time = 2 ** ((k + 1) * (1 - LOG3) + 1) * segments**LOG3 * segment_space
    return TradeoffRow(k, n - k, (1 << (k + 2)) - 1, time)


def tradeoff_table(n: int, k_range: Iterable[int], segment_space: float = 1.0) -> list[TradeoffRow]:
    return [tradeoff_row(n, k, segment_space) for k in k_range]


def erasure_pebble_bound(erasures: int, n: int) -> int:
    """Non-springboard pebbles sufficient for a game ``n`` pebbles win erasure-free.

    Exact ``n - log(E + 1)`` when ``E + 1`` is a power of two; otherwise the
    largest ``2**j - 1 <= E`` erasures are used, giving ``n - floor(log(E + 1))``.
    The two springboards come on top: see :func:`tradeoff_strategy`.
    """
    if erasures < 1 or erasures % 2 == 0:
        raise ValueError("erasure count must be an odd integer >= 1")
    j = (erasures + 1).bit_length() - 1
    if j > n:
        raise ValueError(f"{erasures} erasures exceed what n={n} can use")
    return n - j


def tradeoff_strategy(erasures: int, n: int) -> Strategy:
    """Springboard strategy covering ``2**n`` nodes with ``E`` erasures.

    Uses ``erasure_pebble_bound(E, n) + 2`` pebbles, so the game length
    ``2**n - 1`` that needs ``n`` pebbles erasure-free is won with
    ``n - log(E + 1) + 2``.
    """
    inner = erasure_pebble_bound(erasures, n)
    return erasure_strategy(inner, 1 << (n - inner))


# -- expanding big-step removals ---------------------------------------------


def expand_removal(config: PebbleConfig, node: int) -> list[Move]:
    """Elementary moves removing the available pebble on ``node``.

    Bridges from the nearest pebble ``j`` to the left with the free pebbles
    until ``node - 1`` is pebbled, removes ``node``, then retracts the bridge.
    """
    j = _nearest_left(config.occupied, node)
    f = config.free
    if node not in config.occupied or node - j > 1 << f:
        raise ValueError(f"node {node} is not an available pebble in {config}")
    target = node - 1
    bridge: list[Move] = []
    if target > j:
        # prefix of the full recursion up to the first time ``target`` is covered;
        # moves right of ``target`` are dropped, which keeps the rest legal
        occupied = set()
        for mv in pebble_moves(j, f):
            if mv.node > target:
                continue
            bridge.append(mv)
            if mv.kind is MoveKind.PLACE:
                occupied.add(mv.node)
            else:
                occupied.discard(mv.node)
            if target in occupied:
                break
    return bridge + [Remove(node)] + reverse_moves(bridge)


def clearing_moves(config: PebbleConfig) -> list[Move]:
    """Elementary moves emptying a realizable board (greedy removal order)."""
    result = is_weakly_solvable(config)
    if not result:
        raise ValueError(f"{config} is not realizable")
    moves: list[Move] = []
    current = config
    for node in result.removal_order:
        moves += expand_removal(current, node)
        current = current.with_occupied(current.occupied - {node})
    return moves


def realizing_moves(config: PebbleConfig) -> list[Move]:
    """Elementary moves building ``config`` from the empty board."""
    return reverse_moves(clearing_moves(config))
