"""Reversible pebble game on a linear list of nodes.

Nodes are numbered ``1..game_length``.  An extra node 0 carries a fixed
pebble that is never stored and never moves, so node 1 can always be
(un)pebbled.  A move is a ``Place``, a ``Remove`` or, in the m-erasure
variant, an ``Erase`` that drops a pebble without the left neighbour
being pebbled.

Text formats
------------
Traces::

    game T_G=<int> n=<int> budget=<int>
    P 1
    R 1
    E 4

Configurations::

    f=<int>;occ=<i1,i2,...>
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class MoveKind(enum.Enum):
    PLACE = "P"
    REMOVE = "R"
    ERASE = "E"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    node: int

    def inverse(self) -> "Move":
        if self.kind is MoveKind.PLACE:
            return Move(MoveKind.REMOVE, self.node)
        if self.kind is MoveKind.REMOVE:
            return Move(MoveKind.PLACE, self.node)
        raise NotReversible(f"{self} has no inverse")

    def __str__(self) -> str:
        return f"{self.kind.value} {self.node}"

    def __repr__(self) -> str:
        return f"{self.kind.name.title()}({self.node})"


def Place(node: int) -> Move:
    return Move(MoveKind.PLACE, node)


def Remove(node: int) -> Move:
    return Move(MoveKind.REMOVE, node)


def Erase(node: int) -> Move:
    return Move(MoveKind.ERASE, node)


class PebbleError(Exception):
    pass


class IllegalMove(PebbleError):
    def __init__(self, move: Move, reason: str):
        super().__init__(f"illegal move {move!r}: {reason}")
        self.move = move
        self.reason = reason


class IllegalMoveAt(IllegalMove):
    def __init__(self, index: int, move: Move, reason: str):
        PebbleError.__init__(self, f"illegal move {move!r} at index {index}: {reason}")
        self.index = index
        self.move = move
        self.reason = reason


class NotReversible(PebbleError):
    pass


@dataclass(frozen=True)
class PebbleConfig:
    """Occupancy of nodes ``1..game_length`` plus the pebble pool size."""

    game_length: int
    occupied: frozenset = frozenset()
    total_pebbles: int = 0

    def __post_init__(self):
        object.__setattr__(self, "occupied", frozenset(self.occupied))
        if self.game_length < 0:
            raise ValueError("game_length must be non-negative")
        if self.total_pebbles < 0:
            raise ValueError("total_pebbles must be non-negative")
        if len(self.occupied) > self.total_pebbles:
            raise ValueError(
                f"{len(self.occupied)} pebbles placed but pool holds {self.total_pebbles}"
            )
        for i in self.occupied:
            if not 1 <= i <= self.game_length:
                raise ValueError(f"node {i} outside 1..{self.game_length}")

    @classmethod
    def empty(cls, game_length: int, total_pebbles: int) -> "PebbleConfig":
        return cls(game_length, frozenset(), total_pebbles)

    @classmethod
    def from_mask(cls, mask: int, game_length: int, total_pebbles: int) -> "PebbleConfig":
        occ = frozenset(i for i in range(1, game_length + 1) if mask >> (i - 1) & 1)
        return cls(game_length, occ, total_pebbles)

    @property
    def mask(self) -> int:
        """Bit ``i-1`` is set iff node ``i`` is pebbled."""
        m = 0
        for i in self.occupied:
            m |= 1 << (i - 1)
        return m

    @property
    def free(self) -> int:
        return self.total_pebbles - len(self.occupied)

    def pebbled(self, node: int) -> bool:
        return node == 0 or node in self.occupied

    def with_occupied(self, occupied: Iterable[int]) -> "PebbleConfig":
        return PebbleConfig(self.game_length, frozenset(occupied), self.total_pebbles)

    def __str__(self) -> str:
        return format_config(self)


def is_legal(config: PebbleConfig, move: Move, erasure_budget_remaining: int = 0) -> bool:
    return _violation(config, move, erasure_budget_remaining) is None


def _violation(config: PebbleConfig, move: Move, budget: int) -> str | None:
    i = move.node
    if not 1 <= i <= config.game_length:
        return f"node {i} outside 1..{config.game_length}"
    if move.kind is MoveKind.PLACE:
        if not config.pebbled(i - 1):
            return f"node {i - 1} is not pebbled"
        if i in config.occupied:
            return f"node {i} is already pebbled"
        if config.free <= 0:
            return "no free pebble"
        return None
    if move.kind is MoveKind.REMOVE:
        if not config.pebbled(i - 1):
            return f"node {i - 1} is not pebbled"
        if i not in config.occupied:
            return f"node {i} is not pebbled"
        return None
    # erase
    if i <= 1:
        return "erasure only allowed on nodes > 1"
    if i not in config.occupied:
        return f"node {i} is not pebbled"
    if budget <= 0:
        return "erasure budget exhausted"
    return None


def apply(config: PebbleConfig, move: Move, erasure_budget_remaining: int = 0) -> PebbleConfig:
    reason = _violation(config, move, erasure_budget_remaining)
    if reason is not None:
        raise IllegalMove(move, reason)
    if move.kind is MoveKind.PLACE:
        return config.with_occupied(config.occupied | {move.node})
    return config.with_occupied(config.occupied - {move.node})


@dataclass(frozen=True)
class GameTrace:
    initial: PebbleConfig
    moves: tuple
    final: PebbleConfig
    peak_pebbles: int
    erasures_used: int
    budget: int = 0

    def __len__(self) -> int:
        return len(self.moves)


def replay(initial: PebbleConfig, moves: Sequence[Move], erasure_budget: int = 0) -> GameTrace:
    """Apply ``moves`` in order; raises :class:`IllegalMoveAt` on the first bad one."""
    config = initial
    peak = len(initial.occupied)
    erased = 0
    for index, move in enumerate(moves):
        reason = _violation(config, move, erasure_budget - erased)
        if reason is not None:
            raise IllegalMoveAt(index, move, reason)
        config = apply(config, move, erasure_budget - erased)
        if move.kind is MoveKind.ERASE:
            erased += 1
        peak = max(peak, len(config.occupied))
    return GameTrace(initial, tuple(moves), config, peak, erased, erasure_budget)


def reverse_moves(moves: Sequence[Move]) -> list[Move]:
    """Undo sequence: reversed order, each Place swapped with Remove."""
    for m in moves:
        if m.kind is MoveKind.ERASE:
            raise NotReversible(f"{m!r} is an irreversible erasure")
    return [m.inverse() for m in reversed(moves)]


# -- text formats -----------------------------------------------------------

_HEADER = re.compile(r"^game\s+T_G=(\d+)\s+n=(\d+)\s+budget=(\d+)(?:\s+start=([\d,]*))?\s*$")
_MOVE = re.compile(r"^([PRE])\s+(\d+)\s*$")


@dataclass
class TraceFile:
    game_length: int
    total_pebbles: int
    budget: int
    moves: list = field(default_factory=list)
    start: frozenset = frozenset()

    @property
    def initial(self) -> PebbleConfig:
        return PebbleConfig(self.game_length, self.start, self.total_pebbles)


def format_trace(
    moves: Sequence[Move],
    game_length: int,
    total_pebbles: int,
    budget: int = 0,
    start: Iterable[int] = (),
) -> str:
    start = sorted(start)
    header = f"game T_G={game_length} n={total_pebbles} budget={budget}"
    if start:
        header += " start=" + ",".join(map(str, start))
    return "\n".join([header, *map(str, moves)]) + "\n"


def parse_trace(text: str) -> TraceFile:
    """Parse the trace format; blank lines and ``#`` comments are skipped."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty trace")
    h = _HEADER.match(lines[0])
    if h is None:
        raise ValueError(f"bad trace header: {lines[0]!r}")
    start = frozenset(int(x) for x in (h.group(4) or "").split(",") if x)
    trace = TraceFile(int(h.group(1)), int(h.group(2)), int(h.group(3)), start=start)
    for lineno, ln in enumerate(lines[1:], start=2):
        m = _MOVE.match(ln)
        if m is None:
            raise ValueError(f"bad move line {lineno}: {ln!r}")
        trace.moves.append(Move(MoveKind(m.group(1)), int(m.group(2))))
    return trace


def format_config(config: PebbleConfig) -> str:
    return f"f={config.free};occ=" + ",".join(map(str, sorted(config.occupied)))


def parse_config(
    text: str, game_length: int | None = None, total_pebbles: int | None = None
) -> PebbleConfig:
    """Parse ``f=<int>;occ=<list>``.

    Either field may be omitted.  The pool size is ``f + |occ|`` when ``f``
    is given, else ``total_pebbles`` (default: exactly the placed pebbles).
    The game length defaults to the highest occupied node.
    """
    fields = {}
    for part in text.replace(" ", "").split(";"):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep or key not in ("f", "occ"):
            raise ValueError(f"bad config field {part!r}")
        fields[key] = value
    occ = frozenset(int(x) for x in fields.get("occ", "").split(",") if x)
    if "f" in fields:
        n = int(fields["f"]) + len(occ)
        if total_pebbles is not None and total_pebbles != n:
            raise ValueError(f"f={fields['f']} with {len(occ)} placed contradicts n={total_pebbles}")
    else:
        n = len(occ) if total_pebbles is None else total_pebbles
    if game_length is None:
        game_length = max(occ, default=0)
    return PebbleConfig(game_length, occ, n)
