"""Which pebble configurations can actually occur?

A placed pebble is *available* when some other pebble (node 0 included)
sits at most ``2**f`` nodes to its left, ``f`` being the number of free
pebbles.  Available pebbles can be cleared with the free ones, so a
configuration is reachable from the empty board exactly when available
pebbles can be removed one at a time until the board is empty.  The
removal order may be chosen greedily: any available pebble works.

:func:`enumerate_reachable` is a brute-force breadth-first oracle used to
cross-check that characterization on small games.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Sequence

from .game import PebbleConfig, format_config

DEFAULT_ENUMERATION_CAP = 16


class InstanceTooLarge(ValueError):
    pass


def _nearest_left(occupied, node: int) -> int:
    """Nearest pebbled node strictly left of ``node`` (node 0 always qualifies)."""
    return max((j for j in occupied if j < node), default=0)


def _available(occupied: frozenset, free: int) -> list[int]:
    reach = 1 << free
    return sorted(i for i in occupied if i - _nearest_left(occupied, i) <= reach)


def available_pebbles(config: PebbleConfig) -> set[int]:
    return set(_available(config.occupied, config.free))


@dataclass(frozen=True)
class Solvability:
    solvable: bool
    removal_order: tuple

    def __bool__(self) -> bool:
        return self.solvable

    def numbering(self, free: int) -> dict[int, int] | None:
        """Ranks ``free, free+1, ...`` in order of removal; ``None`` if unsolvable."""
        if not self.solvable:
            return None
        return {node: free + k for k, node in enumerate(self.removal_order)}


def is_weakly_solvable(
    config: PebbleConfig,
    choose: Callable[[Sequence[int]], int] | None = None,
) -> Solvability:
    """Greedy big-step removal.

    ``choose`` picks among the available pebbles (sorted ascending); the
    default takes the highest node.  Any choice yields the same verdict.
    """
    if choose is None:
        choose = max
    occupied = set(config.occupied)
    free = config.free
    order = []
    while occupied:
        avail = _available(frozenset(occupied), free)
        if not avail:
            return Solvability(False, tuple(order))
        node = choose(avail)
        occupied.remove(node)
        order.append(node)
        free += 1
    return Solvability(True, tuple(order))


def random_chooser(rng: random.Random) -> Callable[[Sequence[int]], int]:
    return lambda avail: rng.choice(list(avail))


def is_strongly_solvable_exhaustive(config: PebbleConfig) -> bool:
    """True iff *every* maximal sequence of available-pebble removals empties the board."""
    n = config.total_pebbles

    @lru_cache(maxsize=None)
    def strong(occupied: frozenset) -> bool:
        if not occupied:
            return True
        avail = _available(occupied, n - len(occupied))
        if not avail:
            return False
        return all(strong(occupied - {i}) for i in avail)

    return strong(config.occupied)


def check_numbering(config: PebbleConfig, numbering: dict[int, int]) -> bool:
    """Does every placed pebble of rank ``r`` see a higher rank within ``2**r`` to its left?

    Node 0 ranks above every placed pebble.
    """
    f = config.free
    if set(numbering) != set(config.occupied):
        raise ValueError("numbering must cover exactly the occupied nodes")
    if sorted(numbering.values()) != list(range(f, config.total_pebbles)):
        raise ValueError(f"ranks must be exactly {f}..{config.total_pebbles - 1}")
    for node, rank in numbering.items():
        lo = node - (1 << rank)
        if lo <= 0:
            continue  # node 0 is within reach
        if not any(lo <= j < node and r > rank for j, r in numbering.items()):
            return False
    return True


def find_numbering(config: PebbleConfig) -> dict[int, int] | None:
    return is_weakly_solvable(config).numbering(config.free)


def is_realizable(config: PebbleConfig) -> bool:
    return is_weakly_solvable(config).solvable


@dataclass(frozen=True)
class ReachableSet:
    game_length: int
    total_pebbles: int
    masks: tuple  # sorted occupancy bitmasks, bit i-1 <-> node i

    def __contains__(self, item) -> bool:
        if isinstance(item, PebbleConfig):
            item = item.mask
        elif not isinstance(item, int):
            item = PebbleConfig(self.game_length, frozenset(item), self.total_pebbles).mask
        return item in self._mask_set

    @cached_property
    def _mask_set(self) -> frozenset:
        return frozenset(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[PebbleConfig]:
        return (PebbleConfig.from_mask(m, self.game_length, self.total_pebbles) for m in self.masks)

    @property
    def configs(self) -> list[PebbleConfig]:
        return list(self)

    @property
    def max_node(self) -> int:
        """Highest node pebbled by any member (0 if only the empty board)."""
        return max((m.bit_length() for m in self.masks), default=0)

    def lines(self) -> list[str]:
        ordered = sorted(self, key=lambda c: (len(c.occupied), sorted(c.occupied)))
        return [format_config(c) for c in ordered]


def enumerate_reachable(
    game_length: int, total_pebbles: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> ReachableSet:
    """Breadth-first closure of the empty board under Place/Remove."""
    if game_length > cap:
        raise InstanceTooLarge(f"game_length {game_length} exceeds enumeration cap {cap}")
    if game_length < 0 or total_pebbles < 0:
        raise ValueError("game_length and total_pebbles must be non-negative")
    seen = {0}
    queue = deque([0])
    while queue:
        mask = queue.popleft()
        placed = mask.bit_count()
        for i in range(1, game_length + 1):
            left = i == 1 or mask >> (i - 2) & 1
            if not left:
                continue
            bit = 1 << (i - 1)
            if mask & bit:
                nxt = mask & ~bit
            elif placed < total_pebbles:
                nxt = mask | bit
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    # order by (popcount, occupancy) for reproducible listings
    masks = tuple(sorted(seen, key=lambda m: (m.bit_count(), m)))
    return ReachableSet(game_length, total_pebbles, masks)
