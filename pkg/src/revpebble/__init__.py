"""Reversible pebble games, their reachable configurations, and checkpointed
reversible simulation of irreversible Turing machines."""

from .game import (
    Erase,
    GameTrace,
    IllegalMove,
    IllegalMoveAt,
    Move,
    MoveKind,
    NotReversible,
    PebbleConfig,
    Place,
    Remove,
    apply,
    is_legal,
    replay,
    reverse_moves,
)
from .solvability import (
    available_pebbles,
    check_numbering,
    enumerate_reachable,
    is_realizable,
    is_strongly_solvable_exhaustive,
    is_weakly_solvable,
)
from .strategies import (
    Strategy,
    bennett_pebble,
    bennett_unpebble,
    erasure_strategy,
    max_reachable,
    move_count,
    paper_step_count,
)

__version__ = "0.1.0"
