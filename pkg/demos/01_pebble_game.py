"""
Playing the reversible pebble game by hand
==========================================

Node 0 always carries a pebble.  A pebble may go on or come off node i
only while node i-1 is pebbled, so every legal move can be undone.
"""
from revpebble import PebbleConfig, Place, Remove, replay
from revpebble.game import IllegalMove, apply, format_trace, reverse_moves

board = PebbleConfig.empty(game_length=3, total_pebbles=2)

# Two pebbles reach node 3: leapfrog the first one forward.
moves = [Place(1), Place(2), Remove(1), Place(3)]
trace = replay(board, moves)
print("final occupancy:", sorted(trace.final.occupied), "peak:", trace.peak_pebbles)
print(format_trace(moves, 3, 2), end="")

# Running the inverse moves in reverse order empties the board again.
back = replay(trace.final, reverse_moves(moves))
print("after undo:", sorted(back.final.occupied))

# Node 2 cannot be touched while node 1 is empty.
try:
    apply(board, Place(2))
except IllegalMove as exc:
    print("rejected:", exc.move, "-", exc.reason)
