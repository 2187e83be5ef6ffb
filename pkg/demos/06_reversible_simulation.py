"""
Checkpointed reversible simulation
==================================

Each pebble is a stored machine description at a segment boundary.
Placing one runs a segment forward and then unwinds its history, so only
the new checkpoint survives.  Removing one recomputes it and cancels the
copy.  Erasing drops it outright and is charged its size in bits.
"""
from revpebble import machines
from revpebble.machine import profile
from revpebble.simulator import plan_for, simulate_with_strategy

spec = machines.binary_successor()
x = "10110111"
prof = profile(spec, x)
print(f"direct run: {prof.steps} steps in {prof.space} cells")

for mode in ("min_space", "erasure:1"):
    p = plan_for(spec, x, mode, segment_length=1)
    events: list[str] = []
    final, rep = simulate_with_strategy(spec, x, p.strategy, p.segment_length, events)
    print(f"{mode}: output {final.content()} after {rep.simulated_steps} simulated steps, "
          f"peak {rep.peak_checkpoints} checkpoints, {rep.bits_erased} bits erased")

print("\n".join(events[:6]))
print(events[-1])
