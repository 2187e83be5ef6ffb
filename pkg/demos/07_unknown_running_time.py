"""
Simulating without knowing the running time
===========================================

Try t = 2, 4, 8, ... segments.  Whenever the machine has not halted,
undo the attempt completely and double t.  The total work stays within
2 (4T)^log2(3) segments for a run of T segments.
"""
from revpebble import machines
from revpebble.simulator import simulate_unknown_T, unknown_time_bound

spec = machines.unary_increment()
for k in (1, 2, 4, 8):
    x = "1" * k
    t_seg = 2 * k + 1
    events: list[str] = []
    final, rep = simulate_unknown_T(spec, x, segment_length=1, events=events)
    attempts = [e.split("=")[1] for e in events if e.startswith("ATTEMPT")]
    print(f"T={t_seg}: attempts t={','.join(attempts)}, "
          f"{rep.segments_computed} segments <= {unknown_time_bound(t_seg):.1f}, "
          f"output {final.content()}")
