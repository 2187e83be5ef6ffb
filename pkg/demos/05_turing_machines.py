"""
Quadruple machines, reversibility and the history log
======================================================

A machine is reversible when no two rules can lead into the same
description.  Irreversible machines can still be run backwards if every
step records which rule fired and what it overwrote.
"""
from pathlib import Path

from revpebble.machine import (
    check_reversible,
    count_irreversible_steps,
    initial_desc,
    parse_machine,
    run,
    run_logged,
    step,
    step_back,
    unwind,
)

here = Path(__file__).parent / "machines"
for path in sorted(here.glob("*.tm")):
    spec = parse_machine(path.read_text())
    final, steps = run(spec, "1011" if "1" in spec.alphabet and "0" in spec.alphabet else "111")
    print(f"{path.stem}: reversible={check_reversible(spec)}, {steps} steps, output {final.content()!r}")

eraser = parse_machine((here / "input_eraser.tm").read_text())
print("irreversible steps erasing 0110:", count_irreversible_steps(eraser, "0110"))
final, log = run_logged(eraser, "0110")
print("log:", log)
print("unwound back to input:", unwind(eraser, final, log) == initial_desc(eraser, "0110"))

toggler = parse_machine((here / "toggler.tm").read_text())
d = initial_desc(toggler, "01")
nxt = step(toggler, d)
print("step_back undoes step:", step_back(toggler, nxt) == d)
