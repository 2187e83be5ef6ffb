"""Small machines used by the tests, demos and the simulator benchmarks.

Inputs start on cell 0 with the head on cell 0.
"""
from __future__ import annotations

import random

from .machine import MachineSpec, Quadruple, make_machine, mv, rw


def unary_increment() -> MachineSpec:
    """``1**k -> 1**(k+1)``; ``2k + 1`` steps, reversible."""
    return make_machine(
        ["s", "m", "h"],
        ["_", "1"],
        [
            rw("s", "1", "1", "m"),
            mv("m", +1, "s"),
            rw("s", "_", "1", "h"),
        ],
        "s",
        ["h"],
    )


def input_eraser() -> MachineSpec:
    """Blanks a binary input left to right; ``2k + 1`` steps, ``k`` irreversible."""
    return make_machine(
        ["e", "m", "h"],
        ["_", "0", "1"],
        [
            rw("e", "0", "_", "m"),
            rw("e", "1", "_", "m"),
            mv("m", +1, "e"),
            rw("e", "_", "_", "h"),
        ],
        "e",
        ["h"],
    )


def binary_successor() -> MachineSpec:
    """Adds one to a binary number written most significant bit first.

    On ``1**k`` it takes ``4k + 3`` steps and leaves ``1 0**k`` starting on
    cell ``-1``.
    """
    return make_machine(
        ["r", "r1", "b", "c", "c1", "d"],
        ["_", "0", "1"],
        [
            rw("r", "0", "0", "r1"),
            rw("r", "1", "1", "r1"),
            mv("r1", +1, "r"),
            rw("r", "_", "_", "b"),
            mv("b", -1, "c"),
            rw("c", "1", "0", "c1"),
            mv("c1", -1, "c"),
            rw("c", "0", "1", "d"),
            rw("c", "_", "1", "d"),
        ],
        "r",
        ["d"],
    )


def toggler() -> MachineSpec:
    """Complements a binary input; reversible, start state is re-entered."""
    return make_machine(
        ["p", "q", "h"],
        ["_", "0", "1"],
        [
            rw("p", "0", "1", "q"),
            rw("p", "1", "0", "q"),
            mv("q", +1, "p"),
            rw("p", "_", "_", "h"),
        ],
        "p",
        ["h"],
    )


def shifter() -> MachineSpec:
    """Steps right once, toggles one bit and halts; start state has no incoming rule."""
    return make_machine(
        ["a", "b", "h"],
        ["_", "0", "1"],
        [
            mv("a", +1, "b"),
            rw("b", "0", "1", "h"),
            rw("b", "1", "0", "h"),
            rw("b", "_", "_", "h"),
        ],
        "a",
        ["h"],
    )


CORPUS = {
    "unary_increment": unary_increment,
    "input_eraser": input_eraser,
    "binary_successor": binary_successor,
}


def corpus_input(name: str, n: int) -> str:
    """Input on which corpus machine ``name`` halts after exactly ``2**n - 1`` steps."""
    if name in ("unary_increment", "input_eraser"):
        k = (1 << (n - 1)) - 1
        return "1" * k
    if name == "binary_successor":
        if n < 2:
            raise ValueError("binary_successor needs n >= 2")
        return "1" * ((1 << (n - 2)) - 1)
    raise KeyError(name)


def random_reversible_machine(
    rng: random.Random, n_states: int = 4, n_symbols: int = 2
) -> MachineSpec:
    """Random machine with no domain or range overlaps.

    Each non-halting state gets either one move rule or a total set of
    read/write rules.  Targets are drawn so that a state entered by a move is
    entered by nothing else, and states entered by writes see distinct
    written symbols.
    """
    states = [f"q{i}" for i in range(n_states)] + ["h"]
    alphabet = ["_"] + [str(i) for i in range(n_symbols - 1)]
    move_entered: set[str] = set()
    write_entered: dict[str, set[str]] = {s: set() for s in states}
    quads: list[Quadruple] = []
    for p in states[:-1]:
        if rng.random() < 0.4:
            options = [q for q in states if q not in move_entered and not write_entered[q]]
            if options:
                q = rng.choice(options)
                move_entered.add(q)
                quads.append(mv(p, rng.choice((-1, 0, 1)), q))
                continue
        for a in alphabet:
            options = [
                (b, q)
                for q in states
                if q not in move_entered
                for b in alphabet
                if b not in write_entered[q]
            ]
            if not options:
                break
            b, q = rng.choice(options)
            write_entered[q].add(b)
            quads.append(rw(p, a, b, q))
    return make_machine(states, alphabet, quads, states[0], ["h"])
