"""Single-tape Turing machines in quadruple form.

A quadruple is either read/write ``(p, a, b, q)`` -- in state ``p`` reading
``a``, write ``b`` and enter ``q`` -- or move ``(p, *, s, q)`` -- shift the
head by ``s`` in ``{-1, 0, +1}`` whatever is scanned and enter ``q``.

Two quadruples overlap in *domain* when they can fire on the same state and
scanned symbol; a machine without such pairs is deterministic.  They
overlap in *range* when they enter the same state and do not write distinct
symbols; a deterministic machine without such pairs is reversible and can
be stepped backwards.  Any deterministic machine can be undone by keeping
a history log of the quadruples it executed (:func:`run_logged`,
:func:`unwind`).

Machine file format::

    states: p q h
    alphabet: _ 0 1        # first symbol is the blank
    start: p
    halt: h
    p 0 1 q
    q * R p
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

WILDCARD = "*"
SHIFT_TOKENS = {"L": -1, "N": 0, "R": 1}
SHIFT_NAMES = {v: k for k, v in SHIFT_TOKENS.items()}
DEFAULT_STEP_CAP = 1_000_000


class MachineError(Exception):
    pass


class NoApplicableQuadruple(MachineError):
    def __init__(self, desc: "InstantDesc"):
        super().__init__(f"no quadruple applies in state {desc.state!r} at cell {desc.head}")
        self.desc = desc


class StepCapExceeded(MachineError):
    pass


class NoPredecessor(MachineError):
    pass


class CorruptLog(MachineError):
    pass


@dataclass(frozen=True)
class Quadruple:
    from_state: str
    trigger: str
    action: str | int
    to_state: str

    def __post_init__(self):
        if self.trigger == WILDCARD:
            if self.action not in (-1, 0, 1) or isinstance(self.action, bool):
                raise MachineError(f"move quadruple needs a shift in -1/0/+1: {self}")
        elif not isinstance(self.action, str):
            raise MachineError(f"read/write quadruple needs a written symbol: {self}")

    @property
    def is_move(self) -> bool:
        return self.trigger == WILDCARD

    def __str__(self) -> str:
        act = SHIFT_NAMES[self.action] if self.is_move else self.action
        return f"{self.from_state} {self.trigger} {act} {self.to_state}"


def rw(p: str, a: str, b: str, q: str) -> Quadruple:
    return Quadruple(p, a, b, q)


def mv(p: str, shift: int, q: str) -> Quadruple:
    return Quadruple(p, WILDCARD, shift, q)


@dataclass(frozen=True)
class MachineSpec:
    states: tuple
    alphabet: tuple  # alphabet[0] is the blank
    quadruples: tuple
    start: str
    halt: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "quadruples", tuple(self.quadruples))
        object.__setattr__(self, "halt", frozenset(self.halt))
        states, symbols = set(self.states), set(self.alphabet)
        if not self.alphabet:
            raise MachineError("alphabet must contain at least the blank")
        if WILDCARD in symbols:
            raise MachineError(f"{WILDCARD!r} is reserved")
        if self.start not in states or not self.halt <= states:
            raise MachineError("start and halt states must be declared")
        seen = set()
        for q in self.quadruples:
            if q.from_state not in states or q.to_state not in states:
                raise MachineError(f"undeclared state in {q}")
            if not q.is_move and (q.trigger not in symbols or q.action not in symbols):
                raise MachineError(f"undeclared symbol in {q}")
            if q in seen:
                raise MachineError(f"duplicate quadruple {q}")
            seen.add(q)

    @property
    def blank(self) -> str:
        return self.alphabet[0]

    def rules_from(self, state: str) -> list[int]:
        return [k for k, q in enumerate(self.quadruples) if q.from_state == state]


# -- instantaneous descriptions ---------------------------------------------


@dataclass(frozen=True)
class InstantDesc:
    """Tape, head position and control state.

    The tape is stored as a contiguous block ``cells`` starting at cell
    ``origin`` with no blank at either end, so equal descriptions compare
    equal.  Every cell outside the block is blank.
    """

    state: str
    head: int
    origin: int = 0
    cells: tuple = ()

    def symbol(self, cell: int, blank: str) -> str:
        k = cell - self.origin
        if 0 <= k < len(self.cells):
            return self.cells[k]
        return blank

    def scanned(self, blank: str) -> str:
        return self.symbol(self.head, blank)

    def tape(self, blank: str) -> dict[int, str]:
        return {self.origin + k: s for k, s in enumerate(self.cells) if s != blank}

    def written(self, cell: int, symbol: str, blank: str) -> "InstantDesc":
        lo = min(self.origin, cell) if self.cells else cell
        hi = max(self.origin + len(self.cells) - 1, cell) if self.cells else cell
        block = [self.symbol(c, blank) for c in range(lo, hi + 1)]
        block[cell - lo] = symbol
        return self.replace(*_trim(lo, block, blank))

    def replace(self, origin: int, cells: tuple, *, state=None, head=None) -> "InstantDesc":
        return InstantDesc(
            self.state if state is None else state,
            self.head if head is None else head,
            origin,
            cells,
        )

    def moved(self, shift: int, state: str) -> "InstantDesc":
        return InstantDesc(state, self.head + shift, self.origin, self.cells)

    def with_state(self, state: str) -> "InstantDesc":
        return InstantDesc(state, self.head, self.origin, self.cells)

    def content(self) -> str:
        """Non-blank span of the tape as a string (inner blanks kept)."""
        return "".join(self.cells)

    def span(self) -> tuple[int, int]:
        """Smallest cell interval holding every non-blank cell and the head."""
        if not self.cells:
            return self.head, self.head
        return min(self.origin, self.head), max(self.origin + len(self.cells) - 1, self.head)


def _trim(origin: int, block: Sequence[str], blank: str) -> tuple[int, tuple]:
    lo, hi = 0, len(block)
    while lo < hi and block[lo] == blank:
        lo += 1
    while hi > lo and block[hi - 1] == blank:
        hi -= 1
    if lo == hi:
        return 0, ()
    return origin + lo, tuple(block[lo:hi])


def initial_desc(spec: MachineSpec, tape_input: str | Sequence[str]) -> InstantDesc:
    """Input on cells ``0..len-1``, head on cell 0, start state."""
    symbols = list(tape_input)
    for s in symbols:
        if s not in spec.alphabet:
            raise MachineError(f"input symbol {s!r} not in alphabet")
    origin, cells = _trim(0, symbols, spec.blank)
    return InstantDesc(spec.start, 0, origin, cells)


def io_pair(initial: InstantDesc, final: InstantDesc) -> tuple[str, str]:
    """The pair <x, f(x)> as tape contents of the first and last description."""
    return initial.content(), final.content()


# -- static checks ----------------------------------------------------------


def find_domain_overlap(spec: MachineSpec) -> tuple[int, int] | None:
    quads = spec.quadruples
    for i in range(len(quads)):
        for j in range(i + 1, len(quads)):
            a, b = quads[i], quads[j]
            if a.from_state != b.from_state:
                continue
            if a.is_move or b.is_move or a.trigger == b.trigger:
                return i, j
    return None


def _range_overlap(a: Quadruple, b: Quadruple) -> bool:
    if a.to_state != b.to_state:
        return False
    return a.is_move or b.is_move or a.action == b.action


def find_range_overlap(spec: MachineSpec) -> tuple[int, int] | None:
    quads = spec.quadruples
    for i in range(len(quads)):
        for j in range(i + 1, len(quads)):
            if _range_overlap(quads[i], quads[j]):
                return i, j
    return None


def check_deterministic(spec: MachineSpec) -> bool:
    return find_domain_overlap(spec) is None


def check_reversible(spec: MachineSpec) -> bool:
    return check_deterministic(spec) and find_range_overlap(spec) is None


def irreversible_quadruples(spec: MachineSpec) -> frozenset:
    """Indices of quadruples whose range overlaps that of another quadruple."""
    quads = spec.quadruples
    bad = set()
    for i in range(len(quads)):
        for j in range(i + 1, len(quads)):
            if _range_overlap(quads[i], quads[j]):
                bad.update((i, j))
    return frozenset(bad)


# -- execution ---------------------------------------------------------------


class _Table:
    """Dispatch table: (state, scanned symbol) -> quadruple index."""

    def __init__(self, spec: MachineSpec):
        if not check_deterministic(spec):
            i, j = find_domain_overlap(spec)
            raise MachineError(
                f"machine is not deterministic: {spec.quadruples[i]} / {spec.quadruples[j]}"
            )
        self.moves: dict[str, int] = {}
        self.writes: dict[tuple[str, str], int] = {}
        for k, q in enumerate(spec.quadruples):
            if q.is_move:
                self.moves[q.from_state] = k
            else:
                self.writes[q.from_state, q.trigger] = k

    def lookup(self, state: str, symbol: str) -> int | None:
        k = self.moves.get(state)
        if k is None:
            k = self.writes.get((state, symbol))
        return k


_tables: dict[int, tuple[MachineSpec, _Table]] = {}


def _table(spec: MachineSpec) -> _Table:
    hit = _tables.get(id(spec))
    if hit is None or hit[0] is not spec:
        hit = (spec, _Table(spec))
        _tables[id(spec)] = hit
    return hit[1]


def _fire(spec: MachineSpec, desc: InstantDesc, k: int) -> InstantDesc:
    q = spec.quadruples[k]
    if q.is_move:
        return desc.moved(q.action, q.to_state)
    return desc.written(desc.head, q.action, spec.blank).with_state(q.to_state)


def applicable(spec: MachineSpec, desc: InstantDesc) -> int | None:
    return _table(spec).lookup(desc.state, desc.scanned(spec.blank))


def step(spec: MachineSpec, desc: InstantDesc) -> InstantDesc:
    k = applicable(spec, desc)
    if k is None:
        raise NoApplicableQuadruple(desc)
    return _fire(spec, desc, k)


def is_halted(spec: MachineSpec, desc: InstantDesc) -> bool:
    return desc.state in spec.halt


@dataclass
class Execution:
    final: InstantDesc
    steps: int
    halted: bool
    log: list = field(default_factory=list)
    cells_visited: tuple = (0, 0)  # hull of head positions, inclusive


def execute(
    spec: MachineSpec,
    start: InstantDesc,
    max_steps: int,
    keep_log: bool = False,
) -> Execution:
    """Run at most ``max_steps`` steps, stopping early on a halt state."""
    table = _table(spec)
    desc = start
    log = []
    lo = hi = desc.head
    steps = 0
    while steps < max_steps and desc.state not in spec.halt:
        k = table.lookup(desc.state, desc.scanned(spec.blank))
        if k is None:
            raise NoApplicableQuadruple(desc)
        desc = _fire(spec, desc, k)
        if keep_log:
            log.append(k)
        lo, hi = min(lo, desc.head), max(hi, desc.head)
        steps += 1
    return Execution(desc, steps, desc.state in spec.halt, log, (lo, hi))


def _start(spec: MachineSpec, tape_input) -> InstantDesc:
    if isinstance(tape_input, InstantDesc):
        return tape_input
    return initial_desc(spec, tape_input)


def run(spec: MachineSpec, tape_input, step_cap: int = DEFAULT_STEP_CAP) -> tuple[InstantDesc, int]:
    """Run to a halt state; returns the final description and the step count."""
    ex = execute(spec, _start(spec, tape_input), step_cap)
    if not ex.halted:
        raise StepCapExceeded(f"no halt within {step_cap} steps")
    return ex.final, ex.steps


def run_logged(
    spec: MachineSpec, tape_input, step_cap: int = DEFAULT_STEP_CAP
) -> tuple[InstantDesc, list[int]]:
    """Like :func:`run`, also returning the history of executed quadruple indices."""
    ex = execute(spec, _start(spec, tape_input), step_cap, keep_log=True)
    if not ex.halted:
        raise StepCapExceeded(f"no halt within {step_cap} steps")
    return ex.final, ex.log


def undo_quadruple(spec: MachineSpec, desc: InstantDesc, k: int) -> InstantDesc:
    """Inverse effect of quadruple ``k``, which must have produced ``desc``."""
    q = spec.quadruples[k]
    if desc.state != q.to_state:
        raise CorruptLog(f"log entry {q} does not end in state {desc.state!r}")
    if q.is_move:
        return desc.moved(-q.action, q.from_state)
    if desc.scanned(spec.blank) != q.action:
        raise CorruptLog(f"log entry {q} did not write the scanned symbol")
    return desc.written(desc.head, q.trigger, spec.blank).with_state(q.from_state)


def unwind(spec: MachineSpec, desc: InstantDesc, log: list[int]) -> InstantDesc:
    """Pop ``log`` (in place) undoing each entry; leaves ``log`` empty."""
    while log:
        k = log[-1]
        if not 0 <= k < len(spec.quadruples):
            raise CorruptLog(f"log entry {k} is not a quadruple index")
        desc = undo_quadruple(spec, desc, k)
        log.pop()
    return desc


def predecessors(spec: MachineSpec, desc: InstantDesc) -> list[InstantDesc]:
    """Every description that steps to ``desc`` in one move."""
    out = []
    for k, q in enumerate(spec.quadruples):
        if q.to_state != desc.state:
            continue
        if q.is_move:
            prev = desc.moved(-q.action, q.from_state)
        elif desc.scanned(spec.blank) == q.action:
            prev = desc.written(desc.head, q.trigger, spec.blank).with_state(q.from_state)
        else:
            continue
        if applicable(spec, prev) == k:
            out.append(prev)
    return out


def step_back(spec: MachineSpec, desc: InstantDesc) -> InstantDesc:
    """Unique predecessor of ``desc`` under a reversible machine."""
    if not check_reversible(spec):
        raise MachineError("step_back needs a reversible machine")
    prev = predecessors(spec, desc)
    if not prev:
        raise NoPredecessor(f"no predecessor for state {desc.state!r} at cell {desc.head}")
    return prev[0]


def count_irreversible_steps(spec: MachineSpec, tape_input, step_cap: int = DEFAULT_STEP_CAP) -> int:
    bad = irreversible_quadruples(spec)
    _, log = run_logged(spec, tape_input, step_cap)
    return sum(k in bad for k in log)


@dataclass(frozen=True)
class RunProfile:
    final: InstantDesc
    steps: int
    space: int
    irreversible_steps: int


def profile(spec: MachineSpec, tape_input, step_cap: int = DEFAULT_STEP_CAP) -> RunProfile:
    """Time ``T``, space ``S`` and irreversible-step count ``I`` of a halting run.

    ``S`` counts the cells of the smallest interval holding the input and
    every head position.
    """
    start = _start(spec, tape_input)
    ex = execute(spec, start, step_cap, keep_log=True)
    if not ex.halted:
        raise StepCapExceeded(f"no halt within {step_cap} steps")
    lo, hi = ex.cells_visited
    s_lo, s_hi = start.span()
    space = max(hi, s_hi) - min(lo, s_lo) + 1
    bad = irreversible_quadruples(spec)
    return RunProfile(ex.final, ex.steps, space, sum(k in bad for k in ex.log))


def symbol_bits(spec: MachineSpec) -> int:
    return max(1, math.ceil(math.log2(len(spec.alphabet))))


# -- machine files -----------------------------------------------------------


def parse_machine(text: str) -> MachineSpec:
    header: dict[str, list[str]] = {}
    quads = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("states", "alphabet", "start", "halt"):
            header[key.strip()] = rest.split()
            continue
        parts = line.split()
        if len(parts) != 4:
            raise MachineError(f"line {lineno}: expected 4 fields, got {line!r}")
        p, a, b, q = parts
        if a == WILDCARD:
            if b not in SHIFT_TOKENS:
                raise MachineError(f"line {lineno}: move quadruple needs L, N or R")
            quads.append(Quadruple(p, a, SHIFT_TOKENS[b], q))
        else:
            quads.append(Quadruple(p, a, b, q))
    for key in ("states", "alphabet", "start", "halt"):
        if key not in header:
            raise MachineError(f"missing {key}: line")
    if len(header["start"]) != 1:
        raise MachineError("start: needs exactly one state")
    return MachineSpec(
        header["states"], header["alphabet"], quads, header["start"][0], header["halt"]
    )


def format_machine(spec: MachineSpec) -> str:
    lines = [
        "states: " + " ".join(spec.states),
        "alphabet: " + " ".join(spec.alphabet),
        f"start: {spec.start}",
        "halt: " + " ".join(s for s in spec.states if s in spec.halt),
    ]
    lines += [str(q) for q in spec.quadruples]
    return "\n".join(lines) + "\n"


def make_machine(
    states: Iterable[str],
    alphabet: Iterable[str],
    quadruples: Iterable[Quadruple],
    start: str,
    halt: Iterable[str],
) -> MachineSpec:
    return MachineSpec(tuple(states), tuple(alphabet), tuple(quadruples), start, frozenset(halt))
