import itertools
import random
from collections import defaultdict

import pytest

from revpebble import machines
from revpebble.machine import (
    CorruptLog,
    InstantDesc,
    MachineError,
    NoApplicableQuadruple,
    NoPredecessor,
    StepCapExceeded,
    check_deterministic,
    check_reversible,
    count_irreversible_steps,
    find_domain_overlap,
    find_range_overlap,
    format_machine,
    initial_desc,
    io_pair,
    irreversible_quadruples,
    make_machine,
    mv,
    parse_machine,
    profile,
    run,
    run_logged,
    rw,
    step,
    step_back,
    unwind,
)


def machine_of(*quads, states=("p", "q", "r", "h"), alphabet=("_", "0", "1")):
    return make_machine(states, alphabet, quads, "p", ["h"])


class TestDeterminism:
    def test_single(self):
        assert check_deterministic(machine_of(rw("p", "0", "1", "q")))

    def test_same_trigger(self):
        spec = machine_of(rw("p", "0", "1", "q"), rw("p", "0", "0", "r"))
        assert not check_deterministic(spec)
        assert find_domain_overlap(spec) == (0, 1)

    def test_wildcard_covers_symbols(self):
        assert not check_deterministic(machine_of(mv("p", +1, "q"), rw("p", "0", "1", "r")))


class TestReversibility:
    def test_distinct_writes(self):
        assert check_reversible(machine_of(rw("p", "0", "1", "q"), rw("p", "1", "0", "q")))

    def test_move_overlaps(self):
        spec = machine_of(mv("p", +1, "q"), rw("r", "0", "0", "q"))
        assert not check_reversible(spec)
        assert find_range_overlap(spec) == (0, 1)

    def test_same_written_symbol(self):
        assert not check_reversible(machine_of(rw("p", "0", "1", "q"), rw("r", "1", "1", "q")))

    def test_corpus(self):
        assert check_reversible(machines.unary_increment())
        assert check_reversible(machines.toggler())
        assert check_reversible(machines.shifter())
        assert not check_reversible(machines.input_eraser())
        assert not check_reversible(machines.binary_successor())


class TestIrreversibleSteps:
    def test_reversible_machine(self):
        spec = machines.unary_increment()
        assert irreversible_quadruples(spec) == frozenset()
        assert count_irreversible_steps(spec, "1111") == 0

    def test_eraser(self):
        spec = machines.input_eraser()
        assert irreversible_quadruples(spec) == {0, 1}
        assert count_irreversible_steps(spec, "0110") == 4

    def test_bounded_by_time(self):
        rng = random.Random(7)
        specs = [machines.input_eraser(), machines.binary_successor(), machines.toggler()]
        for _ in range(100):
            spec = rng.choice(specs)
            x = "".join(rng.choice("01") for _ in range(rng.randint(0, 8)))
            _, t = run(spec, x)
            assert 0 <= count_irreversible_steps(spec, x) <= t


class TestRun:
    def test_stuck_at_start(self):
        spec = machine_of(rw("p", "0", "1", "h"))
        with pytest.raises(NoApplicableQuadruple) as info:
            run(spec, "")
        assert info.value.desc == initial_desc(spec, "")

    def test_unary_increment(self):
        final, t = run(machines.unary_increment(), "111")
        assert final.content() == "1111"
        assert t == 7

    def test_binary_successor(self):
        spec = machines.binary_successor()
        for value in range(0, 40):
            x = format(value, "b")
            final, _ = run(spec, x)
            assert int(final.content(), 2) == value + 1

    def test_eraser(self):
        final, t = run(machines.input_eraser(), "0110")
        assert final.content() == "" and t == 9

    def test_step_pure(self):
        spec = machines.toggler()
        d = initial_desc(spec, "0101")
        assert step(spec, d) == step(spec, d)

    def test_step_cap(self):
        loop = machine_of(mv("p", +1, "p"))
        with pytest.raises(StepCapExceeded):
            run(loop, "", step_cap=50)

    def test_nondeterministic_rejected_at_run(self):
        with pytest.raises(MachineError):
            run(machine_of(rw("p", "0", "1", "q"), rw("p", "0", "0", "r")), "0")


class TestStepBack:
    def test_toggler_round_trip(self):
        spec = machines.toggler()
        d = initial_desc(spec, "0110")
        while d.state not in spec.halt:
            nxt = step(spec, d)
            assert step_back(spec, nxt) == d
            assert step(spec, step_back(spec, nxt)) == nxt
            d = nxt

    def test_no_predecessor_at_start(self):
        spec = machines.shifter()
        with pytest.raises(NoPredecessor):
            step_back(spec, initial_desc(spec, "01"))

    def test_requires_reversible(self):
        spec = machines.input_eraser()
        with pytest.raises(MachineError):
            step_back(spec, step(spec, initial_desc(spec, "1")))

    @pytest.mark.parametrize("seed", range(20))
    def test_random_machine_walks(self, seed):
        rng = random.Random(seed)
        spec = machines.random_reversible_machine(rng, n_states=rng.randint(2, 5), n_symbols=3)
        assert check_reversible(spec)
        for _ in range(50):
            x = "".join(rng.choice(spec.alphabet) for _ in range(rng.randint(0, 6)))
            d = initial_desc(spec, x)
            for _ in range(40):
                if d.state in spec.halt:
                    break
                try:
                    nxt = step(spec, d)
                except NoApplicableQuadruple:
                    break
                assert step_back(spec, nxt) == d
                d = nxt


def _window_descs(spec, cells):
    blank = spec.blank
    for state in spec.states:
        for head in cells:
            for symbols in itertools.product(spec.alphabet, repeat=len(cells)):
                d = InstantDesc(state, head)
                for c, s in zip(cells, symbols):
                    if s != blank:
                        d = d.written(c, s, blank)
                yield d


@pytest.mark.parametrize("make", [machines.toggler, machines.unary_increment, machines.shifter])
def test_unique_predecessor_exhaustive(make):
    """Brute force: under a reversible machine no two descriptions share a successor."""
    spec = make()
    cells = range(-1, 3)
    preimages = defaultdict(list)
    for d in _window_descs(spec, cells):
        try:
            nxt = step(spec, d)
        except NoApplicableQuadruple:
            continue
        preimages[nxt].append(d)
    assert preimages
    for nxt, pre in preimages.items():
        assert len(pre) == 1
        assert step_back(spec, nxt) == pre[0]


def test_brute_force_finds_collisions_in_irreversible_machine():
    spec = machines.input_eraser()
    preimages = defaultdict(list)
    for d in _window_descs(spec, range(0, 3)):
        try:
            preimages[step(spec, d)].append(d)
        except NoApplicableQuadruple:
            pass
    assert any(len(p) > 1 for p in preimages.values())


class TestHistory:
    @pytest.mark.parametrize("name", sorted(machines.CORPUS))
    def test_round_trip(self, name):
        spec = machines.CORPUS[name]()
        for x in ["", "1", "0110", "1111", "10110"]:
            if name == "unary_increment" and "0" in x:
                continue
            start = initial_desc(spec, x)
            final, log = run_logged(spec, x)
            _, t = run(spec, x)
            assert len(log) == t
            assert unwind(spec, final, log) == start
            assert log == []

    def test_reversible_machine_round_trip(self):
        spec = machines.toggler()
        final, log = run_logged(spec, "0011")
        assert unwind(spec, final, log) == initial_desc(spec, "0011")

    def test_unwrite_restores_symbol(self):
        spec = machines.input_eraser()
        d = initial_desc(spec, "1")
        after = step(spec, d)
        assert after.content() == "" and after.state == "m"
        assert unwind(spec, after, [1]) == d

    def test_corrupt_log(self):
        spec = machines.input_eraser()
        final, log = run_logged(spec, "01")
        with pytest.raises(CorruptLog):
            unwind(spec, final, log[:-1] + [2, 2])
        with pytest.raises(CorruptLog):
            unwind(spec, final, [99])


class TestProfile:
    def test_increment(self):
        p = profile(machines.unary_increment(), "111")
        assert (p.steps, p.space, p.irreversible_steps) == (7, 4, 0)

    def test_successor_space_includes_carry_cell(self):
        p = profile(machines.binary_successor(), "11")
        assert p.final.content() == "100"
        assert p.space == 4  # cells -1..2

    def test_io_pair(self):
        spec = machines.unary_increment()
        final, _ = run(spec, "11")
        assert io_pair(initial_desc(spec, "11"), final) == ("11", "111")


class TestFormat:
    def test_round_trip(self):
        for make in (machines.unary_increment, machines.binary_successor, machines.toggler):
            spec = make()
            assert parse_machine(format_machine(spec)) == spec

    def test_parse(self):
        text = """
        # toggles one cell
        states: p q h
        alphabet: _ 0 1
        start: p
        halt: h
        p 0 1 q
        p 1 0 q
        q * R h
        """
        spec = parse_machine(text)
        assert spec.blank == "_"
        assert spec.quadruples[2].action == 1
        assert check_reversible(spec)

    @pytest.mark.parametrize(
        "body",
        [
            "p 0 R q",  # read/write with a shift
            "p * 1 q",  # move with a symbol
            "p 0 1 z",  # undeclared state
            "p 2 1 q",  # undeclared symbol
            "p 0 1",  # too few fields
        ],
    )
    def test_rejects(self, body):
        text = f"states: p q h\nalphabet: _ 0 1\nstart: p\nhalt: h\n{body}\n"
        with pytest.raises(MachineError):
            parse_machine(text)

    def test_missing_header(self):
        with pytest.raises(MachineError):
            parse_machine("states: p\nstart: p\nhalt: p\n")
