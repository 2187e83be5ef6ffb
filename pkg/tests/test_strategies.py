import math

import pytest

from revpebble.game import MoveKind, PebbleConfig, Place, Remove, IllegalMoveAt, replay, reverse_moves
from revpebble.solvability import enumerate_reachable, is_realizable
from revpebble.strategies import (
    bennett_final_nodes,
    bennett_pebble,
    bennett_unpebble,
    clearing_moves,
    defer_erasures,
    erasure_pebble_bound,
    erasure_strategy,
    erasure_time_bound,
    max_reachable,
    move_count,
    paper_step_count,
    realizing_moves,
    tradeoff_row,
    tradeoff_strategy,
    tradeoff_table,
)


def moves_by_recurrence(n):
    """Length oracle: M(0) = 0, M(n) = 3 M(n-1) + 1."""
    m = 0
    for _ in range(n):
        m = 3 * m + 1
    return m


class TestBennett:
    def test_zero(self):
        assert bennett_pebble(0, 0).moves == ()

    def test_two(self):
        s = bennett_pebble(0, 2)
        assert list(s.moves) == [Place(1), Place(2), Remove(1), Place(3)]
        assert s.verify().final.occupied == {2, 3}

    def test_three(self):
        s = bennett_pebble(0, 3)
        t = s.verify()
        assert len(s) == 13
        assert t.final.occupied == {4, 6, 7}

    def test_unpebble_zero(self):
        assert bennett_unpebble(0, 0).moves == ()

    def test_unpebble_two(self):
        assert list(bennett_unpebble(0, 2).moves) == [Remove(3), Place(1), Remove(2), Remove(1)]

    def test_round_trip(self):
        moves = bennett_pebble(0, 3).moves + bennett_unpebble(0, 3).moves
        assert replay(PebbleConfig.empty(7, 3), moves).final.occupied == frozenset()

    @pytest.mark.parametrize("n", range(9))
    def test_unpebble_is_reverse(self, n):
        assert list(bennett_unpebble(0, n).moves) == reverse_moves(bennett_pebble(0, n).moves)
        assert list(bennett_unpebble(5, n).moves) == reverse_moves(bennett_pebble(5, n).moves)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_peak_and_length(self, n):
        s = bennett_pebble(0, n)
        t = s.verify()
        assert t.peak_pebbles == n
        assert len(s) == (3**n - 1) // 2 == moves_by_recurrence(n)
        assert (2**n - 1) in t.final.occupied
        assert not any(m.kind is MoveKind.ERASE for m in s.moves)

    @pytest.mark.parametrize("s,n", [(1, 2), (4, 3), (7, 1), (3, 0)])
    def test_offset_start(self, s, n):
        strat = bennett_pebble(s, n)
        t = strat.verify()
        assert t.final.occupied == bennett_final_nodes(s, n) | {s}
        bennett_unpebble(s, n).verify()


class TestCounts:
    def test_step_count_base(self):
        assert paper_step_count(0) == 1

    def test_step_count_two(self):
        assert paper_step_count(2) == 13

    def test_move_count_two(self):
        assert move_count(2) == 4 == len(bennett_pebble(0, 2))

    @pytest.mark.parametrize("n", range(1, 12))
    def test_recurrences(self, n):
        assert paper_step_count(n) == 3 * paper_step_count(n - 1) + 1
        assert move_count(n) == 3 * move_count(n - 1) + 1
        assert paper_step_count(n - 1) == move_count(n)


class TestMaxReachable:
    def test_values(self):
        assert max_reachable(0) == 0
        assert max_reachable(3) == 7
        assert max_reachable(4) == 15

    def test_sixteen_unreachable(self):
        assert enumerate_reachable(16, 4).max_node == 15


class TestErasureStrategy:
    @pytest.mark.parametrize("n", range(5))
    def test_single_round(self, n):
        s = erasure_strategy(n, 1)
        expected = bennett_pebble(0, n).moves + (Place(2**n),) + bennett_unpebble(0, n).moves
        assert s.moves == expected
        t = s.verify()
        assert t.erasures_used == 0
        assert t.final.occupied == {2**n}

    def test_one_three(self):
        t = erasure_strategy(1, 3).verify()
        assert 6 in t.final.occupied
        assert t.peak_pebbles == 3
        erased = [m.node for m in erasure_strategy(1, 3).moves if m.kind is MoveKind.ERASE]
        assert erased == [2]

    def test_two_two(self):
        t = erasure_strategy(2, 2).verify()
        assert 8 in t.final.occupied
        assert t.peak_pebbles <= 4
        assert t.erasures_used == 0

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("m", range(1, 7))
    def test_springboard_bounds(self, n, m):
        s = erasure_strategy(n, m)
        t = s.verify()
        assert m * 2**n in t.final.occupied
        assert t.peak_pebbles <= n + 2
        assert t.erasures_used <= m - 1
        assert t.erasures_used == (max(0, m - 2) if n > 0 else max(0, m - 3))

    def test_time_bound_values(self):
        assert erasure_time_bound(1, 2) == 6
        assert erasure_time_bound(3, 4) == 74
        assert len(erasure_strategy(1, 2)) <= 2 * 6

    @pytest.mark.parametrize("n,m", [(2, 4), (3, 3), (2, 5)])
    def test_erasures_cannot_be_deferred(self, n, m):
        s = erasure_strategy(n, m)
        for kind in (MoveKind.REMOVE, MoveKind.ERASE):
            with pytest.raises(IllegalMoveAt):
                replay(s.initial, defer_erasures(s.moves, kind), s.declared_erasures)


class TestTradeoff:
    def test_k1(self):
        row = tradeoff_row(10, 1)
        assert (row.space_blocks, row.erased_bits_blocks) == (9, 7)

    def test_k3(self):
        row = tradeoff_row(10, 3)
        assert (row.space_blocks, row.erased_bits_blocks) == (7, 31)

    def test_time_formula(self):
        row = tradeoff_row(5, 2, segment_space=3.0)
        lg3 = math.log2(3)
        assert row.time_bound == pytest.approx(2 ** (3 * (1 - lg3) + 1) * 31**lg3 * 3.0)

    def test_table_monotone(self):
        rows = tradeoff_table(10, range(1, 9))
        assert [r.k for r in rows] == list(range(1, 9))
        for a, b in zip(rows, rows[1:]):
            assert b.space_blocks < a.space_blocks
            assert b.erased_bits_blocks > a.erased_bits_blocks

    def test_bad_k(self):
        with pytest.raises(ValueError):
            tradeoff_row(3, 3)
        with pytest.raises(ValueError):
            tradeoff_row(3, 0)

    def test_pebble_bound(self):
        assert erasure_pebble_bound(3, 6) == 4
        assert erasure_pebble_bound(1, 6) == 5
        assert erasure_pebble_bound(5, 6) == 4  # falls back to 3 erasures
        with pytest.raises(ValueError):
            erasure_pebble_bound(2, 6)

    @pytest.mark.parametrize("n", range(2, 8))
    @pytest.mark.parametrize("erasures", [1, 3, 7, 15])
    def test_bound_realized_by_strategy(self, n, erasures):
        if (erasures + 1).bit_length() - 1 > n:
            pytest.skip("more erasures than the game can use")
        s = tradeoff_strategy(erasures, n)
        t = s.verify()
        assert max(t.final.occupied) >= 2**n - 1
        assert t.peak_pebbles <= erasure_pebble_bound(erasures, n) + 2
        assert t.erasures_used <= erasures

    @pytest.mark.parametrize("n", range(3, 9))
    def test_space_rows_realized(self, n):
        # n - k pebbles and 2**(k+2) - 1 erasures cover the 2**n - 1 node game
        for k in range(1, n - 1):
            s = tradeoff_strategy(2 ** (k + 2) - 1, n)
            t = s.verify()
            assert t.peak_pebbles <= tradeoff_row(n, k).space_blocks
            assert t.erasures_used <= tradeoff_row(n, k).erased_bits_blocks
            assert max(t.final.occupied) >= 2**n - 1


@pytest.mark.parametrize("length,n", [(7, 3), (9, 3), (12, 4)])
def test_realizing_moves(length, n):
    for c in enumerate_reachable(length, n):
        assert is_realizable(c)
        built = replay(PebbleConfig.empty(length, n), realizing_moves(c))
        assert built.final == c
        assert replay(c, clearing_moves(c)).final.occupied == frozenset()
