import os

import pytest

from osborn.enumerate import (MAX_ORDER, OrderTooLarge, corpus, count_loops, enumerate_loops,
                              enumerated, inverse_cycles, normalized_tables)
from osborn.loop import parse_loop, serialize_loop
from osborn.properties import has_property, is_group


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_counts(n, count):
    assert count_loops(n) == count


@pytest.mark.slow
def test_count_order6():
    assert count_loops(6) == 9408


def test_no_duplicates_and_valid():
    seen = set()
    for L in enumerate_loops(5):
        t = L.mul_table.tobytes()
        assert t not in seen
        seen.add(t)
        assert parse_loop(serialize_loop(L)) == L
        grid = L.cayley().tolist()
        assert grid[0] == list(L.elements)
        assert [r[0] for r in grid] == list(L.elements)


def test_lexicographic_order():
    rows = [tuple(L.mul_table.ravel()) for L in enumerate_loops(5)]
    assert rows == sorted(rows)


def test_filters():
    assert count_loops(5, where=["os0"]) == 6
    assert count_loops(5, where=["wip"]) == 8
    assert count_loops(4, where=["commutative", "exponent2"]) == 1
    assert count_loops(5, where=["commutative"]) == sum(
        has_property(L, "commutative").holds for L in enumerated(5))


def test_pruned_search_matches_filter():
    for n in (4, 5):
        for key in ("commutative", "exponent2"):
            pruned = [t.tobytes() for t in normalized_tables(n, [key])]
            post = [L.mul_table.tobytes() for L in enumerated(n) if has_property(L, key).holds]
            assert pruned == post


def test_parallel_matches_serial():
    serial = [L.mul_table.tobytes() for L in enumerate_loops(5, workers=1)]
    parallel = [L.mul_table.tobytes() for L in enumerate_loops(5, workers=2)]
    assert parallel == serial


def test_worker_env(monkeypatch):
    monkeypatch.setenv("OSBORN_WORKERS", "2")
    assert count_loops(4) == 4


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        next(enumerate_loops(MAX_ORDER + 1))
    with pytest.raises(OrderTooLarge):
        next(enumerate_loops(8, allow_order7=True))


def test_order7_flag_streams():
    first = next(enumerate_loops(7, allow_order7=True))
    assert first.order == 7


class TestCycles:
    def test_kinyon(self, K):
        rep = inverse_cycles(K)
        assert rep.lengths == (1, 1, 1, 1, 1, 1, 2, 8)
        assert rep.notation() == "(1)(2)(3)(4)(5)(6)(7 8)(9 15 11 14 10 16 12 13)"
        assert rep.notation(fixed_points=False) == "(7 8)(9 15 11 14 10 16 12 13)"

    def test_groups_involution(self, named, small_loops):
        for L in list(named.values()) + small_loops:
            rep = inverse_cycles(L)
            assert sum(rep.lengths) == L.order
            assert all(L.left_inverse(L.right_inverse(x)) == x for x in L.elements)
            if is_group(L):
                assert max(rep.lengths) <= 2

    def test_order1(self, named):
        assert inverse_cycles(named["z1"]).cycles == ((1,),)


class TestCorpus:
    def test_contents(self, named):
        for name in ["kinyon16", "z2", "z3", "z4", "z5", "z6", "v4", "s3"]:
            assert name in named
        assert named["kinyon16"].order == 16
        assert named["s3"].order == 6

    def test_cip(self, named):
        assert has_property(named["z5"], "cip").holds
        assert not has_property(named["s3"], "cip").holds

    def test_s3_is_nonabelian_group(self, named):
        s3 = named["s3"]
        assert is_group(s3) and not has_property(s3, "commutative").holds

    def test_returns_copy(self):
        c = corpus()
        c.clear()
        assert corpus()
