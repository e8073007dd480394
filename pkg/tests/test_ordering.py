import random

import numpy as np
import pytest

from fifo_routes.model import Comparison, Timetable, compare_trips
from fifo_routes.ordering import (
    build_precedence,
    canonical_key,
    group_by_stop_sequence,
    pack_group_times,
)

from conftest import make_trip, only_group, random_group_timetable


def test_groups_keyed_by_exact_sequence():
    trips = [
        make_trip("a1", [0, 1, 2, 3], stops=["A", "B"]),
        make_trip("a2", [4, 5, 6, 7], stops=["A", "B"]),
        make_trip("a3", [8, 9, 10, 11], stops=["A", "B"]),
        make_trip("c1", [0, 1, 2, 3], stops=["A", "C"]),
        make_trip("c2", [4, 5, 6, 7], stops=["A", "C"]),
    ]
    index = group_by_stop_sequence(Timetable.build(trips))
    assert len(index) == 2
    assert len(index[("A", "B")]) == 3
    assert len(index[("A", "C")]) == 2


def test_single_trip_singleton_group():
    index = group_by_stop_sequence(Timetable.build([make_trip("t", [0, 1])]))
    assert len(index) == 1


def test_loop_sequence_is_distinct():
    trips = [
        make_trip("loop", [0, 1, 2, 3, 4, 5], stops=["A", "B", "A"]),
        make_trip("flat", [0, 1, 2, 3], stops=["A", "B"]),
    ]
    index = group_by_stop_sequence(Timetable.build(trips))
    assert len(index) == 2


def test_members_in_canonical_order():
    trips = [
        make_trip("z", [0, 5, 10, 11]),
        make_trip("a", [0, 5, 10, 11]),  # full tie with z: id decides
        make_trip("m", [0, 3, 9, 10]),  # earlier first departure
    ]
    tt = Timetable.build(trips)
    group = only_group(tt)
    assert group.members == ("m", "a", "z")


def test_pack_group_times_layout():
    trips = [make_trip("a", [1, 2, 3, 4]), make_trip("b", [5, 6, 7, 8])]
    tt = Timetable.build(trips)
    group = only_group(tt)
    times = pack_group_times(group, tt)
    assert times.dtype == np.int64
    assert times.tolist() == [[1, 2, 3, 4], [5, 6, 7, 8]]


class TestBuildPrecedence:
    def test_strict_pair(self):
        tt = Timetable.build(
            [make_trip("a", [0, 0, 10, 10]), make_trip("b", [5, 5, 15, 15])]
        )
        rel = build_precedence(only_group(tt), tt)
        assert rel.dominates(0, 1)
        assert not rel.dominates(1, 0)

    def test_incomparable_pair_shares_no_edge(self):
        tt = Timetable.build(
            [make_trip("a", [0, 0, 10, 10]), make_trip("b", [5, 5, 8, 8])]
        )
        rel = build_precedence(only_group(tt), tt)
        assert not rel.dominates(0, 1)
        assert not rel.dominates(1, 0)

    def test_tie_broken_by_canonical_order(self):
        tt = Timetable.build(
            [make_trip("b", [0, 0, 10, 10]), make_trip("a", [0, 0, 10, 10])]
        )
        group = only_group(tt)
        assert group.members == ("a", "b")
        rel = build_precedence(group, tt)
        assert rel.dominates(0, 1)
        assert not rel.dominates(1, 0)

    def test_irreflexive(self):
        tt = Timetable.build([make_trip("a", [0, 1]), make_trip("b", [0, 1])])
        rel = build_precedence(only_group(tt), tt)
        assert not rel.dominates(0, 0)

    def test_index_bounds_checked(self):
        tt = Timetable.build([make_trip("a", [0, 1])])
        rel = build_precedence(only_group(tt), tt)
        with pytest.raises(IndexError):
            rel.dominates(0, 1)


@pytest.mark.parametrize("seed", range(20))
def test_transitive_on_random_six_trip_groups(seed):
    # exhaustive triple check is the oracle for the orientation's
    # transitivity, ties and overtakes included
    rng = random.Random(seed)
    tt = random_group_timetable(rng, size=6, stops=3, chaos=0.6, tie_prob=0.3)
    rel = build_precedence(only_group(tt), tt)
    n = 6
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rel.dominates(a, b) and rel.dominates(b, c):
                    assert rel.dominates(a, c)


@pytest.mark.parametrize("seed", range(20))
def test_orientation_exactly_one_direction(seed):
    rng = random.Random(100 + seed)
    tt = random_group_timetable(rng, size=7, stops=2, chaos=0.7, tie_prob=0.25)
    group = only_group(tt)
    rel = build_precedence(group, tt)
    for i in range(len(group)):
        for j in range(i + 1, len(group)):
            cmp = compare_trips(tt.trip(group.members[i]), tt.trip(group.members[j]))
            edges = rel.dominates(i, j) + rel.dominates(j, i)
            if cmp is Comparison.INCOMPARABLE:
                assert edges == 0
            else:
                assert edges == 1


def test_relation_independent_of_input_permutation():
    rng = random.Random(5)
    tt = random_group_timetable(rng, size=8, stops=3, chaos=0.5, tie_prob=0.3)
    shuffled = list(tt.trips)
    rng.shuffle(shuffled)
    tt2 = Timetable.build(shuffled)
    g1, g2 = only_group(tt), only_group(tt2)
    assert g1 == g2
    r1 = build_precedence(g1, tt)
    r2 = build_precedence(g2, tt2)
    assert (r1.matrix == r2.matrix).all()


def test_on_demand_matches_dense_matrix():
    rng = random.Random(9)
    tt = random_group_timetable(rng, size=10, stops=2, chaos=0.6, tie_prob=0.3)
    group = only_group(tt)
    dense = build_precedence(group, tt)
    lazy = build_precedence(group, tt, dense_limit=4)
    assert lazy.matrix is None
    for i in range(10):
        for j in range(10):
            assert dense.dominates(i, j) == lazy.dominates(i, j)


def test_canonical_key_orders_by_first_departure_then_arrivals_then_id():
    early = make_trip("zz", [0, 1, 50, 51])
    late = make_trip("aa", [0, 9, 50, 51])
    assert canonical_key(early) < canonical_key(late)
    tie_a = make_trip("aa", [0, 5, 50, 51])
    tie_b = make_trip("bb", [0, 5, 50, 51])
    assert canonical_key(tie_a) < canonical_key(tie_b)
