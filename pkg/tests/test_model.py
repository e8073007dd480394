import pytest
from hypothesis import given

from fifo_routes.model import (
    Comparison,
    StopEvent,
    Timetable,
    Trip,
    compare_trips,
    stop_sequence_of,
    validate_trip,
)

from conftest import make_trip, same_shape_trips


class TestValidateTrip:
    def test_valid_two_stop_trip(self):
        trip = make_trip("t", [0, 10, 20, 25])
        assert validate_trip(trip) == []

    def test_departure_after_next_arrival(self):
        trip = make_trip("t", [0, 10, 5, 25])
        violations = validate_trip(trip)
        assert len(violations) == 1
        assert "event 1" in violations[0]
        assert "10" in violations[0] and "5" in violations[0]

    def test_arrival_after_departure_single_event(self):
        trip = make_trip("t", [30, 20])
        violations = validate_trip(trip)
        assert len(violations) == 1
        assert "event 0" in violations[0]

    def test_multiple_violations_all_reported(self):
        trip = make_trip("t", [10, 5, 3, 2])
        assert len(validate_trip(trip)) == 3


class TestCompareTrips:
    def test_strictly_earlier(self):
        a = make_trip("a", [0, 0, 10, 10])
        b = make_trip("b", [5, 5, 15, 15])
        assert compare_trips(a, b) is Comparison.LESS
        assert compare_trips(b, a) is Comparison.GREATER

    def test_overtaking(self):
        a = make_trip("a", [0, 0, 10, 10])
        b = make_trip("b", [5, 5, 8, 8])
        assert compare_trips(a, b) is Comparison.INCOMPARABLE
        assert compare_trips(b, a) is Comparison.INCOMPARABLE

    def test_identical_times_distinct_ids(self):
        a = make_trip("a", [0, 0, 10, 10])
        b = make_trip("b", [0, 0, 10, 10])
        assert compare_trips(a, b) is Comparison.EQUAL

    def test_different_shapes(self):
        a = make_trip("a", [0, 0, 10, 10], stops=["s1", "s2"])
        b = make_trip("b", [0, 0, 10, 10], stops=["s1", "s3"])
        assert compare_trips(a, b) is Comparison.DIFFERENT_SHAPE

    def test_crossing_within_one_stop(self):
        # arrival earlier but departure later is already an overtake
        a = make_trip("a", [0, 10])
        b = make_trip("b", [5, 8])
        assert compare_trips(a, b) is Comparison.INCOMPARABLE


@given(same_shape_trips(min_trips=2, max_trips=2))
def test_compare_is_mirrored(trips):
    a, b = trips
    assert compare_trips(a, b) is compare_trips(b, a).mirror()


@given(same_shape_trips(min_trips=3, max_trips=3))
def test_compare_transitive_on_less_equal(trips):
    a, b, c = trips
    le = {Comparison.LESS, Comparison.EQUAL}
    if compare_trips(a, b) in le and compare_trips(b, c) in le:
        assert compare_trips(a, c) in le


@given(same_shape_trips(min_trips=2, max_trips=5))
def test_generated_trips_are_valid(trips):
    for trip in trips:
        assert validate_trip(trip) == []


class TestStopSequence:
    def test_projection(self):
        trip = make_trip("t", [0, 1, 2, 3, 4, 5], stops=["s1", "s2", "s3"])
        assert stop_sequence_of(trip) == ("s1", "s2", "s3")

    def test_loop_preserved(self):
        trip = make_trip("t", [0, 1, 2, 3, 4, 5], stops=["s1", "s2", "s1"])
        assert stop_sequence_of(trip) == ("s1", "s2", "s1")

    def test_single_event(self):
        trip = make_trip("t", [0, 1], stops=["s1"])
        assert stop_sequence_of(trip) == ("s1",)


class TestConstruction:
    def test_event_requires_nonnegative_times(self):
        with pytest.raises(ValueError):
            StopEvent("s", -1, 0)

    def test_event_requires_stop_id(self):
        with pytest.raises(ValueError):
            StopEvent("", 0, 0)

    def test_trip_requires_events(self):
        with pytest.raises(ValueError):
            Trip("t", ())

    def test_timetable_rejects_duplicate_ids(self):
        a = make_trip("same", [0, 1])
        b = make_trip("same", [2, 3])
        with pytest.raises(ValueError):
            Timetable.build([a, b])

    def test_timetable_normalises_order_and_stations(self):
        a = make_trip("b-trip", [0, 1], stops=["zz"])
        b = make_trip("a-trip", [0, 1], stops=["aa"])
        tt1 = Timetable.build([a, b])
        tt2 = Timetable.build([b, a], stations=["extra"])
        assert [t.id for t in tt1.trips] == ["a-trip", "b-trip"]
        assert tt1.stations == ("aa", "zz")
        assert tt2.stations == ("aa", "extra", "zz")
        assert [t.id for t in tt1.trips] == [t.id for t in tt2.trips]
        assert tt1.trip("a-trip") is b
