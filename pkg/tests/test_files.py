import json

import pytest

from fifo_routes.files import (
    CSV_HEADER,
    FileFormatError,
    assignment_from_dict,
    assignment_to_dict,
    load_assignment,
    load_timetable,
    save_assignment,
    save_timetable,
)
from fifo_routes.generate import GeneratorSpec, generate_synthetic
from fifo_routes.solvers import solve_greedy, solve_optimal

from conftest import make_trip
from fifo_routes.model import Timetable


@pytest.fixture
def timetable():
    return generate_synthetic(
        GeneratorSpec(2, 4, 3, jitter_seconds=60, overtake_probability=0.5, rng_seed=4)
    )


class TestTimetableFile:
    def test_round_trip_identity(self, timetable, tmp_path):
        path = tmp_path / "t.json"
        save_timetable(timetable, path)
        loaded = load_timetable(path)
        assert loaded == timetable
        # and the canonical file is a fixed point
        path2 = tmp_path / "t2.json"
        save_timetable(loaded, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_version_tag_written_and_required(self, timetable, tmp_path):
        path = tmp_path / "t.json"
        save_timetable(timetable, path)
        data = json.loads(path.read_text())
        assert data["version"] == "fifo-routes/1"
        data["version"] = "fifo-routes/99"
        path.write_text(json.dumps(data))
        with pytest.raises(FileFormatError):
            load_timetable(path)

    def test_not_json_is_format_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json at all {")
        with pytest.raises(FileFormatError):
            load_timetable(path)

    def test_missing_fields_is_format_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"version": "fifo-routes/1", "trips": [{"id": "x"}]}))
        with pytest.raises(FileFormatError):
            load_timetable(path)


class TestAssignmentJson:
    def test_round_trip_with_certificate(self, timetable, tmp_path):
        partition, certificate = solve_optimal(timetable)
        path = tmp_path / "r.json"
        save_assignment(partition, timetable, path, fmt="json", certificate=certificate)
        loaded_partition, loaded_certificate = load_assignment(path, timetable)
        assert loaded_partition == partition
        assert loaded_certificate == certificate

    def test_round_trip_without_certificate(self, timetable, tmp_path):
        partition = solve_greedy(timetable)
        path = tmp_path / "r.json"
        save_assignment(partition, timetable, path, fmt="json")
        loaded_partition, loaded_certificate = load_assignment(path, timetable)
        assert loaded_partition == partition
        assert loaded_certificate is None

    def test_document_shape(self, timetable):
        partition, certificate = solve_optimal(timetable)
        doc = assignment_to_dict(partition, timetable, certificate)
        assert doc["summary"]["algorithm"] == "optimal"
        assert doc["summary"]["total_trips"] == len(timetable)
        covered = [tid for route in doc["routes"] for tid in route["trip_ids"]]
        assert sorted(covered) == sorted(t.id for t in timetable.trips)
        assert len(covered) == len(set(covered))
        assert {tuple(c["stop_sequence"]) for c in doc["certificate"]} == set(
            certificate.per_group
        )

    def test_malformed_document(self):
        with pytest.raises(FileFormatError):
            assignment_from_dict({"routes": []})


class TestAssignmentCsv:
    def test_exact_header_and_cover(self, timetable, tmp_path):
        partition = solve_greedy(timetable)
        path = tmp_path / "r.csv"
        save_assignment(partition, timetable, path, fmt="csv")
        lines = path.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + len(timetable)

    def test_csv_round_trip(self, timetable, tmp_path):
        partition = solve_greedy(timetable)
        path = tmp_path / "r.csv"
        save_assignment(partition, timetable, path, fmt="csv")
        loaded, certificate = load_assignment(path, timetable)
        assert certificate is None
        assert {r.id: r.trips for r in loaded.routes} == {
            r.id: r.trips for r in partition.routes
        }
        assert loaded.per_group_counts == partition.per_group_counts

    def test_wrong_header_rejected(self, timetable, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("trip,route\nx,R1\n")
        with pytest.raises(FileFormatError):
            load_assignment(path, timetable)

    def test_unknown_format_rejected(self, timetable, tmp_path):
        partition = solve_greedy(timetable)
        with pytest.raises(ValueError):
            save_assignment(partition, timetable, tmp_path / "r.xml", fmt="xml")


def test_stations_survive_round_trip(tmp_path):
    tt = Timetable.build([make_trip("t", [0, 1])], stations=["unused-station"])
    path = tmp_path / "t.json"
    save_timetable(tt, path)
    assert load_timetable(path).stations == ("s0", "unused-station")
