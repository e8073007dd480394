"""Group public-transit trips into a minimal set of FIFO routes.

Trips sharing an exact stop sequence form a partial order under the
earlier-than relation; a minimum chain partition of each group (solved
by maximum bipartite matching, certified by a maximum antichain) gives
the smallest number of routes on which no vehicle overtakes another.
"""

from fifo_routes.generate import GeneratorSpec, generate_synthetic
from fifo_routes.gtfs import IngestError, IngestReport, load_gtfs
from fifo_routes.model import (
    Comparison,
    Route,
    StopEvent,
    StopId,
    StopSequence,
    TimePoint,
    Timetable,
    Trip,
    compare_trips,
    stop_sequence_of,
    validate_trip,
)
from fifo_routes.ordering import (
    GroupIndex,
    PrecedenceRelation,
    TripGroup,
    build_precedence,
    group_by_stop_sequence,
)
from fifo_routes.solvers import (
    AntichainCertificate,
    BruteForceLimitError,
    RoutePartition,
    brute_force_min,
    max_antichain_bruteforce,
    solve_brute,
    solve_greedy,
    solve_optimal,
    solve_trivial,
)
from fifo_routes.verify import (
    ComparisonStats,
    VerificationReport,
    compare_solvers,
    verify_certificate,
    verify_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AntichainCertificate",
    "BruteForceLimitError",
    "Comparison",
    "ComparisonStats",
    "GeneratorSpec",
    "GroupIndex",
    "IngestError",
    "IngestReport",
    "PrecedenceRelation",
    "Route",
    "RoutePartition",
    "StopEvent",
    "StopId",
    "StopSequence",
    "TimePoint",
    "Timetable",
    "Trip",
    "TripGroup",
    "VerificationReport",
    "brute_force_min",
    "build_precedence",
    "compare_solvers",
    "compare_trips",
    "generate_synthetic",
    "group_by_stop_sequence",
    "load_gtfs",
    "max_antichain_bruteforce",
    "solve_brute",
    "solve_greedy",
    "solve_optimal",
    "solve_trivial",
    "stop_sequence_of",
    "validate_trip",
    "verify_certificate",
    "verify_partition",
    "__version__",
]
