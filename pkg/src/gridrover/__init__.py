"""Online exploration of unknown grid polygons by a short-sighted robot."""

from .grid import GridPolygon, TopologyStats, parse_polygon, serialize_polygon, topology_stats
from .simulator import ExplorationTrace, run_on_polygon, run_strategy, validate_trace

__version__ = "0.1.0"

__all__ = [
    "ExplorationTrace",
    "GridPolygon",
    "TopologyStats",
    "parse_polygon",
    "run_on_polygon",
    "run_strategy",
    "serialize_polygon",
    "topology_stats",
    "validate_trace",
]
