"""Polygon families, seeded random polygons and adaptive adversaries."""

from .adversary import (
    GADGETS,
    AdversaryResult,
    InconsistentAdversary,
    LazyEnvironment,
    adversary_holes,
    adversary_simple,
    gadget_polygon,
    gadget_variant,
    sparse_tour_length,
    strip_hamiltonian_cycle,
)
from .families import gen_comb, gen_corridor, gen_rectangle
from .random import TargetInfeasible, gen_fat, gen_random_holey, gen_random_simple, is_fat

__all__ = [
    "GADGETS",
    "AdversaryResult",
    "InconsistentAdversary",
    "LazyEnvironment",
    "adversary_holes",
    "adversary_simple",
    "gadget_polygon",
    "gadget_variant",
    "sparse_tour_length",
    "strip_hamiltonian_cycle",
    "TargetInfeasible",
    "gen_comb",
    "gen_corridor",
    "gen_fat",
    "gen_random_holey",
    "gen_random_simple",
    "gen_rectangle",
    "is_fat",
]
