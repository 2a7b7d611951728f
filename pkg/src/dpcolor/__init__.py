"""Correspondence (DP) colouring toolkit for plane graphs.

Plane-graph machinery, correspondence assignments, an exact colouring
search, detectors for reducible configurations and an exact discharging
ledger, plus a file-based harness and CLI in :mod:`dpcolor.harness`.
"""

from .correspondence import (CorrAssignment, check_coloring, consistent_on_triangles,
                             from_lists, is_consistent, is_full, is_straight, straighten,
                             walk_inconsistency)
from .errors import (BudgetExceeded, DPColorError, GraphFormatError, InputError,
                     PreconditionError, StructureError)
from .plane_graph import (CycleRef, Graph, PlaneGraph, adjacent_short_cycle_pairs, chords_of,
                          cycles_up_to, from_drawing, identify, is_separating, trace_faces)
from .solver import dp_colorable_for_all_consistent, find_dp_coloring, is_choosable

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CorrAssignment", "CycleRef", "DPColorError", "Graph",
    "GraphFormatError", "InputError", "PlaneGraph", "PreconditionError", "StructureError",
    "adjacent_short_cycle_pairs", "check_coloring", "chords_of", "consistent_on_triangles",
    "cycles_up_to", "dp_colorable_for_all_consistent", "find_dp_coloring", "from_drawing",
    "from_lists", "identify", "is_choosable", "is_consistent", "is_full", "is_separating",
    "is_straight", "straighten", "trace_faces", "walk_inconsistency",
]
