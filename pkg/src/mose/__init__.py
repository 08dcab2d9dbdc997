"""Motif structural encodings: rooted homomorphism-count node features for graphs,
with RWSE/LapPE baselines, Weisfeiler-Leman refinement and expressivity checks."""

__version__ = "0.1.0"

from .graph import CanonicalForm, Graph, canonicalize, parse_edge_list  # noqa: E402
from .hom import WeightScheme, brute_force_hom, brute_force_rooted, dp_graph_count, dp_rooted_counts  # noqa: E402
from .patterns import Pattern, PatternFamily, family_connected, family_cycles, family_union, spasm  # noqa: E402
from .encodings import graph_label, lappe, mose, rwse  # noqa: E402
from .wl import wl1, wl2  # noqa: E402
from .zoo import named_graph  # noqa: E402

__all__ = [
    "CanonicalForm", "Graph", "canonicalize", "parse_edge_list",
    "WeightScheme", "brute_force_hom", "brute_force_rooted", "dp_graph_count", "dp_rooted_counts",
    "Pattern", "PatternFamily", "family_connected", "family_cycles", "family_union", "spasm",
    "graph_label", "lappe", "mose", "rwse", "wl1", "wl2", "named_graph",
]
