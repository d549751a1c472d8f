"""Word-representability of graphs via semi-transitive orientations.

The prover searches for a semi-transitive orientation and, when none
exists, emits a proof transcript that :func:`check` replays independently.
"""

from .cycles import CycleCatalog, CycleRecord, enumerate_cycles
from .graph import Graph, parse_edge_list, parse_graph, serialize_graph
from .oracle import brute_force_count, neighborhood_pretest, search_uniform_word, word_represents
from .orientation import PartialOrientation, detect_violation, is_semi_transitive
from .propagate import propagate_fixpoint
from .prover import ProveResult, SearchConfig, prove, prove_all_sources
from .transcript import ProofTranscript, check, parse, render

__all__ = [
    "CycleCatalog", "CycleRecord", "Graph", "PartialOrientation", "ProofTranscript",
    "ProveResult", "SearchConfig", "brute_force_count", "check", "detect_violation",
    "enumerate_cycles", "is_semi_transitive", "neighborhood_pretest", "parse",
    "parse_edge_list", "parse_graph", "propagate_fixpoint", "prove", "prove_all_sources",
    "render", "search_uniform_word", "serialize_graph", "word_represents",
]
