"""Built-in graph corpus shipped under ``wordrep/data``.

Set ``WORDREP_CORPUS_DIR`` to load the index, graphs, orientations and
proofs from another directory with the same layout.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .graph import Graph, induced_subgraph, parse_edge_list

WORD_REPRESENTABLE = "word-representable"
NON_WORD_REPRESENTABLE = "non-word-representable"
UNKNOWN = "unknown"

# Golden proofs: (corpus graph, proof file, source vertex, printed line count).
GOLDEN_PROOFS = {
    "shrikhande": ("sub-S-relabeled", "proofs/shrikhande.txt", 1, 6),
    "clebsch": ("sub-C-relabeled", "proofs/clebsch.txt", 4, 10),
}


class UnknownGraphError(KeyError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph
    expected_status: str
    reference_orientation: tuple[tuple[int, int], ...] | None = None
    description: str = ""

    def __post_init__(self):
        if self.reference_orientation is not None:
            for u, v in self.reference_orientation:
                if not self.graph.has_edge(u, v):
                    raise ValueError(f"{self.name}: reference arc {u}->{v} is not an edge")


def data_dir() -> Path:
    override = os.environ.get("WORDREP_CORPUS_DIR")
    return Path(override) if override else Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def _index(root: str) -> dict[str, dict]:
    with open(Path(root) / "index.json") as fh:
        return {rec["name"]: rec for rec in json.load(fh)}


def names() -> list[str]:
    return list(_index(str(data_dir())))


def parse_arcs(text: str) -> list[tuple[int, int]]:
    """Read ``u->v`` lines (blank lines and ``#`` comments skipped)."""
    arcs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        u, v = line.replace("→", "->").split("->")
        arcs.append((int(u), int(v)))
    return arcs


@lru_cache(maxsize=None)
def _load(root: str, name: str) -> CorpusEntry:
    idx = _index(root)
    if name not in idx:
        raise UnknownGraphError(name)
    rec = idx[name]
    if "induced_from" in rec:
        g = induced_subgraph(_load(root, rec["induced_from"]).graph, rec["vertices"])
    else:
        g = parse_edge_list((Path(root) / rec["graph"]).read_text())
    orient = None
    if "orientation" in rec:
        orient = tuple(parse_arcs((Path(root) / rec["orientation"]).read_text()))
    return CorpusEntry(name, g, rec["status"], orient, rec.get("description", ""))


def corpus_get(name: str) -> CorpusEntry:
    return _load(str(data_dir()), name)


def seven_vertex_names() -> list[str]:
    return [f"g7-{k}" for k in range(1, 26)]


def read_data(relpath: str) -> str:
    return (data_dir() / relpath).read_text()
