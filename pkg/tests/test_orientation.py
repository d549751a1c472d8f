import pytest

from wordrep.corpus import corpus_get
from wordrep.graph import Graph
from wordrep.orientation import (
    BACKWARD,
    FORWARD,
    AlreadyOriented,
    IncompleteOrientation,
    PartialOrientation,
    UnknownEdge,
    ViolationKind,
    check_shortcut_witness,
    detect_violation,
    find_directed_cycle,
    from_arcs,
    has_violation,
    is_semi_transitive,
    reverse_all,
    set_edge,
)
from wordrep.prover import source_init


def test_set_edge_copies(k3):
    po = PartialOrientation(k3)
    q = set_edge(po, (1, 2), FORWARD)
    assert q.oriented_count == 1 and po.oriented_count == 0
    assert q.arcs() == [(1, 2)]


def test_set_twice(k3):
    po = PartialOrientation(k3).set_edge((1, 2), FORWARD)
    with pytest.raises(AlreadyOriented):
        po.set_edge((1, 2), BACKWARD)


def test_unknown_edge(p3):
    with pytest.raises(UnknownEdge):
        PartialOrientation(p3).orient(1, 3)


def test_complete_w5(w5):
    po = from_arcs(w5, w5.sorted_edges())
    assert po.oriented_count == 10 and po.is_complete


def test_direction(k3):
    po = PartialOrientation(k3).orient(3, 1)
    assert po.direction(3, 1) == 1 and po.direction(1, 3) == -1 and po.direction(1, 2) == 0


def test_directed_cycle(k3):
    po = from_arcs(k3, [(1, 2), (2, 3), (3, 1)])
    rep = detect_violation(po)
    assert rep.kind is ViolationKind.DIRECTED_CYCLE
    assert sorted(rep.cycle_witness) == [1, 2, 3]


def test_minimal_shortcut():
    g = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    po = from_arcs(g, [(1, 2), (2, 3), (3, 4), (1, 4)])
    rep = detect_violation(po)
    assert rep.kind is ViolationKind.SHORTCUT
    w = rep.shortcut_witness
    assert w.path == (1, 2, 3, 4) and w.shortcut_edge == (1, 4)
    assert w.missing_pair in {(1, 3), (2, 4)}
    assert check_shortcut_witness(g, po, w)


def test_transitive_k4(k4):
    po = from_arcs(k4, k4.sorted_edges())
    assert not detect_violation(po)
    assert is_semi_transitive(po)[0]


def test_partial_orientation_violation_checks(c4):
    po = from_arcs(c4, [(1, 2), (2, 3)])
    assert not has_violation(po)
    po.orient(3, 4)
    po.orient(1, 4)
    assert has_violation(po)


def test_incomplete_raises(k3):
    with pytest.raises(IncompleteOrientation):
        is_semi_transitive(PartialOrientation(k3))


@pytest.mark.parametrize("name", ["g12prime", "g17prime"])
def test_reference_certificates(name):
    e = corpus_get(name)
    ok, rep = is_semi_transitive(from_arcs(e.graph, e.reference_orientation))
    assert ok and not rep


def test_reference_certificate_broken_by_flip():
    e = corpus_get("g12prime")
    arcs = list(e.reference_orientation)
    bad = 0
    for i in range(len(arcs)):
        a, b = arcs[i]
        flipped = arcs[:i] + [(b, a)] + arcs[i + 1:]
        bad += not is_semi_transitive(from_arcs(e.graph, flipped))[0]
    assert bad > 0


def test_w5_every_orientation_fails(w5):
    edges = w5.sorted_edges()
    for bits in range(1 << len(edges)):
        arcs = [(u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(edges)]
        assert not is_semi_transitive(from_arcs(w5, arcs))[0]


def test_reverse_involution(w5):
    po = from_arcs(w5, [(1, 2), (3, 2), (4, 5)])
    assert reverse_all(reverse_all(po)) == po


def test_reverse_keeps_semi_transitivity():
    e = corpus_get("g17prime")
    po = reverse_all(from_arcs(e.graph, e.reference_orientation))
    assert is_semi_transitive(po)[0]


def test_source_becomes_sink(w5):
    po = reverse_all(source_init(w5, 1))
    assert all(po.direction(w, 1) == 1 for w in w5.adj[1])


def test_closes_cycle(k3):
    po = from_arcs(k3, [(1, 2), (2, 3)])
    assert po.closes_cycle(3, 1) == [1, 2, 3]
    assert po.closes_cycle(1, 3) is None
    assert find_directed_cycle(po) is None
