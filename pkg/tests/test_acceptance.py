"""Acceptance criteria 1-8. Each test records a one-line PASS/FAIL summary that
is printed in the pytest terminal summary."""

import os
import random
import subprocess
import sys
import time
from dataclasses import replace


from wordrep.corpus import GOLDEN_PROOFS, corpus_get, read_data, seven_vertex_names
from wordrep.cycles import enumerate_cycles
from wordrep.graph import delete_vertex
from wordrep.oracle import brute_force_count, is_semi_transitive_bitmask, neighborhood_pretest
from wordrep.orientation import PartialOrientation, from_arcs, is_semi_transitive
from wordrep.propagate import ErrorCycle, ForcingStep, cycle_forcing, propagate_fixpoint
from wordrep.prover import SearchConfig, prove
from wordrep.transcript import (
    Branch,
    InitialEdge,
    MoveToCopy,
    Orient,
    ProofLine,
    ProofTranscript,
    Terminator,
    check,
    parse,
    render,
)

from conftest import record_criterion

# Published line counts per catalog graph: (Alg2, Alg3, Alg1).
PUBLISHED_LINE_COUNTS = {
    1: (7, 7, 10), 2: (7, 7, 13), 3: (10, 10, 17), 4: (7, 7, 13), 5: (7, 7, 10),
    6: (7, 7, 10), 7: (11, 11, 11), 8: (16, 20, 18), 9: (9, 11, 15), 10: (9, 11, 15),
    11: (21, 21, 15), 12: (8, 8, 12), 13: (9, 9, 17), 14: (9, 9, 14), 15: (9, 9, 13),
    16: (11, 12, 14), 17: (9, 9, 12), 18: (7, 7, 13), 19: (7, 7, 16), 20: (9, 11, 11),
    21: (10, 10, 10), 22: (6, 6, 19), 23: (9, 11, 14), 24: (7, 7, 15), 25: (9, 12, 11),
}
PUBLISHED_AVERAGES = (9.2, 9.8, 13.5)
CELL_TOLERANCE = 3
AVERAGE_TOLERANCE = 0.20
ALG2_NOT_WORSE_MIN = 20
W5_TARGET = {1: 10, 2: 7, 3: 7}
W5_BAR = 8
SUB_S_BAR = 8
SUB_C_BAR = 13


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# ------------------------------------------------------------------ 1


def test_criterion_1_certificates():
    results = {}
    elapsed = 0.0
    for name in ("g12prime", "g17prime"):
        e = corpus_get(name)
        (ok, _), dt = timed(lambda: is_semi_transitive(from_arcs(e.graph, e.reference_orientation)))
        results[name] = ok
        elapsed += dt
    ok = all(results.values()) and elapsed < 1.0
    record_criterion(1, ok, f"certificates {results}, {elapsed:.3f}s (< 1s)")
    assert ok


# ------------------------------------------------------------------ 2


def test_criterion_2_golden_proofs():
    details = []
    ok = True
    for key, (gname, path, source, nlines) in sorted(GOLDEN_PROOFS.items()):
        g = corpus_get(gname).graph

        def run():
            t = parse(read_data(path))
            return t, check(g, t, source)
        (t, rep), dt = timed(run)
        good = rep.valid and len(t) == nlines and dt < 1.0
        ok &= good
        details.append(f"{key}: {len(t)} lines, valid={rep.valid}, {dt:.3f}s")
    record_criterion(2, ok, "; ".join(details))
    assert ok


def test_generated_subgraph_proofs_within_bounds():
    """Our own transcripts for the two subgraphs stay within the stated line bounds."""
    s = prove(corpus_get("sub-S-relabeled").graph, SearchConfig(2, source_vertex=1))
    c = prove(corpus_get("sub-C-relabeled").graph, SearchConfig(2, source_vertex=4))
    assert len(s.transcript) <= SUB_S_BAR
    assert len(c.transcript) <= SUB_C_BAR


# ------------------------------------------------------------------ 3


def test_criterion_3_w5():
    g = corpus_get("w5").graph
    counts = {}
    valid = {}

    def run():
        for alg in (1, 2, 3):
            res = prove(g, SearchConfig(alg))
            counts[alg] = len(res.transcript)
            valid[alg] = check(g, res.transcript).valid
    _, dt = timed(run)
    ok = all(valid.values()) and counts[2] <= W5_BAR and counts[3] <= W5_BAR and dt < 1.0
    exact = counts == W5_TARGET
    record_criterion(3, ok, f"lines Alg1/2/3 = {counts[1]}/{counts[2]}/{counts[3]} "
                            f"(target 10/7/7, exact={exact}), all valid={all(valid.values())}, {dt:.3f}s")
    assert ok


# ------------------------------------------------------------------ 4


def test_criterion_4_table():
    rows = {}
    invalid = []
    t0 = time.perf_counter()
    for k in range(1, 26):
        g = corpus_get(f"g7-{k}").graph
        row = []
        for alg in (2, 3, 1):
            res = prove(g, SearchConfig(alg))
            if res.representable:
                row.append(None)
                invalid.append(f"g7-{k}/Alg{alg}: representable")
                continue
            if not check(g, res.transcript).valid:
                invalid.append(f"g7-{k}/Alg{alg}: transcript rejected")
            row.append(len(res.transcript))
        rows[k] = row
    dt = time.perf_counter() - t0

    print("\ngraph  ours(A2,A3,A1)  table(A2,A3,A1)")
    off = []
    exact = 0
    for k, row in rows.items():
        ref = PUBLISHED_LINE_COUNTS[k]
        flag = ""
        if row == list(ref):
            exact += 1
        for i, (a, b) in enumerate(zip(row, ref)):
            if a is None or abs(a - b) > CELL_TOLERANCE:
                off.append((k, ("A2", "A3", "A1")[i], a, b))
                flag = "  off"
        print(f"g7-{k:<3} {str(row):16} {str(ref):16}{flag}")

    proven = [r for r in rows.values() if None not in r]
    avgs = [sum(r[i] for r in proven) / len(proven) for i in range(3)]
    avg_ok = all(abs(a - t) <= AVERAGE_TOLERANCE * t for a, t in zip(avgs, PUBLISHED_AVERAGES))
    not_worse = sum(1 for r in proven if r[0] <= r[2])
    ok = (not invalid and not off and avg_ok and not_worse >= ALG2_NOT_WORSE_MIN and dt < 60)
    record_criterion(4, ok, (
        f"{len(off)} cells off by more than {CELL_TOLERANCE} {off}; "
        f"averages {avgs[0]:.2f}/{avgs[1]:.2f}/{avgs[2]:.2f} vs 9.2/9.8/13.5 (within 20%: {avg_ok}); "
        f"Alg2 <= Alg1 on {not_worse}/25; exact rows {exact}/25; "
        f"not provable: {invalid}; {dt:.1f}s"))
    assert ok


# ------------------------------------------------------------------ 5


def test_criterion_5_oracle():
    t0 = time.perf_counter()
    zero = {n: brute_force_count(corpus_get(n).graph).semi_transitive_count
            for n in seven_vertex_names() + ["w5"]}
    positive = {n: brute_force_count(corpus_get(n).graph).semi_transitive_count
                for n in ("g12prime", "g17prime")}
    s = corpus_get("sub-S-relabeled").graph
    deletions = {v: brute_force_count(delete_vertex(s, v)).semi_transitive_count for v in s.vertices}
    dt = time.perf_counter() - t0
    nonzero = {n: c for n, c in zero.items() if c}
    corrected = brute_force_count(corpus_get("g7-20-corrected").graph).semi_transitive_count
    ok = (not nonzero and all(positive.values()) and all(deletions.values()) and dt < 300)
    record_criterion(5, ok, (
        f"expected-zero graphs with orientations: {nonzero or 'none'}; "
        f"positives {positive}; sub-S single deletions all positive={all(deletions.values())}; "
        f"(g7-20-corrected count {corrected}); {dt:.1f}s"))
    assert ok


# ------------------------------------------------------------------ 6


def test_criterion_6_source_assumption():
    g = corpus_get("w5").graph
    hub = max(g.vertices, key=g.degree)
    (with_src, without), dt = timed(lambda: (
        prove(g, SearchConfig(2, source_vertex=hub)), prove(g, SearchConfig(2))))
    ok = with_src.stats.branches <= 1 and without.stats.branches >= 2 and dt < 1.0
    assert check(g, with_src.transcript, hub).valid
    record_criterion(6, ok, f"branches with hub {hub} as source: {with_src.stats.branches}; "
                            f"without: {without.stats.branches}; {dt:.3f}s")
    assert ok


# ------------------------------------------------------------------ 7


def test_criterion_7_pretest():
    (res, dt) = timed(lambda: {n: neighborhood_pretest(corpus_get(n).graph).conclusive
                               for n in ("w5", "g7-1", "g12prime", "g17prime")})
    ok = res["w5"] and res["g7-1"] and not res["g12prime"] and not res["g17prime"] and dt < 1.0
    record_criterion(7, ok, f"conclusive: {res}, {dt:.3f}s")
    assert ok


# ------------------------------------------------------------------ 8


def random_transcript(rng: random.Random) -> ProofTranscript:
    def arc():
        u = rng.randint(1, 30)
        v = rng.choice([x for x in range(1, 31) if x != u])
        return (u, v)

    def cycle():
        return tuple(rng.sample(range(1, 31), rng.randint(3, 8)))

    lines = []
    next_copy = 2
    for number in range(1, rng.randint(1, 12) + 1):
        instrs = []
        if number == 1 and rng.random() < 0.5:
            instrs.append(InitialEdge(arc()))
        if number > 1:
            instrs.append(MoveToCopy(rng.randint(2, 40), arc()))
        for _ in range(rng.randint(0, 10)):
            if rng.random() < 0.3:
                instrs.append(Branch(arc(), next_copy))
                next_copy += 1
            else:
                instrs.append(Orient(tuple(arc() for _ in range(rng.randint(1, 2))), cycle()))
        kind = rng.choice("SED")
        term = Terminator(kind, tuple(rng.sample(range(1, 31), rng.randint(3, 7))))
        lines.append(ProofLine(number, tuple(instrs), term))
    name = rng.choice([None, "w5", "g7-3"])
    source = rng.choice([None, rng.randint(1, 9)])
    return ProofTranscript(tuple(lines), name, source)


def _round_trip():
    rng = random.Random(20240501)
    bad = 0
    for _ in range(1000):
        t = random_transcript(rng)
        if parse(render(t)) != t:
            bad += 1
    return bad


def _rev(a):
    return (a[1], a[0])


def mutations(t: ProofTranscript):
    """Single edits that no valid transcript survives."""
    lines = list(t.lines)
    top = max([1] + t.copies_created())
    for li, ln in enumerate(lines):
        ins = list(ln.instructions)
        for ii, x in enumerate(ins):
            variants = []
            if isinstance(x, Orient):
                for j in range(len(x.arcs)):
                    arcs = list(x.arcs)
                    arcs[j] = _rev(arcs[j])
                    variants.append(Orient(tuple(arcs), x.cycle))
            elif isinstance(x, Branch):
                variants += [Branch(_rev(x.arc), x.copy_id), Branch(x.arc, top + 5)]
            elif isinstance(x, MoveToCopy):
                variants += [MoveToCopy(x.copy_id, _rev(x.reminder)), MoveToCopy(top + 5, x.reminder)]
            elif isinstance(x, InitialEdge):
                variants.append(InitialEdge(_rev(x.arc)))
            for v in variants:
                new = ins[:ii] + [v] + ins[ii + 1:]
                yield f"line {ln.number} instr {ii + 1}", lines[:li] + [replace(ln, instructions=tuple(new))] + lines[li + 1:]
        if ln.terminator.kind == "S":
            rev = Terminator("S", ln.terminator.vertices[::-1])
            yield f"line {ln.number} terminator", lines[:li] + [replace(ln, terminator=rev)] + lines[li + 1:]
        rest = [replace(x, number=k) for k, x in enumerate(lines[:li] + lines[li + 1:], start=1)]
        if rest:
            yield f"drop line {ln.number}", rest


def _fuzz():
    cases = []
    for key, (gname, path, source, _) in GOLDEN_PROOFS.items():
        cases.append((corpus_get(gname).graph, parse(read_data(path)), source))
    for name in ("w5", "g7-1", "g7-8", "g7-11", "g7-22"):
        g = corpus_get(name).graph
        for alg in (1, 2, 3):
            cases.append((g, prove(g, SearchConfig(alg)).transcript, None))
    survivors = []
    total = 0
    for g, t, source in cases:
        assert check(g, t, source).valid
        for label, lines in mutations(t):
            total += 1
            if check(g, replace(t, lines=tuple(lines)), source).valid:
                survivors.append(label)
    return total, survivors


def _completions(po: PartialOrientation):
    g = po.host
    fixed = po.arcs()
    free = po.unoriented()
    for bits in range(1 << len(free)):
        arcs = fixed + [(u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(free)]
        if is_semi_transitive_bitmask(g, arcs):
            yield set(arcs)


def _soundness():
    rng = random.Random(7)
    pool = ["g12prime", "g17prime", "w5", "g7-1", "g7-20", "g7-5"]
    s = corpus_get("sub-S-relabeled").graph
    graphs = [corpus_get(n).graph for n in pool] + [delete_vertex(s, v) for v in (1, 5, 9)]
    checked_steps = 0
    states = 0
    failures = []
    for _ in range(160):
        g = rng.choice(graphs)
        cat = enumerate_cycles(g)
        base = brute_force_count(g).example_orientation
        if base is None or rng.random() < 0.4:
            base = [e if rng.random() < 0.5 else _rev(e) for e in g.sorted_edges()]
        free = set(rng.sample(range(g.m), min(g.m, rng.randint(1, 10))))
        po = from_arcs(g, [a for i, a in enumerate(base) if i not in free])
        states += 1
        comps = list(_completions(po))
        for c in cat:
            r = cycle_forcing(c, po)
            if isinstance(r, ForcingStep):
                checked_steps += 1
                if not all(set(r.forced) <= comp for comp in comps):
                    failures.append(("step", c.vertices, r.forced))
            elif isinstance(r, ErrorCycle) and comps:
                failures.append(("error-cycle", c.vertices))
        out = propagate_fixpoint(po, cat)
        after = list(_completions(out.state))
        if out.contradiction and comps:
            failures.append(("terminal", out.terminal))
        if not out.contradiction and len(after) != len(comps):
            failures.append(("lost completions", len(comps), len(after)))
    return states, checked_steps, failures


DETERMINISM_SCRIPT = """
from wordrep.corpus import corpus_get, seven_vertex_names
from wordrep.prover import SearchConfig, prove
from wordrep.transcript import render
jobs = [(n, None) for n in seven_vertex_names() + ["w5", "g12prime", "g17prime"]]
jobs += [("sub-S-relabeled", 1), ("sub-C-relabeled", 4)]
for name, src in jobs:
    g = corpus_get(name).graph
    for alg in (1, 2, 3):
        r = prove(g, SearchConfig(alg, source_vertex=src))
        print(name, alg)
        print(r.orientation.dump() if r.representable else render(r.transcript))
"""


def _determinism():
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = subprocess.run([sys.executable, "-c", DETERMINISM_SCRIPT], env=env,
                           capture_output=True, check=True)
        outs.append(r.stdout)
    return outs[0] == outs[1] and len(outs[0]) > 0


def test_criterion_8_properties():
    bad_round_trips = _round_trip()
    total, survivors = _fuzz()
    states, steps, unsound = _soundness()
    same = _determinism()
    ok = bad_round_trips == 0 and not survivors and not unsound and same and steps > 0
    record_criterion(8, ok, (
        f"round-trip failures {bad_round_trips}/1000; mutations surviving {len(survivors)}/{total}; "
        f"soundness: {states} states, {steps} forcing steps, {len(unsound)} unsound; "
        f"byte-identical reruns={same}"))
    assert bad_round_trips == 0
    assert not survivors, survivors[:5]
    assert not unsound, unsound[:5]
    assert same
