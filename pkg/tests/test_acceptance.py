"""Acceptance criteria.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import E
from orthograph.decide import m2_adjacent, m2_component, mutual_strong_orth, strong_orth_directsum
from orthograph.explorer import build_graph, components, sample_vertices, theorem_diameter
from orthograph.golden import FINAL_TABLE, diameter_witness, golden_pairs, m2_line_families, reproduce
from orthograph.instances import CASES, build, generate
from orthograph.linalg import DirectSumElement, Tri
from orthograph.oracle import derived_rule_gate
from orthograph.randmat import make_rng, random_complex, random_rank_one, random_singular
from orthograph.witness import route

pytestmark = pytest.mark.slow


def verdict_line(n, ok, detail):
    print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def test_criterion_1_gate():
    start = time.perf_counter()
    gate = derived_rule_gate(count=1000, sizes=(2, 3, 4, 5), seed=0)
    seconds = time.perf_counter() - start
    err = gate.rules["ideal-distance"]
    ok = gate.passed and err.checked == 4000 and err.max_error <= 1e-6 and gate.contradictions == 0 and seconds <= 120
    verdict_line(1, ok, f"{err.checked} pairs, max error {err.max_error:.2e}, {gate.contradictions} contradictions, {seconds:.1f}s")


def test_criterion_2_reproductions():
    names = ("ip-pi", "c2-diameter", "ck-distance3", "c-m2-distance4")
    reps = [reproduce(name, quick_gate=False) for name in names]
    failed = [(r.name, r.diff()) for r in reps if not r.ok]
    verdict_line(2, not failed, f"{len(names) - len(failed)}/{len(names)} scenarios match" + (f"; {failed}" if failed else ""))


def test_criterion_3_constructors():
    start = time.perf_counter()
    rng = make_rng(3)
    bounds = {"distinct-coordinates": 3, "via-unit": 2, "combination": 3, "two-matrix-summands": 3, "c-plus-m3": 3, "three-summands": 3}
    failures = {}
    for case, bound in bounds.items():
        assert CASES[case][2] == bound
        bad = 0
        for _ in range(500):
            u, v, extra = generate(case, rng)
            assert max(u.signature) <= 4 and len(u.signature) <= 3
            try:
                p = build(case, u, v, extra)
                bad += not (p.length <= bound and p.validate())
            except Exception:
                bad += 1
        if bad:
            failures[case] = bad
    seconds = time.perf_counter() - start
    ok = not failures and seconds <= 300
    verdict_line(3, ok, f"{len(bounds)} cases x 500 instances, failures {failures or 0}, {seconds:.1f}s")


def test_criterion_4_diameter_property():
    too_long, missing, pairs, uncertain = [], [], 0, 0
    for sig in FINAL_TABLE:
        vs = sample_vertices(sig, "structured-templates", 10**6, seed=0)
        vs = vs.union(sample_vertices(sig, "random-singular", 200, seed=2024))
        g = build_graph(vs)
        uncertain += len(g.uncertain_pairs)
        bound = theorem_diameter(sig)
        for comp in components(g):
            for i, j in itertools.combinations(comp, 2):
                pairs += 1
                length = route(vs.vertices[i], vs.vertices[j]).length
                if length > bound:
                    too_long.append((sig, i, j, length))
        if bound >= 3:
            w = diameter_witness(sig)
            if not (w.exact and w.lower_bound == bound and w.path.validate()):
                missing.append(sig)
    ok = not too_long and not missing
    verdict_line(4, ok, f"{pairs} same-component routes, {len(too_long)} over bound, witnesses missing {missing or 'none'}, {uncertain} uncertain pairs")


def test_criterion_5_m2():
    rng = make_rng(5)
    mismatches = adjacent = 0
    for _ in range(1000):
        a, b = random_rank_one(2, rng), random_rank_one(2, rng)
        if rng.random() < 0.5:
            y = np.linalg.svd(a)[0][:, 1]  # orthogonal image line
            b = np.outer(y, random_complex(2, rng, 1)[:, 0].conj())
        rule = m2_adjacent(a, b)
        d = mutual_strong_orth(E(a), E(b))
        mismatches += d.verdict is Tri.UNCERTAIN or rule != d.adjacent
        adjacent += rule
    verts = m2_line_families(6, 5, rng) + [DirectSumElement((random_singular(2, rng),)) for _ in range(40)]
    g = build_graph(sample_vertices((2,), "user-supplied", len(verts), vertices=verts))
    bad_joins = 0
    for comp in components(g):
        labels = [m2_component(g.vertex_set.vertices[i].coords[0]) for i in comp]
        bad_joins += sum(not x.same_component(y) for x, y in itertools.combinations(labels, 2))
    ok = mismatches == 0 and bad_joins == 0 and 0 < adjacent < 1000 and g.edge_count > 0
    verdict_line(5, ok, f"1000 rank-one pairs ({adjacent} adjacent), {mismatches} mismatches, {g.edge_count} edges, {bad_joins} bad joins")


def _scaled(x, rng):
    return x.scaled(rng.uniform(1e-3, 1e3) * np.exp(2j * np.pi * rng.random()))


def test_criterion_6_robustness():
    rng = make_rng(6)
    golden = list(golden_pairs().values())
    flips = 0
    for t in range(1000):
        if t % 2:
            u, v = golden[t % len(golden)]
        else:
            sig = (1, 2) if t % 4 else (2, 2)
            u, v = (DirectSumElement(tuple(random_singular(n, rng) if i == 0 else random_complex(n, rng) for i, n in enumerate(sig))) for _ in range(2))
        base = (strong_orth_directsum(u, v).verdict, strong_orth_directsum(v, u).verdict)
        su, sv = _scaled(u, rng), _scaled(v, rng)
        flips += base != (strong_orth_directsum(su, sv).verdict, strong_orth_directsum(sv, su).verdict)

    vs = sample_vertices((1, 2, 2), "random-singular", 60, seed=11)
    graphs = [build_graph(vs, workers=w) for w in (1, 2, 4)]
    same = all(np.array_equal(graphs[0].adjacency, h.adjacency) and graphs[0].uncertain_pairs == h.uncertain_pairs for h in graphs[1:])
    resampled = sample_vertices((1, 2, 2), "random-singular", 60, seed=11)
    same = same and [x.key(1e-12) for x in vs.vertices] == [x.key(1e-12) for x in resampled.vertices]

    golden_uncertain = sum(
        Tri.UNCERTAIN in (strong_orth_directsum(u, v).verdict, strong_orth_directsum(v, u).verdict, mutual_strong_orth(u, v).verdict)
        for u, v in golden
    )
    ok = flips == 0 and same and golden_uncertain == 0
    verdict_line(6, ok, f"{flips} verdict flips in 1000 rescalings, graphs identical across 1/2/4 workers: {same}, {golden_uncertain} uncertain golden verdicts")
