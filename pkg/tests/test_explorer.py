import math

import numpy as np
import pytest

from conftest import E, J, P1
from orthograph.errors import InputError
from orthograph.explorer import (
    bfs_distance,
    build_graph,
    components,
    diameter_lower_bound,
    distance_report,
    sample_vertices,
    structured_templates,
    theorem_diameter,
    theorem_source,
)
from orthograph.golden import golden_pairs
from orthograph.linalg import Tri


@pytest.mark.parametrize(
    "sig,value,source",
    [
        ((1,), "empty", "c-no-edges"),
        ((2,), "disconnected: per-component diameter <= 2", "m2-components"),
        ((3,), 4, "m3-diameter4"),
        ((5,), 3, "mn-diameter3"),
        ((1, 1), 1, "c2-diameter1"),
        ((2, 1), 4, "c-plus-m2-distance4"),
        ((1, 1, 1), 3, "final-diameter3"),
        ((2, 3), 3, "final-diameter3"),
    ],
)
def test_theorem_lookup(sig, value, source):
    assert theorem_diameter(sig) == value
    assert theorem_source(sig) == source


def test_c2_sample():
    g = build_graph(sample_vertices((1, 1), "random-singular", 50, seed=0))
    assert len(g.vertex_set) == 2 and g.edge_count == 1
    assert bfs_distance(g, 0, 1) == 1


def test_sampling_is_seeded():
    a = sample_vertices((1, 2), "random-singular", 30, seed=5)
    b = sample_vertices((1, 2), "random-singular", 30, seed=5)
    c = sample_vertices((1, 2), "random-singular", 30, seed=6)
    assert [v.key(1e-9) for v in a.vertices] == [v.key(1e-9) for v in b.vertices]
    assert [v.key(1e-9) for v in a.vertices] != [v.key(1e-9) for v in c.vertices]


def test_structured_templates_drop_isolated_and_repeats():
    verts = structured_templates((1, 2))
    keys = [v.key(1e-6) for v in verts]
    assert len(set(keys)) == len(keys)
    assert all(not v.is_zero() for v in verts)


def test_user_supplied_sample_and_index():
    u, v = golden_pairs()["c-m2"]
    vs = sample_vertices((1, 2), "user-supplied", 10, vertices=[u, v, u.scaled(2.0), E(1.0, np.eye(2))])
    assert len(vs) == 2 and vs.provenance["dropped"] == 1
    assert vs.index(u.scaled(-3.0)) == 0
    with pytest.raises(InputError):
        vs.index(E(1.0, J * 0.5 + P1))


@pytest.mark.parametrize("kwargs", [dict(strategy="nope"), dict(count=0), dict(strategy="user-supplied")])
def test_sample_rejects(kwargs):
    with pytest.raises(InputError):
        sample_vertices((1, 2), **kwargs)


def test_graph_edges_are_certified_and_symmetric():
    g = build_graph(sample_vertices((1, 2), "structured-templates", 200, seed=0))
    assert np.array_equal(g.adjacency, g.adjacency.T)
    assert not g.adjacency.diagonal().any()
    for (i, j), d in g.certificates.items():
        assert i < j and d.verdict is Tri.YES and d.forward.certificate is not None
    assert len(g.certificates) == g.edge_count


def test_graph_independent_of_workers():
    vs = sample_vertices((2, 2), "random-singular", 40, seed=3)
    graphs = [build_graph(vs, workers=w, chunk=37) for w in (1, 3)]
    assert np.array_equal(graphs[0].adjacency, graphs[1].adjacency)
    assert graphs[0].uncertain_pairs == graphs[1].uncertain_pairs


def test_c_m2_pair_is_four_apart_in_templates():
    u, v = golden_pairs()["c-m2"]
    vs = sample_vertices((1, 2), "structured-templates", 10_000).union(
        sample_vertices((1, 2), "user-supplied", 10, vertices=[u, v])
    )
    g = build_graph(vs)
    d = bfs_distance(g, u, v)
    assert d >= 4  # a sample can only overestimate
    rep = distance_report(g, u, v)
    assert rep.theorem_diameter == 4 and rep.witness_path.length == 4


def test_components_and_lower_bound_on_m2():
    g = build_graph(sample_vertices((2,), "structured-templates", 100))
    comps = components(g)
    assert sorted(i for c in comps for i in c) == list(range(len(g.vertex_set)))
    lb, pair = diameter_lower_bound(g)
    assert lb <= 2
    if len(comps) > 1:
        assert bfs_distance(g, comps[0][0], comps[1][0]) == math.inf


def test_bfs_rejects_bad_index():
    g = build_graph(sample_vertices((1, 1), "random-singular", 5))
    with pytest.raises(InputError):
        bfs_distance(g, 0, 7)
