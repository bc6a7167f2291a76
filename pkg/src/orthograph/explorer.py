"""Finite samples of the orthograph: vertices, certified edges, BFS distances.

Distances measured inside a sample are upper bounds for that sample only;
reports call them "sample distance".
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .decide import MutualDecision, is_isolated_vertex, mutual_strong_orth
from .errors import InputError, OrthographError
from .linalg import DEFAULT_TOL, DirectSumElement, ToleranceConfig, Tri, check_signature, normalize_projective
from .randmat import make_rng, random_complex, random_singular
from .witness import PathWitness, route

__all__ = [
    "DistanceReport",
    "OrthographSample",
    "VertexSet",
    "bfs_distance",
    "build_graph",
    "components",
    "diameter_lower_bound",
    "distance_report",
    "sample_vertices",
    "structured_templates",
    "theorem_diameter",
]

STRATEGIES = ("random-singular", "structured-templates", "user-supplied")

_DEDUP_GRID = 1e-6


@dataclass(frozen=True)
class VertexSet:
    signature: tuple[int, ...]
    vertices: tuple[DirectSumElement, ...]
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, x: DirectSumElement) -> int:
        """Position of the ray through ``x``; raises :class:`InputError` if absent."""
        if x.signature != self.signature:
            raise InputError(f"vertex signature {x.signature} does not match sample {self.signature}")
        try:
            return self._index[x.key(_DEDUP_GRID)]
        except KeyError:
            raise InputError("vertex is not in the sample") from None

    @cached_property
    def _index(self) -> dict:
        return {v.key(_DEDUP_GRID): i for i, v in enumerate(self.vertices)}

    def union(self, other: "VertexSet") -> "VertexSet":
        if other.signature != self.signature:
            raise InputError("cannot merge samples of different signatures")
        merged = _dedup(self.vertices + other.vertices)
        return VertexSet(self.signature, merged, {"merged": [self.provenance, other.provenance]})


def _dedup(vertices: Iterable[DirectSumElement]) -> tuple[DirectSumElement, ...]:
    seen: dict = {}
    for v in vertices:
        nv = normalize_projective(v)
        seen.setdefault(nv.key(_DEDUP_GRID), nv)
    return tuple(seen.values())


def _block_family(n: int) -> list[np.ndarray]:
    """Coordinate shapes used by the path constructions and extremal examples."""
    if n == 1:
        return [np.zeros((1, 1)), np.ones((1, 1)), 2 * np.ones((1, 1))]
    e = np.eye(n)
    line = np.zeros(n)
    line[:2] = 1 / np.sqrt(2)
    top = np.zeros((n, n))
    top[0, 0] = 2.0
    family = [
        np.zeros((n, n)),
        e,
        top,  # diag(2, 0, ..)
        np.outer(e[-1], e[-1]),  # annihilator of diag(2, 0, ..)
        np.ones((n, n)) * (2.0 / n),  # all-ones, norm 2
        np.outer(line, line),
        np.diag([2.0] + [1.0] * (n - 2) + [0.0]),
    ]
    if n >= 3:
        family.append(np.diag([0.0] + [1.0] * (n - 2) + [2.0]))
    return family


def structured_templates(signature: Sequence[int]) -> tuple[DirectSumElement, ...]:
    """All non-isolated products of the per-coordinate template blocks."""
    sig = check_signature(signature)
    out = []
    for blocks in product(*(_block_family(n) for n in sig)):
        x = DirectSumElement(tuple(blocks))
        if x.is_zero() or is_isolated_vertex(x) is not Tri.NO:
            continue
        out.append(x)
    return _dedup(out)


def _random_vertex(sig: tuple[int, ...], rng) -> DirectSumElement:
    k = int(rng.integers(0, len(sig)))
    coords = []
    for i, n in enumerate(sig):
        m = random_singular(n, rng) if i == k else random_complex(n, rng)
        coords.append(m * rng.uniform(0.25, 2.0))
    return DirectSumElement(tuple(coords))


def sample_vertices(
    signature: Sequence[int],
    strategy: str = "random-singular",
    count: int = 100,
    seed=0,
    *,
    vertices: Sequence[DirectSumElement] | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> VertexSet:
    """Deterministic vertex sample; isolated and projectively repeated vertices are dropped.

    ``random-singular`` draws Gaussian coordinates and makes one random
    coordinate rank-deficient.  ``structured-templates`` takes products of
    template blocks (zero, identity, ``diag(2,0,..)``, its annihilator, the
    all-ones matrix, ...), subsampled to ``count`` by a seeded shuffle.
    ``user-supplied`` uses ``vertices``.
    """
    sig = check_signature(signature)
    if count < 1:
        raise InputError("count must be at least 1")
    provenance = {"strategy": strategy, "seed": seed, "count": count}
    if strategy == "random-singular":
        rng = make_rng(seed)
        seen: dict = {}
        attempts = 0
        while len(seen) < count and attempts < 20 * count + 20:
            attempts += 1
            x = _random_vertex(sig, rng)
            if x.is_zero() or is_isolated_vertex(x, tol) is not Tri.NO:
                continue
            nx_ = normalize_projective(x)
            seen.setdefault(nx_.key(_DEDUP_GRID), nx_)
        verts = tuple(seen.values())
    elif strategy == "structured-templates":
        verts = structured_templates(sig)
        if len(verts) > count:
            order = make_rng(seed).permutation(len(verts))[:count]
            verts = tuple(verts[i] for i in sorted(order))
    elif strategy == "user-supplied":
        if vertices is None:
            raise InputError("user-supplied strategy needs vertices")
        for x in vertices:
            if x.signature != sig:
                raise InputError(f"vertex signature {x.signature} does not match {sig}")
        kept = [x for x in vertices if not x.is_zero() and is_isolated_vertex(x, tol) is Tri.NO]
        provenance["dropped"] = len(vertices) - len(kept)
        verts = _dedup(kept)[:count]
    else:
        raise InputError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    return VertexSet(sig, verts, provenance)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class OrthographSample:
    vertex_set: VertexSet
    adjacency: np.ndarray
    certificates: dict[tuple[int, int], MutualDecision]
    uncertain_pairs: tuple[tuple[int, int], ...]
    tolerances: ToleranceConfig = DEFAULT_TOL

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertex_set)))
        g.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(self.adjacency, 1))))
        return g

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())


def _decide_chunk(args) -> list[tuple[int, int, MutualDecision]]:
    verts, pairs, tol = args
    return [(i, j, mutual_strong_orth(verts[i], verts[j], tol)) for i, j in pairs]


def build_graph(vs: VertexSet, tol: ToleranceConfig = DEFAULT_TOL, *, workers: int = 1, chunk: int = 512) -> OrthographSample:
    """Decide every unordered pair; uncertain pairs are recorded and left out of the graph.

    Pairs are split into fixed chunks and mapped in order, so the result does
    not depend on ``workers``.
    """
    verts = vs.vertices
    for v in verts:
        _ = v.spectra  # fill caches before threads share the elements
    n = len(verts)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chunks = [(verts, pairs[s : s + chunk], tol) for s in range(0, len(pairs), chunk)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_decide_chunk, chunks))
    else:
        results = [_decide_chunk(c) for c in chunks]
    adj = np.zeros((n, n), dtype=bool)
    certs: dict = {}
    uncertain = []
    for batch in results:
        for i, j, d in batch:
            if d.adjacent:
                adj[i, j] = adj[j, i] = True
                certs[(i, j)] = d
            elif d.verdict is Tri.UNCERTAIN:
                uncertain.append((i, j))
    return OrthographSample(vs, adj, certs, tuple(uncertain), tol)


def _as_index(g: OrthographSample, x) -> int:
    if isinstance(x, DirectSumElement):
        return g.vertex_set.index(x)
    i = int(x)
    if not 0 <= i < len(g.vertex_set):
        raise InputError(f"vertex index {i} out of range")
    return i


def bfs_distance(g: OrthographSample, u, v) -> float:
    """Sample distance between two vertices (elements or indices); ``math.inf`` if disconnected."""
    i, j = _as_index(g, u), _as_index(g, v)
    try:
        return nx.shortest_path_length(g.graph, i, j)
    except nx.NetworkXNoPath:
        return math.inf


def components(g: OrthographSample) -> list[list[int]]:
    """Connected components as sorted index lists, ordered by smallest index."""
    return sorted((sorted(c) for c in nx.connected_components(g.graph)), key=lambda c: c[0])


def diameter_lower_bound(g: OrthographSample) -> tuple[int, tuple[int, int] | None]:
    """Largest finite sample distance and a pair achieving it (first in index order)."""
    best, pair = 0, None
    for i, lengths in sorted(nx.all_pairs_shortest_path_length(g.graph)):
        for j in sorted(lengths):
            if j > i and lengths[j] > best:
                best, pair = lengths[j], (i, j)
    return best, pair


# ---------------------------------------------------------------------------
# theorem lookup


def theorem_diameter(signature: Sequence[int]) -> int | str:
    """Diameter of the orthograph of ``M_{n1} + ... + M_{nk}`` over non-isolated vertices."""
    sig = check_signature(signature)
    if len(sig) == 1:
        n = sig[0]
        if n == 1:
            return "empty"
        if n == 2:
            return "disconnected: per-component diameter <= 2"
        return 4 if n == 3 else 3
    if sorted(sig) == [1, 1]:
        return 1
    if sorted(sig) == [1, 2]:
        return 4
    return 3


def theorem_source(signature: Sequence[int]) -> str:
    """Short tag naming the result behind :func:`theorem_diameter`."""
    sig = check_signature(signature)
    if len(sig) == 1:
        return {1: "c-no-edges", 2: "m2-components", 3: "m3-diameter4"}.get(sig[0], "mn-diameter3")
    if sorted(sig) == [1, 1]:
        return "c2-diameter1"
    if sorted(sig) == [1, 2]:
        return "c-plus-m2-distance4"
    return "final-diameter3"


@dataclass(frozen=True)
class DistanceReport:
    pair: tuple[DirectSumElement, DirectSumElement]
    bfs_distance: float
    theorem_diameter: int | str
    witness_path: PathWitness | None = None


def distance_report(g: OrthographSample, u, v, *, with_path: bool = True) -> DistanceReport:
    i, j = _as_index(g, u), _as_index(g, v)
    verts = g.vertex_set.vertices
    path = None
    if with_path:
        try:
            path = route(verts[i], verts[j], g.tolerances)
        except OrthographError:
            path = None
    return DistanceReport((verts[i], verts[j]), bfs_distance(g, i, j), theorem_diameter(g.vertex_set.signature), path)
