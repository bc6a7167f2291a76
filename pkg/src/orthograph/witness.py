"""Certified short paths in the orthograph of a finite-dimensional C*-algebra.

Each constructor builds the intermediate vertices of one explicit path
pattern and then certifies every edge with :func:`mutual_strong_orth`; a path
is only returned if all edges are firmly adjacent in both directions.

Patterns (``k`` is the common non-invertible coordinate, ``'`` an
annihilating partner, ``E_k`` the identity at ``k`` padded with zeros):

=====================  =========================================================
distinct-coordinates   ``u - (0,..,u_i',..,0) - (0,..,v_j',..,0) - v``
via-unit               ``u - E_k - v``
combination            ``u - E_k - (|v_k'| 1,..,v_k') - v``
two-matrix-summands    ``(a,b) - (a', diag(|a'|,0,..)) - (c', diag(..,0,|c'|)) - (c,d)``
c-plus-m3              ``(a,b) - (0,e) - (|f|,f) - (c,d)``
c-plus-mn              ``(a,b) - (0,e) - (0,f) - (c,d)`` for ``n >= 4``
three-summands         ``u - (|a'| 1,..,a',..,0) - (0,..,b',..,|b'| 1) - v``
=====================  =========================================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .decide import MutualDecision, is_isolated_vertex, mutual_strong_orth, revalidate_certificate
from .errors import ConstructionError, DegenerateInputError, InputError, NoPathError, NoWitnessError
from .linalg import (
    DEFAULT_TOL,
    DirectSumElement,
    ToleranceConfig,
    Tri,
    as_matrix,
    cokernel_basis,
    invertibility,
    normalize_projective,
    spectrum,
)

__all__ = [
    "CASE_BOUND",
    "Case",
    "PathWitness",
    "annihilator_witness",
    "certify_path",
    "path_c_plus_m3",
    "path_c_plus_mn",
    "path_combination",
    "path_distinct_coordinates",
    "path_three_summands",
    "path_two_matrix_summands",
    "path_via_unit",
    "route",
]


class Case(str, enum.Enum):
    IDENTICAL = "identical"
    ADJACENT = "adjacent"
    DISTINCT_COORDINATES = "distinct-coordinates"
    VIA_UNIT = "via-unit"
    COMBINATION = "combination"
    TWO_MATRIX_SUMMANDS = "two-matrix-summands"
    C_PLUS_M3 = "c-plus-m3"
    C_PLUS_MN = "c-plus-mn"
    THREE_SUMMANDS = "three-summands"
    COMMON_NEIGHBOR = "common-neighbor"
    ANNIHILATOR_BRIDGE = "annihilator-bridge"
    FOUR_PATH = "four-path"
    MATRIX_ALGEBRA = "matrix-algebra"

    def __str__(self) -> str:
        return self.value


CASE_BOUND = {
    Case.IDENTICAL: 0,
    Case.ADJACENT: 1,
    Case.DISTINCT_COORDINATES: 3,
    Case.VIA_UNIT: 2,
    Case.COMBINATION: 3,
    Case.TWO_MATRIX_SUMMANDS: 3,
    Case.C_PLUS_M3: 3,
    Case.C_PLUS_MN: 3,
    Case.THREE_SUMMANDS: 3,
    Case.COMMON_NEIGHBOR: 2,
    Case.ANNIHILATOR_BRIDGE: 3,
    Case.FOUR_PATH: 4,
    Case.MATRIX_ALGEBRA: 4,
}


@dataclass(frozen=True)
class PathWitness:
    """Normalized vertices, one :class:`MutualDecision` per edge, and the pattern used.

    ``hard_case`` marks pairs whose invertibility/norm pattern is not covered
    by any of the length-3 constructions (non-invertibles dominant at the
    same ``M_2`` coordinate next to a ``C`` summand).
    """

    vertices: tuple[DirectSumElement, ...]
    edge_certificates: tuple[MutualDecision, ...]
    theorem_case: Case
    hard_case: bool = False

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def bound(self) -> int:
        return CASE_BOUND[self.theorem_case]

    def validate(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        """Re-decide every edge from scratch and revalidate the stored certificates."""
        if self.length > self.bound or len(self.edge_certificates) != self.length:
            return False
        for (x, y), stored in zip(zip(self.vertices, self.vertices[1:]), self.edge_certificates):
            if not mutual_strong_orth(x, y, tol).adjacent:
                return False
            if stored.forward.certificate is None or stored.backward.certificate is None:
                return False
            if not revalidate_certificate(x, y, stored.forward.certificate, tol):
                return False
            if not revalidate_certificate(y, x, stored.backward.certificate, tol):
                return False
        return True


def certify_path(vertices: Sequence[DirectSumElement], case: Case, tol: ToleranceConfig = DEFAULT_TOL, *, hard_case: bool = False) -> PathWitness:
    """Normalize ``vertices`` and certify each consecutive pair, or raise :class:`ConstructionError`."""
    if any(v.is_zero() for v in vertices):
        raise ConstructionError(f"{case}: a constructed vertex is zero")
    verts = tuple(normalize_projective(v) for v in vertices)
    edges = []
    for idx, (x, y) in enumerate(zip(verts, verts[1:])):
        decision = mutual_strong_orth(x, y, tol)
        if not decision.adjacent:
            raise ConstructionError(
                f"{case}: edge {idx} did not certify "
                f"(forward {decision.forward.verdict}, backward {decision.backward.verdict})"
            )
        edges.append(decision)
    return PathWitness(verts, tuple(edges), case, hard_case)


# ---------------------------------------------------------------------------
# building blocks


def annihilator_witness(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Rank-one ``v v*`` with ``v`` a unit vector in ``ker a*``.

    ``v`` is the left singular vector of the smallest singular value, so
    ``a* (v v*) = 0`` and the two are mutually strongly orthogonal.
    """
    a = as_matrix(a)
    spec = spectrum(a)
    if spec.s[0] == 0.0:
        raise DegenerateInputError("annihilator of the zero matrix is not unique")
    verdict = invertibility(a, tol, spec=spec).verdict
    if verdict is not Tri.NO:
        raise NoWitnessError(f"matrix is not certifiably singular (invertibility: {verdict})")
    v = spec.u[:, -1]
    return np.outer(v, v.conj())


def _partner(m: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    """Annihilating partner; any rank-one works against a zero coordinate."""
    if not np.any(m):
        p = np.zeros(m.shape, dtype=complex)
        p[0, 0] = 1.0
        return p
    return annihilator_witness(m, tol)


def _padded(signature: Sequence[int], blocks: dict[int, np.ndarray]) -> DirectSumElement:
    return DirectSumElement(tuple(blocks.get(i, np.zeros((n, n))) for i, n in enumerate(signature)))


def _unit_at(signature: Sequence[int], k: int) -> DirectSumElement:
    return _padded(signature, {k: np.eye(signature[k])})


def _same_signature(u: DirectSumElement, v: DirectSumElement) -> tuple[int, ...]:
    if u.signature != v.signature:
        raise InputError(f"signature mismatch: {u.signature} vs {v.signature}")
    if u.is_zero() or v.is_zero():
        raise DegenerateInputError("path endpoints must be nonzero")
    return u.signature


def _inv(x: DirectSumElement, i: int, tol: ToleranceConfig) -> Tri:
    return invertibility(None, tol, spec=x.spectra[i]).verdict


def _only_noninvertible(x: DirectSumElement, k: int, tol: ToleranceConfig) -> bool:
    return _inv(x, k, tol) is Tri.NO and all(_inv(x, j, tol) is Tri.YES for j in range(len(x)) if j != k)


def _dominant(x: DirectSumElement, k: int, tol: ToleranceConfig) -> bool:
    """``|x_k|`` strictly exceeds every other coordinate norm, beyond tie tolerance."""
    norms = x.coord_norms
    return all(norms[j] < norms[k] * (1.0 - tol.eps_tie) for j in range(len(x)) if j != k)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConstructionError(message)


def _unit_vector_orthogonal_to(vectors: Sequence[np.ndarray], n: int, tol: ToleranceConfig) -> np.ndarray | None:
    """A unit vector orthogonal to every vector given, or ``None`` if they span ``C^n``."""
    mat = np.column_stack(vectors) if vectors else np.zeros((n, 0))
    u, s, _ = np.linalg.svd(mat, full_matrices=True)
    top = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > tol.eps_rank * top)) if top > 0 else 0
    if rank >= n:
        return None
    return u[:, -1]


def _projection_onto(vectors: Sequence[np.ndarray], tol: ToleranceConfig) -> np.ndarray:
    u, s, _ = np.linalg.svd(np.column_stack(vectors), full_matrices=False)
    q = u[:, s > tol.eps_rank * s[0]]
    return q @ q.conj().T


# ---------------------------------------------------------------------------
# constructors


def path_distinct_coordinates(u: DirectSumElement, v: DirectSumElement, i: int, j: int, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    sig = _same_signature(u, v)
    _require(i != j, "coordinates must differ")
    _require(0 <= i < len(sig) and 0 <= j < len(sig), "coordinate index out of range")
    _require(_inv(u, i, tol) is Tri.NO, f"u_{i} is not certifiably non-invertible")
    _require(_inv(v, j, tol) is Tri.NO, f"v_{j} is not certifiably non-invertible")
    first = _padded(sig, {i: _partner(u.coords[i], tol)})
    second = _padded(sig, {j: _partner(v.coords[j], tol)})
    return certify_path([u, first, second, v], Case.DISTINCT_COORDINATES, tol)


def path_via_unit(u: DirectSumElement, v: DirectSumElement, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    sig = _same_signature(u, v)
    _require(len(sig) >= 2, "needs at least two summands")
    for name, x in (("u", u), ("v", v)):
        _require(_only_noninvertible(x, k, tol), f"{name}_{k} must be the only non-invertible coordinate")
        _require(not _dominant(x, k, tol), f"{name}_{k} strictly dominates; the unit midpoint does not apply")
    return certify_path([u, _unit_at(sig, k), v], Case.VIA_UNIT, tol)


def path_combination(u: DirectSumElement, v: DirectSumElement, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    sig = _same_signature(u, v)
    _require(len(sig) >= 2, "needs at least two summands")
    _require(_only_noninvertible(u, k, tol), f"u_{k} must be the only non-invertible coordinate")
    _require(_only_noninvertible(v, k, tol), f"v_{k} must be the only non-invertible coordinate")
    _require(not _dominant(u, k, tol), f"u_{k} must not strictly dominate")
    _require(_dominant(v, k, tol), f"v_{k} must strictly dominate")
    partner = annihilator_witness(v.coords[k], tol)
    scale = np.linalg.norm(partner, 2)
    padded = _padded(sig, {j: (partner if j == k else scale * np.eye(n)) for j, n in enumerate(sig)})
    return certify_path([u, _unit_at(sig, k), padded, v], Case.COMBINATION, tol)


def path_two_matrix_summands(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    sig = _same_signature(u, v)
    _require(len(sig) == 2 and min(sig) >= 2, "needs M_n + M_m with n, m >= 2")
    p = 0 if _inv(u, 0, tol) is Tri.NO else 1
    q = 1 - p
    for name, x in (("u", u), ("v", v)):
        _require(_only_noninvertible(x, p, tol), f"{name} must have its only non-invertible coordinate at {p}")
        _require(_dominant(x, p, tol), f"{name}_{p} must strictly dominate")
    a1 = annihilator_witness(u.coords[p], tol)
    c1 = annihilator_witness(v.coords[p], tol)
    m = sig[q]
    d1 = np.zeros((m, m), dtype=complex)
    d1[0, 0] = np.linalg.norm(a1, 2)
    d2 = np.zeros((m, m), dtype=complex)
    d2[-1, -1] = np.linalg.norm(c1, 2)
    first = _padded(sig, {p: a1, q: d1})
    second = _padded(sig, {p: c1, q: d2})
    return certify_path([u, first, second, v], Case.TWO_MATRIX_SUMMANDS, tol)


def _scalar_matrix_split(u: DirectSumElement, v: DirectSumElement, n: int) -> tuple[int, int]:
    sig = _same_signature(u, v)
    _require(len(sig) == 2 and sorted(sig) == [1, n], f"needs C + M_{n}")
    s = sig.index(1)
    return s, 1 - s


def _check_scalar_below_matrix(x: DirectSumElement, s: int, m: int, name: str, tol: ToleranceConfig) -> None:
    _require(_inv(x, s, tol) is Tri.YES, f"{name}: scalar coordinate must be nonzero")
    _require(_inv(x, m, tol) is Tri.NO, f"{name}: matrix coordinate must be non-invertible")
    _require(_dominant(x, m, tol), f"{name}: scalar coordinate must be strictly smaller in norm")


def _c_plus_m3_blocks(b: np.ndarray, d: np.ndarray, tol: ToleranceConfig) -> tuple[np.ndarray, np.ndarray]:
    sb, sd = spectrum(b), spectrum(d)
    bx = b @ sb.vh[0].conj()
    v_b = sb.u[:, -1]
    v_d = sd.u[:, -1]
    w = _unit_vector_orthogonal_to([bx, v_d, v_b], 3, tol)
    if w is None:
        w = _unit_vector_orthogonal_to([bx, v_d], 3, tol)
    e = _projection_onto([v_b, w], tol)
    f = np.outer(v_d, v_d.conj())
    return e, f


def path_c_plus_m3(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    """Path through ``(0, e)`` and ``(|f|, f)`` in ``C + M_3``.

    ``e`` projects onto ``span{v_b, w}`` and ``f = v_d v_d*`` where
    ``v_b in ker b*``, ``v_d in ker d*`` and ``w`` is orthogonal to ``b x``
    (``x`` a norm-attaining vector of ``b``) and to ``v_d``.
    """
    s, m = _scalar_matrix_split(u, v, 3)
    _check_scalar_below_matrix(u, s, m, "u", tol)
    _check_scalar_below_matrix(v, s, m, "v", tol)
    e, f = _c_plus_m3_blocks(u.coords[m], v.coords[m], tol)
    sig = u.signature
    first = _padded(sig, {m: e})
    second = _padded(sig, {s: np.linalg.norm(f, 2) * np.eye(1), m: f})
    return certify_path([u, first, second, v], Case.C_PLUS_M3, tol)


def _mn_bridge(b: np.ndarray, d: np.ndarray, tol: ToleranceConfig) -> tuple[np.ndarray, np.ndarray]:
    """Projections ``e``, ``f`` with ``b -- e -- f -- d`` a path in ``M_n``, ``n >= 4``."""
    n = b.shape[0]
    sb, sd = spectrum(b), spectrum(d)
    bx = b @ sb.vh[0].conj()
    dy = d @ sd.vh[0].conj()
    v_b = sb.u[:, -1]
    v_d = sd.u[:, -1]
    w2 = _unit_vector_orthogonal_to([dy, v_b], n, tol)
    w1 = _unit_vector_orthogonal_to([bx, v_d, w2], n, tol)
    if w1 is None or w2 is None:
        raise ConstructionError("no room for the bridge vectors")
    return _projection_onto([v_b, w1], tol), _projection_onto([v_d, w2], tol)


def path_c_plus_mn(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    """Path through ``(0, e)`` and ``(0, f)`` in ``C + M_n`` for ``n >= 4``."""
    sig = _same_signature(u, v)
    _require(len(sig) == 2 and 1 in sig and max(sig) >= 4, "needs C + M_n with n >= 4")
    s = sig.index(1)
    m = 1 - s
    _check_scalar_below_matrix(u, s, m, "u", tol)
    _check_scalar_below_matrix(v, s, m, "v", tol)
    e, f = _mn_bridge(u.coords[m], v.coords[m], tol)
    return certify_path([u, _padded(sig, {m: e}), _padded(sig, {m: f}), v], Case.C_PLUS_MN, tol)


def _three_summand_ends(k: int, i: int) -> tuple[int, int]:
    others = [j for j in range(k) if j != i]
    return others[0], others[-1]


def path_three_summands(u: DirectSumElement, v: DirectSumElement, i: int, tol: ToleranceConfig = DEFAULT_TOL) -> PathWitness:
    sig = _same_signature(u, v)
    _require(len(sig) >= 3, "needs at least three summands")
    _require(sig[i] >= 2, f"summand {i} must be a matrix algebra of size >= 2")
    for name, x in (("u", u), ("v", v)):
        _require(_only_noninvertible(x, i, tol), f"{name}_{i} must be the only non-invertible coordinate")
        _require(_dominant(x, i, tol), f"{name}_{i} must strictly dominate")
    a1 = annihilator_witness(u.coords[i], tol)
    b1 = annihilator_witness(v.coords[i], tol)
    p, q = _three_summand_ends(len(sig), i)
    first = _padded(sig, {p: np.linalg.norm(a1, 2) * np.eye(sig[p]), i: a1})
    second = _padded(sig, {i: b1, q: np.linalg.norm(b1, 2) * np.eye(sig[q])})
    return certify_path([u, first, second, v], Case.THREE_SUMMANDS, tol)


# ---------------------------------------------------------------------------
# dispatcher


def _noninvertible(x: DirectSumElement, tol: ToleranceConfig) -> list[int]:
    return [i for i in range(len(x)) if _inv(x, i, tol) is not Tri.YES]


def _common_kernel_vector(a: np.ndarray, b: np.ndarray, tol: ToleranceConfig) -> np.ndarray | None:
    """Unit vector in ``ker a* cap ker b*``, or ``None``."""
    ka, kb = cokernel_basis(a, tol), cokernel_basis(b, tol)
    if ka.shape[1] == 0 or kb.shape[1] == 0:
        return None
    # z = Ka x = Kb y  <=>  [Ka, -Kb] (x, y) = 0
    stacked = np.column_stack([ka, -kb])
    _, s, vh = np.linalg.svd(stacked, full_matrices=True)
    if stacked.shape[1] <= stacked.shape[0] and s[-1] > tol.eps_orth:
        return None
    z = ka @ vh[-1].conj()[: ka.shape[1]]
    norm = np.linalg.norm(z)
    return z / norm if norm > tol.eps_orth else None


def _try(build: Callable[[], PathWitness]) -> PathWitness | None:
    try:
        return build()
    except (ConstructionError, NoWitnessError, DegenerateInputError):
        return None


def _midpoint_templates(u: DirectSumElement, v: DirectSumElement, nu: list[int], nv: list[int], tol: ToleranceConfig):
    sig = u.signature
    for k in range(len(sig)):
        yield _unit_at(sig, k)
    for x, idx in ((u, nu), (v, nv)):
        for k in idx:
            part = _partner(x.coords[k], tol)
            yield _padded(sig, {k: part})
            scale = np.linalg.norm(part, 2)
            yield _padded(sig, {j: (part if j == k else scale * np.eye(n)) for j, n in enumerate(sig)})
    for k in set(nu) & set(nv):
        z = _common_kernel_vector(u.coords[k], v.coords[k], tol)
        if z is not None:
            yield _padded(sig, {k: np.outer(z, z.conj())})


def _common_neighbor(u, v, candidates, tol) -> PathWitness | None:
    for w in candidates:
        if w.is_zero() or w.signature != u.signature:
            continue
        if mutual_strong_orth(u, w, tol).adjacent and mutual_strong_orth(w, v, tol).adjacent:
            return _try(lambda w=w: certify_path([u, w, v], Case.COMMON_NEIGHBOR, tol))
    return None


def _fallback(u, v, nu, nv, tol, pool, hard_case) -> PathWitness:
    sig = u.signature
    found = _common_neighbor(u, v, _midpoint_templates(u, v, nu, nv, tol), tol)
    if found is None and pool is not None:
        found = _common_neighbor(u, v, pool, tol)
    if found is not None:
        return PathWitness(found.vertices, found.edge_certificates, found.theorem_case, hard_case)
    for i in nu:
        for j in nv:
            first = _padded(sig, {i: _partner(u.coords[i], tol)})
            second = _padded(sig, {j: _partner(v.coords[j], tol)})
            path = _try(lambda: certify_path([u, first, second, v], Case.ANNIHILATOR_BRIDGE, tol, hard_case=hard_case))
            if path is not None:
                return path
    for i in nu:
        for j in nv:
            for b in range(len(sig)):
                if b in (i, j):
                    continue
                first = _padded(sig, {i: _partner(u.coords[i], tol)})
                second = _padded(sig, {j: _partner(v.coords[j], tol)})
                path = _try(lambda: certify_path([u, first, _unit_at(sig, b), second, v], Case.FOUR_PATH, tol, hard_case=hard_case))
                if path is not None:
                    return path
    raise NoPathError(f"no certified path found between {u!r} and {v!r}")


def _route_matrix_algebra(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig, pool) -> PathWitness:
    """Paths inside a single ``M_n`` through rank-one or rank-two projections."""
    a, b = u.coords[0], v.coords[0]
    n = a.shape[0]
    ka, kb = cokernel_basis(a, tol), cokernel_basis(b, tol)

    def rank_one(z):
        return DirectSumElement((np.outer(z, z.conj()),))

    found = _common_neighbor(u, v, _midpoint_templates(u, v, [0], [0], tol), tol)
    if found is None and pool is not None:
        found = _common_neighbor(u, v, pool, tol)
    if found is not None:
        return PathWitness(found.vertices, found.edge_certificates, Case.MATRIX_ALGEBRA)
    if n >= 4:
        path = _try(lambda: certify_path([u, *(DirectSumElement((m,)) for m in _mn_bridge(a, b, tol)), v], Case.MATRIX_ALGEBRA, tol))
        if path is not None:
            return path
    # g in ker a*, h in ker b*, g orthogonal to h
    h = kb[:, 0]
    g_coeffs = _unit_vector_orthogonal_to([ka.conj().T @ h], ka.shape[1], tol) if ka.shape[1] > 1 else None
    if g_coeffs is not None:
        g = ka @ g_coeffs
        path = _try(lambda: certify_path([u, rank_one(g), rank_one(h), v], Case.MATRIX_ALGEBRA, tol))
        if path is not None:
            return path
    if n >= 3:
        g = ka[:, 0]
        h = kb[:, 0]
        r = _unit_vector_orthogonal_to([g, h], n, tol)
        if r is not None:
            path = _try(lambda: certify_path([u, rank_one(g), rank_one(r), rank_one(h), v], Case.MATRIX_ALGEBRA, tol))
            if path is not None:
                return path
    raise NoPathError("vertices lie in different connected components" if n == 2 else "no certified path found")


def route(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL, *, neighbor_pool: Sequence[DirectSumElement] | None = None) -> PathWitness:
    """Certified path between two non-isolated vertices, length at most 4.

    The pair is classified by where its non-invertible coordinates sit and
    whether they carry the norm, then handed to the matching constructor.
    Pairs no constructor covers fall back to single-midpoint templates, an
    optional ``neighbor_pool``, and finally the four-edge path through
    zero-padded annihilators and a unit bridge.
    """
    sig = _same_signature(u, v)
    for name, x in (("u", u), ("v", v)):
        if is_isolated_vertex(x, tol) is Tri.YES:
            raise InputError(f"{name} is an isolated vertex (every coordinate is invertible)")
    if normalize_projective(u).allclose(normalize_projective(v), atol=tol.eps_orth):
        return PathWitness((normalize_projective(u),), (), Case.IDENTICAL)
    direct = mutual_strong_orth(u, v, tol)
    if direct.adjacent:
        return certify_path([u, v], Case.ADJACENT, tol)
    if len(sig) == 1:
        return _route_matrix_algebra(u, v, tol, neighbor_pool)

    nu, nv = _noninvertible(u, tol), _noninvertible(v, tol)
    builders: list[Callable[[], PathWitness]] = []
    hard = False
    if nu == nv and len(nu) == 1:
        k = nu[0]
        u_dom, v_dom = _dominant(u, k, tol), _dominant(v, k, tol)
        if not u_dom and not v_dom:
            builders.append(lambda: path_via_unit(u, v, k, tol))
        elif v_dom and not u_dom:
            builders.append(lambda: path_combination(u, v, k, tol))
        elif u_dom and not v_dom:
            builders.append(lambda: _reversed(path_combination(v, u, k, tol)))
        elif len(sig) >= 3:
            builders.append(lambda: path_three_summands(u, v, k, tol))
        elif sig[1 - k] >= 2:
            builders.append(lambda: path_two_matrix_summands(u, v, tol))
        elif sig[k] == 3:
            builders.append(lambda: path_c_plus_m3(u, v, tol))
        elif sig[k] >= 4:
            builders.append(lambda: path_c_plus_mn(u, v, tol))
        else:
            hard = True
    else:
        pairs = [(i, j) for i in nu for j in nv if i != j]
        if pairs:
            i, j = pairs[0]
            builders.append(lambda: path_distinct_coordinates(u, v, i, j, tol))
    for build in builders:
        path = _try(build)
        if path is not None:
            return path
    return _fallback(u, v, nu, nv, tol, neighbor_pool, hard)


def _reversed(path: PathWitness) -> PathWitness:
    edges = tuple(MutualDecision(e.backward, e.forward) for e in reversed(path.edge_certificates))
    return PathWitness(tuple(reversed(path.vertices)), edges, path.theorem_case, path.hard_case)
