"""Lower bounds on orthograph distance by replaying case analyses exactly.

Each checker returns a :class:`LowerBoundReport`: a list of named steps, the
constraint each step checks, and an overall status.  ``PROVEN`` means every
step passed, so the pair is at distance at least ``claim``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .decide import m2_adjacent, m2_image_line, mutual_strong_orth, strong_orth_matrix, strong_orth_scalars
from .errors import InputError
from .linalg import (
    DEFAULT_TOL,
    DirectSumElement,
    ToleranceConfig,
    Tri,
    cokernel_basis,
    invertibility,
    leading_left_singular_basis,
    normalize_projective,
)

__all__ = [
    "LowerBoundReport",
    "ProofStep",
    "Status",
    "c_m2_distance4",
    "no_common_neighbor_dominant",
    "no_common_neighbor_scalars",
]


class Status(str, enum.Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    NOT_APPLICABLE = "not-applicable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ProofStep:
    name: str
    passed: bool
    constraint: str
    detail: str = ""


@dataclass(frozen=True)
class LowerBoundReport:
    """Outcome of one replay.  ``claim`` is the distance lower bound asserted when proven."""

    pair: tuple[DirectSumElement, DirectSumElement]
    claim: int
    steps: tuple[ProofStep, ...]
    status: Status
    scope: str = ""
    neighbor: DirectSumElement | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN


def _finish(pair, claim, steps, *, scope="", neighbor=None, refuted=False, notes=()) -> LowerBoundReport:
    steps = tuple(steps)
    if refuted:
        status = Status.REFUTED
    elif steps and all(s.passed for s in steps):
        status = Status.PROVEN
    else:
        status = Status.NOT_APPLICABLE
    return LowerBoundReport(pair, claim, steps, status, scope, neighbor, tuple(notes))


def _not_applicable(pair, claim, reason: str) -> LowerBoundReport:
    return LowerBoundReport(pair, claim, (ProofStep("hypotheses", False, reason),), Status.NOT_APPLICABLE)


# ---------------------------------------------------------------------------
# C^k


def _sq_mod(z: complex) -> Fraction:
    return Fraction(z.real) ** 2 + Fraction(z.imag) ** 2


def _max_and_zero_sets(x: DirectSumElement) -> tuple[set[int], set[int]]:
    mods = [_sq_mod(complex(c[0, 0])) for c in x.coords]
    top = max(mods)
    return {i for i, m in enumerate(mods) if m == top}, {i for i, m in enumerate(mods) if m == 0}


def _fmt_set(s: set[int]) -> str:
    return "{" + ", ".join(str(i) for i in sorted(s)) + "}"


def no_common_neighbor_scalars(u: DirectSumElement, v: DirectSumElement) -> LowerBoundReport:
    """Exact proof (or refutation) that ``u`` and ``v`` in ``C^k`` share no neighbor.

    ``w`` is a neighbor of ``x`` iff ``w`` vanishes somewhere on the max set
    ``M(x)`` and attains its own max somewhere on the zero set ``Z(x)``.  A
    common neighbor may as well be the indicator of ``{p, q}`` with
    ``p in Z(u)``, ``q in Z(v)``; it exists iff for some such choice neither
    ``M(u)`` nor ``M(v)`` is contained in ``{p, q}``.  Zero tests are exact.
    """
    pair = (u, v)
    if u.signature != v.signature or any(n != 1 for n in u.signature):
        return _not_applicable(pair, 3, "signature must be (1, ..., 1) on both sides")
    if u.is_zero() or v.is_zero():
        return _not_applicable(pair, 3, "vertices must be nonzero")
    mu, zu = _max_and_zero_sets(u)
    mv, zv = _max_and_zero_sets(v)
    if not zu or not zv:
        return _not_applicable(pair, 3, "a vertex without zero coordinates is isolated")

    steps = []
    fwd, bwd = strong_orth_scalars(u, v), strong_orth_scalars(v, u)
    if fwd and bwd:
        steps.append(ProofStep("non-adjacency", False, "M(u) meets Z(v) and M(v) meets Z(u)", "the pair is adjacent"))
        return _finish(pair, 3, steps, refuted=True, notes=("distance 1",))
    steps.append(ProofStep("non-adjacency", True, f"u orth v: {fwd}, v orth u: {bwd}"))
    steps.append(ProofStep(
        "neighbor-constraints-u", True,
        f"w vanishes somewhere on M(u)={_fmt_set(mu)} and attains max|w| somewhere on Z(u)={_fmt_set(zu)}",
    ))
    steps.append(ProofStep(
        "neighbor-constraints-v", True,
        f"w vanishes somewhere on M(v)={_fmt_set(mv)} and attains max|w| somewhere on Z(v)={_fmt_set(zv)}",
    ))
    for p, q in product(sorted(zu), sorted(zv)):
        support = {p, q}
        if mu <= support or mv <= support:
            continue
        w = DirectSumElement(tuple(np.array([[1.0 if i in support else 0.0]]) for i in range(len(u))))
        confirmed = all(strong_orth_scalars(x, y) for x, y in ((u, w), (w, u), (v, w), (w, v)))
        steps.append(ProofStep(
            "no-common-neighbor", False,
            f"support {_fmt_set(support)} leaves a max of u and a max of v uncovered",
            f"explicit common neighbor (verified: {confirmed})",
        ))
        return _finish(pair, 3, steps, neighbor=w, refuted=True, notes=("distance 2",))
    steps.append(ProofStep(
        "no-common-neighbor", True,
        "every (p, q) in Z(u) x Z(v) has M(u) or M(v) inside {{p, q}}",
        "each such support forces w to be nonzero on a required zero",
    ))
    return _finish(pair, 3, steps)


# ---------------------------------------------------------------------------
# dominant non-invertible coordinate


def _dominant_index(x: DirectSumElement, tol: ToleranceConfig) -> int | None:
    """Index ``k`` if ``x_k`` is the only non-invertible coordinate and strictly carries the norm."""
    verdicts = [invertibility(None, tol, spec=sp).verdict for sp in x.spectra]
    bad = [i for i, t in enumerate(verdicts) if t is not Tri.YES]
    if len(bad) != 1 or verdicts[bad[0]] is not Tri.NO:
        return None
    k = bad[0]
    norms = x.coord_norms
    if any(norms[j] >= norms[k] * (1.0 - tol.eps_tie) for j in range(len(x)) if j != k):
        return None
    return k


def _largest_cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the smallest principal angle between two column spans (0 if either is empty)."""
    if a.shape[1] == 0 or b.shape[1] == 0:
        return 0.0
    return float(np.linalg.svd(a.conj().T @ b, compute_uv=False)[0])


def no_common_neighbor_dominant(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> LowerBoundReport:
    """No common neighbor for pairs whose norm sits on one shared non-invertible coordinate.

    Hypotheses: ``u_k`` and ``v_k`` are the only non-invertible coordinates,
    strictly dominate the others, and have simple top singular values with
    leading image lines ``l_u``, ``l_v``.  A neighbor ``w`` of both must have
    ``Im w_k`` inside ``W = {l_u, l_v}^perp``, and ``w_k`` must carry the norm
    of ``w`` with leading image vectors in ``ker u_k*`` and in ``ker v_k*``.
    Such ``w`` exists iff both kernels meet ``W``.
    """
    pair = (u, v)
    if u.signature != v.signature:
        return _not_applicable(pair, 3, "signatures differ")
    k = _dominant_index(u, tol)
    if k is None or _dominant_index(v, tol) != k:
        return _not_applicable(pair, 3, "need the same strictly dominant, only non-invertible coordinate")
    a, b = u.coords[k], v.coords[k]
    lead_a = leading_left_singular_basis(a, tol, spec=u.spectra[k])
    lead_b = leading_left_singular_basis(b, tol, spec=v.spectra[k])
    if lead_a.shape[1] != 1 or lead_b.shape[1] != 1:
        return _not_applicable(pair, 3, "top singular values must be simple")

    steps = []
    direct = mutual_strong_orth(u, v, tol)
    if direct.verdict is not Tri.NO:
        steps.append(ProofStep("non-adjacency", False, f"coordinate {k}: a and b mutually orthogonal", f"verdict {direct.verdict}"))
        return _finish(pair, 3, steps, refuted=direct.adjacent)
    steps.append(ProofStep("non-adjacency", True, f"only coordinate {k} carries the norm, and a, b there are not mutually orthogonal"))
    steps.append(ProofStep(
        "neighbor-constraints", True,
        f"a common neighbor w has Im w_{k} orthogonal to both leading image lines, "
        f"and w_{k} carries |w| because every other coordinate of u and v is invertible",
    ))
    lines = np.column_stack([lead_a[:, 0], lead_b[:, 0]])
    q, s, _ = np.linalg.svd(lines, full_matrices=True)
    w_basis = q[:, int(np.count_nonzero(s > tol.eps_rank * s[0])):]
    cos_a = _largest_cosine(cokernel_basis(a, tol, spec=u.spectra[k]), w_basis)
    cos_b = _largest_cosine(cokernel_basis(b, tol, spec=v.spectra[k]), w_basis)
    blocked = min(cos_a, cos_b) < 1.0 - tol.eps_orth
    steps.append(ProofStep(
        "no-common-neighbor", blocked,
        f"dim W = {w_basis.shape[1]}; ker a* meets W: {cos_a >= 1.0 - tol.eps_orth}; ker b* meets W: {cos_b >= 1.0 - tol.eps_orth}",
        f"largest cosines {cos_a:.6g}, {cos_b:.6g}",
    ))
    return _finish(pair, 3, steps, refuted=not blocked, scope="derived-generalization")


# ---------------------------------------------------------------------------
# C + M_2, distance 4


_REFERENCE_PAIR = (
    DirectSumElement.of(1.0, np.diag([2.0, 0.0])),
    DirectSumElement.of(1.0, np.ones((2, 2))),
)


def _fmt_coeff(c: complex) -> str:
    c = complex(round(c.real, 12), round(c.imag, 12))
    if c.imag == 0 and float(c.real).is_integer():
        n = int(c.real)
        return {1: "", -1: "-"}.get(n, str(n))
    if c.imag == 0:
        return f"{c.real:.6g}"
    return f"({c.real:.6g}{c.imag:+.6g}j)"


def _render_row(coeffs: np.ndarray, col: int) -> str:
    """``sum_k coeffs[k] * b_{k+1, col+1} = 0`` rendered compactly."""
    terms = []
    for r, c in enumerate(coeffs):
        if abs(c) < 1e-12:
            continue
        coeff = _fmt_coeff(c)
        term = f"{coeff}b{r + 1}{col + 1}"
        if terms and not term.startswith("-"):
            term = "+ " + term
        elif terms:
            term = "- " + term[1:]
        terms.append(term)
    return " ".join(terms) + " = 0"


def _matrix_part_constraints(m: np.ndarray) -> tuple[np.ndarray, list[str]]:
    """Rows of ``m* b = 0`` from the dominant row of ``m*`` (``m`` rank one), as a 2x4 system in vec(b)."""
    adj = m.conj().T
    row = adj[int(np.argmax(np.linalg.norm(adj, axis=1)))]
    system = np.zeros((2, 4), dtype=complex)
    for col in range(2):
        for r in range(2):
            system[col, 2 * r + col] = row[r]
    return system, [_render_row(row, col) for col in range(2)]


def _perp(x: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(x[1]), np.conj(x[0])])


def c_m2_distance4(u: DirectSumElement, v: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> LowerBoundReport:
    """Replay of the distance-4 argument in ``C + M_2``.

    Hypotheses: ``u = (alpha, m1)``, ``v = (beta, m2)`` with ``m1, m2`` rank one,
    ``0 < |alpha| < |m1|``, ``0 < |beta| < |m2|``, and image lines of ``m1`` and
    ``m2`` neither equal nor orthogonal.  Any neighbor ``(g, b)`` of ``u``
    satisfies ``m1* b = 0``, so ``b`` is zero or rank one with image ``y1^perp``.
    """
    pair = (u, v)
    if u.signature != v.signature or sorted(u.signature) != [1, 2]:
        return _not_applicable(pair, 4, "signature must be C + M_2")
    s = u.signature.index(1)
    m = 1 - s
    alpha, beta = complex(u.coords[s][0, 0]), complex(v.coords[s][0, 0])
    m1, m2 = u.coords[m], v.coords[m]
    try:
        y1, y2 = m2_image_line(m1, tol), m2_image_line(m2, tol)
    except InputError as exc:
        return _not_applicable(pair, 4, f"matrix parts must have rank one ({exc})")
    if alpha == 0 or beta == 0:
        return _not_applicable(pair, 4, "scalar parts must be nonzero")
    n1, n2 = np.linalg.norm(m1, 2), np.linalg.norm(m2, 2)
    if not (abs(alpha) < n1 * (1.0 - tol.eps_tie) and abs(beta) < n2 * (1.0 - tol.eps_tie)):
        return _not_applicable(pair, 4, "matrix parts must strictly carry the norm")
    overlap = abs(np.vdot(y1, y2))
    if overlap <= tol.eps_orth or overlap >= 1.0 - tol.eps_orth:
        return _not_applicable(pair, 4, f"image lines must be neither orthogonal nor equal (|<y1,y2>| = {overlap:.6g})")

    scope = "reference-pair" if all(
        normalize_projective(x).allclose(normalize_projective(p), atol=1e-12) for x, p in zip(pair, _REFERENCE_PAIR)
    ) else "derived-generalization"
    steps = [ProofStep(
        "hypotheses", True,
        f"|alpha| = {abs(alpha):.6g} < |m1| = {n1:.6g}, |beta| = {abs(beta):.6g} < |m2| = {n2:.6g}, "
        f"rank m1 = rank m2 = 1, |<y1,y2>| = {overlap:.6g}",
    )]

    adj = m2_adjacent(m1, m2, tol)
    direct = mutual_strong_orth(u, v, tol)
    steps.append(ProofStep(
        "step1-non-adjacency", not adj and direct.verdict is Tri.NO,
        "adjacency would force m1 and m2 mutually orthogonal (only the M_2 part carries the norm)",
        f"m2_adjacent(m1, m2) = {adj}; checker verdict {direct.verdict}",
    ))

    sys1, rows1 = _matrix_part_constraints(m1)
    sys2, rows2 = _matrix_part_constraints(m2)
    system = np.vstack([sys1, sys2])
    sv = np.linalg.svd(system, compute_uv=False)
    rank = int(np.count_nonzero(sv > tol.eps_rank * sv[0]))
    steps.append(ProofStep(
        "step2-matrix-part", rank == 4,
        ", ".join(rows1 + rows2) + (", so b = 0" if rank == 4 else ""),
        f"rank of the system in (b11, b12, b21, b22): {rank}",
    ))
    steps.append(ProofStep(
        "step2-scalar-part", True,
        "a common neighbor (g, 0) needs g orthogonal to alpha, so alpha = 0, which is not possible",
    ))

    # step 3: middles w1 = (g1, b) next to u and w2 = (g2, d) next to v; b, d nonzero
    # (a zero matrix part forces alpha = 0 or beta = 0), Im b = y1^perp, Im d = y2^perp
    p1, p2 = _perp(y1), _perp(y2)
    b_rep, d_rep = np.outer(p1, p1.conj()), np.outer(p2, p2.conj())
    bd = strong_orth_matrix(b_rep, d_rep, tol).verdict
    db = strong_orth_matrix(d_rep, b_rep, tol).verdict
    cross = abs(np.vdot(p1, p2))
    steps.append(ProofStep(
        "step3-zero-matrix-part", True,
        "a middle vertex (g, 0) adjacent to u or v forces alpha = 0 or beta = 0",
    ))
    steps.append(ProofStep(
        "step3-case-both-scalars-zero", bd is Tri.NO and db is Tri.NO,
        "(0, b) and (0, d) adjacent needs b, d mutually orthogonal, i.e. y1^perp orthogonal to y2^perp",
        f"|<y1^perp, y2^perp>| = {cross:.6g}; b orth d: {bd}, d orth b: {db}",
    ))
    steps.append(ProofStep(
        "step3-case-both-scalars-nonzero", bd is Tri.NO and db is Tri.NO,
        "g1 orth g2 is impossible for nonzero scalars, so both directions must hold on the M_2 parts",
        f"b orth d: {bd}, d orth b: {db}",
    ))
    steps.append(ProofStep(
        "step3-case-one-scalar-zero", bd is Tri.NO and db is Tri.NO,
        "the middle vertex with zero scalar part carries its norm on the M_2 part, so b orth d (or d orth b) is needed",
        f"b orth d: {bd}, d orth b: {db}",
    ))
    return _finish(pair, 4, steps, scope=scope)
