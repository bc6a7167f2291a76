"""Strong Birkhoff-James orthogonality decisions with certificates.

``a`` is strongly orthogonal to ``b`` when ``|a + b c| >= |a|`` for every
``c``.  In a matrix algebra the infimum over ``c`` has the closed form
``|(I - P_b) a|`` with ``P_b`` the projection onto ``Im b``; in a direct sum
with the max norm each coordinate is minimized independently, so
``a`` is orthogonal to ``b`` exactly when some coordinate of maximal norm has
``|(I - P_i) a_i| = |a|``.  Equivalently some unit ``x`` with
``|a_i x| = |a|`` has ``a_i x`` in ``ker b_i*``.

Both forms are evaluated.  A firm verdict needs both to agree; anything else
is ``UNCERTAIN``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateInputError, InputError
from .linalg import (
    DEFAULT_TOL,
    DirectSumElement,
    ToleranceConfig,
    Tri,
    as_matrix,
    invertibility,
    range_basis,
    spectrum,
)

__all__ = [
    "CheckerResult",
    "M2ComponentLabel",
    "MutualDecision",
    "OrthCertificate",
    "OrthDecision",
    "ideal_distance",
    "is_isolated_vertex",
    "m2_adjacent",
    "m2_component",
    "m2_image_line",
    "mutual_strong_orth",
    "revalidate_certificate",
    "strong_orth_directsum",
    "strong_orth_matrix",
    "strong_orth_scalars",
]


@dataclass(frozen=True)
class OrthCertificate:
    """Witness for ``a`` strongly orthogonal to ``b`` at one coordinate.

    Residuals are scaled: ``norm_residual = ||a_i x| - |a|| / |a|`` and
    ``orth_residual = |b_i* a_i x| / (|a| |b|)``.
    """

    coordinate_index: int
    witness: np.ndarray
    norm_residual: float
    orth_residual: float

    def is_valid(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return (
            abs(np.linalg.norm(self.witness) - 1.0) <= tol.eps_orth
            and self.norm_residual <= tol.eps_orth
            and self.orth_residual <= tol.eps_orth
        )


@dataclass(frozen=True)
class CheckerResult:
    verdict: Tri
    measure: float
    margin: float


@dataclass(frozen=True)
class OrthDecision:
    """Fused verdict for one direction.

    ``subspace`` measures how far the leading image of ``a`` is from meeting
    ``ker b*`` (a sine); ``ideal`` is the relative deficit
    ``1 - dist(a, bA) / |a|``.  ``margin`` is the smaller of the two
    relative distances to the decision thresholds; it is non-positive when the
    verdict is uncertain.
    """

    verdict: Tri
    margin: float
    certificate: OrthCertificate | None
    subspace: CheckerResult
    ideal: CheckerResult

    @property
    def contradiction(self) -> bool:
        return {self.subspace.verdict, self.ideal.verdict} == {Tri.YES, Tri.NO}


@dataclass(frozen=True)
class MutualDecision:
    forward: OrthDecision
    backward: OrthDecision

    @property
    def verdict(self) -> Tri:
        verdicts = (self.forward.verdict, self.backward.verdict)
        if Tri.NO in verdicts:
            return Tri.NO
        if all(v is Tri.YES for v in verdicts):
            return Tri.YES
        return Tri.UNCERTAIN

    @property
    def adjacent(self) -> bool:
        return self.verdict is Tri.YES


def _classify(measure: float, threshold: float, tol: ToleranceConfig) -> CheckerResult:
    upper = tol.uncertain_factor * threshold
    if measure <= threshold:
        return CheckerResult(Tri.YES, measure, (threshold - measure) / threshold)
    if measure > upper:
        return CheckerResult(Tri.NO, measure, (measure - upper) / upper)
    return CheckerResult(Tri.UNCERTAIN, measure, -min(measure - threshold, upper - measure) / threshold)


def _fuse(sub: CheckerResult, ide: CheckerResult) -> tuple[Tri, float]:
    if sub.verdict is ide.verdict and sub.verdict is not Tri.UNCERTAIN:
        return sub.verdict, min(sub.margin, ide.margin)
    return Tri.UNCERTAIN, min(sub.margin, ide.margin, 0.0)


def _as_element(x) -> DirectSumElement:
    if isinstance(x, DirectSumElement):
        return x
    return DirectSumElement((as_matrix(x),))


def _check_pair(a: DirectSumElement, b: DirectSumElement) -> None:
    if a.signature != b.signature:
        raise InputError(f"signature mismatch: {a.signature} vs {b.signature}")


def ideal_distance(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``min_c |a + b c|`` for square matrices of equal size."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise InputError(f"size mismatch: {a.shape} vs {b.shape}")
    q = range_basis(b, tol)
    residual = a - q @ (q.conj().T @ a)
    return float(np.linalg.svd(residual, compute_uv=False)[0])


def _coord_ideal(a_i: np.ndarray, q: np.ndarray) -> float:
    residual = a_i - q @ (q.conj().T @ a_i)
    return float(np.linalg.svd(residual, compute_uv=False)[0])


def _subspace_gap(lead: np.ndarray, q: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest ``|Q* U z|`` over unit ``z`` and the minimizing ``z``."""
    m = lead.shape[1]
    r = q.shape[1]
    if r == 0:
        z = np.zeros(m, dtype=complex)
        z[0] = 1.0
        return 0.0, z
    zmat = q.conj().T @ lead
    _, s, vh = np.linalg.svd(zmat, full_matrices=True)
    z = vh[-1].conj()
    gap = 0.0 if m > r else float(s[-1])
    return gap, z


def strong_orth_directsum(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> OrthDecision:
    """Decide ``a`` strongly orthogonal to ``b`` in a direct sum."""
    a = _as_element(a)
    b = _as_element(b)
    _check_pair(a, b)
    if a.is_zero():
        raise DegenerateInputError("left operand must be nonzero")
    big = a.norm
    b_norm = b.norm
    norms = a.coord_norms
    ties = [i for i in range(len(a)) if norms[i] >= big * (1.0 - tol.eps_tie)]

    bases = [range_basis(None, tol, spec=sp) for sp in b.spectra]

    best_gap, best_i, best_z = np.inf, ties[0], None
    for i in ties:
        spec = a.spectra[i]
        lead_count = int(np.count_nonzero(spec.s >= spec.s[0] * (1.0 - tol.eps_tie)))
        gap, z = _subspace_gap(spec.u[:, :lead_count], bases[i])
        if gap < best_gap:
            best_gap, best_i, best_z = gap, i, z

    dist = max(
        norms[i] if bases[i].shape[1] == 0 else 0.0 if bases[i].shape[1] == a.signature[i] else _coord_ideal(a.coords[i], bases[i])
        for i in range(len(a))
    )
    deficit = max(0.0, 1.0 - dist / big)

    sub = _classify(best_gap, tol.eps_orth, tol)
    # a tie-level witness with residual eps_orth loses at most this much
    ide = _classify(deficit, tol.eps_tie + 0.5 * tol.eps_orth**2, tol)
    verdict, margin = _fuse(sub, ide)

    cert = None
    if verdict is Tri.YES:
        spec = a.spectra[best_i]
        lead_count = best_z.shape[0]
        x = spec.vh[:lead_count].conj().T @ best_z
        x = x / np.linalg.norm(x)
        cert = _certificate(a, b, best_i, x, big, b_norm)
    return OrthDecision(verdict, float(margin), cert, sub, ide)


def _certificate(a, b, i, x, big, b_norm) -> OrthCertificate:
    ax = a.coords[i] @ x
    norm_res = abs(np.linalg.norm(ax) - big) / big
    orth_res = 0.0 if b_norm == 0 else float(np.linalg.norm(b.coords[i].conj().T @ ax) / (big * b_norm))
    return OrthCertificate(i, x, float(norm_res), orth_res)


def revalidate_certificate(a, b, cert: OrthCertificate, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Recompute the certificate residuals from ``a``, ``b`` and the witness alone."""
    a = _as_element(a)
    b = _as_element(b)
    _check_pair(a, b)
    i = cert.coordinate_index
    if not 0 <= i < len(a) or cert.witness.shape != (a.signature[i],):
        return False
    big = float(max(np.linalg.norm(c, 2) for c in a.coords))
    b_norm = float(max(np.linalg.norm(c, 2) for c in b.coords))
    fresh = _certificate(a, b, i, cert.witness, big, b_norm)
    return OrthCertificate(i, cert.witness, fresh.norm_residual, fresh.orth_residual).is_valid(tol)


def strong_orth_matrix(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> OrthDecision:
    """Decide ``a`` strongly orthogonal to ``b`` in ``M_n``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise InputError(f"size mismatch: {a.shape} vs {b.shape}")
    return strong_orth_directsum(DirectSumElement((a,)), DirectSumElement((b,)), tol)


def mutual_strong_orth(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> MutualDecision:
    a = _as_element(a)
    b = _as_element(b)
    _check_pair(a, b)
    if b.is_zero():
        raise DegenerateInputError("right operand must be nonzero")
    return MutualDecision(strong_orth_directsum(a, b, tol), strong_orth_directsum(b, a, tol))


# ---------------------------------------------------------------------------
# exact scalar case


def _exact_sq_modulus(z: complex) -> Fraction:
    return Fraction(float(z.real)) ** 2 + Fraction(float(z.imag)) ** 2


def _scalar_entries(x: DirectSumElement) -> list[complex]:
    if any(n != 1 for n in x.signature):
        raise InputError(f"expected signature (1, ..., 1), got {x.signature}")
    return [complex(c[0, 0]) for c in x.coords]


def strong_orth_scalars(a: DirectSumElement, b: DirectSumElement) -> bool:
    """Exact decision in C^k: some coordinate where ``b`` vanishes carries ``max |a_i|``."""
    xs = _scalar_entries(a)
    ys = _scalar_entries(b)
    if len(xs) != len(ys):
        raise InputError(f"signature mismatch: {a.signature} vs {b.signature}")
    mods = [_exact_sq_modulus(z) for z in xs]
    top = max(mods)
    if top == 0:
        raise DegenerateInputError("left operand must be nonzero")
    return any(y == 0 and m == top for y, m in zip(ys, mods))


# ---------------------------------------------------------------------------
# isolation and the M_2 image-line picture


def is_isolated_vertex(a: DirectSumElement, tol: ToleranceConfig = DEFAULT_TOL) -> Tri:
    """Isolated exactly when every coordinate is invertible."""
    a = _as_element(a)
    if a.is_zero():
        raise DegenerateInputError("the zero element is not a vertex")
    verdicts = [invertibility(None, tol, spec=sp).verdict for sp in a.spectra]
    if Tri.NO in verdicts:
        return Tri.NO
    if all(v is Tri.YES for v in verdicts):
        return Tri.YES
    return Tri.UNCERTAIN


def _phase_normalize(x: np.ndarray) -> np.ndarray:
    x = x / np.linalg.norm(x)
    mods = np.abs(x)
    ref = x[int(np.argmax(mods >= mods.max() * (1.0 - 1e-9)))]
    return x * (np.conj(ref) / abs(ref))


def _line_key(x: np.ndarray) -> tuple:
    return tuple(np.round(np.concatenate([x.real, x.imag]), 9).tolist())


def m2_image_line(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unit vector spanning the image of a rank-one 2x2 matrix."""
    a = as_matrix(a)
    if a.shape != (2, 2):
        raise InputError(f"expected a 2x2 matrix, got shape {a.shape}")
    spec = spectrum(a)
    rank = int(np.count_nonzero(spec.s > tol.eps_rank * spec.s[0])) if spec.s[0] > 0 else 0
    if rank != 1:
        raise InputError(f"expected a rank-one matrix, got numerical rank {rank}")
    return spec.u[:, 0]


@dataclass(frozen=True, eq=False)
class M2ComponentLabel:
    """Connected component ``S_x`` of the M_2 orthograph, keyed by a line.

    ``line`` is the canonical one of ``{x, x_perp}`` after phase
    normalization: the lexicographically larger real/imaginary tuple, so that
    ``span{e1}`` and ``span{(1, 1)}`` represent themselves.
    """

    line: np.ndarray

    @property
    def key(self) -> tuple:
        return _line_key(self.line)

    def same_component(self, other: "M2ComponentLabel", tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        overlap = abs(np.vdot(self.line, other.line))
        return overlap >= 1.0 - tol.eps_orth or overlap <= tol.eps_orth

    def __eq__(self, other) -> bool:
        return isinstance(other, M2ComponentLabel) and self.same_component(other)

    __hash__ = None  # equality is tolerance-based

    def __repr__(self) -> str:
        return f"M2ComponentLabel(line={np.round(self.line, 6).tolist()})"


def m2_component(a, tol: ToleranceConfig = DEFAULT_TOL) -> M2ComponentLabel:
    x = _phase_normalize(m2_image_line(a, tol))
    perp = _phase_normalize(np.array([-np.conj(x[1]), np.conj(x[0])]))
    line = max((x, perp), key=_line_key)
    return M2ComponentLabel(line)


def m2_adjacent(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Rank-one 2x2 matrices are mutually strongly orthogonal iff their images are orthogonal."""
    x = m2_image_line(a, tol)
    y = m2_image_line(b, tol)
    return abs(np.vdot(x, y)) <= tol.eps_orth
