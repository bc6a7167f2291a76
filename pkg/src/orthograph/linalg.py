"""Dense complex linear algebra for elements of M_{n1} + ... + M_{nk}.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; an element of a
direct sum is a :class:`DirectSumElement`, a frozen tuple of square
coordinates.  Every rank or tie decision is taken against a
:class:`ToleranceConfig`, relative to the largest singular value involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInputError, InputError

__all__ = [
    "DEFAULT_TOL",
    "DirectSumElement",
    "Spectrum",
    "ToleranceConfig",
    "Tri",
    "as_matrix",
    "check_signature",
    "cokernel_basis",
    "invertibility",
    "is_invertible",
    "leading_left_singular_basis",
    "normalize_projective",
    "operator_norm",
    "parse_signature",
    "range_basis",
    "range_projection",
    "spectrum",
]


class Tri(str, enum.Enum):
    """Three-valued verdict.  ``UNCERTAIN`` never means ``NO``."""

    YES = "yes"
    NO = "no"
    UNCERTAIN = "uncertain"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds for rank, tie and certificate decisions.

    eps_rank
        singular values at most ``eps_rank * sigma_max`` count as zero.
    eps_tie
        singular values (and coordinate norms) within ``eps_tie`` relative of
        the maximum count as attaining it.
    eps_orth
        bound on the scaled certificate residuals.
    uncertain_factor
        a measure strictly between ``t`` and ``uncertain_factor * t`` is
        reported as uncertain.
    """

    eps_rank: float = 1e-9
    eps_tie: float = 1e-9
    eps_orth: float = 1e-6
    uncertain_factor: float = 10.0

    def __post_init__(self):
        for name in ("eps_rank", "eps_tie", "eps_orth"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be a positive finite number, got {value!r}")
        if not (np.isfinite(self.uncertain_factor) and self.uncertain_factor >= 1):
            raise InputError(f"uncertain_factor must be >= 1, got {self.uncertain_factor!r}")

    def as_dict(self) -> dict:
        return {
            "eps_rank": self.eps_rank,
            "eps_tie": self.eps_tie,
            "eps_orth": self.eps_orth,
            "uncertain_factor": self.uncertain_factor,
        }


DEFAULT_TOL = ToleranceConfig()


def as_matrix(m, *, square: bool = True) -> np.ndarray:
    """Validate and copy ``m`` into a read-only complex128 matrix.

    Scalars become 1x1 matrices.
    """
    arr = np.array(m, dtype=np.complex128, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


class Spectrum(NamedTuple):
    """Full SVD of a square matrix, ``m = u @ diag(s) @ vh``."""

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray

    @property
    def norm(self) -> float:
        return float(self.s[0])


def spectrum(m: np.ndarray) -> Spectrum:
    u, s, vh = np.linalg.svd(m)
    return Spectrum(u, s, vh)


def operator_norm(m) -> float:
    """Largest singular value of ``m``."""
    m = as_matrix(m, square=False)
    return float(np.linalg.svd(m, compute_uv=False)[0])


def _leading_count(s: np.ndarray, tol: ToleranceConfig) -> int:
    return int(np.count_nonzero(s >= s[0] * (1.0 - tol.eps_tie)))


def _rank(s: np.ndarray, tol: ToleranceConfig) -> int:
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.eps_rank * s[0]))


def leading_left_singular_basis(m, tol: ToleranceConfig = DEFAULT_TOL, *, spec: Spectrum | None = None) -> np.ndarray:
    """Orthonormal columns spanning ``{m x : |x| = 1, |m x| = |m|}``."""
    if spec is None:
        spec = spectrum(as_matrix(m))
    if spec.s[0] == 0.0:
        raise DegenerateInputError("leading singular subspace of the zero matrix is undefined")
    return spec.u[:, : _leading_count(spec.s, tol)]


def range_basis(m, tol: ToleranceConfig = DEFAULT_TOL, *, spec: Spectrum | None = None) -> np.ndarray:
    """Orthonormal columns spanning the numerical range (image) of ``m``."""
    if spec is None:
        spec = spectrum(as_matrix(m))
    return spec.u[:, : _rank(spec.s, tol)]


def cokernel_basis(m, tol: ToleranceConfig = DEFAULT_TOL, *, spec: Spectrum | None = None) -> np.ndarray:
    """Orthonormal columns spanning ``ker m*``, the orthogonal complement of the image."""
    if spec is None:
        spec = spectrum(as_matrix(m))
    return spec.u[:, _rank(spec.s, tol):]


def range_projection(m, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto the image of ``m``."""
    q = range_basis(m, tol)
    return q @ q.conj().T


class Invertibility(NamedTuple):
    verdict: Tri
    ratio: float  # sigma_min / sigma_max, 0 for the zero matrix


def invertibility(m, tol: ToleranceConfig = DEFAULT_TOL, *, spec: Spectrum | None = None) -> Invertibility:
    if spec is None:
        spec = spectrum(as_matrix(m))
    s = spec.s
    ratio = 0.0 if s[0] == 0.0 else float(s[-1] / s[0])
    if ratio <= tol.eps_rank:
        return Invertibility(Tri.NO, ratio)
    if ratio > tol.uncertain_factor * tol.eps_rank:
        return Invertibility(Tri.YES, ratio)
    return Invertibility(Tri.UNCERTAIN, ratio)


def is_invertible(m, tol: ToleranceConfig = DEFAULT_TOL) -> Tri:
    """Tri-state invertibility from the ratio ``sigma_min / sigma_max``."""
    return invertibility(m, tol).verdict


# ---------------------------------------------------------------------------
# signatures and direct-sum elements


def check_signature(sizes: Iterable[int]) -> tuple[int, ...]:
    try:
        sig = tuple(int(n) for n in sizes)
    except (TypeError, ValueError) as exc:
        raise InputError(f"signature must be a list of positive integers: {exc}") from None
    if not sig or any(n < 1 for n in sig):
        raise InputError(f"signature must be a non-empty list of positive integers, got {sig}")
    return sig


def parse_signature(text: str) -> tuple[int, ...]:
    """Parse ``"n1+n2+...+nk"``."""
    parts = text.strip().split("+")
    if not all(p.strip().isdigit() for p in parts):
        raise InputError(f"malformed signature {text!r}; expected e.g. '1+2'")
    return check_signature(int(p) for p in parts)


# tie tolerance when choosing the phase-reference entry
_PHASE_TIE = 1e-9


@dataclass(frozen=True, eq=False)
class DirectSumElement:
    """Element ``(a_1, ..., a_k)`` of ``M_{n1} + ... + M_{nk}`` with the max norm."""

    coords: tuple[np.ndarray, ...]

    def __post_init__(self):
        coords = tuple(as_matrix(c) for c in self.coords)
        if not coords:
            raise InputError("a direct-sum element needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords) -> "DirectSumElement":
        return cls(tuple(coords))

    @classmethod
    def zeros(cls, signature: Sequence[int]) -> "DirectSumElement":
        return cls(tuple(np.zeros((n, n)) for n in check_signature(signature)))

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(c.shape[0] for c in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.coords[i]

    @cached_property
    def spectra(self) -> tuple[Spectrum, ...]:
        return tuple(spectrum(c) for c in self.coords)

    @cached_property
    def coord_norms(self) -> np.ndarray:
        return np.array([sp.norm for sp in self.spectra])

    @cached_property
    def norm(self) -> float:
        return float(self.coord_norms.max())

    def is_zero(self) -> bool:
        return self.norm == 0.0

    def scaled(self, lam: complex) -> "DirectSumElement":
        return DirectSumElement(tuple(lam * c for c in self.coords))

    def replace(self, i: int, m) -> "DirectSumElement":
        coords = list(self.coords)
        coords[i] = m
        return DirectSumElement(tuple(coords))

    def allclose(self, other: "DirectSumElement", atol: float = 1e-9) -> bool:
        return self.signature == other.signature and all(
            np.allclose(x, y, rtol=0.0, atol=atol) for x, y in zip(self.coords, other.coords)
        )

    def key(self, grid: float = 1e-6) -> tuple:
        """Projective dedup key: normalized entries rounded to ``grid``."""
        v = normalize_projective(self)
        flat = np.concatenate([c.ravel() for c in v.coords])
        q = np.round(np.concatenate([flat.real, flat.imag]) / grid).astype(np.int64)
        q[q == 0] = 0
        return (self.signature, tuple(q.tolist()))

    def __repr__(self) -> str:
        parts = []
        for c in self.coords:
            if c.shape == (1, 1):
                parts.append(_fmt_complex(c[0, 0]))
            else:
                rows = ("[" + ", ".join(_fmt_complex(z) for z in row) + "]" for row in c)
                parts.append("[" + ", ".join(rows) + "]")
        return f"DirectSumElement({', '.join(parts)})"


def _fmt_complex(z: complex) -> str:
    re = 0.0 if abs(z.real) < 5e-13 else z.real
    im = 0.0 if abs(z.imag) < 5e-13 else z.imag
    if im == 0:
        return f"{re:.6g}"
    return f"{re:.6g}{im:+.6g}j"


def normalize_projective(v: DirectSumElement) -> DirectSumElement:
    """Canonical representative of the ray ``{lam * v}``.

    Scales to max-norm 1, then rotates the phase so that the largest-modulus
    entry (first by coordinate, then row-major, among near-ties) is real and
    positive.
    """
    cached = v.__dict__.get("_normalized")
    if cached is not None:
        return cached
    if v.is_zero():
        raise DegenerateInputError("the zero element is not a vertex")
    scaled = [c / v.norm for c in v.coords]
    flat = np.concatenate([c.ravel() for c in scaled])
    mods = np.abs(flat)
    ref = flat[int(np.argmax(mods >= mods.max() * (1.0 - _PHASE_TIE)))]
    phase = np.conj(ref) / abs(ref)
    out = []
    for c in scaled:
        c = c * phase
        c.real[c.real == 0] = 0.0  # fold -0.0
        c.imag[c.imag == 0] = 0.0
        out.append(c)
    result = DirectSumElement(tuple(out))
    # phase * a / |a| has the same SVD up to rescaling and rotating u
    result.__dict__["spectra"] = tuple(
        Spectrum(sp.u * phase, sp.s / v.norm, sp.vh) for sp in v.spectra
    )
    v.__dict__["_normalized"] = result
    result.__dict__["_normalized"] = result
    return result
