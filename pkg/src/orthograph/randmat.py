"""Seeded random matrices with prescribed rank and norm."""

from __future__ import annotations

import numpy as np

__all__ = [
    "make_rng",
    "random_complex",
    "random_invertible",
    "random_rank_one",
    "random_singular",
    "random_unitary",
    "random_with_rank",
    "with_norm",
]


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_complex(n: int, rng: np.random.Generator, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(n, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_with_rank(n: int, r: int, rng: np.random.Generator, *, spread: tuple[float, float] = (0.4, 1.0)) -> np.ndarray:
    """``n x n`` matrix of rank ``r`` with nonzero singular values drawn from ``spread``."""
    if r == 0:
        return np.zeros((n, n), dtype=complex)
    u = random_unitary(n, rng)[:, :r]
    v = random_unitary(n, rng)[:, :r]
    s = rng.uniform(*spread, size=r)
    return (u * s) @ v.conj().T


def random_singular(n: int, rng: np.random.Generator, *, allow_zero: bool = False) -> np.ndarray:
    """Nonzero non-invertible matrix (the zero scalar when ``n == 1``)."""
    if n == 1:
        return np.zeros((1, 1), dtype=complex)
    low = 0 if allow_zero else 1
    return random_with_rank(n, int(rng.integers(low, n)), rng)


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    return random_with_rank(n, n, rng)


def random_rank_one(n: int, rng: np.random.Generator) -> np.ndarray:
    return random_with_rank(n, 1, rng)


def with_norm(m: np.ndarray, target: float) -> np.ndarray:
    norm = np.linalg.norm(m, 2)
    return m if norm == 0 else m * (target / norm)
