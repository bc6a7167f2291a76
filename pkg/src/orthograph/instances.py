"""Random instances satisfying each path constructor's preconditions.

Sizes are at most 4 and there are at most 3 summands.  Each generator
returns ``(u, v, extra)`` where ``extra`` holds the constructor's index
arguments.
"""

from __future__ import annotations

from typing import Callable

from .linalg import DirectSumElement
from .randmat import random_invertible, random_singular, with_norm
from .witness import (
    PathWitness,
    path_c_plus_m3,
    path_combination,
    path_distinct_coordinates,
    path_three_summands,
    path_two_matrix_summands,
    path_via_unit,
)

__all__ = ["CASES", "build", "generate"]


def _sizes(rng, k: int, low: int = 1) -> list[int]:
    return [int(rng.integers(low, 5)) for _ in range(k)]


def _with_noninvertible(sig, k, rng, *, norm_k: float, others: float) -> DirectSumElement:
    """Coordinate ``k`` non-invertible with norm ``norm_k``; the rest invertible with norms drawn up to ``others``."""
    coords = []
    for i, n in enumerate(sig):
        if i == k:
            m = random_singular(n, rng)
            coords.append(with_norm(m, norm_k))
        else:
            coords.append(with_norm(random_invertible(n, rng), rng.uniform(0.2, 1.0) * others))
    return DirectSumElement(tuple(coords))


def _tie_or_above(rng, base: float) -> float:
    """A norm at least ``base``: exactly ``base`` a quarter of the time."""
    return base if rng.random() < 0.25 else base * rng.uniform(1.0, 2.0)


def distinct_coordinates(rng):
    k = int(rng.integers(2, 4))
    sig = _sizes(rng, k)
    i, j = (int(x) for x in rng.choice(k, size=2, replace=False))

    def vertex(idx):
        coords = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for n in sig]
        coords[idx] = random_singular(sig[idx], rng) * rng.uniform(0.2, 3.0)
        return DirectSumElement(tuple(coords))

    return vertex(i), vertex(j), {"i": i, "j": j}


def _non_dominant(sig, k, rng) -> DirectSumElement:
    """``x_k`` the only non-invertible coordinate and some other coordinate at least as large."""
    norm_k = rng.uniform(0.2, 2.0) if sig[k] > 1 else 0.0
    x = _with_noninvertible(sig, k, rng, norm_k=norm_k, others=1.0)
    other = int(rng.choice([i for i in range(len(sig)) if i != k]))
    coords = list(x.coords)
    target = _tie_or_above(rng, norm_k) if norm_k > 0 else rng.uniform(0.2, 2.0)
    coords[other] = with_norm(coords[other], target)
    return DirectSumElement(tuple(coords))


def via_unit(rng):
    k_count = int(rng.integers(2, 4))
    sig = _sizes(rng, k_count)
    k = int(rng.integers(0, k_count))
    return _non_dominant(sig, k, rng), _non_dominant(sig, k, rng), {"k": k}


def _dominant(sig, k, rng) -> DirectSumElement:
    """``x_k`` the only non-invertible coordinate and strictly the largest."""
    return _with_noninvertible(sig, k, rng, norm_k=2.0, others=rng.uniform(0.3, 0.95) * 2.0)


def combination(rng):
    k_count = int(rng.integers(2, 4))
    sig = _sizes(rng, k_count)
    k = int(rng.integers(0, k_count))
    sig[k] = max(sig[k], 2)
    return _non_dominant(sig, k, rng), _dominant(sig, k, rng), {"k": k}


def two_matrix_summands(rng):
    sig = _sizes(rng, 2, low=2)
    p = int(rng.integers(0, 2))
    return _dominant(sig, p, rng), _dominant(sig, p, rng), {}


def c_plus_m3(rng):
    sig = [1, 3] if rng.random() < 0.5 else [3, 1]
    m = sig.index(3)
    return _dominant(sig, m, rng), _dominant(sig, m, rng), {}


def three_summands(rng):
    sig = _sizes(rng, 3)
    i = int(rng.integers(0, 3))
    sig[i] = max(sig[i], 2)
    return _dominant(sig, i, rng), _dominant(sig, i, rng), {"i": i}


CASES: dict[str, tuple[Callable, Callable[..., PathWitness], int]] = {
    "distinct-coordinates": (distinct_coordinates, path_distinct_coordinates, 3),
    "via-unit": (via_unit, path_via_unit, 2),
    "combination": (combination, path_combination, 3),
    "two-matrix-summands": (two_matrix_summands, path_two_matrix_summands, 3),
    "c-plus-m3": (c_plus_m3, path_c_plus_m3, 3),
    "three-summands": (three_summands, path_three_summands, 3),
}


def generate(case: str, rng):
    return CASES[case][0](rng)


def build(case: str, u, v, extra, tol=None) -> PathWitness:
    constructor = CASES[case][1]
    kwargs = dict(extra)
    if tol is not None:
        kwargs["tol"] = tol
    return constructor(u, v, **kwargs)
