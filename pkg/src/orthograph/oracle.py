"""Brute-force validators that only use the definitions.

:func:`min_norm_search` minimizes ``|a + b c|`` over ``c`` directly, with
multi-start BFGS on ``sigma_max(a + b c)^2`` in the real parametrization of
``c``.  The result is an upper bound on the true minimum.  The gate compares
it with the closed forms used by the decision procedure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from .decide import ideal_distance, m2_adjacent, strong_orth_directsum, strong_orth_matrix
from .io import element_to_doc
from .linalg import DEFAULT_TOL, DirectSumElement, ToleranceConfig, Tri
from .randmat import make_rng, random_complex, random_unitary, random_with_rank

__all__ = [
    "GateReport",
    "RuleResult",
    "derived_rule_gate",
    "exhaustive_common_neighbor_scalars",
    "exhaustive_scalar_orth",
    "min_norm_search",
]


# ---------------------------------------------------------------------------
# numerical minimization


def _objective(a: np.ndarray, b: np.ndarray):
    m = a.size
    bh = b.conj().T

    def f(z: np.ndarray) -> tuple[float, np.ndarray]:
        c = (z[:m] + 1j * z[m:]).reshape(a.shape)
        u, s, vh = np.linalg.svd(a + b @ c)
        g = 2.0 * s[0] * (bh @ np.outer(u[:, 0], vh[0]))
        return s[0] ** 2, np.concatenate([g.real.ravel(), g.imag.ravel()])

    return f, 2 * m


def _weak_wolfe(f, x, fx, gx, d, c1=1e-4, c2=0.9, maxit=60):
    lo, hi, t = 0.0, np.inf, 1.0
    gd = gx @ d
    xn, fn, gn = x, fx, gx
    for _ in range(maxit):
        xn = x + t * d
        fn, gn = f(xn)
        if fn > fx + c1 * t * gd:
            hi = t
        elif gn @ d < c2 * gd:
            lo = t
        else:
            return xn, fn, gn, True
        t = 0.5 * (lo + hi) if hi < np.inf else 2.0 * lo
    return xn, fn, gn, False


def _bfgs(f, x: np.ndarray, iterations: int, stop: float) -> float:
    fx, gx = f(x)
    best = fx
    h = np.eye(len(x))
    for k in range(iterations):
        if fx <= stop:
            break
        d = -h @ gx
        if gx @ d >= 0:
            break
        xn, fn, gn, ok = _weak_wolfe(f, x, fx, gx, d)
        best = min(best, fn)
        if not ok:
            break
        s, y = xn - x, gn - gx
        sy = s @ y
        if sy > 0:
            if k == 0:
                h = (sy / (y @ y)) * np.eye(len(x))
            rho = 1.0 / sy
            v = np.eye(len(x)) - rho * np.outer(s, y)
            h = v @ h @ v.T + rho * np.outer(s, s)
        x, fx, gx = xn, fn, gn
    return best


def min_norm_search(a, b, restarts: int = 8, iterations: int = 500, seed=0) -> float:
    """Upper bound on ``min_c |a + b c|`` by multi-start quasi-Newton descent.

    The first start is ``c = 0`` so the result never exceeds ``|a|``; the rest
    are random with scale ``|a| / |b|``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    norm_a = float(np.linalg.norm(a, 2))
    norm_b = float(np.linalg.norm(b, 2))
    if norm_b == 0.0 or norm_a == 0.0:
        return norm_a
    rng = make_rng(seed)
    f, dim = _objective(a, b)
    stop = (1e-9 * norm_a) ** 2
    scale = norm_a / norm_b / np.sqrt(a.shape[0])
    best = np.inf
    for r in range(max(1, restarts)):
        x0 = np.zeros(dim) if r == 0 else scale * rng.standard_normal(dim)
        best = min(best, _bfgs(f, x0, iterations, stop))
        if best <= stop:
            break
    return float(np.sqrt(best))


# ---------------------------------------------------------------------------
# scalars


def _sq(z: complex) -> Fraction:
    return Fraction(z.real) ** 2 + Fraction(z.imag) ** 2


def _scalars(x: DirectSumElement) -> list[complex]:
    return [complex(c[0, 0]) for c in x.coords]


def exhaustive_scalar_orth(u: DirectSumElement, v: DirectSumElement) -> bool:
    """``u`` strongly orthogonal to ``v`` in ``C^k`` by minimizing each coordinate.

    ``min_c |a_i + b_i c_i|`` is attained at ``c_i = -a_i / b_i`` (value 0)
    when ``b_i != 0`` and at any ``c_i`` (value ``|a_i|``) otherwise.
    """
    a, b = _scalars(u), _scalars(v)
    best = []
    for ai, bi in zip(a, b):
        ci = -ai / bi if bi != 0 else 0
        best.append(_sq(ai + bi * ci) if bi == 0 else Fraction(0))
    return max(best) >= max(_sq(x) for x in a)


def exhaustive_common_neighbor_scalars(u: DirectSumElement, v: DirectSumElement) -> DirectSumElement | None:
    """Search all (support, argmax) patterns of a candidate ``w`` in ``C^k``.

    Whether ``w`` is a neighbor only depends on its zero set and its argmax
    set, so trying every pattern (entries 1 on the argmax set, 1/2 on the rest
    of the support) is exhaustive.
    """
    k = len(u)
    for size in range(1, k + 1):
        for support in combinations(range(k), size):
            for msize in range(1, size + 1):
                for top in combinations(support, msize):
                    entries = [0.0] * k
                    for i in support:
                        entries[i] = 0.5
                    for i in top:
                        entries[i] = 1.0
                    w = DirectSumElement(tuple(np.array([[e]]) for e in entries))
                    if all(exhaustive_scalar_orth(x, y) for x, y in ((u, w), (w, u), (v, w), (w, v))):
                        return w
    return None


# ---------------------------------------------------------------------------
# gate


@dataclass
class RuleResult:
    checked: int = 0
    failures: int = 0
    max_error: float = 0.0


@dataclass
class GateReport:
    """Outcome of :func:`derived_rule_gate`; ``counterexamples`` hold element documents."""

    passed: bool
    rules: dict[str, RuleResult]
    contradictions: int
    uncertain: int
    counterexamples: list[dict] = field(default_factory=list)
    seconds: float = 0.0
    seed: int = 0

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rules": {k: vars(v).copy() for k, v in self.rules.items()},
            "contradictions": self.contradictions,
            "uncertain": self.uncertain,
            "counterexamples": self.counterexamples,
            "seconds": self.seconds,
            "seed": self.seed,
        }


def _orthogonal_pair(n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """``a`` strongly orthogonal to ``b`` by construction: the top image vector of ``a`` spans part of ``ker b*``."""
    r = int(rng.integers(0, n))
    b = random_with_rank(n, r, rng)
    u, _, _ = np.linalg.svd(b)
    y = u[:, -1]
    basis = np.column_stack([y, random_complex(n, rng, n - 1)]) if n > 1 else y[:, None]
    q, _ = np.linalg.qr(basis)
    q[:, 0] = y
    s = np.concatenate([[2.0], rng.uniform(0.1, 1.9, size=n - 1)])
    a = (q * s) @ random_unitary(n, rng).conj().T
    return a, b


def _random_pair(n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    if rng.random() < 1.0 / 3.0:
        return _orthogonal_pair(n, rng)
    return random_complex(n, rng), random_with_rank(n, int(rng.integers(0, n + 1)), rng)


def _doc(name: str, m: np.ndarray) -> dict:
    return {name: element_to_doc(DirectSumElement((m,)))}


def derived_rule_gate(
    count: int = 1000,
    sizes: tuple[int, ...] = (2, 3, 4, 5),
    seed: int = 0,
    *,
    restarts: int = 2,
    iterations: int = 500,
    agreement: float = 1e-6,
    tol: ToleranceConfig = DEFAULT_TOL,
    ideal_distance_fn: Callable = ideal_distance,
    sum_count: int = 200,
    m2_count: int = 500,
    max_counterexamples: int = 5,
) -> GateReport:
    """Validate the closed forms used by the decision procedure against search.

    Rules checked:

    ``ideal-distance``
        ``|ideal_distance(a, b) - min_norm_search(a, b)| <= agreement`` on
        ``count`` pairs per size; about a third are orthogonal by construction.
    ``checker-contradictions``
        the subspace and ideal checkers never give opposite firm verdicts.
    ``direct-sum-max``
        on ``C + M_n`` and ``M_n + M_m`` pairs the firm verdict matches the
        per-coordinate search (minimization decouples over coordinates).
    ``m2-image-line``
        for rank-one pairs in ``M_2`` the image-line rule matches the search
        in both directions.
    """
    start = time.perf_counter()
    rng = make_rng(seed)
    rules = {name: RuleResult() for name in ("ideal-distance", "checker-contradictions", "direct-sum-max", "m2-image-line")}
    counterexamples: list[dict] = []
    contradictions = uncertain = 0

    def fail(rule: str, detail: dict) -> None:
        rules[rule].failures += 1
        if len(counterexamples) < max_counterexamples:
            counterexamples.append({"rule": rule, **detail})

    for n in sizes:
        for _ in range(count):
            a, b = _random_pair(n, rng)
            closed = float(ideal_distance_fn(a, b, tol))
            searched = min_norm_search(a, b, restarts, iterations, rng)
            err = abs(closed - searched)
            r = rules["ideal-distance"]
            r.checked += 1
            r.max_error = max(r.max_error, err)
            if not err <= agreement:
                fail("ideal-distance", {"closed_form": closed, "search": searched, **_doc("a", a), **_doc("b", b)})
            d = strong_orth_matrix(a, b, tol)
            rules["checker-contradictions"].checked += 1
            uncertain += d.verdict is Tri.UNCERTAIN
            if d.contradiction:
                contradictions += 1
                fail("checker-contradictions", {"subspace": str(d.subspace.verdict), "ideal": str(d.ideal.verdict), **_doc("a", a), **_doc("b", b)})

    for _ in range(sum_count):
        sig = [(1, int(rng.integers(2, 4))), (2, 2), (2, 3)][int(rng.integers(0, 3))]
        pairs = [_random_pair(n, rng) for n in sig]
        # put the norm on a random coordinate half of the time, tie it otherwise
        scales = rng.uniform(0.5, 1.5, size=len(sig))
        if rng.random() < 0.5:
            scales[:] = 1.0
        a = DirectSumElement(tuple(s * p[0] / np.linalg.norm(p[0], 2) for s, p in zip(scales, pairs)))
        b = DirectSumElement(tuple(p[1] for p in pairs))
        if a.is_zero():
            continue
        d = strong_orth_directsum(a, b, tol)
        if d.verdict is Tri.UNCERTAIN:
            continue
        searched = max(min_norm_search(x, y, restarts, iterations, rng) for x, y in zip(a.coords, b.coords))
        gap = a.norm - searched
        r = rules["direct-sum-max"]
        r.checked += 1
        ok = gap <= agreement if d.verdict is Tri.YES else gap > agreement
        if not ok:
            r.max_error = max(r.max_error, abs(gap))
            fail("direct-sum-max", {"verdict": str(d.verdict), "norm_minus_search": gap, "a": element_to_doc(a), "b": element_to_doc(b)})

    for _ in range(m2_count):
        x = random_complex(2, rng, 1)[:, 0]
        y = random_complex(2, rng, 1)[:, 0]
        if rng.random() < 0.5:
            y = np.array([-np.conj(x[1]), np.conj(x[0])]) * random_complex(1, rng)[0, 0]
        m1 = np.outer(x, random_complex(2, rng, 1)[:, 0].conj())
        m2 = np.outer(y, random_complex(2, rng, 1)[:, 0].conj())
        rule = m2_adjacent(m1, m2, tol)
        search = all(
            np.linalg.norm(p, 2) - min_norm_search(p, q, restarts, iterations, rng) <= agreement
            for p, q in ((m1, m2), (m2, m1))
        )
        r = rules["m2-image-line"]
        r.checked += 1
        if rule != search:
            fail("m2-image-line", {"rule": rule, "search": search, **_doc("a", m1), **_doc("b", m2)})

    passed = all(r.failures == 0 for r in rules.values())
    return GateReport(passed, rules, contradictions, uncertain, counterexamples, time.perf_counter() - start, int(seed) if not isinstance(seed, np.random.Generator) else 0)
