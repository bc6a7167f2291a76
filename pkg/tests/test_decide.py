import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import E, J, P1
from orthograph.decide import (
    ideal_distance,
    is_isolated_vertex,
    m2_adjacent,
    m2_component,
    m2_image_line,
    mutual_strong_orth,
    revalidate_certificate,
    strong_orth_directsum,
    strong_orth_matrix,
    strong_orth_scalars,
)
from orthograph.errors import DegenerateInputError, InputError
from orthograph.linalg import Tri
from orthograph.oracle import exhaustive_scalar_orth, min_norm_search
from orthograph.randmat import make_rng, random_complex, random_rank_one, random_with_rank

# Frozen values computed once with the BFGS search oracle (8 restarts).
FROZEN = [
    (J, P1, 1.4142135623730947),
    (np.diag([2.0, 1.0, 0.0]), np.diag([0.0, 0.0, 1.0]), 2.0),
    (np.array([[1, 2j], [0, 1]]), J, 1.7320508075688767),
]

FROZEN_SEEDED = [(2, 1, 1.3310870504569328), (3, 1, 1.9873312859041634), (3, 2, 1.4956677907472418), (4, 2, 2.044811157520183)]


@pytest.mark.parametrize("a,b,expected", FROZEN)
def test_ideal_distance_frozen(a, b, expected):
    assert ideal_distance(a, b) == pytest.approx(expected, abs=1e-8)


def test_ideal_distance_frozen_seeded():
    rng = make_rng(123)
    for n, r, expected in FROZEN_SEEDED:
        a = random_complex(n, rng)
        b = random_with_rank(n, r, rng)
        assert ideal_distance(a, b) == pytest.approx(expected, abs=1e-8)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_ideal_distance_matches_search(seed, n):
    rng = make_rng(seed)
    a = random_complex(n, rng)
    b = random_with_rank(n, int(rng.integers(0, n + 1)), rng)
    assert abs(ideal_distance(a, b) - min_norm_search(a, b, restarts=2, seed=seed)) <= 1e-6


def test_ideal_distance_extremes(rng):
    a = random_complex(3, rng)
    assert ideal_distance(a, np.zeros((3, 3))) == pytest.approx(np.linalg.norm(a, 2))
    assert ideal_distance(a, random_complex(3, rng)) == pytest.approx(0.0, abs=1e-12)


def test_ip_pi_asymmetry():
    i2 = np.eye(2)
    assert strong_orth_matrix(i2, P1).verdict is Tri.YES
    assert strong_orth_matrix(P1, i2).verdict is Tri.NO
    d = mutual_strong_orth(E(i2, P1), E(P1, i2))
    assert d.adjacent


def test_certificate_revalidates():
    a, b = E(1.0, np.diag([2.0, 0.0])), E(0.0, np.diag([0.0, 1.0]))
    d = strong_orth_directsum(a, b)
    assert d.verdict is Tri.YES
    cert = d.certificate
    assert cert.coordinate_index == 1 and cert.is_valid()
    assert revalidate_certificate(a, b, cert)
    assert not revalidate_certificate(a, E(0.0, np.eye(2)), cert)


def test_no_verdict_has_no_certificate():
    d = strong_orth_directsum(E(1.0, np.diag([2.0, 0.0])), E(1.0, J))
    assert d.verdict is Tri.NO and d.certificate is None


def test_direct_sum_uses_the_maximum_coordinate():
    # the zero of b sits at coordinate 0, but the norm of a lives at coordinate 1
    a, b = E(1.0, np.eye(2) * 2), E(0.0, np.eye(2))
    assert strong_orth_directsum(a, b).verdict is Tri.NO
    assert strong_orth_directsum(E(2.0, np.eye(2)), b).verdict is Tri.YES


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_checkers_never_contradict(seed, n):
    rng = make_rng(seed)
    a = random_complex(n, rng)
    b = random_with_rank(n, int(rng.integers(0, n + 1)), rng)
    assert not strong_orth_matrix(a, b).contradiction


@given(st.lists(st.integers(-2, 2), min_size=2, max_size=5), st.data())
def test_scalars_match_exhaustive_oracle(xs, data):
    ys = data.draw(st.lists(st.integers(-2, 2), min_size=len(xs), max_size=len(xs)))
    if not any(xs):
        return
    a, b = E(*map(float, xs)), E(*map(float, ys))
    expected = exhaustive_scalar_orth(a, b)
    assert strong_orth_scalars(a, b) == expected
    assert (strong_orth_directsum(a, b).verdict is Tri.YES) == expected


def test_scalars_reject_zero_and_matrices():
    with pytest.raises(DegenerateInputError):
        strong_orth_scalars(E(0.0, 0.0), E(1.0, 0.0))
    with pytest.raises(InputError):
        strong_orth_scalars(E(1.0, np.eye(2)), E(1.0, np.eye(2)))


def test_signature_mismatch_rejected():
    with pytest.raises(InputError):
        strong_orth_directsum(E(1.0, 1.0), E(1.0, np.eye(2)))


@pytest.mark.parametrize(
    "x,verdict",
    [(E(1.0, np.eye(2)), Tri.YES), (E(0.0, np.eye(2)), Tri.NO), (E(1.0, P1), Tri.NO)],
)
def test_isolated_vertex(x, verdict):
    assert is_isolated_vertex(x) is verdict


def test_m2_rule_matches_mutual_decision(rng):
    for _ in range(200):
        a, b = random_rank_one(2, rng), random_rank_one(2, rng)
        if rng.random() < 0.5:
            y = m2_image_line(a)
            b = np.outer(np.array([-np.conj(y[1]), np.conj(y[0])]), random_complex(2, rng, 1)[:, 0].conj())
        assert m2_adjacent(a, b) == mutual_strong_orth(E(a), E(b)).adjacent


def test_m2_component_labels():
    e1, e2 = np.diag([1.0, 0.0]), np.diag([0.0, 3.0])
    assert m2_component(e1) == m2_component(e2)
    assert m2_component(e1) != m2_component(J)
    assert m2_component(J) == m2_component(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    with pytest.raises(InputError):
        m2_image_line(np.eye(2))
