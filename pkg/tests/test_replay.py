import numpy as np
import pytest

from conftest import E
from orthograph.golden import ck_pair, design_pair, golden_pairs
from orthograph.oracle import exhaustive_common_neighbor_scalars
from orthograph.replay import Status, c_m2_distance4, no_common_neighbor_dominant, no_common_neighbor_scalars


@pytest.mark.parametrize("k", range(3, 9))
def test_ck_pair_has_no_common_neighbor(k):
    u, v = ck_pair(k)
    report = no_common_neighbor_scalars(u, v)
    assert report.proven and report.claim == 3
    assert exhaustive_common_neighbor_scalars(u, v) is None


def test_adjacent_looking_pair_is_refuted():
    u, v = golden_pairs()["c3-adjacent-looking"]
    report = no_common_neighbor_scalars(u, v)
    assert report.status is Status.REFUTED
    assert [s.name for s in report.steps if not s.passed] == ["non-adjacency"]


@pytest.mark.parametrize(
    "u,v,proven",
    [
        (E(1.0, 0.0, 1.0), E(1.0, 0.0, 0.0), False),
        (E(2.0, 1.0, 0.0, 1.0), E(1.0, 2.0, 1.0, 0.0), False),
        (E(0.0, 1.0, 2.0, 1.0), E(2.0, 0.0, 1.0, 1.0), True),
        (E(3.0, 1.0, 0.0, 2.0), E(1.0, 0.0, 3.0, 3.0), False),
    ],
)
def test_scalar_replay_agrees_with_exhaustive_oracle(u, v, proven):
    report = no_common_neighbor_scalars(u, v)
    assert report.steps[0].passed  # the pair is not adjacent
    assert report.proven is proven
    assert (exhaustive_common_neighbor_scalars(u, v) is None) is proven


def test_c_m2_replay_steps():
    u, v = golden_pairs()["c-m2"]
    report = c_m2_distance4(u, v)
    assert report.proven and report.claim == 4 and report.scope == "reference-pair"
    names = [s.name for s in report.steps]
    assert names[:3] == ["hypotheses", "step1-non-adjacency", "step2-matrix-part"]
    step2 = report.steps[2]
    assert step2.constraint == "2b11 = 0, 2b12 = 0, b11 + b21 = 0, b12 + b22 = 0, so b = 0"
    assert all(s.passed for s in report.steps)


def test_c_m2_replay_reversed_coordinates():
    u, v = golden_pairs()["c-m2"]
    flip = lambda x: type(x)(x.coords[::-1])
    assert c_m2_distance4(flip(u), flip(v)).proven


def test_c_m2_replay_not_applicable():
    report = c_m2_distance4(*ck_pair(4))
    assert report.status is Status.NOT_APPLICABLE


def test_c_m2_replay_fails_on_adjacent_pair():
    u, v = E(1.0, np.diag([2.0, 0.0])), E(1.0, np.diag([0.0, 2.0]))
    assert not c_m2_distance4(u, v).proven


@pytest.mark.parametrize("sig", [(2, 2), (1, 3), (1, 4), (2, 3), (1, 2, 2), (1, 1, 2)])
def test_dominant_replay(sig):
    report = no_common_neighbor_dominant(*design_pair(sig))
    assert report.proven and report.claim == 3


def test_dominant_replay_refuses_non_dominant_pair():
    u, v = golden_pairs()["c-m2-via-unit"]
    assert not no_common_neighbor_dominant(u, v).proven
