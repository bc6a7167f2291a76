import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import E, J, P1
from orthograph.decide import mutual_strong_orth
from orthograph.errors import ConstructionError, DegenerateInputError, InputError, NoWitnessError
from orthograph.golden import golden_pairs
from orthograph.instances import CASES, build, generate
from orthograph.linalg import normalize_projective
from orthograph.randmat import make_rng, random_singular
from orthograph.witness import CASE_BOUND, Case, annihilator_witness, certify_path, path_distinct_coordinates, route


def test_annihilator_of_all_ones():
    w = annihilator_witness(J)
    assert np.allclose(w, 0.5 * np.array([[1, -1], [-1, 1]]))
    assert mutual_strong_orth(E(J), E(w)).adjacent


@pytest.mark.parametrize("m,error", [(np.zeros((2, 2)), DegenerateInputError), (np.eye(2), NoWitnessError)])
def test_annihilator_rejects(m, error):
    with pytest.raises(error):
        annihilator_witness(m)


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_annihilator_is_adjacent(seed, n):
    a = random_singular(n, make_rng(seed))
    assert mutual_strong_orth(E(a), E(annihilator_witness(a))).adjacent


EXPECTED_ROUTES = {
    "ip-pi": (1, Case.ADJACENT),
    "c2": (1, Case.ADJACENT),
    "c-m2": (4, Case.FOUR_PATH),
    "c-m2-via-unit": (2, Case.VIA_UNIT),
    "c-m2-combination": (3, Case.COMBINATION),
    "three-summands": (3, Case.THREE_SUMMANDS),
    "c5": (3, Case.DISTINCT_COORDINATES),
    "design-2+2": (3, Case.TWO_MATRIX_SUMMANDS),
    "design-1+3": (3, Case.C_PLUS_M3),
    "design-1+4": (3, Case.C_PLUS_MN),
    "design-1+1+2": (3, Case.THREE_SUMMANDS),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_ROUTES))
def test_route_golden(name):
    u, v = golden_pairs()[name]
    p = route(u, v)
    length, case = EXPECTED_ROUTES[name]
    assert (p.length, p.theorem_case) == (length, case)
    assert p.length <= p.bound == CASE_BOUND[case]
    assert p.validate()
    assert p.vertices[0].key(1e-6) == normalize_projective(u).key(1e-6)
    assert p.vertices[-1].key(1e-6) == normalize_projective(v).key(1e-6)


def test_route_identical_vertex():
    u = E(1.0, P1)
    p = route(u, u.scaled(-2.5j))
    assert p.length == 0 and p.theorem_case is Case.IDENTICAL


def test_c_m2_route_is_flagged_hard():
    assert route(*golden_pairs()["c-m2"]).hard_case


def test_route_rejects_isolated_and_mismatched():
    with pytest.raises(InputError):
        route(E(1.0, np.eye(2)), E(0.0, P1))
    with pytest.raises(InputError):
        route(E(0.0, 1.0), E(0.0, P1))


def test_validate_detects_tampering():
    p = route(*golden_pairs()["c5"])
    swapped = type(p)(p.vertices[::-1][:1] + p.vertices[1:], p.edge_certificates, p.theorem_case)
    assert not swapped.validate()


def test_certify_path_rejects_non_edge():
    with pytest.raises(ConstructionError):
        certify_path([E(1.0, np.diag([2.0, 0.0])), E(1.0, J)], Case.ADJACENT)


def test_constructor_precondition():
    u, v = golden_pairs()["c5"]
    with pytest.raises((InputError, ConstructionError)):
        path_distinct_coordinates(u, v, 0, 0)


@pytest.mark.parametrize("case", sorted(CASES))
def test_constructors_on_random_instances(case):
    rng = make_rng(7)
    bound = CASES[case][2]
    for _ in range(40):
        u, v, extra = generate(case, rng)
        p = build(case, u, v, extra)
        assert p.length <= bound and p.validate()
