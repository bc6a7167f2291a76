import pytest

from orthograph.decide import mutual_strong_orth
from orthograph.golden import CASES, FINAL_TABLE, diameter_witness, golden_pairs, reproduce
from orthograph.linalg import Tri


def test_golden_pairs_have_firm_verdicts():
    for name, (u, v) in golden_pairs().items():
        assert mutual_strong_orth(u, v).verdict is not Tri.UNCERTAIN, name


@pytest.mark.parametrize("name", [c for c in CASES if c != "gate"])
def test_reproductions_match(name):
    rep = reproduce(name, quick_gate=False)
    assert rep.ok, rep.diff()


@pytest.mark.parametrize("sig", FINAL_TABLE)
def test_diameter_witnesses_are_exact(sig):
    w = diameter_witness(sig)
    assert w.exact
    assert w.path.validate()


def test_reproduce_unknown_case():
    with pytest.raises(KeyError):
        reproduce("nope")


def test_quick_gate_attached():
    rep = reproduce("ip-pi")
    assert rep.ok and rep.details["gate"]["passed"]
