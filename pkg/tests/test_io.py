import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import E, J
from orthograph.decide import mutual_strong_orth, strong_orth_directsum
from orthograph.errors import InputError
from orthograph.golden import golden_pairs
from orthograph.io import (
    decision_to_dict,
    dump_json,
    element_from_doc,
    element_to_doc,
    jsonable,
    load_element,
    lower_bound_to_dict,
    mutual_to_dict,
    path_to_dict,
    write_atomic,
)
from orthograph.randmat import make_rng, random_complex
from orthograph.replay import c_m2_distance4
from orthograph.witness import route


def test_document_layout():
    doc = element_to_doc(E(1.0, np.diag([2.0, 0.0])))
    assert doc == {"signature": [1, 2], "coords": [[[[1, 0]]], [[[2, 0], [0, 0]], [[0, 0], [0, 0]]]]}


@given(st.integers(0, 2**32 - 1), st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_round_trip_is_exact(seed, sig):
    rng = make_rng(seed)
    x = E(*(random_complex(n, rng) for n in sig))
    y = element_from_doc(json.loads(dump_json(element_to_doc(x))))
    assert all(np.array_equal(a, b) for a, b in zip(x.coords, y.coords))


@pytest.mark.parametrize(
    "doc,where",
    [
        ([], "JSON object"),
        ({"signature": [1]}, "'coords'"),
        ({"signature": [0], "coords": []}, "positive"),
        ({"signature": [1, 2], "coords": [[[[1, 0]]]]}, "2 matrices"),
        ({"signature": [2], "coords": [[[[1, 0]], [[0, 0], [1, 0]]]]}, "coords[0][0]"),
        ({"signature": [1], "coords": [[[["x", 0]]]]}, "coords[0][0][0]"),
        ({"signature": [1], "coords": [[[[1]]]]}, "coords[0][0][0]"),
        ({"signature": [True], "coords": [[[[1, 0]]]]}, "integers"),
    ],
)
def test_bad_documents(doc, where):
    with pytest.raises(InputError, match=where.replace("[", r"\[").replace("(", r"\(")):
        element_from_doc(doc)


def test_load_element_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"signature": [1],\n "coords": [[[[1, 0]]]')
    with pytest.raises(InputError, match="line 2"):
        load_element(p)
    with pytest.raises(InputError):
        load_element(tmp_path / "missing.json")


def test_load_element_round_trip(tmp_path):
    x = E(1.0, J)
    p = tmp_path / "x.json"
    write_atomic(p, dump_json(element_to_doc(x)))
    assert load_element(p).allclose(x)


def test_jsonable_handles_infinity_and_numpy():
    out = jsonable({"d": math.inf, "a": np.arange(2), "f": np.float64(0.5)})
    assert out == {"d": "inf", "a": [0, 1], "f": 0.5}


def test_reports_serialize():
    u, v = golden_pairs()["c-m2"]
    for obj in (
        decision_to_dict(strong_orth_directsum(u, v)),
        mutual_to_dict(mutual_strong_orth(*golden_pairs()["ip-pi"])),
        path_to_dict(route(u, v)),
        lower_bound_to_dict(c_m2_distance4(u, v)),
    ):
        json.loads(dump_json(obj))
    d = path_to_dict(route(u, v))
    assert d["length"] == 4
