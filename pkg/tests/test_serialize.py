import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilali.errors import MalformedModel
from hilali.maps import catalog_maps
from hilali.refs import MAP_REFS, SPACE_REFS, resolve
from hilali.serialize import dumps_model, loads_model, map_from_json, space_to_json, to_jsonable
from hilali.spaces import sphere
from conftest import random_map_model


@pytest.mark.parametrize("ref", SPACE_REFS + MAP_REFS)
def test_catalog_round_trip_is_byte_stable(ref):
    model = resolve(ref, 16)
    text = dumps_model(model)
    again = loads_model(text)
    assert again == model
    assert dumps_model(again) == text


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_random_map_round_trip(seed):
    f = random_map_model(random.Random(seed))
    text = dumps_model(f)
    assert loads_model(text) == f and dumps_model(loads_model(text)) == text


def test_rationals_are_lowest_terms_strings():
    f = catalog_maps(12)["degree:4:2"]
    obj = json.loads(dumps_model(f))
    assert obj["pi"]["7"] == [["4"]]
    doc = json.loads(dumps_model(f))
    doc["pi"]["7"] = [["8/2"]]
    assert json.loads(dumps_model(map_from_json(doc)))["pi"]["7"] == [["4"]]


def test_noncanonical_key_order_canonicalizes():
    obj = space_to_json(sphere(4))
    shuffled = {"notes": obj["notes"], "homotopy": {"7": 1, "4": 1}, "homology": {"4": 1, "0": 1},
                "homotopySupport": obj["homotopySupport"], "homologySupport": obj["homologySupport"],
                "name": obj["name"]}
    assert dumps_model(loads_model(json.dumps(shuffled))) == dumps_model(sphere(4))


def test_map_json_may_reference_catalog_spaces():
    doc = {"name": "c", "source": "sphere:2", "target": "point", "H": {"0": [["1"]]}, "pi": {}}
    f = map_from_json(doc, lambda r: resolve(r))
    assert f.source == sphere(2)


@pytest.mark.parametrize("text", [
    "not json",
    '{"name": "x"}',
    '{"name": "x", "homology": {"0": 1}, "homotopy": {}, "homologySupport": {}, "homotopySupport": {}}',
    '{"name": "x", "homology": {"0": -1}, "homotopy": {}, '
    '"homologySupport": {"finiteUpTo": 0}, "homotopySupport": {"finiteUpTo": 0}}',
    '{"name": "x", "homology": {"0": 1, "5": 1}, "homotopy": {}, '
    '"homologySupport": {"finiteUpTo": 2}, "homotopySupport": {"finiteUpTo": 0}}',
])
def test_malformed_models(text):
    with pytest.raises(MalformedModel):
        loads_model(text)


def test_bad_block_shape_is_malformed():
    doc = {"name": "c", "source": space_to_json(sphere(2)), "target": space_to_json(sphere(2)),
           "H": {"0": [["1"]], "2": [["1", "2"]]}, "pi": {}}
    with pytest.raises(MalformedModel):
        map_from_json(doc)


def test_reports_encode_rationals_as_strings():
    from fractions import Fraction
    assert to_jsonable({"a": Fraction(2, 4), "b": float("inf")}) == {"a": "1/2", "b": "inf"}
