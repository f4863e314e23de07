import json
from fractions import Fraction

import pytest

from cpa.expression import Max, Min, leaf
from cpa.serialization import cpa_from_dict, cpa_from_json, cpa_to_dict, cpa_to_json
from utils.exceptions import CpaParseError


def test_fixture_round_trip(fixtures_dir):
    text = (fixtures_dir / "fig1.json").read_text()
    expression = cpa_from_json(text)
    assert cpa_to_dict(expression) == json.loads(text)


def test_rationals_are_written_reduced():
    expression = Min((leaf(["2/4", "-3"], "6/3"), leaf([0, 0], 0)))
    data = cpa_to_dict(expression)
    assert data["d"] == 2
    assert data["expr"]["args"][0] == {"op": "leaf", "grad": ["1/2", "-3"], "offset": "2"}


def test_json_text_is_parsed_exactly():
    expression = cpa_from_json(cpa_to_json(Max((leaf(["1/3"], 0), leaf([-1], "1/7")))))
    assert expression((Fraction(3),)) == 1


@pytest.mark.parametrize("document", [
    {"d": 1, "expr": {"op": "leaf", "grad": ["1.5"], "offset": "0"}},
    {"d": 1, "expr": {"op": "leaf", "grad": ["1/0"], "offset": "0"}},
    {"d": 1, "expr": {"op": "avg", "args": []}},
    {"d": 1, "expr": {"op": "min", "args": [{"op": "leaf", "grad": ["1"], "offset": "0"}]}},
    {"d": 2, "expr": {"op": "leaf", "grad": ["1"], "offset": "0"}},
    {"d": 0, "expr": {"op": "leaf", "grad": ["1"], "offset": "0"}},
    {"d": 1, "expr": {"op": "leaf", "grad": [1], "offset": "0"}},
    {"d": 1, "expr": {"op": "leaf", "grad": ["1"], "offset": "0", "extra": True}},
])
def test_malformed_documents(document):
    with pytest.raises(CpaParseError):
        cpa_from_dict(document)


def test_gradient_length_error_names_the_position():
    document = {"d": 2, "expr": {"op": "max", "args": [
        {"op": "leaf", "grad": ["1", "0"], "offset": "0"},
        {"op": "leaf", "grad": ["1"], "offset": "0"},
    ]}}
    with pytest.raises(CpaParseError) as info:
        cpa_from_dict(document)
    assert info.value.position == "expr.args.1.grad"


def test_invalid_json_text():
    with pytest.raises(CpaParseError):
        cpa_from_json("{not json")
