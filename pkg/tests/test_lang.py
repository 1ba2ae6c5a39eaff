import json
import random

import pytest

from crring import cr_ring
from errors import DocumentError, ParseError
from lang import (Generator, IntLiteral, Power, Product, Sum, TowerLiteral, decode, encode, eval_ast, evaluate,
                  format_element, parse, parse_scalar, parse_witt_coords, tokenize)


class TestParser:
    def test_products_and_sums(self, w2f2):
        assert parse("f*v", w2f2) == Product(Generator("f"), Generator("v"))
        assert parse("2 + v^3", w2f2) == Sum(IntLiteral(2), Power(Generator("v"), 3))

    def test_juxtaposition(self, w2f2):
        assert parse("fdv", w2f2) == parse("f*d*v", w2f2)
        assert parse("2v", w2f2) == parse("2*v", w2f2)

    def test_tower_literal(self, formal_eta):
        assert parse("u12", formal_eta) == TowerLiteral(12)

    def test_positions(self):
        assert [t.position for t in tokenize("f * eta")] == [0, 2, 4, 7]

    @pytest.mark.parametrize("text, position", [
        ("v^", 2),
        ("v + $", 4),
        ("", 0),
        ("(v + f", 6),
        ("v f)", 3),
        ("u", 1),
        ("W[1,", 4),
        ("v\N{SUPERSCRIPT TWO}", 1),
        ("u\N{SUPERSCRIPT ONE}", 1),
    ])
    def test_errors_carry_positions(self, w2f2, text, position):
        with pytest.raises(ParseError) as info:
            parse(text, w2f2)
        assert info.value.position == position

    def test_witt_literal_length(self, w3f3):
        with pytest.raises(ParseError) as info:
            parse("W[1,2]", w3f3)
        assert info.value.position == 0
        assert "coordinates" in info.value.message

    def test_witt_literal_coordinates_stay_in_the_field(self, w3f3):
        with pytest.raises(ParseError) as info:
            parse("1 + W[3,0,0]", w3f3)
        assert info.value.position == 4
        assert "does not encode" in info.value.message

    def test_tower_literal_needs_formal_eta(self, w3f3):
        with pytest.raises(ParseError) as info:
            parse("2*u1", w3f3)
        assert info.value.position == 2


class TestEvaluate:
    def test_defining_relations(self, w3f3, formal_eta):
        assert format_element(evaluate("f*v", w3f3)) == "3"
        assert format_element(evaluate("fdv", w3f3)) == "d"
        assert format_element(evaluate("fdv", formal_eta)) == "eta + d"
        assert format_element(evaluate("d*d", formal_eta)) == "d*eta"

    def test_eta_vanishes_classically(self, w3f3):
        assert evaluate("eta", w3f3).is_zero()
        assert evaluate("eta*d + v", w3f3) == cr_ring(w3f3).gen_v

    def test_arithmetic(self, w2f2):
        assert format_element(evaluate("v - v", w2f2)) == "0"
        assert format_element(evaluate("-1", w2f2)) == "3"
        assert format_element(evaluate("(v + f)^2", w2f2)) == "v^2 + f^2"
        assert format_element(evaluate("v^0", w2f2)) == "1"

    def test_eval_ast_of_a_parsed_tree(self, w3f3):
        tree = Sum(Product(Generator("f"), Generator("v")), Generator("d"))
        assert tree == parse("f*v + d", w3f3)
        assert format_element(eval_ast(tree, w3f3)) == "3 + d"

    def test_coefficient_placement(self, w2f9):
        assert format_element(evaluate("W[3,0]*v", w2f9)) == "v*W[6,0]"
        assert format_element(evaluate("f*W[3,0]", w2f9)) == "W[6,0]*f"

    def test_printing_is_not_commutative(self, w2f2):
        R = cr_ring(w2f2)
        assert format_element(R.mul(R.gen_v, R.gen_d)) == "2*d*v"
        assert format_element(R.mul(R.gen_d, R.gen_v)) == "d*v"


def test_printed_forms_parse_back(any_ring):
    R = cr_ring(any_ring)
    rng = random.Random(31)
    for _ in range(200):
        e = R.random_element(rng)
        assert evaluate(format_element(e), any_ring) == e


# ============================================================================
# Structured documents
# ============================================================================


def test_documents_decode_to_the_same_element(any_ring):
    R = cr_ring(any_ring)
    rng = random.Random(32)
    for _ in range(50):
        e = R.random_element(rng)
        document = encode(e)
        assert decode(document) == e
        assert decode(document.model_dump_json()) == e


def test_document_layout(w2f2):
    document = encode(evaluate("v*3 + 2*f*d", w2f2))
    data = json.loads(document.model_dump_json())
    assert data["ring"] == {"prime": 2, "truncation": 2, "kind": "witt-fp"}
    assert data["v"] == [{"shape": "v", "index": 1, "coefficient": [{"degree": 0, "value": [1, 1]}]}]
    assert data["fd"][0]["index"] == 1
    assert data["dv"] == [] and data["f"] == []


def _document(**families):
    return {"ring": {"prime": 2, "truncation": 2}, **families}


def _term(shape, index, value=1, degree=0):
    return {"shape": shape, "index": index, "coefficient": [{"degree": degree, "value": value}]}


@pytest.mark.parametrize("document", [
    "not a document",
    {"ring": {"prime": 4, "truncation": 2}},
    _document(f=[_term("f", 0)]),
    _document(v=[_term("v", 1), _term("v", 1)]),
    _document(v=[_term("f", 1)]),
    _document(dv=[_term("dv", 0, degree=1)]),
    _document(v=[_term("v", 0, value=[1, 0, 1])]),
])
def test_malformed_documents(document):
    with pytest.raises(DocumentError):
        decode(document)


def test_integer_coefficients_in_documents(w2f2):
    assert decode(_document(v=[_term("v", 0, value=3)])) == evaluate("3", w2f2)


# ============================================================================
# Scalars and Witt coordinates
# ============================================================================


def test_parse_scalar(w3f3, formal_eta):
    assert parse_scalar("W[1,2,0]", w3f3) == w3f3.witt_literal([1, 2, 0])
    assert parse_scalar("1 + u1", formal_eta) == formal_eta.add(formal_eta.one, formal_eta.tower_literal(1))
    assert parse_scalar("0", w3f3) == w3f3.zero
    with pytest.raises(ParseError):
        parse_scalar("v", w3f3)


def test_parse_witt_coords():
    assert parse_witt_coords("W[1,-2,0]") == (1, -2, 0)
    assert parse_witt_coords(" W[ 7 ] ") == (7,)
    with pytest.raises(ParseError):
        parse_witt_coords("5")
    with pytest.raises(ParseError) as info:
        parse_witt_coords("W[1] 2")
    assert info.value.position == 5
