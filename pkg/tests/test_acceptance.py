"""
End-to-end properties of the engine, one test per acceptance property
"""
import random

import pytest

from action import action_consistency_check, module_tautological
from bases import GaloisField, IntegerBase
from coefficients import ring_make
from crring import CORRUPTIONS, CRRing, cr_basis, cr_degree, cr_ring
from lang import decode, encode, evaluate, format_element
from relations import contextual_suite, cr_relation_suite
from witt import (ghost, teichmuller, universal_family, witt_add, witt_F, witt_from_int, witt_mul, witt_one,
                  witt_V, witt_vector)

IR_RINGS = {
    "W_3(F_2)": dict(prime=2, truncation=3, kind="witt-fp"),
    "W_3(F_3)": dict(prime=3, truncation=3, kind="witt-fp"),
    "W_2(F_9)": dict(prime=3, truncation=2, kind="witt-perfect", field_degree=2),
    "formal-eta": dict(prime=2, kind="formal-eta"),
}
WITT_RINGS = {name: fields for name, fields in IR_RINGS.items() if fields["kind"] != "formal-eta"}


@pytest.mark.parametrize("name", list(IR_RINGS))
def test_ir_relations(name):
    report = cr_relation_suite(ring_make(**IR_RINGS[name]), "ir", samples=100, seed=0)
    assert report.passed
    assert len(report.results) == 9


@pytest.mark.parametrize("name", list(WITT_RINGS))
def test_classical_specialization(name):
    report = cr_relation_suite(ring_make(**WITT_RINGS[name]), "classical", samples=100, seed=0)
    assert report.passed


@pytest.mark.parametrize("max_index", [0, 1, 5, 20])
def test_additive_decomposition(max_index):
    monomials = cr_basis(max_index)
    assert len(monomials) == 2 * (2 * max_index + 1)
    expected = ({("v", i) for i in range(1, max_index + 1)} | {("one", 0)}
                | {("dv", i) for i in range(max_index + 1)}
                | {("f", j) for j in range(1, max_index + 1)} | {("fd", j) for j in range(1, max_index + 1)})
    assert {(m.shape, m.index) for m in monomials} == expected


@pytest.mark.parametrize("name", ["W_2(F_2)", "W_3(F_3)", "formal-eta"])
def test_associativity_and_grading(name):
    fields = dict(prime=2, truncation=2) if name == "W_2(F_2)" else IR_RINGS[name]
    ring = ring_make(**fields)
    R = cr_ring(ring)
    rng = random.Random(40)
    for _ in range(1000):
        a, b, c = (R.random_element(rng, support=4) for _ in range(3))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    for _ in range(200):
        da, db = rng.choice([0, 1]), rng.choice([0, 1])
        product = R.mul(R.random_element(rng, degree=da), R.random_element(rng, degree=db))
        assert set(cr_degree(product)) <= {da + db}


@pytest.mark.parametrize("p", [2, 3])
def test_ghost_oracle(p):
    Z = IntegerBase()
    rng = random.Random(p)
    for _ in range(500):
        a = witt_vector(p, Z, [Z.random(rng) for _ in range(4)])
        b = witt_vector(p, Z, [Z.random(rng) for _ in range(4)])
        assert ghost(witt_add(a, b)) == tuple(x + y for x, y in zip(ghost(a), ghost(b)))
        assert ghost(witt_mul(a, b)) == tuple(x * y for x, y in zip(ghost(a), ghost(b)))
    assert universal_family("P", p, 2)[1].as_dict() == {(p, 0, 0, 1): 1, (0, 1, p, 0): 1, (0, 1, 0, 1): p}
    assert str(universal_family("S", 2, 2)[1]) == "-x0*y0 + x1 + y1"


@pytest.mark.parametrize("base", [GaloisField(3), GaloisField(3, 2)], ids=["F_3", "F_9"])
def test_witt_identities(base):
    rng = random.Random(41)
    p, n = 3, 3
    p_times = witt_from_int(p, p, n, base)
    assert witt_V(witt_one(p, n, base)) == p_times
    for _ in range(200):
        x = witt_vector(p, base, [base.random(rng) for _ in range(n)])
        y = witt_vector(p, base, [base.random(rng) for _ in range(n)])
        assert witt_F(witt_V(x)) == witt_mul(p_times, x)
        assert witt_mul(witt_V(x), y) == witt_V(witt_mul(x, witt_F(y)))
        s, t = base.random(rng), base.random(rng)
        assert witt_mul(teichmuller(s, p, n, base), teichmuller(t, p, n, base)) == teichmuller(base.mul(s, t), p, n, base)


@pytest.mark.parametrize("fields", [IR_RINGS["W_3(F_3)"], IR_RINGS["formal-eta"]], ids=["W_3(F_3)", "formal-eta"])
def test_action_consistency(fields):
    report = action_consistency_check(module_tautological(ring_make(**fields)), samples=500, max_word_length=8)
    assert report.passed


@pytest.mark.parametrize("name", list(IR_RINGS))
def test_contextual_soundness(name):
    ring = ring_make(**IR_RINGS[name])
    report = contextual_suite(ring, "ir", max_index=3, seed=0)
    assert report.passed


@pytest.mark.parametrize("name", list(IR_RINGS))
def test_round_trips(name):
    ring = ring_make(**IR_RINGS[name])
    R = cr_ring(ring)
    rng = random.Random(42)
    for _ in range(200):
        e = R.random_element(rng)
        text = format_element(e)
        assert evaluate(text, ring) == e
        assert format_element(evaluate(text, ring)) == text
        assert decode(encode(e).model_dump_json()) == e


@pytest.mark.parametrize("rule", list(CORRUPTIONS))
def test_negative_controls(rule):
    ring = ring_make(**IR_RINGS["W_3(F_3)"])
    engine = CRRing(ring, rule)
    caught = (not cr_relation_suite(ring, "ir", samples=100, engine=engine).passed
              or not action_consistency_check(module_tautological(ring), samples=500, engine=engine).passed)
    assert caught
