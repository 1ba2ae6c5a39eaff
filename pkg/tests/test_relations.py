import pytest

from crring import CORRUPTIONS, CRRing
from errors import RingError
from relations import (IR, ITCART, RELATION_SETS, check_relation, contextual_suite, cr_relation_suite,
                       format_relations, relation_set)


def test_ir_holds_on_every_instance(any_ring):
    report = cr_relation_suite(any_ring, "ir", samples=30, seed=1)
    assert report.passed, [r.name for r in report.results if not r.passed]
    assert [r.name for r in report.results] == IR.names()
    assert report.suite == "relations:ir"


def test_itcart_holds_on_every_instance(any_ring):
    report = cr_relation_suite(any_ring, "itcart", seed=2)
    assert report.passed
    assert all(r.checked == 1 for r in report.results)


def test_itcart_is_part_of_ir():
    assert set(ITCART.names()) <= set(IR.names())
    assert set(RELATION_SETS) == {"itcart", "ir", "classical"}


def test_classical_set(w3f3, formal_eta):
    assert cr_relation_suite(w3f3, "classical", samples=30).passed
    with pytest.raises(RingError):
        relation_set("classical", formal_eta)
    with pytest.raises(RingError):
        cr_relation_suite(formal_eta, "classical")


def test_set_names_are_normalised():
    assert relation_set("IT_CART") is ITCART
    with pytest.raises(RingError):
        relation_set("koszul")


@pytest.mark.parametrize("rule", list(CORRUPTIONS))
def test_each_corruption_is_caught(w3f3, rule):
    report = cr_relation_suite(w3f3, "ir", samples=30, seed=3, engine=CRRing(w3f3, rule))
    assert not report.passed
    failed = [r for r in report.results if not r.passed]
    assert all(r.counterexample is not None for r in failed)


def test_counterexample_shows_the_word(w3f3):
    report = cr_relation_suite(w3f3, "ir", engine=CRRing(w3f3, "fv"))
    fv = next(r for r in report.results if r.name == "fv")
    assert not fv.passed
    assert fv.counterexample.word == "f*v"
    assert fv.counterexample.lhs == "4"
    assert fv.counterexample.rhs == "3"
    assert fv.checked == 1


def test_scalar_relations_record_the_instantiation(w2f2):
    report = cr_relation_suite(w2f2, "ir", samples=30, engine=CRRing(w2f2, "xv"))
    xv = next(r for r in report.results if r.name == "xv")
    assert not xv.passed
    assert xv.counterexample.instantiation[0].startswith("x = ")


def test_single_relation_in_context(formal_eta):
    engine = CRRing(formal_eta)
    fdv = RELATION_SETS["ir"].relations[4]
    assert fdv.name == "fdv"
    assert check_relation(engine, fdv) is None


@pytest.mark.parametrize("fixture", ["formal_eta", "w2f2"])
def test_relations_hold_in_context(request, fixture):
    ring = request.getfixturevalue(fixture)
    report = contextual_suite(ring, "ir", max_index=2, seed=4)
    assert report.passed
    assert report.samples == 100
    assert report.suite == "context:ir"


def test_format_relations():
    lines = format_relations(ITCART)
    assert lines[0] == "fv: f*v = p"
    assert len(lines) == 5
