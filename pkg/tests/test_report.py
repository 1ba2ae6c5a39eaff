from crring import cr_basis
from report import render_basis, render_suite
from schemas import CoefficientRingDescriptor, Counterexample, RelationResult, SuiteReport


def _report(*results):
    return SuiteReport(suite="relations:ir", ring=CoefficientRingDescriptor(prime=2, truncation=2), seed=7,
                       samples=5, results=list(results))


def test_passing_suite():
    report = _report(RelationResult(name="fv", relation="f*v = p", checked=1))
    assert render_suite(report).splitlines() == [
        "relations:ir over W_2(F_2) (seed 7, samples 5)",
        "PASS fv: f*v = p [1 checked]",
        "all passed",
    ]


def test_failing_suite_shows_the_counterexample():
    failure = Counterexample(word="x*v", instantiation=["x = 3"], lhs="2*v", rhs="v*3")
    report = _report(
        RelationResult(name="fv", relation="f*v = p", checked=1),
        RelationResult(name="xv", relation="x*v = v*F(x)", checked=2, passed=False, counterexample=failure),
    )
    assert not report.passed
    assert render_suite(report).splitlines() == [
        "relations:ir over W_2(F_2) (seed 7, samples 5)",
        "PASS fv: f*v = p [1 checked]",
        "FAIL xv: x*v = v*F(x) [2 checked]",
        "  counterexample: x*v",
        "    x = 3",
        "    lhs = 2*v",
        "    rhs = v*3",
        "FAILED",
    ]


def test_basis_listing():
    lines = render_basis(cr_basis(1), 1).splitlines()
    assert lines[0] == "# basis monomials, index <= 1: 6"
    assert lines[1:] == ["1  (degree 0)", "v  (degree 0)", "d  (degree 1)", "d*v  (degree 1)",
                         "f  (degree 0)", "f*d  (degree 1)"]


def test_basis_listing_by_degree():
    lines = render_basis(cr_basis(2, 1), 2, 1).splitlines()
    assert lines[0] == "# basis monomials, index <= 2, degree 1: 5"
    assert len(lines) == 6
