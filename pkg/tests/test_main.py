import json

import pytest
from click.testing import CliRunner

from crring import cr_ring
from lang import decode
from main import cli, run


@pytest.fixture
def invoke():
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(cli, list(args))

    return _invoke


class TestElements:
    def test_normalize(self, invoke):
        result = invoke("--prime", "3", "--trunc", "2", "normalize", "f*v")
        assert result.exit_code == 0
        assert result.output.strip() == "3"

    def test_normalize_over_formal_eta(self, invoke):
        result = invoke("--prime", "2", "--coeff", "formal-eta", "normalize", "fdv")
        assert result.exit_code == 0
        assert result.output.strip() == "eta + d"

    def test_mul_and_add(self, invoke):
        assert invoke("--prime", "2", "mul", "v", "d").output.strip() == "2*d*v"
        assert invoke("--prime", "2", "add", "v", "v").output.strip() == "2*v"

    def test_degree(self, invoke):
        result = invoke("--prime", "2", "--coeff", "formal-eta", "degree", "1 + d")
        assert result.output.splitlines() == ["0: 1", "1: d"]
        assert invoke("degree", "0").output.strip() == "0"

    def test_structured_output(self, invoke):
        result = invoke("--prime", "2", "--trunc", "3", "--output", "structured", "normalize", "v")
        assert result.exit_code == 0
        e = decode(json.loads(result.output))
        assert e == cr_ring(e.ring).gen_v
        assert json.loads(result.output)["ring"] == {"prime": 2, "truncation": 3, "kind": "witt-fp"}

    @pytest.mark.parametrize("args", [
        ("normalize", "v^"),
        ("--prime", "4", "normalize", "v"),
        ("--trunc", "0", "normalize", "v"),
        ("--coeff", "formal-eta", "normalize", "v"),
        ("normalize", "u1"),
        ("--coeff", "bogus", "normalize", "v"),
        ("--prime", "3", "--trunc", "1", "normalize", "W[5]"),
        ("normalize", "v\N{SUPERSCRIPT TWO}"),
    ])
    def test_bad_input_exits_with_two(self, invoke, args):
        result = invoke(*args)
        assert result.exit_code == 2
        assert "Error" in result.output

    def test_parse_errors_report_the_position(self, invoke):
        assert "position 2" in invoke("normalize", "v^").output


class TestListings:
    def test_table_matches_golden(self, invoke, golden):
        result = invoke("--prime", "2", "--trunc", "2", "table", "--max", "2")
        assert result.exit_code == 0
        assert result.output.splitlines() == golden("table_w2_f2_m2.txt")

    def test_basis(self, invoke):
        result = invoke("basis", "--max", "3")
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "# basis monomials, index <= 3: 14"

    def test_structured_basis(self, invoke):
        result = invoke("--output", "structured", "basis", "--max", "0")
        assert [json.loads(line) for line in result.output.splitlines()] == [
            {"shape": "one", "index": 0, "degree": 0}, {"shape": "dv", "index": 0, "degree": 1}]

    def test_relations(self, invoke):
        result = invoke("relations", "--rules", "itcart")
        assert result.output.splitlines()[0] == "fv: f*v = p"
        assert len(result.output.splitlines()) == 5


class TestVerification:
    def test_verify_passes(self, invoke):
        result = invoke("verify", "--samples", "20")
        assert result.exit_code == 0
        assert result.output.splitlines()[-1] == "all passed"

    @pytest.mark.parametrize("ring_args", [
        ("--prime", "2", "--trunc", "3"),
        ("--prime", "3", "--trunc", "3"),
        ("--prime", "3", "--trunc", "2", "--coeff", "witt-perfect", "--field-degree", "2"),
        ("--prime", "3", "--trunc", "2", "--coeff", "zmod-pn"),
        ("--prime", "2", "--coeff", "formal-eta"),
    ], ids=["W_3(F_2)", "W_3(F_3)", "W_2(F_9)", "Z/9", "formal-eta"])
    def test_default_verify_passes_on_every_instance(self, invoke, ring_args):
        result = invoke(*ring_args, "verify")
        assert result.exit_code == 0
        assert result.output.splitlines()[-1] == "all passed"

    def test_verify_with_context(self, invoke):
        assert invoke("--prime", "2", "--coeff", "formal-eta", "verify", "--samples", "10", "--context").exit_code == 0

    def test_corruption_fails_verification(self, invoke):
        result = invoke("verify", "--corrupt", "fv")
        assert result.exit_code == 1
        assert "FAIL fv" in result.output
        assert result.output.splitlines()[-1] == "FAILED"

    def test_classical_needs_a_classical_ring(self, invoke):
        assert invoke("--prime", "3", "verify", "--rules", "classical", "--samples", "10").exit_code == 0
        assert invoke("--prime", "2", "--coeff", "formal-eta", "verify", "--rules", "classical").exit_code == 2

    def test_consistency(self, invoke):
        assert invoke("consistency", "--samples", "100").exit_code == 0
        assert invoke("--prime", "2", "consistency", "--module", "regular", "--samples", "30", "--len", "4").exit_code == 0

    def test_corrupted_operator_fails_consistency(self, invoke):
        result = invoke("consistency", "--corrupt-op", "F")
        assert result.exit_code == 1
        assert "counterexample" in result.output

    def test_structured_report(self, invoke):
        result = invoke("--output", "structured", "verify", "--rules", "itcart")
        report = json.loads(result.output)
        assert report["suite"] == "relations:itcart"
        assert [r["name"] for r in report["results"]] == ["fv", "dd", "df", "vd", "fdv"]


class TestAction:
    def test_act_on_a_scalar(self, invoke):
        result = invoke("--prime", "3", "act", "f*v", "--on", "1")
        assert result.output.strip() == "3"

    def test_act_right_to_left(self, invoke):
        assert invoke("--prime", "2", "--coeff", "formal-eta", "act", "d", "--on", "u1").output.strip() == "eta"
        assert invoke("--prime", "2", "--coeff", "formal-eta", "act", "dv", "--on", "1").output.strip() == "eta"

    def test_act_on_the_regular_module(self, invoke):
        assert invoke("--prime", "2", "act", "v", "--on", "d", "--module", "regular").output.strip() == "2*d*v"


class TestWitt:
    def test_mul(self, invoke):
        result = invoke("--prime", "2", "witt", "mul", "W[1,1]", "W[1,1]")
        assert result.output.strip() == "W[1,4]"

    def test_add_over_a_field(self, invoke):
        assert invoke("--prime", "2", "witt", "add", "W[1,0]", "W[1,0]", "--base", "gf:2").output.strip() == "W[0,1]"

    def test_ghost(self, invoke):
        assert invoke("--prime", "2", "witt", "ghost", "W[1,1]").output.strip() == "(1, 3)"

    def test_teichmuller(self, invoke):
        assert invoke("--prime", "3", "--trunc", "3", "witt", "teich", "5").output.strip() == "W[5,0,0]"

    def test_frobenius(self, invoke):
        assert invoke("--prime", "2", "witt", "frob", "W[3,1]").output.strip() == "W[11]"
        assert invoke("--prime", "2", "witt", "frob", "W[3]").exit_code == 2
        assert invoke("--prime", "2", "witt", "versch", "W[3,1]").output.strip() == "W[0,3]"

    def test_polys(self, invoke):
        result = invoke("--prime", "2", "--trunc", "2", "witt", "polys", "--family", "S")
        assert result.output.splitlines() == ["S_0 = x0 + y0", "S_1 = -x0*y0 + x1 + y1"]

    def test_bad_base(self, invoke):
        assert invoke("--prime", "2", "witt", "neg", "W[1]", "--base", "gf:6").exit_code == 2

    @pytest.mark.parametrize("args", [
        ("ghost", "W[1,1]"),
        ("versch", "W[1,1]"),
        ("teich", "2"),
        ("add", "W[1,1]", "W[1,1]"),
    ])
    def test_non_prime_is_rejected(self, invoke, args):
        result = invoke("--prime", "4", "witt", *args)
        assert result.exit_code == 2
        assert "4 is not a prime" in result.output


def test_run_returns_exit_codes(capsys):
    assert run(["--prime", "3", "normalize", "f*v"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert run(["verify", "--corrupt", "df"]) == 1
    assert run(["--prime", "4", "normalize", "v"]) == 2
    assert run(["normalize", "--no-such-flag"]) == 2
