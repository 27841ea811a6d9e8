from __future__ import annotations

import json

import pytest

import compderiv.cli as cli
from compderiv.cli import decimal_string, main
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- derive -----------------------------------------------------------------------

def test_derive_expression_inputs(capsys):
    code, out, err = run(
        capsys, "derive", "--phi", "x^2", "--psi", "y+1", "--at", "0", "-n", "2"
    )
    assert code == 0
    assert out == "2\n"


def test_derive_sequence_inputs(capsys):
    code, out, _ = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1","1","1"]}',
        "--psi-derivs", '{"derivs":["2","1","1"]}',
        "-n", "3",
    )
    assert code == 0
    assert out == "15\n"


def test_derive_methods_agree_in_json(capsys):
    common = [
        "derive",
        "--phi-derivs", '{"derivs":["1","1","1"]}',
        "--psi-derivs", '{"derivs":["2","1","1"]}',
        "-n", "3",
        "--json",
    ]
    code, out, _ = run(capsys, *common)
    first = json.loads(out)
    code2, out2, _ = run(capsys, *common, "--method", "determinant")
    second = json.loads(out2)
    assert code == code2 == 0
    assert first == {"n": 3, "method": "partition", "value": "15"}
    assert second == {"n": 3, "method": "determinant", "value": "15"}
    assert {k: v for k, v in first.items() if k != "method"} == {
        k: v for k, v in second.items() if k != "method"
    }


def test_derive_method_all_expression_inputs(capsys):
    code, out, _ = run(
        capsys,
        "derive", "--phi", "x^3 + x", "--psi", "2*y^2 + y", "--at", "1",
        "-n", "4", "--method", "all", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["agree"] is True
    assert set(payload["values"]) == {
        "partition", "bell", "determinant", "series", "symbolic"
    }
    assert len(set(payload["values"].values())) == 1


def test_derive_method_all_sequence_inputs_excludes_expr_routes(capsys):
    code, out, _ = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1","1","1"]}',
        "--psi-derivs", '{"derivs":["2","1","1"]}',
        "-n", "3", "--method", "all", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload["values"]) == {"partition", "bell", "determinant"}


def test_derive_series_requires_expressions(capsys):
    code, _, err = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1"]}',
        "--psi-derivs", '{"derivs":["1"]}',
        "-n", "1", "--method", "series",
    )
    assert code == 2
    assert "expression" in err


def test_derive_determinant_needs_order_two(capsys):
    code, _, err = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1"]}',
        "--psi-derivs", '{"derivs":["1"]}',
        "-n", "1", "--method", "determinant",
    )
    assert code == 2
    assert "order >= 2" in err


def test_derive_rejects_mixed_input_styles(capsys):
    code, _, err = run(
        capsys,
        "derive", "--phi", "x", "--psi", "y", "--at", "0",
        "--phi-derivs", '{"derivs":["1"]}',
        "-n", "1",
    )
    assert code == 2
    assert "not both" in err


def test_derive_rejects_malformed_json(capsys):
    code, _, err = run(
        capsys,
        "derive", "--phi-derivs", "{nope", "--psi-derivs", '{"derivs":["1"]}', "-n", "1",
    )
    assert code == 2
    assert "invalid JSON" in err


def test_derive_rejects_bad_expression(capsys):
    code, _, err = run(
        capsys, "derive", "--phi", "x^-1", "--psi", "y", "--at", "0", "-n", "1"
    )
    assert code == 2
    assert "syntax error" in err


def test_derive_reports_short_sequences(capsys):
    code, _, err = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1"]}',
        "--psi-derivs", '{"derivs":["1"]}',
        "-n", "3",
    )
    assert code == 2
    assert "too short" in err


def test_derive_decimal_display(capsys):
    code, out, _ = run(
        capsys,
        "derive", "--phi", "x^2", "--psi", "y + 1/3", "--at", "0",
        "-n", "1", "--decimal", "4",
    )
    assert code == 0
    assert out == "0.6667\n"


def test_derive_show_expansion_prints_formal_polynomial(capsys):
    code, out, _ = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1","1","1"]}',
        "--psi-derivs", '{"derivs":["2","1","1"]}',
        "-n", "3", "--method", "determinant", "--show-expansion",
    )
    assert code == 0
    assert out == "8*Phi^3 + 6*Phi^2 + 1*Phi\n15\n"


def test_derive_show_expansion_requires_determinant_method(capsys):
    code, _, err = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1","1"]}',
        "--psi-derivs", '{"derivs":["2","1"]}',
        "-n", "2", "--show-expansion",
    )
    assert code == 2
    assert "determinant" in err


# --- expand -----------------------------------------------------------------------

def test_expand_order_one(capsys):
    code, out, _ = run(capsys, "expand", "-n", "1")
    assert code == 0
    assert out == "m=(1) coeff=1 p=1 psi=psi(1)\n"


def test_expand_order_four_rows_and_coefficients(capsys):
    code, out, _ = run(capsys, "expand", "-n", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    coefficients = [line.split("coeff=")[1].split()[0] for line in lines]
    # Canonical order runs from the single-part partition to all-ones.
    assert coefficients == ["1", "4", "3", "6", "1"]
    assert lines[0].startswith("m=(0,0,0,1)")
    assert lines[-1].startswith("m=(4,0,0,0)")


def test_expand_order_ten_has_42_rows(capsys):
    code, out, _ = run(capsys, "expand", "-n", "10")
    assert code == 0
    assert len(out.splitlines()) == 42


def test_expand_json_schema(capsys):
    code, out, _ = run(capsys, "expand", "-n", "4", "--json")
    assert code == 0
    terms = json.loads(out)
    assert len(terms) == 5
    assert terms[0] == {
        "m": [0, 0, 0, 1],
        "coefficient": "1",
        "phi_order": 1,
        "psi_powers": [[4, 1]],
    }
    assert terms[3] == {
        "m": [2, 1, 0, 0],
        "coefficient": "6",
        "phi_order": 3,
        "psi_powers": [[1, 2], [2, 1]],
    }


def test_expand_is_deterministic(capsys):
    _, first, _ = run(capsys, "expand", "-n", "6")
    _, second, _ = run(capsys, "expand", "-n", "6")
    assert first == second


# --- check ------------------------------------------------------------------------

def test_check_small_run_passes(capsys):
    code, out, _ = run(capsys, "check", "--max-n", "4", "--trials", "10", "--seed", "7")
    assert code == 0
    assert "all routes agree" in out


def test_check_order_one_trivially_passes(capsys):
    code, out, _ = run(capsys, "check", "--max-n", "1", "--trials", "5")
    assert code == 0


def test_check_same_seed_is_byte_identical(capsys):
    args = ("check", "--max-n", "3", "--trials", "8", "--seed", "123")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_check_json_is_schema_stable(capsys):
    code, out, _ = run(
        capsys, "check", "--max-n", "3", "--trials", "5", "--seed", "9", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["seed"] == 9
    assert [row["n"] for row in payload["orders"]] == [1, 2, 3]
    assert all(row["ok"] for row in payload["orders"])


def test_check_detects_a_corrupted_route(capsys, monkeypatch):
    # Mutation test: break one route and expect the alarm exit code plus a
    # witness on stderr.
    from compderiv import composition

    real = composition.derivative_bell

    def corrupted(phi, psi, n):
        return real(phi, psi, n) + 1

    monkeypatch.setattr(cli, "derivative_bell", corrupted)
    code, _, err = run(capsys, "check", "--max-n", "2", "--trials", "3", "--seed", "5")
    assert code == 3
    assert "disagreement" in err
    assert "bell" in err
    assert "phi" in err and "psi" in err


def test_derive_all_detects_disagreement(capsys, monkeypatch):
    monkeypatch.setattr(cli, "derivative_bell", lambda phi, psi, n: Fraction(999))
    code, out, err = run(
        capsys,
        "derive",
        "--phi-derivs", '{"derivs":["1","1","1"]}',
        "--psi-derivs", '{"derivs":["2","1","1"]}',
        "-n", "3", "--method", "all",
    )
    assert code == 3
    assert "disagreement" in err
    assert "999" in err


# --- bell -------------------------------------------------------------------------

def test_bell_number_default_ones(capsys):
    code, out, _ = run(capsys, "bell", "-n", "5")
    assert code == 0
    assert out == "52\n"


def test_bell_partial_value(capsys):
    code, out, _ = run(capsys, "bell", "-n", "4", "-k", "2")
    assert code == 0
    assert out == "7\n"


def test_bell_order_one(capsys):
    code, out, _ = run(capsys, "bell", "-n", "1")
    assert code == 0
    assert out == "1\n"


def test_bell_with_custom_derivatives(capsys):
    code, out, _ = run(
        capsys, "bell", "-n", "4", "-k", "2", "--psi-derivs", '{"derivs":["2","3","5"]}'
    )
    assert code == 0
    assert out == "67\n"  # 4*2*5 + 3*3^2


def test_bell_k_above_n_is_usage_error(capsys):
    code, _, err = run(capsys, "bell", "-n", "3", "-k", "4")
    assert code == 2
    assert "k" in err


def test_bell_json(capsys):
    code, out, _ = run(capsys, "bell", "-n", "5", "--json")
    assert json.loads(out) == {"n": 5, "k": None, "value": "52"}


# --- shared flag plumbing ------------------------------------------------------------

def test_usage_error_exit_code_is_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["derive"])  # missing required -n
    assert excinfo.value.code == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2


def test_decimal_string_rounding():
    assert decimal_string(Fraction(2, 3), 4) == "0.6667"
    assert decimal_string(Fraction(-1, 8), 2) == "-0.13"
    assert decimal_string(Fraction(5), 0) == "5"
    assert decimal_string(Fraction(7, 2), 0) == "4"
    assert decimal_string(Fraction(1, 4), 1) == "0.3"
    assert decimal_string(Fraction(123, 1), 3) == "123.000"
