from fractions import Fraction

import pytest

import recmahler


def test_terms_are_exact_python_ints():
    # F_{k+2}; index 200 is far beyond 64 bits
    assert recmahler.term([1, 1], [1, 2], 10) == 144
    assert recmahler.term([1, 1], [1, 2], 200) > 2**64


def test_analyze_pass_and_geometric_fail():
    r = recmahler.analyze([1, 1], [1, 2], place="p:2", point=[1, 2])
    assert r["condition"]["overall"] == "PASS"
    assert r["omega"]["overall"] == "PASS"
    g = recmahler.analyze([1, 2], [1, 2])
    names = {c["name"]: c["verdict"] for c in g["condition"]["implied"] + g["condition"]["clauses"]}
    assert names["not_geometric"] == "FAIL"


def test_theta_at_beta_matches_minus_g_prime():
    theta = recmahler.evaluate("theta", [1, 1], [1, 2], "1/2", x=1, y=Fraction(1, 3))
    g = recmahler.evaluate("G", [1, 1], [1, 2], "1/2", y="1/3", dy=1)
    t = float(theta["coefficients"][0]["value"]["re"])
    gp = float(g["coefficients"][1]["value"]["re"])
    assert t == pytest.approx(-gp, rel=1e-14)


def test_padic_encoding():
    r = recmahler.evaluate("F", [1, 1], [0, 1], 2, x="1/3", place="p:2")
    v = r["coefficients"][0]["value"]
    assert r["backend"] == "padic" and v["p"] == 2 and v["abs_prec"] >= 64


def test_errors_carry_the_code():
    with pytest.raises(recmahler.RecmahlerError) as e:
        recmahler.evaluate("H", [1, 1], [1, 2], "1/2", x="1/3", y=2)
    assert recmahler.error_code(e.value) == "PoleAtY"


def test_suite_and_transfer():
    assert all(c["status"] == "PASS" for c in recmahler.verify_suite())
    assert recmahler.transfer_polynomial("A", 2) == "X1^2 - X2"


def test_relation_and_rank():
    r = recmahler.relation([1, Fraction(1, 2)])
    assert r["outcome"] == "FOUND" and r["relation"] == ["1", "-2"]
    assert recmahler.rank_check("RRR", [2, "1/3"], 2)["full_rank"]


def test_cli_round_trip():
    code, out, _ = recmahler.run_cli("verify", "--suite", "THETA_X0")
    assert code == 0 and recmahler.SCHEMA in out
