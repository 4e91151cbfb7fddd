from fractions import Fraction

import pytest

import ctlab


def test_valuation_and_blowup():
    assert ctlab.valuation("x^2+y^3+z^6", [3, 2, 1])["valuation"] == "6"
    assert ctlab.valuation("x^2+y^3", [3, 2, 1], index=5)["valuation"] == "6/5"
    assert ctlab.valuation("0", [1, 1, 1])["valuation"] == "infinity"
    charts = ctlab.blowup("x^2+y^3+z^6", [3, 2, 1])["charts"]
    assert [c["chart"] for c in charts] == ["U_x", "U_y", "U_z"]
    assert charts[2]["strict"] == "1+x^2+y^3"
    assert charts[0]["action"]["labels"] == [-1, 2, 1]


def test_classify():
    assert ctlab.classify("x^2+y^3+z^4")["type"] == "E6"
    assert ctlab.classify("x^3+y^3+z^3")["verdict"] == "NotDuVal"
    assert ctlab.classify("x^2")["verdict"] == "Undetermined"


def test_bounds():
    b = ctlab.search_bound("x^2+y^3+z^6", cap=8)
    assert b["bound"] == "5/6" and b["weight"] == [3, 2, 1]
    assert ctlab.fraction(b["bound"]) == Fraction(5, 6)
    assert ctlab.smooth_bound("x^2+y^4+z^4")["bound"] == "3/4"
    assert ctlab.smooth_bound("x^2+y^2+z^2")["status"] == "ct=1"
    g = ctlab.gorenstein_bound("x^2+y^3+z^7+t*z")
    assert g["bound"] == "4/5" and g["weight"] == [3, 2, 1, 5]
    assert ctlab.gorenstein_bound("x^2+y^2+z^2+t^2")["status"] == "unhandled"
    assert ctlab.quotient_bound(5, 2, "x*y")["bound"] == "1/5"
    assert ctlab.quotient_bound(3, 1, "z")["type"] == "A2"
    assert ctlab.search_bound("t", phi="x^2", cap=4)["status"] == "no-witness"


def test_certificates():
    zd = ctlab.certify("zd", 30)
    assert zd["constant"] == "5/6" and len(zd["steps"]) == 5
    assert all(s["pair_discrepancy"] == "0" for s in zd["steps"])
    hyp = ctlab.certify("hyp", 7)
    assert hyp["constant"] == "4/5"
    assert hyp["steps"][0]["charts"][3]["singular_point"]["type"] == "mu_5(3,2,-1)"


def test_residues():
    r = ctlab.residues(3, [1, 2, 1, 0], 0, 1)
    assert r["congruence_holds"] and r["anticanonical"] is True
    assert ctlab.residues(4, [1, 3, 1, 2], 2)["series"].startswith("cAx")
    with pytest.raises(ValueError, match="series-pattern"):
        ctlab.residues(3, [2, 2, 1, 0], 0)


def test_audit():
    small = ctlab.audit(corpus="x^2+y^2+z^2\nx^3+y^3+z^3\nx^2+y^3+z^6\n", cap=8)
    assert [e["status"] for e in small["entries"]] == ["ct=1", "bound", "exact"]
    assert small["gap_violations"] == []
    seeded = ctlab.audit(seed=3, per_case=4)
    assert seeded["seed"] == 3 and seeded["gap_violations"] == []
    assert seeded["epsilon_estimate"] == "1/6"


def test_errors():
    with pytest.raises(ctlab.ParseError):
        ctlab.classify("x^2+")
    with pytest.raises(ValueError):
        ctlab.certify("zd", 5)
    with pytest.raises(ValueError):
        ctlab.valuation("x", [1, 1])


def test_run_cli():
    code, out, err = ctlab.run_cli(["classify", "--psi", "x^2+y^3+z^4"])
    assert (code, out, err) == (0, "DuVal E6\n", "")
    code, _, err = ctlab.run_cli(["classify", "--psi", "x^2+"])
    assert code == 2 and err.startswith("error:")
