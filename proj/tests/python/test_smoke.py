import json

import pytest

import supergc


def test_grassmann_basics():
    A = supergc.Algebra(8)
    x1, x2 = A.gen(1), A.gen(2)
    assert x2 * x1 == -(x1 * x2)
    assert (x1 * x1).is_zero()
    assert (A.one() + x1 * x2).grade() == "even"
    assert (x1 + x1 * x2 * A.gen(3)).grade() == "odd"

    s = x1 * x2
    assert s.exp() == A.one() + s
    assert s.sin() == s

    a = A.scalar("2") + x1 * x2
    assert a * a.invert() == A.one()
    with pytest.raises(supergc.SgcError):
        x1.invert()


def test_scenarios_listed():
    names = supergc.scenario_names()
    assert set(names) == {
        "classical-gc",
        "bosonic-susy-gc",
        "fermionic-susy-gc",
        "susy-sine-gordon",
    }
    assert "Dp(Dm(Phi))" in supergc.scenario_text("susy-sine-gordon")


def test_expression_engine():
    ws = supergc.Workspace("susy-sine-gordon")
    tp_tm = ws.parse("tm*tp")
    assert str(tp_tm) == "-tp*tm"
    assert ws.parse("dtp(tp*tm)") == ws.parse("tm")

    phi = ws.parse("Phi")
    lhs = phi.diff("Dp").diff("Dp")
    rhs = ws.parse("-I*dxp(Phi)")
    assert lhs == rhs

    assert ws.parse("sin(Phi)*sin(Phi) + cos(Phi)*cos(Phi) - 1").is_zero()

    comps = ws.parse("Phi").diff("Dp").components()
    assert str(comps[0]) == "phi1"


def test_verify_sine_gordon():
    rep = supergc.verify("susy-sine-gordon", checks=("zcc", "classify", "spectral"))
    assert rep["overall"] == "pass"
    assert rep["verdict"] == "CandidateIntegrable"
    assert rep["witnesses"] == ["K"]
    ids = {c["id"] for c in rep["checks"]}
    assert "spectral.expected-matrices" in ids


def test_verify_classical_json_shape():
    rep = supergc.verify("classical-gc", checks="classify")
    assert rep["scenario"] == "classical-gc"
    assert rep["verdict"] == "NotIntegrable"
    for c in rep["checks"]:
        assert c["status"] in ("pass", "fail", "skip")
    # determinism
    rep2 = supergc.verify("classical-gc", checks="classify")
    assert json.dumps(rep) == json.dumps(rep2)


def test_inline_scenario_workspace():
    text = """name tiny
coords xp even, xm even, tp odd, tm odd

[symbols]
field A even depends(xp,xm,tp,tm) components(auto)
"""
    ws = supergc.Workspace(text)
    assert ws.name == "tiny"
    e = ws.parse("Dp(A)")
    assert e.grade() == "odd"
    with pytest.raises(supergc.SgcError):
        ws.parse("undeclared_thing")
