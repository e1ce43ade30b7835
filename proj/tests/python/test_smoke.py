import numpy as np
import pytest

aniso = pytest.importorskip("_aniso")

DARCY = '{"dim": 2, "terms": [{"kind": "plain", "alpha": 0.0, "A": [[1.0, 0.0], [0.0, 1.0]]}]}'
TWO_TERM = """{"dim": 2, "terms": [
  {"kind": "plain", "alpha": 0.0, "A": [[1.0, 0.0], [0.0, 1.0]]},
  {"kind": "plain", "alpha": 1.0, "A": [[1.0, 0.0], [0.0, 1.0]]}]}"""
INDEFINITE = '{"dim": 2, "trilinear": [[[1.0, 0.0], [0.0, 5.0]], [[5.0, 0.0], [0.0, 1.0]]]}'


def test_law_eval_roundtrip():
    law = aniso.Law.from_json(TWO_TERM)
    u = np.array([1.0, 2.0])
    out = law.eval(u)
    # u + |u| u
    expected = u + np.linalg.norm(u) * u
    assert np.allclose(out, expected, atol=1e-14)
    again = aniso.Law.from_json(law.to_json())
    assert np.allclose(again.eval(u), out)


def test_certify_two_term_law():
    cert = aniso.certify(aniso.Law.from_json(TWO_TERM))
    assert cert.verdict == aniso.Verdict.PowerMonotone
    assert cert.order == pytest.approx(3.0)
    assert cert.certified()
    assert "composite" in repr(cert)


def test_falsify_indefinite_law():
    law = aniso.Law.from_json(INDEFINITE)
    viol = aniso.falsify(law, samples=50000, seed=0)
    assert viol is not None
    assert viol.value < 0
    assert aniso.mono_product(law, viol.u, viol.v) == pytest.approx(viol.value)


def test_falsify_darcy_finds_nothing():
    assert aniso.falsify(aniso.Law.from_json(DARCY), samples=10000) is None


def test_empirical_constant():
    law = aniso.Law.from_json(
        '{"dim": 2, "terms": [{"kind": "plain", "alpha": 1.0, "A": [[1.0, 0.0], [0.0, 1.0]]}]}'
    )
    c = aniso.empirical_power_constant(law, 3.0, samples=20000)
    assert 0.5 <= c <= 0.5 + 1e-9


def test_solver_manufactured():
    rep, err = aniso.solve_manufactured("M1", aniso.Grid(8, 8))
    assert rep.final_residual < 1e-9
    assert err < 1e-8
    assert rep.p.shape == (8, 8)
    assert rep.ux.shape == (9, 8)


def test_inequality_binding():
    lo, hi = aniso.power_mono_strong_slack(np.array([1.0, 2.0]), np.array([-0.5, 0.3]), 1.5)
    assert lo <= hi
