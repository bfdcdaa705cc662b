import math
from pathlib import Path

import pytest

import fracmorrey as fm

ROOT = Path(__file__).resolve().parents[2]


def test_riesz_potential_of_interval():
    assert fm.fractional_integral("one", "indicator", [0.0], 0.5) == pytest.approx(4.0, rel=1e-8)
    assert fm.fractional_integral("one", "indicator", [3.0], 0.5) == pytest.approx(4 - 2 * math.sqrt(2), rel=1e-8)


def test_two_dimensional_centre_value():
    assert fm.fractional_integral("one", "indicator", [0.0, 0.0], 1.0) == pytest.approx(2 * math.pi, rel=1e-8)


def test_majorant_chain():
    x = [0.3]
    t = fm.t_tilde("theta1", "gaussian", x, 0.5)
    assert abs(fm.fractional_integral("theta1", "gaussian", x, 0.5)) <= t
    assert fm.fractional_maximal("theta1", "gaussian", x, 0.5) <= t / fm.majorant_constant(1, 0.5) * (1 + 1e-6)


def test_commutator_with_constant_symbol_vanishes():
    assert fm.commutator("one", ["const"], "indicator", [0.2], 0.5) == 0.0


def test_campanato_and_morrey_profiles():
    log = fm.campanato_profile("log", 1.0, 0.0, [0.0])
    assert log["sup"] == pytest.approx(2 / math.e, rel=1e-8)
    m = fm.morrey_profile("indicator", 2.0, "power", {"n": 1, "p": 2, "lambda": 0}, [0.0])
    assert m["sup"] == pytest.approx(1.0, rel=1e-8)
    assert m["arg_sup"] == pytest.approx(1.0)


def test_registry_and_catalog():
    checks = fm.list_checks()
    assert "checkCampanatoB" in checks and len(checks) == 13
    assert {e["kind"] for e in fm.list_catalog()} == {"kernel", "function", "symbol", "weight"}
    assert "b" in fm.describe_check("checkCampanatoB")["defaults"]
    with pytest.raises(fm.ConfigError):
        fm.describe_check("checkMissing")


def test_run_check_with_overrides():
    report = fm.run_check("checkPhiPairCondition", {"phi2": "constant"})
    assert report["verdict"] == "fail"
    good = fm.run_check("checkCampanatoB", {"b": "log", "p": 1, "lambda": 0})
    assert good["verdict"] == "pass"
    assert good["fittedConstant"] <= math.e / 2
    with pytest.raises(fm.ConfigError):
        fm.run_check("checkCampanatoB", {"nope": 1})


def test_run_suite(tmp_path):
    result = fm.run_suite(str(ROOT / "tests" / "data" / "known_fail.yaml"), out=str(tmp_path))
    assert result["exit_code"] == 1
    assert result["verdicts"] == {"weight-pair-good": "pass", "weight-pair-constant-phi2": "fail"}
    assert (tmp_path / "summary.csv").read_text() == result["summary"]
