import math

import pytest

from nonlocal_casimir import quadrature, validation
from nonlocal_casimir.material import gold_like
from nonlocal_casimir.lifshitz import crossover_A, tau
from nonlocal_casimir.validation import Check, CriterionResult


def test_perfect_reflector_criterion_passes_unperturbed():
    assert validation.criterion_perfect_reflector().passed


def test_mutation_canary_on_zeta3(monkeypatch):
    true_value = quadrature.zeta3()
    monkeypatch.setattr(quadrature, "zeta3", lambda: true_value * (1 + 1e-3))
    result = validation.criterion_perfect_reflector()
    assert not result.passed
    assert "FAIL" in result.summary_line()


def test_result_accounting():
    good = Check("x", 1.0, 1.0, 0.1, True)
    bad = Check("y", 2.0, 1.0, 0.1, False)
    assert CriterionResult(1, "ok", [good], runtime_s=0.1, budget_s=1.0).passed
    assert not CriterionResult(1, "slow", [good], runtime_s=2.0, budget_s=1.0).passed
    assert not CriterionResult(1, "bad", [good, bad]).passed
    assert not CriterionResult(1, "raised", [], error="ValueError: x").passed
    line = CriterionResult(3, "bad", [good, bad]).summary_line()
    assert line.startswith("[FAIL] criterion  3") and "y:" in line
    assert CriterionResult(1, "ok", [good]).as_dict()["passed"] is True


def test_exceptions_are_captured():
    def body():
        raise ArithmeticError("boom")
    result = validation._timed(99, "raises", 1.0, body)
    assert result.error == "ArithmeticError: boom"
    assert not result.passed


def test_separation_and_temperature_inverses():
    model = gold_like()
    a = validation.separation_for(model, 30.0, 1e-3)
    T = validation.temperature_for_A(model, a, 30.0)
    assert tau(a, T) == pytest.approx(1e-3)
    assert crossover_A(model, a, T) == pytest.approx(30.0)


def test_run_all_subset():
    results = validation.run_all(only={1, 11})
    assert [r.number for r in results] == [1, 11]
    assert all(r.passed for r in results)
