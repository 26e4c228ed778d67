import pytest

from qreservoir import reservoir
from qreservoir.verify import PROPERTIES, PropertyResult, run_verify


def test_smoke_budget_one_passes():
    report = run_verify(seed=42, budget=1)
    assert report.passed
    assert len(report.results) == len(PROPERTIES)
    for r in report.results:
        assert isinstance(r, PropertyResult)
        assert r.samples >= 1


def test_report_rendering_has_summary_line():
    report = run_verify(seed=3, budget=1)
    lines = report.render().splitlines()
    assert lines[-1].startswith("SUMMARY pass ")
    assert f"total={len(PROPERTIES)}" in lines[-1]
    # one line per property plus header and summary
    assert len(lines) == len(PROPERTIES) + 2


def test_deterministic_for_fixed_seed():
    a = run_verify(seed=11, budget=2)
    b = run_verify(seed=11, budget=2)
    assert a == b


def test_budget_validation():
    with pytest.raises(ValueError, match="budget"):
        run_verify(seed=1, budget=0)


def test_injected_sign_fault_is_flagged(monkeypatch):
    # flip the sign of the survival factor and check the harness notices:
    # the oracle comparison property must fail and so must the report
    true_survival = reservoir.survival_factor

    def flipped(t, spec):
        return -true_survival(t, spec)

    monkeypatch.setattr(reservoir, "survival_factor", flipped)
    report = run_verify(seed=42, budget=4)
    assert not report.passed
    failed = {r.name for r in report.results if not r.passed}
    assert "closed_form_vs_volterra" in failed


def test_injected_oracle_fault_is_flagged(monkeypatch):
    # a corrupted oracle drift must break the closed-form-vs-oracle check
    import qreservoir.oracle as oracle_mod
    from scipy.integrate import solve_ivp as real_solve_ivp

    def rescaled(rhs, span, y0, **kwargs):
        return real_solve_ivp(lambda t, y: 0.5 * rhs(t, y), span, y0, **kwargs)

    monkeypatch.setattr(oracle_mod, "solve_ivp", rescaled)
    report = run_verify(seed=42, budget=4)
    assert not report.passed
    assert any(
        not r.passed and r.name == "closed_form_vs_volterra" for r in report.results
    )
