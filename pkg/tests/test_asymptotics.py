import math

import pytest
from hypothesis import given, settings, strategies as st

from dualcheeger import families as F
from dualcheeger.asymptotics import (
    Estimate,
    essential_band_from_model,
    essential_bounds_from_inf,
    evaluate_bounds,
    exhaustion_limits,
    extrapolate,
    infinity_constants,
    sidedness_violations,
    spectrum_bounds_from_isoperimetry,
    trace_bound_check,
    volume_growth_check,
)
from dualcheeger.errors import HypothesisError, InputError


@pytest.fixture(scope="module")
def path_report():
    return exhaustion_limits(F.make_family("infinite_path"), 30, n_min=2)


@pytest.fixture(scope="module")
def ladder_report():
    return exhaustion_limits(F.make_family("ladder_ex2"), 30, n_min=2)


def test_extrapolate_geometric():
    vals = [1 + 0.5 ** n for n in range(1, 12)]
    est = extrapolate(vals)
    assert est.side == "extrapolated" and "geometric" in est.source
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_extrapolate_algebraic():
    ns = list(range(2, 31))
    est = extrapolate([3 + 1 / n ** 2 for n in ns], ns)
    assert "algebraic" in est.source
    assert est.value == pytest.approx(3.0, abs=1e-4)


def test_extrapolate_refusals():
    assert extrapolate([1.0, 2.0]).side == "unconverged"
    assert extrapolate([1, 3, 2, 4, 3]).side == "unconverged"
    assert extrapolate([2.0] * 6).side == "extrapolated"
    with pytest.raises(InputError):
        extrapolate([])


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(0.05, 0.85), st.floats(0.1, 3.0))
def test_extrapolate_geometric_property(limit, rho, scale):
    est = extrapolate([limit + scale * rho ** n for n in range(10)])
    assert est.value == pytest.approx(limit, abs=1e-9 * scale)


def test_estimate_sides():
    assert Estimate(1, "upper", "x").certified
    assert not Estimate(1, "extrapolated", "x").certified
    assert isinstance(Estimate(1, "exact", "x").value, float)


@pytest.mark.parametrize("name, fixture", [("infinite_path", "path_report"), ("ladder_ex2", "ladder_report")])
def test_exhaustion_monotone_and_closed(name, fixture, request):
    rep = request.getfixturevalue(fixture)
    assert all(rep.monotone.values())
    for r in rep.rows:
        assert r.lambda1 == pytest.approx(r.closed[0], abs=1e-9)
        assert r.lambdamax == pytest.approx(r.closed[1], abs=1e-9)
    assert not sidedness_violations(rep)
    lo, hi = rep.limits
    assert rep.lower_estimate.value == pytest.approx(lo, abs=1e-3)
    assert rep.upper_estimate.value == pytest.approx(hi, abs=1e-3)
    assert any("hbar not enumerated" in t for t in rep.truncated)


def test_cayley_limits():
    rep = exhaustion_limits(F.make_family("cayley_ZxZ3"), 30, n_min=2, isoperimetry=False)
    assert rep.lower_estimate.value == pytest.approx(0.0, abs=1e-3)
    assert rep.upper_estimate.value == pytest.approx(1.75, abs=1e-3)


def test_report_serialisation(path_report):
    js = path_report.to_json()
    assert js["rows"][0]["n"] == 2 and js["lambda_top"]["side"] == "extrapolated"
    lines = path_report.to_csv().splitlines()
    assert lines[0].startswith("n,size") and len(lines) == 30


def _bound(bounds, name):
    return next(b for b in bounds if b.name == name)


def test_spectrum_bounds_path(path_report):
    sb = spectrum_bounds_from_isoperimetry(path_report)
    top = _bound(sb.certified, "top_lower")
    hb = max(r.hbar for r in path_report.rows if r.hbar is not None)
    assert top.side == "lower" and top.value == pytest.approx(2 * hb)
    assert top.value <= 2 + 1e-12
    assert _bound(sb.certified, "top_upper").value == pytest.approx(2.0)
    assert _bound(sb.certified, "bottom_lower").value == 0.0
    assert _bound(sb.certified, "bottom_upper").value >= 0.0
    assert sb.direct[0].side == "upper" and sb.direct[1].side == "lower"


def test_spectrum_bounds_ladder_below_top(ladder_report):
    sb = spectrum_bounds_from_isoperimetry(ladder_report)
    assert _bound(sb.certified, "top_lower").value <= 1.6 + 1e-12


def test_bounds_suppressed_without_side():
    out = evaluate_bounds({"h": [Estimate(0.2, "upper", "x")]})
    assert _bound(out, "bottom_lower").suppressed
    assert _bound(out, "top_lower").suppressed
    assert _bound(out, "bottom_upper").value == 0.2
    ext = evaluate_bounds({"h": [Estimate(0.1, "extrapolated", "x")], "hbar": [Estimate(0.9, "extrapolated", "x")]},
                          extrapolated=True)
    assert all(b.side == "extrapolated" for b in ext)
    assert _bound(ext, "top_lower").value == pytest.approx(1.9)


def test_sidedness_catches_contradiction(path_report):
    from dataclasses import replace

    rows = list(path_report.rows)
    rows[5] = replace(rows[5], lambda1=rows[5].lambda1 * 0.5)
    bad = sidedness_violations(replace(path_report, rows=tuple(rows)))
    assert any(s.startswith("lambda1") for s in bad)


def test_rapid_tree_constants():
    ic = infinity_constants(F.make_family("rapidly_branching_tree"), 6, probe_size=10)
    vals = [r.hbar_lower for r in ic.rows]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.3
    assert all(r.bipartite_equality for r in ic.rows)
    assert ic.verdict.startswith("consistent")
    assert ic.to_csv().count("\n") == len(ic.rows) + 1


def test_tree_equality_and_selfloop_decay():
    tree = infinity_constants(F.make_family("homogeneous_tree"), 3, probe_size=10)
    assert all(r.bipartite_equality for r in tree.rows)
    chain = infinity_constants(F.make_family("selfloop_chain"), 8, probe_size=6)
    assert chain.rows[-1].hbar_lower < 0.02
    with pytest.raises(InputError):
        infinity_constants(F.make_family("homogeneous_tree"), 2, probe_size=14)


@pytest.mark.parametrize("K, size, cap", [(3, 5, 0.25), (6, 8, 2.0 ** -5)])
def test_trace_bound(K, size, cap):
    rep = trace_bound_check(F.make_family("selfloop_chain"), K, size)
    assert rep.ok
    assert rep.lambdamax <= rep.trace + 1e-12 <= rep.sum_bound + 2e-12
    assert rep.lambdamax <= cap


def test_trace_bound_at_root():
    # including vertex 0 the per-vertex sum starts at 2/(1 + 2)
    rep = trace_bound_check(F.make_family("selfloop_chain"), 0, 4)
    assert rep.ok and rep.power_bound == 2.0


def test_volume_growth():
    tree = volume_growth_check(F.make_family("homogeneous_tree"), 8, 0.2, hbar_certificate=0.1)
    assert tree.growth == "exponential"
    assert tree.rate == pytest.approx(math.log(2), abs=0.05)
    lad = volume_growth_check(F.make_family("ladder_ex2"), 8, 0.2, hbar_certificate=0.1)
    assert "no claim" in lad.claim and lad.growth != "exponential"


def test_essential_bands():
    assert essential_band_from_model(2.0, 0.0) == (pytest.approx(2.0), 2)
    lo, _ = essential_band_from_model(3.0, 0.1)
    assert lo == pytest.approx(1 + 2 * math.sqrt(2) / 3 - 0.2)
    assert essential_bounds_from_inf(0.0, 0.0)[2] == "sigma_ess = {1}"
    with pytest.raises(HypothesisError):
        essential_bounds_from_inf(0.7, 0.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 0.5), st.floats(0.0, 1.0))
def test_essential_window_symmetric(m, k):
    lo, hi, _ = essential_bounds_from_inf(m, k)
    assert lo <= hi and lo + hi <= 2 + 1e-12 and 0 <= lo
