"""Solvers, regime logic, and temperature reconstruction."""

import json
import math

import pytest
from hypothesis import given, strategies as st

from stefan3 import (
    Dirichlet,
    MissingBoundaryDatum,
    Neumann,
    ProblemContext,
    Regime,
    RegimeError,
    Robin,
    ValidationError,
    classify_regime,
    evaluate_temperature,
    free_boundaries,
    perturbed,
    solve,
    solve_dirichlet,
    solve_robin,
    specfun,
    surface_values,
    temperature_excess,
    thresholds,
)
from stefan3.solver import phase_profile
from stefan3.transcendental import h_func
from conftest import PROPS, TEMPS
import _expected as E


def test_robin_coefficients_match_reference(sol_robin):
    assert sol_robin.coef1 == pytest.approx(E.ROBIN_COEF1, abs=1e-12)
    assert sol_robin.coef2 == pytest.approx(E.ROBIN_COEF2, abs=1e-12)
    assert sol_robin.surface_temp == pytest.approx(E.ROBIN_SURFACE_T, rel=1e-12)
    assert sol_robin.flux_coef == pytest.approx(E.ROBIN_FLUX_COEF, rel=1e-12)


def test_dirichlet_coefficients_match_reference(sol_dirichlet):
    assert sol_dirichlet.coef1 == pytest.approx(E.DIRICHLET_COEF1, abs=1e-12)
    assert sol_dirichlet.coef2 == pytest.approx(E.DIRICHLET_COEF2, abs=1e-12)
    assert sol_dirichlet.surface_temp == 331.0
    assert sol_dirichlet.flux_coef == pytest.approx(E.DIRICHLET_FLUX_COEF, rel=1e-12)


def test_neumann_coefficients_match_reference(sol_neumann):
    assert sol_neumann.coef1 == pytest.approx(E.NEUMANN_COEF1, abs=1e-12)
    assert sol_neumann.coef2 == pytest.approx(E.NEUMANN_COEF2, abs=1e-12)
    assert sol_neumann.surface_temp == pytest.approx(E.NEUMANN_SURFACE_T, rel=1e-12)
    assert sol_neumann.flux_coef == pytest.approx(300.0, rel=1e-14)


def test_coefficient_ordering(sol_robin, sol_dirichlet, sol_neumann):
    for sol in (sol_robin, sol_dirichlet, sol_neumann):
        assert 0.0 < sol.coef2 < sol.coef1
        assert sol.coef1 > sol.ctx.z0


def test_inner_outer_matching_relation(sol_robin, sol_dirichlet, sol_neumann):
    # the two coefficients are not independent: the inner one must satisfy
    # the same matching relation the scalar reduction is built on
    for sol in (sol_robin, sol_dirichlet, sol_neumann):
        c = sol.ctx
        assert specfun.erf(sol.coef2 * c.sigma2) == pytest.approx(
            h_func(sol.coef1, c), rel=1e-12
        )


def test_thresholds_match_reference(ctx_robin, ctx_plain):
    th = thresholds(ctx_robin)
    assert th.z0 == pytest.approx(E.Z0, abs=1e-13)
    assert th.q1 == pytest.approx(E.Q1, rel=1e-12)
    assert th.q2 == pytest.approx(E.Q2, rel=1e-12)
    assert th.h1 == pytest.approx(E.H1, rel=1e-12)
    assert th.h2 == pytest.approx(E.H2, rel=1e-12)
    assert th.h2 > th.h1 > 0.0
    assert th.q2 > th.q1 > 0.0
    # without a bulk temperature the convective pair does not exist
    th = thresholds(ctx_plain)
    assert th.h1 is None and th.h2 is None
    assert "h1" not in th.to_dict()


def test_thresholds_reject_bad_bulk(ctx_plain):
    with pytest.raises(ValidationError):
        thresholds(ctx_plain, a_inf=TEMPS.B)


def test_classification_against_thresholds(ctx_robin, ctx_neumann):
    th = thresholds(ctx_robin)
    cases = [
        (Robin(h0=2.0, A_inf=334.0), Regime.SINGLE_PHASE),
        (Robin(h0=th.h1, A_inf=334.0), Regime.SINGLE_PHASE),  # sharp boundary
        (Robin(h0=20.0, A_inf=334.0), Regime.TWO_PHASE),
        (Robin(h0=th.h2, A_inf=334.0), Regime.TWO_PHASE),
        (Robin(h0=100.0, A_inf=334.0), Regime.THREE_PHASE),
        (Neumann(q0=30.0), Regime.SINGLE_PHASE),
        (Neumann(q0=th.q1), Regime.SINGLE_PHASE),
        (Neumann(q0=100.0), Regime.TWO_PHASE),
        (Neumann(q0=th.q2), Regime.TWO_PHASE),
        (Neumann(q0=300.0), Regime.THREE_PHASE),
        (Dirichlet(A=328.0 + 1e-9), Regime.THREE_PHASE),
    ]
    for bc, want in cases:
        assert classify_regime(ProblemContext(PROPS, TEMPS, bc)) is want


def test_classification_monotone_in_datum():
    order = [Regime.SINGLE_PHASE, Regime.TWO_PHASE, Regime.THREE_PHASE]
    seen = []
    for h0 in [0.5, 2.0, 3.9, 4.0, 10.0, 41.0, 42.0, 100.0, 1e4]:
        ctx = ProblemContext(PROPS, TEMPS, Robin(h0=h0, A_inf=334.0))
        seen.append(order.index(classify_regime(ctx)))
    assert seen == sorted(seen)


def test_subcritical_data_refused(ctx_plain):
    with pytest.raises(RegimeError) as exc:
        solve(ProblemContext(PROPS, TEMPS, Robin(h0=20.0, A_inf=334.0)))
    assert exc.value.regime is Regime.TWO_PHASE
    with pytest.raises(RegimeError) as exc:
        solve(ProblemContext(PROPS, TEMPS, Neumann(q0=30.0)))
    assert exc.value.regime is Regime.SINGLE_PHASE


def test_solver_kind_guards(ctx_robin, ctx_neumann, ctx_plain):
    with pytest.raises(MissingBoundaryDatum):
        solve_robin(ctx_neumann)
    with pytest.raises(MissingBoundaryDatum):
        solve_dirichlet(ctx_robin)
    with pytest.raises(MissingBoundaryDatum):
        solve(ctx_plain)


def test_front_positions_and_scaling(sol_robin):
    x2, x1 = free_boundaries(sol_robin, 2.5)
    scale = 2.0 * math.sqrt(sol_robin.ctx.alpha1 * 2.5)
    assert x2 == pytest.approx(sol_robin.coef2 * scale, rel=1e-15)
    assert x1 == pytest.approx(sol_robin.coef1 * scale, rel=1e-15)
    assert 0.0 < x2 < x1
    with pytest.raises(ValueError):
        free_boundaries(sol_robin, 0.0)


@given(st.floats(min_value=1e-3, max_value=1e3))
def test_fronts_scale_as_sqrt_t(sol_neumann, lam):
    x2a, x1a = free_boundaries(sol_neumann, 1.0)
    x2b, x1b = free_boundaries(sol_neumann, lam)
    assert x2b == pytest.approx(x2a * math.sqrt(lam), rel=1e-12)
    assert x1b == pytest.approx(x1a * math.sqrt(lam), rel=1e-12)


def test_temperature_anchors(sol_robin, sol_dirichlet, sol_neumann):
    for sol in (sol_robin, sol_dirichlet, sol_neumann):
        for t in (0.1, 1.0, 10.0):
            x2, x1 = free_boundaries(sol, t)
            assert evaluate_temperature(sol, 0.0, t) == pytest.approx(
                sol.surface_temp, abs=1e-10
            )
            assert evaluate_temperature(sol, x2, t) == pytest.approx(328.0, abs=1e-9)
            assert evaluate_temperature(sol, x1, t) == pytest.approx(324.0, abs=1e-9)
            # both edges of the front band agree to the band's width
            for x in (x2 * (1.0 - 1e-15), x2 * (1.0 + 1e-15)):
                assert evaluate_temperature(sol, x, t) == pytest.approx(328.0, abs=1e-9)


def test_temperature_monotone_and_bounded(sol_robin, sol_dirichlet, sol_neumann):
    for sol in (sol_robin, sol_dirichlet, sol_neumann):
        for t in (0.1, 1.0, 10.0):
            _, x1 = free_boundaries(sol, t)
            xs = [x1 * 3.0 * j / 400 for j in range(401)]
            vals = [evaluate_temperature(sol, x, t) for x in xs]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            assert all(320.0 <= v <= sol.surface_temp for v in vals)


def test_temperature_far_field_is_initial(sol_robin):
    # far enough out the similarity variable saturates and the exact
    # initial value comes back
    assert evaluate_temperature(sol_robin, 1e3, 0.01) == 320.0


def test_temperature_time_similarity(sol_dirichlet):
    # the field is a function of x/sqrt(t) only
    for x, t, lam in [(0.003, 1.0, 4.0), (0.01, 2.0, 9.0), (0.0005, 0.1, 100.0)]:
        a = evaluate_temperature(sol_dirichlet, x, t)
        b = evaluate_temperature(sol_dirichlet, x * math.sqrt(lam), t * lam)
        assert a == pytest.approx(b, rel=1e-12)


def test_temperature_domain_guards(sol_robin):
    with pytest.raises(ValueError):
        evaluate_temperature(sol_robin, -1e-9, 1.0)
    with pytest.raises(ValueError):
        evaluate_temperature(sol_robin, 0.1, 0.0)
    with pytest.raises(ValueError):
        evaluate_temperature(sol_robin, math.nan, 1.0)


def test_excess_consistency(sol_neumann):
    for x, t in [(0.0, 1.0), (0.001, 0.5), (0.02, 10.0)]:
        assert evaluate_temperature(sol_neumann, x, t) == pytest.approx(
            320.0 + temperature_excess(sol_neumann, x, t), rel=1e-15
        )


def test_phase_profile_matches_classification(sol_robin):
    t = 1.0
    x2, x1 = free_boundaries(sol_robin, t)
    for x, want in [(x2 * 0.5, 3), (0.5 * (x2 + x1), 2), (x1 * 2.0, 1)]:
        phase, w = phase_profile(sol_robin, x, t)
        assert phase == want
        assert 0.0 <= w <= 1.0


def test_surface_values(sol_robin, sol_neumann):
    temp, flux = surface_values(sol_robin, 4.0)
    assert temp == sol_robin.surface_temp
    assert flux == pytest.approx(-sol_robin.flux_coef / 2.0, rel=1e-15)
    # the imposed-flux problem reproduces its own datum exactly
    _, flux = surface_values(sol_neumann, 9.0)
    assert flux * 3.0 == pytest.approx(-300.0, rel=1e-14)
    with pytest.raises(ValueError):
        surface_values(sol_robin, -1.0)


def test_solution_serialization_round_trips(sol_robin):
    d = sol_robin.to_dict()
    blob = json.dumps(d)
    back = json.loads(blob)
    assert back["kind"] == "robin"
    assert back["regime"] == "three_phase"
    assert back["coef1"] == sol_robin.coef1
    assert back["thresholds"]["h2"] == sol_robin.thresh.h2
    assert back["input"]["boundary"] == {"type": "robin", "h0": 100.0, "A_inf": 334.0}


def test_perturbed_rebuilds_consistently(sol_robin):
    p = perturbed(sol_robin, 1e-3, -1e-3)
    assert p.coef1 == pytest.approx(sol_robin.coef1 * 1.001, rel=1e-15)
    assert p.coef2 == pytest.approx(sol_robin.coef2 * 0.999, rel=1e-15)
    # caches follow the new coefficients: the surface condition is rebuilt
    assert p.surface_temp != sol_robin.surface_temp
    assert evaluate_temperature(p, 0.0, 1.0) == pytest.approx(
        p.surface_temp, abs=1e-10
    )
