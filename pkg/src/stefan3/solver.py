"""Front coefficients, regime thresholds, and temperature reconstruction.

A solved problem is represented by the pair of front coefficients
(coef1, coef2): the fronts move as x_i(t) = 2*coef_i*sqrt(alpha1*t) and the
temperature in each phase is an affine image of one error-function profile
in the similarity variable x/(2*sqrt(alpha_i*t)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from . import specfun
from .errors import MissingBoundaryDatum, RegimeError, ValidationError
from .model import (
    Dirichlet,
    Neumann,
    Robin,
    Violation,
    config_to_dict,
)
from .transcendental import (
    ProblemContext,
    coef2_from_coef1,
    find_root_monotone,
    p_func,
    q_func,
    t_func,
    u_func,
    v_func,
)

_SQRT_PI = math.sqrt(math.pi)

# Points within this relative distance of a front belong to the phase on
# the lower-x side, so front positions themselves evaluate cleanly.
_FRONT_BAND = 1e-14


class Regime(enum.Enum):
    """How many phases the given boundary datum can sustain."""

    SINGLE_PHASE = "single_phase"
    TWO_PHASE = "two_phase"
    THREE_PHASE = "three_phase"


@dataclass(frozen=True)
class Thresholds:
    """Critical boundary data separating the regimes.

    q1/q2 bound the flux coefficient, h1/h2 the convective coefficient.
    The convective pair needs a bulk temperature, so it is None when no
    A_inf is available.  Always q2 > q1 and, when present, h2 > h1.
    """

    z0: float
    q1: float
    q2: float
    h1: Optional[float] = None
    h2: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"z0": self.z0, "q1": self.q1, "q2": self.q2}
        if self.h1 is not None:
            out["h1"] = self.h1
            out["h2"] = self.h2
        return out


def thresholds(ctx: ProblemContext, a_inf: Optional[float] = None) -> Thresholds:
    """Regime thresholds for this material.

    Args:
        ctx: Problem context; its boundary datum supplies the bulk
            temperature when it is convective.
        a_inf: Explicit bulk temperature; overrides the context's own.

    Returns:
        Thresholds with the convective fields filled in when a bulk
        temperature is known, left None otherwise.

    Raises:
        ValidationError: If an explicit a_inf does not exceed B.
    """
    p, t = ctx.props, ctx.temps
    a1, a2, a3 = ctx.alphas
    z0 = ctx.z0

    q1 = p.k1 * (t.C - t.D) / math.sqrt(math.pi * a1)
    q2 = p.k2 * (t.B - t.C) / (math.sqrt(a2 * math.pi) * specfun.erf(z0 * ctx.sigma2))

    if a_inf is None and isinstance(ctx.bc, Robin):
        a_inf = ctx.bc.A_inf
    if a_inf is None:
        return Thresholds(z0=z0, q1=q1, q2=q2)
    if a_inf <= t.B:
        raise ValidationError(
            [Violation("BULK_NOT_ABOVE_B", "bulk temperature must exceed B")]
        )
    h1 = p.k1 / math.sqrt(math.pi * a1) * (t.C - t.D) / (a_inf - t.C)
    h2 = (
        (t.B - t.C)
        / (a_inf - t.B)
        * math.sqrt(p.k2 * p.k3 * p.c2 / (math.pi * p.c3 * a3))
        / specfun.erf(z0 * ctx.sigma2)
    )
    return Thresholds(z0=z0, q1=q1, q2=q2, h1=h1, h2=h2)


def classify_regime(ctx: ProblemContext) -> Regime:
    """Regime reached under the context's boundary datum.

    The comparison is sharp: a datum exactly at a threshold falls in the
    milder regime.
    """
    bc = ctx.bc
    if bc is None:
        raise MissingBoundaryDatum("classification needs a boundary datum")
    if isinstance(bc, Dirichlet):
        # an imposed surface temperature above B always melts both ways
        return Regime.THREE_PHASE
    th = thresholds(ctx)
    if isinstance(bc, Robin):
        datum, first, second = bc.h0, th.h1, th.h2
    else:
        datum, first, second = bc.q0, th.q1, th.q2
    if datum <= first:
        return Regime.SINGLE_PHASE
    if datum <= second:
        return Regime.TWO_PHASE
    return Regime.THREE_PHASE


@dataclass(frozen=True)
class ThreePhaseSolution:
    """Immutable result of one solve.

    surface_temp is the (constant in time) temperature at x = 0 and
    flux_coef the coefficient of the surface heat flux, which decays as
    -flux_coef/sqrt(t) in the outward normal convention, so the full
    boundary behavior is recoverable for every condition kind.
    """

    kind: str
    ctx: ProblemContext
    coef1: float
    coef2: float
    surface_temp: float
    flux_coef: float
    regime: Regime
    thresh: Thresholds

    @cached_property
    def _slope3(self) -> float:
        # phase-3 profile amplitude: temperature drops by _slope3 * erf(eta3)
        return (self.surface_temp - self.ctx.temps.B) / specfun.erf(
            self.coef2 * self.ctx.sigma3
        )

    @cached_property
    def _span2(self) -> float:
        c = self.ctx
        return specfun.erf(self.coef1 * c.sigma2) - specfun.erf(
            self.coef2 * c.sigma2
        )

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "regime": self.regime.value,
            "coef1": self.coef1,
            "coef2": self.coef2,
            "z0": self.ctx.z0,
            "thresholds": self.thresh.to_dict(),
            "surface_temperature": self.surface_temp,
            "surface_flux_coefficient": self.flux_coef,
            "input": config_to_dict(self.ctx.props, self.ctx.temps, self.ctx.bc),
        }
        return out


def _build_solution(ctx: ProblemContext, coef1: float, coef2: float) -> ThreePhaseSolution:
    bc = ctx.bc
    p = ctx.props
    a3 = ctx.alpha3
    erf2 = specfun.erf(coef2 * ctx.sigma3)
    if isinstance(bc, Robin):
        khat = p.k3 / (bc.h0 * math.sqrt(math.pi * a3))
        slope = (bc.A_inf - ctx.temps.B) / (khat + erf2)
        surface = ctx.temps.B + slope * erf2
    elif isinstance(bc, Dirichlet):
        surface = bc.A
        slope = (bc.A - ctx.temps.B) / erf2
    elif isinstance(bc, Neumann):
        slope = bc.q0 * math.sqrt(math.pi * a3) / p.k3
        surface = ctx.temps.B + slope * erf2
    else:
        raise MissingBoundaryDatum("solution needs a boundary datum")
    flux_coef = p.k3 * slope / math.sqrt(math.pi * a3)
    return ThreePhaseSolution(
        kind=bc.kind,
        ctx=ctx,
        coef1=coef1,
        coef2=coef2,
        surface_temp=surface,
        flux_coef=flux_coef,
        regime=Regime.THREE_PHASE,
        thresh=thresholds(ctx),
    )


def _require_three_phase(ctx: ProblemContext) -> None:
    regime = classify_regime(ctx)
    if regime is not Regime.THREE_PHASE:
        raise RegimeError(
            regime,
            f"boundary datum only sustains the {regime.value} regime; "
            "no second front forms",
        )


def _outer_bracket(ctx: ProblemContext) -> tuple[float, float]:
    # just above z0 the matched inner coefficient exists but is tiny, which
    # pins the sign of the equation there for every admissible datum
    return ctx.z0 + 1e-12, max(ctx.z0, 1.0)


def solve_robin(ctx: ProblemContext, tol: float = 1e-12) -> ThreePhaseSolution:
    """Solve under convective surface exchange.

    Raises:
        MissingBoundaryDatum: Context has no convective datum.
        RegimeError: h0 is at or below the two-phase threshold.
        RootFailure: The bracketed search failed (not expected for valid
            three-phase data).
    """
    if not isinstance(ctx.bc, Robin):
        raise MissingBoundaryDatum("solve_robin needs h0 and A_inf")
    _require_three_phase(ctx)
    lo, hi = _outer_bracket(ctx)
    coef1 = find_root_monotone(
        lambda z: q_func(z, ctx) - u_func(z, ctx), lo, hi, tol
    )
    return _build_solution(ctx, coef1, coef2_from_coef1(coef1, ctx))


def solve_dirichlet(ctx: ProblemContext, tol: float = 1e-12) -> ThreePhaseSolution:
    """Solve under an imposed surface temperature A > B."""
    if not isinstance(ctx.bc, Dirichlet):
        raise MissingBoundaryDatum("solve_dirichlet needs a surface temperature")
    _require_three_phase(ctx)

    def f(z: float) -> float:
        m = coef2_from_coef1(z, ctx)
        if m <= 0.0:
            return -1e300  # limiting value just above z0
        return q_func(z, ctx) - v_func(m, ctx)

    lo, hi = _outer_bracket(ctx)
    coef1 = find_root_monotone(f, lo, hi, tol)
    return _build_solution(ctx, coef1, coef2_from_coef1(coef1, ctx))


def solve_neumann(ctx: ProblemContext, tol: float = 1e-12) -> ThreePhaseSolution:
    """Solve under an imposed surface flux q0/sqrt(t)."""
    if not isinstance(ctx.bc, Neumann):
        raise MissingBoundaryDatum("solve_neumann needs a flux coefficient")
    _require_three_phase(ctx)

    def f(z: float) -> float:
        m = coef2_from_coef1(z, ctx)
        return q_func(z, ctx) - p_func(max(m, 0.0), ctx)

    lo, hi = _outer_bracket(ctx)
    coef1 = find_root_monotone(f, lo, hi, tol)
    return _build_solution(ctx, coef1, coef2_from_coef1(coef1, ctx))


def solve(ctx: ProblemContext, tol: float = 1e-12) -> ThreePhaseSolution:
    """Dispatch to the solver matching the context's boundary datum."""
    bc = ctx.bc
    if isinstance(bc, Robin):
        return solve_robin(ctx, tol)
    if isinstance(bc, Dirichlet):
        return solve_dirichlet(ctx, tol)
    if isinstance(bc, Neumann):
        return solve_neumann(ctx, tol)
    raise MissingBoundaryDatum("solve needs a boundary datum")


def free_boundaries(sol: ThreePhaseSolution, t: float) -> tuple[float, float]:
    """Front positions (x2, x1) at time t > 0, with x2 < x1."""
    if not t > 0.0:
        raise ValueError("t must be > 0")
    scale = 2.0 * math.sqrt(sol.ctx.alpha1 * t)
    return sol.coef2 * scale, sol.coef1 * scale


def _classify_point(sol: ThreePhaseSolution, x: float, t: float) -> int:
    x2, x1 = free_boundaries(sol, t)
    if x <= x2 * (1.0 + _FRONT_BAND):
        return 3
    if x <= x1 * (1.0 + _FRONT_BAND):
        return 2
    return 1


def _check_point(x: float, t: float) -> None:
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError("x must be finite and >= 0")
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError("t must be finite and > 0")


def _phase_excess(sol: ThreePhaseSolution, phase: int, x: float, t: float) -> float:
    # closed-form excess above D using the given phase's formula, whether or
    # not (x, t) lies in that phase; verification probes fronts from both sides
    c = sol.ctx
    t_ = c.temps
    if phase == 3:
        eta = x / (2.0 * math.sqrt(c.alpha3 * t))
        return (sol.surface_temp - t_.D) - sol._slope3 * specfun.erf(eta)
    if phase == 2:
        eta = x / (2.0 * math.sqrt(c.alpha2 * t))
        top = specfun.erf(sol.coef1 * c.sigma2) - specfun.erf(eta)
        return (t_.C - t_.D) + (t_.B - t_.C) * top / sol._span2
    eta = x / (2.0 * math.sqrt(c.alpha1 * t))
    return (t_.C - t_.D) * specfun.erfc(eta) / specfun.erfc(sol.coef1)


def temperature_excess(sol: ThreePhaseSolution, x: float, t: float) -> float:
    """Temperature above the initial value D at (x, t).

    Identical information to evaluate_temperature, but in quantities whose
    floating-point granularity matches the temperature differences that
    drive the physics, which downstream difference-based checks rely on.
    """
    _check_point(x, t)
    return _phase_excess(sol, _classify_point(sol, x, t), x, t)


def evaluate_temperature(sol: ThreePhaseSolution, x: float, t: float) -> float:
    """Temperature in kelvin at position x >= 0 and time t > 0."""
    return sol.ctx.temps.D + temperature_excess(sol, x, t)


def phase_profile(sol: ThreePhaseSolution, x: float, t: float) -> tuple[int, float]:
    """Phase index and the bare similarity profile the phase is affine in.

    Returns (i, w) with w = erf(x/(2 sqrt(alpha_i t))) for the liquid
    phases and w = erfc(...) for the solid.  The temperature in phase i is
    a_i + b_i*w with constants a_i, b_i, so any linear functional of the
    temperature, such as a heat-equation residual, can be evaluated on w
    alone with perfect relative conditioning.
    """
    _check_point(x, t)
    phase = _classify_point(sol, x, t)
    alpha = sol.ctx.alphas[phase - 1]
    eta = x / (2.0 * math.sqrt(alpha * t))
    if phase == 1:
        return 1, specfun.erfc(eta)
    return phase, specfun.erf(eta)


def surface_values(sol: ThreePhaseSolution, t: float) -> tuple[float, float]:
    """Surface temperature and surface heat flux at time t > 0.

    The temperature is constant in time; the flux is -flux_coef/sqrt(t)
    with the coefficient available separately as ``sol.flux_coef``.
    """
    if not t > 0.0:
        raise ValueError("t must be > 0")
    return sol.surface_temp, -sol.flux_coef / math.sqrt(t)


def perturbed(
    sol: ThreePhaseSolution, eps1: float, eps2: float
) -> ThreePhaseSolution:
    """Copy of a solution with each front coefficient scaled by (1 + eps).

    The reconstruction caches are recomputed from the perturbed
    coefficients, so the copy is exactly what the solver would have built
    had it converged to the wrong roots.  Intended for verification
    negative controls.
    """
    return _build_solution(
        sol.ctx, sol.coef1 * (1.0 + eps1), sol.coef2 * (1.0 + eps2)
    )
