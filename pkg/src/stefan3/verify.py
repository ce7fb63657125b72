"""Residual-based verification of a solved problem.

Five independent checks, each reported as a dimensionless residual:

* heat: finite-difference residual of the diffusion equation inside each
  phase, evaluated on the per-phase similarity profile.  Each phase's
  temperature is an affine image of that profile, and the equation is
  linear, so the relative residual of the profile equals that of the
  temperature while staying immune to the catastrophic cancellation a
  300-kelvin offset would cause at the tested step sizes.
* interface: temperature continuity at both fronts, probed with the closed
  form of each adjacent phase.
* stefan: energy balance at both fronts from the analytic one-sided
  gradients.
* boundary: the surface condition the solution claims to satisfy.
* far_field: decay to the initial temperature far beyond the outer front.

Residual magnitudes at the default settings are limited by rounding, not
truncation; the refinement ladder behavior (order 2 in rel_step) appears
for rel_step around 1e-3 and above, where truncation dominates.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

from .errors import StencilCrossesFront
from .model import Dirichlet, Neumann, Robin
from .solver import (
    ThreePhaseSolution,
    _phase_excess,
    free_boundaries,
    phase_profile,
)

HEAT_TOL = 1e-6
INTERFACE_TOL = 1e-10
STEFAN_TOL = 1e-10
BOUNDARY_TOL = 1e-10
FAR_FIELD_TOL = 1e-8

DEFAULT_TIMES = (0.1, 1.0, 10.0)
DEFAULT_X_FACTOR = 30.0

_EPS = sys.float_info.epsilon


def _phase_windows(
    sol: ThreePhaseSolution, t: float, rel_step: float
) -> dict[int, tuple[float, float, float]]:
    """Sampling window (lo, hi) and FD step h for each phase at time t.

    Windows keep every stencil point at least a few steps away from the
    fronts, including where the fronts sit at the shifted times t(1 +/-
    rel_step) used by the time difference.
    """
    x2, x1 = free_boundaries(sol, t)
    a1, a2, a3 = sol.ctx.alphas
    out = {}
    for phase, alpha in ((3, a3), (2, a2), (1, a1)):
        h = rel_step * 2.0 * math.sqrt(alpha * t)
        if phase == 3:
            lo, hi = 6.0 * h, x2 - 6.0 * h - x2 * rel_step
        elif phase == 2:
            lo = x2 + 6.0 * h + x2 * rel_step
            hi = x1 - 6.0 * h - x1 * rel_step
        else:
            lo = x1 + 6.0 * h + x1 * rel_step
            # three diffusion lengths past the front covers all the decay
            # that is numerically distinguishable from the initial state
            hi = x1 + 6.0 * math.sqrt(a1 * t)
        if not lo < hi:
            raise StencilCrossesFront(
                f"rel_step {rel_step!r} leaves no room inside phase {phase} "
                f"at t={t!r}"
            )
        out[phase] = (lo, hi, h)
    return out


def heat_residual(
    sol: ThreePhaseSolution,
    rel_step: float = 1e-4,
    n_points: int = 100,
    times: tuple = DEFAULT_TIMES,
) -> dict[str, float]:
    """Max relative diffusion-equation residual per phase.

    Five-point stencil: central second difference in x with step
    rel_step * 2*sqrt(alpha_i*t), central first difference in t with step
    rel_step * t.  Sample points are geometrically spaced inside each
    phase.

    Raises:
        StencilCrossesFront: A stencil evaluation landed in a different
            phase, or rel_step is too coarse for a phase to hold a stencil.
    """
    worst = {1: 0.0, 2: 0.0, 3: 0.0}
    for t in times:
        windows = _phase_windows(sol, t, rel_step)
        h_t = rel_step * t
        for phase, (lo, hi, h) in windows.items():
            alpha = sol.ctx.alphas[phase - 1]
            ratio = hi / lo
            for j in range(n_points):
                x = lo * ratio ** (j / (n_points - 1)) if n_points > 1 else lo
                samples = []
                for xx, tt in (
                    (x, t),
                    (x - h, t),
                    (x + h, t),
                    (x, t - h_t),
                    (x, t + h_t),
                ):
                    got, w = phase_profile(sol, xx, tt)
                    if got != phase:
                        raise StencilCrossesFront(
                            f"stencil point (x={xx!r}, t={tt!r}) fell in "
                            f"phase {got} while testing phase {phase}"
                        )
                    samples.append(w)
                w0, wm, wp, wtm, wtp = samples
                d_xx = (wp - 2.0 * w0 + wm) / (h * h)
                d_t = (wtp - wtm) / (2.0 * h_t)
                num = abs(d_t - alpha * d_xx)
                den = max(abs(d_t), abs(alpha * d_xx), _EPS / t)
                res = num / den
                if res > worst[phase]:
                    worst[phase] = res
    return {f"phase{k}": v for k, v in worst.items()}


def interface_residual(
    sol: ThreePhaseSolution, times: tuple = DEFAULT_TIMES
) -> dict[str, float]:
    """Temperature mismatch at the fronts, relative to the full span B - D.

    Each front is probed with the closed forms of both adjacent phases.
    """
    t_ = sol.ctx.temps
    span = t_.B - t_.D
    worst = {
        "front2_liquid": 0.0,
        "front2_middle": 0.0,
        "front1_middle": 0.0,
        "front1_solid": 0.0,
    }
    for t in times:
        x2, x1 = free_boundaries(sol, t)
        checks = (
            ("front2_liquid", 3, x2, t_.B),
            ("front2_middle", 2, x2, t_.B),
            ("front1_middle", 2, x1, t_.C),
            ("front1_solid", 1, x1, t_.C),
        )
        for key, phase, x, target in checks:
            value = t_.D + _phase_excess(sol, phase, x, t)
            dev = abs(value - target) / span
            if dev > worst[key]:
                worst[key] = dev
    return worst


def _gradients_at(sol: ThreePhaseSolution, t: float) -> dict:
    """Analytic one-sided spatial gradients at both fronts."""
    c = sol.ctx
    t_ = c.temps
    a1, a2, a3 = c.alphas
    x2, x1 = free_boundaries(sol, t)
    e1 = x1 / (2.0 * math.sqrt(a1 * t))
    e2_at_1 = x1 / (2.0 * math.sqrt(a2 * t))
    e2_at_2 = x2 / (2.0 * math.sqrt(a2 * t))
    e3 = x2 / (2.0 * math.sqrt(a3 * t))
    g1 = (
        -(t_.C - t_.D)
        * math.exp(-e1 * e1)
        / (math.sqrt(math.pi * a1 * t) * math.erfc(sol.coef1))
    )
    slope2 = -(t_.B - t_.C) / (math.sqrt(math.pi * a2 * t) * sol._span2)
    g2_at_1 = slope2 * math.exp(-e2_at_1 * e2_at_1)
    g2_at_2 = slope2 * math.exp(-e2_at_2 * e2_at_2)
    g3 = -sol._slope3 * math.exp(-e3 * e3) / math.sqrt(math.pi * a3 * t)
    return {
        "g1_at_1": g1,
        "g2_at_1": g2_at_1,
        "g2_at_2": g2_at_2,
        "g3_at_2": g3,
    }


def stefan_residual(
    sol: ThreePhaseSolution, times: tuple = DEFAULT_TIMES
) -> dict[str, float]:
    """Relative energy-balance residual at each front.

    The balance equates the jump in conductive flux across a front to the
    latent heat absorbed by its motion; all terms scale as 1/sqrt(t), so
    the relative residual is time-independent.
    """
    c = sol.ctx
    p = c.props
    worst = {"front1": 0.0, "front2": 0.0}
    for t in times:
        g = _gradients_at(sol, t)
        rate = math.sqrt(c.alpha1 / t)  # front speed divided by coefficient
        lhs1 = p.k1 * g["g1_at_1"] - p.k2 * g["g2_at_1"]
        rhs1 = p.rho * p.l1 * sol.coef1 * rate
        lhs2 = p.k2 * g["g2_at_2"] - p.k3 * g["g3_at_2"]
        rhs2 = p.rho * p.l2 * sol.coef2 * rate
        for key, lhs, rhs in (("front1", lhs1, rhs1), ("front2", lhs2, rhs2)):
            res = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
            if res > worst[key]:
                worst[key] = res
    return worst


def boundary_residual(
    sol: ThreePhaseSolution, times: tuple = DEFAULT_TIMES
) -> float:
    """Relative residual of the surface condition the solution claims."""
    c = sol.ctx
    bc = c.bc
    worst = 0.0
    for t in times:
        flux = -sol.flux_coef / math.sqrt(t)  # k3 * dT/dx at x = 0
        if isinstance(bc, Robin):
            rhs = bc.h0 / math.sqrt(t) * (sol.surface_temp - bc.A_inf)
            res = abs(flux - rhs) / max(abs(flux), abs(rhs))
        elif isinstance(bc, Dirichlet):
            res = abs(sol.surface_temp - bc.A) / (bc.A - c.temps.B)
        elif isinstance(bc, Neumann):
            res = abs(flux * math.sqrt(t) + bc.q0) / bc.q0
        else:
            raise ValueError("solution has no boundary datum")
        worst = max(worst, res)
    return worst


def far_field_residual(
    sol: ThreePhaseSolution,
    times: tuple = DEFAULT_TIMES,
    x_factor: float = DEFAULT_X_FACTOR,
) -> float:
    """Deviation from the initial temperature at x_factor times the outer front.

    Relative to the solid-phase amplitude C - D.  x_factor must be at
    least 10 to land meaningfully beyond the front.
    """
    if x_factor < 10.0:
        raise ValueError("x_factor must be >= 10")
    t_ = sol.ctx.temps
    worst = 0.0
    for t in times:
        _, x1 = free_boundaries(sol, t)
        dev = abs(_phase_excess(sol, 1, x_factor * x1, t)) / (t_.C - t_.D)
        worst = max(worst, dev)
    return worst


@dataclass(frozen=True)
class ResidualReport:
    """All residuals of one solution plus the pinned tolerances."""

    heat: dict
    interface: dict
    stefan: dict
    boundary: float
    far_field: float
    tolerances: dict = field(
        default_factory=lambda: {
            "heat": HEAT_TOL,
            "interface": INTERFACE_TOL,
            "stefan": STEFAN_TOL,
            "boundary": BOUNDARY_TOL,
            "far_field": FAR_FIELD_TOL,
        }
    )

    def failures(self) -> list[str]:
        out = []
        out += [
            f"heat:{k}" for k, v in self.heat.items() if v > self.tolerances["heat"]
        ]
        out += [
            f"interface:{k}"
            for k, v in self.interface.items()
            if v > self.tolerances["interface"]
        ]
        out += [
            f"stefan:{k}"
            for k, v in self.stefan.items()
            if v > self.tolerances["stefan"]
        ]
        if self.boundary > self.tolerances["boundary"]:
            out.append("boundary")
        if self.far_field > self.tolerances["far_field"]:
            out.append("far_field")
        return out

    @property
    def passes(self) -> bool:
        return not self.failures()

    def to_dict(self) -> dict:
        return {
            "heat": dict(self.heat),
            "interface": dict(self.interface),
            "stefan": dict(self.stefan),
            "boundary": self.boundary,
            "far_field": self.far_field,
            "tolerances": dict(self.tolerances),
            "failures": self.failures(),
            "pass": self.passes,
        }


def full_report(
    sol: ThreePhaseSolution,
    rel_step: float = 1e-4,
    n_points: int = 100,
    times: tuple = DEFAULT_TIMES,
    x_factor: float = DEFAULT_X_FACTOR,
) -> ResidualReport:
    """Run every check and collect the residuals."""
    return ResidualReport(
        heat=heat_residual(sol, rel_step=rel_step, n_points=n_points, times=times),
        interface=interface_residual(sol, times=times),
        stefan=stefan_residual(sol, times=times),
        boundary=boundary_residual(sol, times=times),
        far_field=far_field_residual(sol, times=times, x_factor=x_factor),
    )
