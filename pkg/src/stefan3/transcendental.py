"""Scalar reduction of the three-phase similarity system.

Everything the solvers need is expressed through a handful of scalar
functions of the front coefficients.  The key objects are:

* ``phi``: strictly increasing kernel entering the solid-side balance.
* ``h_func``: the map whose unique positive zero ``z0`` separates the
  admissible range of the outer front coefficient; above ``z0`` it gives,
  through ``coef2_from_coef1``, the inner coefficient matched to an outer
  one.
* ``q_func`` and the boundary-specific ``t_func``/``v_func``/``p_func``:
  the two sides of the single remaining equation for the outer coefficient.

All are parameterized by an immutable ProblemContext so repeated evaluation
during root finding allocates nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

from . import specfun
from .errors import MissingBoundaryDatum, RootFailure
from .model import (
    BoundarySpec,
    Dirichlet,
    MaterialProperties,
    Neumann,
    PhaseTemps,
    Robin,
    diffusivities,
    require_valid,
    stefan_numbers,
)

_SQRT_PI = math.sqrt(math.pi)

# exp() saturation guard: bracket doubling can probe arguments far past the
# root, where the true value overflows float64.  Saturating keeps the sign
# information the bisection needs without raising OverflowError.
_EXP_CAP = 690.0

# Substitute inverse when the complementary tail underflows to zero; far
# beyond any value reachable from a finite tail (erfc_inv of the smallest
# subnormal is about 26.6).
_INNER_SATURATION = 30.0


def _exp_capped(x: float) -> float:
    return math.exp(min(x, _EXP_CAP))


@dataclass(frozen=True)
class ProblemContext:
    """Validated, immutable bundle of one problem's data.

    Construction runs the full model validation, so any context that exists
    describes a well-posed problem.  Derived constants and the zero ``z0``
    are computed once and cached on the instance.
    """

    props: MaterialProperties
    temps: PhaseTemps
    bc: Optional[BoundarySpec] = None

    def __post_init__(self):
        require_valid(self.props, self.temps, self.bc)

    @cached_property
    def alphas(self) -> tuple[float, float, float]:
        return diffusivities(self.props)

    @property
    def alpha1(self) -> float:
        return self.alphas[0]

    @property
    def alpha2(self) -> float:
        return self.alphas[1]

    @property
    def alpha3(self) -> float:
        return self.alphas[2]

    @cached_property
    def ste1(self) -> float:
        return stefan_numbers(self.props, self.temps).ste1

    @cached_property
    def ste2(self) -> float:
        return stefan_numbers(self.props, self.temps).ste2

    @cached_property
    def sigma2(self) -> float:
        # sqrt(alpha1/alpha2): rescales an outer-front coefficient into the
        # similarity variable of phase 2
        return math.sqrt(self.alpha1 / self.alpha2)

    @cached_property
    def sigma3(self) -> float:
        return math.sqrt(self.alpha1 / self.alpha3)

    @cached_property
    def _h_offset_coef(self) -> float:
        p = self.props
        return (
            self.ste2
            / _SQRT_PI
            * (p.l2 / p.l1)
            * math.sqrt(p.k2 * p.c1 / (p.k1 * p.c2))
        )

    @cached_property
    def z0(self) -> float:
        """Unique positive zero of h_func, found by bracketed bisection."""
        return find_root_monotone(
            lambda z: h_func(z, self), 0.0, hi_start=1.0, tol=1e-13
        )

    def with_bc(self, bc: Optional[BoundarySpec]) -> "ProblemContext":
        """Same material and temperatures under another boundary datum."""
        return ProblemContext(self.props, self.temps, bc)


def phi(z: float, ctx: ProblemContext) -> float:
    """phi(z) = z + (Ste1/sqrt(pi)) * exp(-z^2)/erfc(z), for z >= 0.

    Strictly increasing from phi(0) = Ste1/sqrt(pi); the quotient is
    evaluated in ratio form so large z does not underflow.
    """
    if z < 0.0:
        raise ValueError("phi is defined for z >= 0")
    return z + ctx.ste1 / _SQRT_PI * specfun._inv_erfcx(z)


def _h_subtracted(z: float, ctx: ProblemContext) -> float:
    # the strictly positive term subtracted from erf(z*sigma2) in h_func
    return (
        ctx._h_offset_coef
        * math.exp(-z * z * ctx.alpha1 / ctx.alpha2)
        / phi(z, ctx)
    )


def h_func(z: float, ctx: ProblemContext) -> float:
    """Strictly increasing map with h_func(0) < 0 and limit 1 at infinity.

    Its zero z0 is the smallest outer-front coefficient for which a matched
    inner front exists.
    """
    if z < 0.0:
        raise ValueError("h_func is defined for z >= 0")
    return specfun.erf(z * ctx.sigma2) - _h_subtracted(z, ctx)


def coef2_from_coef1(z: float, ctx: ProblemContext) -> float:
    """Inner-front coefficient matched to an outer coefficient z > z0.

    Solves erf(coef2 * sqrt(alpha1/alpha2)) = h_func(z) for coef2.  The
    inversion goes through the complementary tail erfc = 1 - h_func, which
    keeps full precision where h_func is within rounding distance of 1;
    forming 1 - h_func after the fact would lose the answer entirely there.
    """
    tail = specfun.erfc(z * ctx.sigma2) + _h_subtracted(z, ctx)
    if tail <= 0.0:
        scaled = _INNER_SATURATION
    elif tail >= 2.0:
        raise ValueError("h_func(z) < -1: z is far below z0")
    else:
        scaled = specfun.erfc_inv(tail)
    return math.sqrt(ctx.alpha2 / ctx.alpha1) * scaled


def q_func(z: float, ctx: ProblemContext) -> float:
    """Left side of the outer-coefficient equation, strictly increasing.

    q_func(z) = (l1/l2) * phi(z) * exp(z^2 alpha1/alpha2), z >= 0.
    """
    if z < 0.0:
        raise ValueError("q_func is defined for z >= 0")
    p = ctx.props
    return (
        p.l1 / p.l2 * phi(z, ctx) * _exp_capped(z * z * ctx.alpha1 / ctx.alpha2)
    )


def _robin_datum(ctx: ProblemContext) -> Robin:
    if not isinstance(ctx.bc, Robin):
        raise MissingBoundaryDatum(
            "operation needs a convective boundary (h0 and A_inf)"
        )
    return ctx.bc


def _dirichlet_datum(ctx: ProblemContext) -> Dirichlet:
    if not isinstance(ctx.bc, Dirichlet):
        raise MissingBoundaryDatum(
            "operation needs an imposed surface temperature A"
        )
    return ctx.bc


def _neumann_datum(ctx: ProblemContext) -> Neumann:
    if not isinstance(ctx.bc, Neumann):
        raise MissingBoundaryDatum("operation needs a surface flux coefficient q0")
    return ctx.bc


def t_func(z: float, ctx: ProblemContext) -> float:
    """Right side of the outer equation for the convective condition.

    Strictly decreasing in z; evaluated at the matched inner coefficient.
    """
    if z < 0.0:
        raise ValueError("t_func is defined for z >= 0")
    bc = _robin_datum(ctx)
    p, t = ctx.props, ctx.temps
    a1, a2, a3 = ctx.alphas
    coef = (
        (bc.A_inf - t.B)
        / (p.l2 * _SQRT_PI)
        * math.sqrt(p.k3 * p.c1 * p.c3 / p.k1)
    )
    khat = p.k3 / (bc.h0 * math.sqrt(math.pi * a3))
    decay = math.exp(-z * z * (a1 / a3 - a1 / a2))
    return coef * decay / (khat + specfun.erf(z * ctx.sigma3)) - z * _exp_capped(
        z * z * a1 / a2
    )


def v_func(z: float, ctx: ProblemContext) -> float:
    """Right side of the outer equation for the imposed-temperature condition.

    Singular as z -> 0+, strictly decreasing on z > 0.
    """
    if z <= 0.0:
        raise ValueError("v_func is defined for z > 0")
    bc = _dirichlet_datum(ctx)
    p, t = ctx.props, ctx.temps
    a1, a2, a3 = ctx.alphas
    coef = (
        (bc.A - t.B) / (p.l2 * _SQRT_PI) * math.sqrt(p.k3 * p.c1 * p.c3 / p.k1)
    )
    decay = math.exp(-z * z * (a1 / a3 - a1 / a2))
    return coef * decay / specfun.erf(z * ctx.sigma3) - z * _exp_capped(
        z * z * a1 / a2
    )


def p_func(z: float, ctx: ProblemContext) -> float:
    """Right side of the outer equation for the imposed-flux condition."""
    if z < 0.0:
        raise ValueError("p_func is defined for z >= 0")
    bc = _neumann_datum(ctx)
    p = ctx.props
    a1, a2, a3 = ctx.alphas
    return _exp_capped(z * z * a1 / a2) * (
        -z
        + bc.q0
        / p.l2
        * math.sqrt(p.c1 / (p.rho * p.k1))
        * math.exp(-z * z * a1 / a3)
    )


def u_func(z: float, ctx: ProblemContext) -> float:
    """Convective right side composed with the inner-coefficient match.

    Defined for z > z0 only, where the match exists; strictly decreasing.
    """
    if z <= ctx.z0:
        raise ValueError("u_func is defined for z > z0")
    return t_func(coef2_from_coef1(z, ctx), ctx)


def find_root_monotone(
    f: Callable[[float], float],
    lo: float,
    hi_start: Optional[float] = None,
    tol: float = 1e-12,
) -> float:
    """Root of a monotone function by sign-preserving bisection.

    The upper bracket starts at ``hi_start`` (default ``max(lo, 1)``) and is
    doubled until the sign changes, at most 200 times.  Bisection then runs
    until the bracket is at most 1e-14 wide and the midpoint residual is at
    most ``tol``, or until float spacing cannot split the bracket further.
    Pure bisection keeps the result bit-reproducible across platforms.

    Raises:
        RootFailure: reason "no_sign_change" when doubling exhausts its
            budget, "non_finite" when f returns NaN or infinity.
    """

    def check(value: float, where: float) -> float:
        if not math.isfinite(value):
            raise RootFailure(
                "non_finite", f"f({where!r}) = {value!r} during root search"
            )
        return value

    flo = check(f(lo), lo)
    if flo == 0.0:
        return lo
    hi = hi_start if hi_start is not None else max(lo, 1.0)
    if hi <= lo:
        hi = lo + 1.0
    fhi = check(f(hi), hi)
    doublings = 0
    while (fhi > 0.0) == (flo > 0.0):
        if fhi == 0.0:
            return hi
        doublings += 1
        if doublings > 200:
            raise RootFailure(
                "no_sign_change",
                f"no sign change on [{lo!r}, {hi!r}] after 200 doublings",
            )
        hi *= 2.0
        fhi = check(f(hi), hi)
    if fhi == 0.0:
        return hi

    rising = fhi > flo
    mid = 0.5 * (lo + hi)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break  # float spacing exhausted
        fmid = check(f(mid), mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == rising:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 and abs(fmid) <= tol:
            break
    return mid


def solve_z0(ctx: ProblemContext) -> float:
    """Zero of h_func for this material; cached on the context."""
    return ctx.z0
