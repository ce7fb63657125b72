"""Material data, boundary data, and input validation.

Units are SI throughout: W/(m K) for conductivities, J/(kg K) for specific
heats, kg/m^3 for density, J/kg for latent heats, K for temperatures,
W/(m^2 K) for the convective coefficient, and W s^(1/2)/m^2 for the flux
coefficient of the time-decaying surface flux q0/sqrt(t).
"""

from __future__ import annotations

import dataclasses
import json
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DiffusivityWarning, ValidationError

# Phase numbering runs from the far solid inward: 1 = solid, 2 = intermediate
# liquid between the fronts, 3 = surface liquid.


@dataclass(frozen=True)
class MaterialProperties:
    """Per-phase thermal constants of the one material.

    Attributes:
        k1, k2, k3: Thermal conductivities of phases 1..3.
        c1, c2, c3: Specific heat capacities of phases 1..3.
        rho: Common mass density.
        l1: Latent heat absorbed at the solid-side front.
        l2: Latent heat absorbed at the inner front.
    """

    k1: float
    k2: float
    k3: float
    c1: float
    c2: float
    c3: float
    rho: float
    l1: float
    l2: float


@dataclass(frozen=True)
class PhaseTemps:
    """Characteristic temperatures: two change temperatures and the initial one.

    B is the upper change temperature (fronts 2), C the lower one (front 1),
    D the uniform initial temperature of the solid.  A valid problem has
    B > C > D.
    """

    B: float
    C: float
    D: float


@dataclass(frozen=True)
class Robin:
    """Convective surface exchange with a bulk at A_inf, coefficient h0/sqrt(t)."""

    h0: float
    A_inf: float

    kind = "robin"


@dataclass(frozen=True)
class Dirichlet:
    """Imposed surface temperature A."""

    A: float

    kind = "dirichlet"


@dataclass(frozen=True)
class Neumann:
    """Imposed incoming surface flux q0/sqrt(t)."""

    q0: float

    kind = "neumann"


BoundarySpec = Union[Robin, Dirichlet, Neumann]


@dataclass(frozen=True)
class StefanNumbers:
    """Dimensionless sensible-to-latent heat ratios of the two transitions."""

    ste1: float
    ste2: float


@dataclass(frozen=True)
class Violation:
    """One validation failure, with a stable machine-readable code."""

    code: str
    message: str


def diffusivities(props: MaterialProperties) -> tuple[float, float, float]:
    """Thermal diffusivities (alpha1, alpha2, alpha3) = k_i/(rho*c_i)."""
    return (
        props.k1 / (props.rho * props.c1),
        props.k2 / (props.rho * props.c2),
        props.k3 / (props.rho * props.c3),
    )


def stefan_numbers(props: MaterialProperties, temps: PhaseTemps) -> StefanNumbers:
    """Ste1 = c1*(C - D)/l1 and Ste2 = c2*(B - C)/l2."""
    return StefanNumbers(
        ste1=props.c1 * (temps.C - temps.D) / props.l1,
        ste2=props.c2 * (temps.B - temps.C) / props.l2,
    )


_POSITIVE_FIELDS = ("k1", "k2", "k3", "c1", "c2", "c3", "rho", "l1", "l2")


def validate(
    props: MaterialProperties,
    temps: PhaseTemps,
    bc: Optional[BoundarySpec] = None,
) -> list[Violation]:
    """Check every model invariant and return the violations found.

    An empty list means the data describes a well-posed problem.  When the
    two liquid diffusivities are exactly equal the data is still accepted,
    but a DiffusivityWarning is emitted because the solvability theory
    requires alpha2 >= alpha3 with strict inequality.

    Args:
        props: Material constants.
        temps: Characteristic temperatures.
        bc: Optional boundary datum; when given, its own constraints are
            checked too.

    Returns:
        List of Violation records, empty when valid.
    """
    out: list[Violation] = []

    values = [getattr(props, f) for f in _POSITIVE_FIELDS]
    values += [temps.B, temps.C, temps.D]
    if bc is not None:
        values += [getattr(bc, f.name) for f in dataclasses.fields(bc)]
    if not all(math.isfinite(v) for v in values):
        out.append(Violation("NOT_FINITE", "all inputs must be finite numbers"))
        return out

    for f in _POSITIVE_FIELDS:
        if getattr(props, f) <= 0.0:
            out.append(Violation("PROPS_NOT_POSITIVE", f"{f} must be > 0"))

    if not temps.B > temps.C > temps.D:
        out.append(
            Violation("TEMPS_NOT_STRICT", "temperatures must satisfy B > C > D")
        )

    if not out:
        a1, a2, a3 = diffusivities(props)
        if a2 < a3:
            out.append(
                Violation(
                    "DIFFUSIVITY_ORDER",
                    "liquid diffusivities must satisfy alpha2 >= alpha3",
                )
            )
        elif a2 == a3:
            warnings.warn(
                "alpha2 == alpha3: solvability is only established for "
                "alpha2 > alpha3",
                DiffusivityWarning,
                stacklevel=2,
            )

    if isinstance(bc, Robin):
        if bc.h0 <= 0.0:
            out.append(Violation("ROBIN_H0_NOT_POSITIVE", "h0 must be > 0"))
        if bc.A_inf <= temps.B:
            out.append(
                Violation("ROBIN_BULK_NOT_ABOVE_B", "A_inf must exceed B")
            )
    elif isinstance(bc, Dirichlet):
        if bc.A <= temps.B:
            out.append(Violation("DIRICHLET_A_NOT_ABOVE_B", "A must exceed B"))
    elif isinstance(bc, Neumann):
        if bc.q0 <= 0.0:
            out.append(Violation("NEUMANN_Q0_NOT_POSITIVE", "q0 must be > 0"))

    return out


def require_valid(
    props: MaterialProperties,
    temps: PhaseTemps,
    bc: Optional[BoundarySpec] = None,
) -> None:
    """Raise ValidationError when validate() reports anything."""
    violations = validate(props, temps, bc)
    if violations:
        raise ValidationError(violations)


def _as_number(obj: dict, key: str) -> float:
    try:
        value = obj[key]
    except KeyError:
        raise ValidationError(
            [Violation("MISSING_FIELD", f"config field {key!r} is required")]
        ) from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(
            [Violation("BAD_FIELD_TYPE", f"config field {key!r} must be a number")]
        )
    return float(value)


def boundary_from_dict(obj: dict) -> BoundarySpec:
    """Build a BoundarySpec from its JSON object form."""
    if not isinstance(obj, dict):
        raise ValidationError(
            [Violation("BAD_FIELD_TYPE", "'boundary' must be an object")]
        )
    kind = obj.get("type")
    if kind == "robin":
        return Robin(h0=_as_number(obj, "h0"), A_inf=_as_number(obj, "A_inf"))
    if kind == "dirichlet":
        return Dirichlet(A=_as_number(obj, "A"))
    if kind == "neumann":
        return Neumann(q0=_as_number(obj, "q0"))
    raise ValidationError(
        [
            Violation(
                "BAD_BOUNDARY_TYPE",
                "boundary type must be one of 'robin', 'dirichlet', 'neumann'",
            )
        ]
    )


def boundary_to_dict(bc: BoundarySpec) -> dict:
    """JSON object form of a BoundarySpec, inverse of boundary_from_dict."""
    out: dict = {"type": bc.kind}
    for f in dataclasses.fields(bc):
        out[f.name] = getattr(bc, f.name)
    return out


def config_from_dict(
    obj: dict,
) -> tuple[MaterialProperties, PhaseTemps, Optional[BoundarySpec]]:
    """Parse a config mapping into typed pieces.

    The boundary section is optional so that threshold-only configs work.
    Schema problems raise ValidationError; physical invariants are not
    checked here (call validate for that).
    """
    if not isinstance(obj, dict):
        raise ValidationError(
            [Violation("BAD_CONFIG", "config root must be a JSON object")]
        )
    props = MaterialProperties(
        k1=_as_number(obj, "k1"),
        k2=_as_number(obj, "k2"),
        k3=_as_number(obj, "k3"),
        c1=_as_number(obj, "c1"),
        c2=_as_number(obj, "c2"),
        c3=_as_number(obj, "c3"),
        rho=_as_number(obj, "rho"),
        l1=_as_number(obj, "l1"),
        l2=_as_number(obj, "l2"),
    )
    temps = PhaseTemps(
        B=_as_number(obj, "B"), C=_as_number(obj, "C"), D=_as_number(obj, "D")
    )
    bc = boundary_from_dict(obj["boundary"]) if "boundary" in obj else None
    return props, temps, bc


def config_to_dict(
    props: MaterialProperties,
    temps: PhaseTemps,
    bc: Optional[BoundarySpec] = None,
) -> dict:
    """Serialize typed pieces back to the JSON config mapping."""
    out = dataclasses.asdict(props)
    out.update(dataclasses.asdict(temps))
    if bc is not None:
        out["boundary"] = boundary_to_dict(bc)
    return out


def load_config(
    path: str,
) -> tuple[MaterialProperties, PhaseTemps, Optional[BoundarySpec]]:
    """Read and parse a JSON config file.

    I/O problems propagate as OSError; malformed JSON or a bad schema raise
    ValidationError.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            [Violation("BAD_JSON", f"config is not valid JSON: {exc}")]
        ) from exc
    return config_from_dict(obj)
