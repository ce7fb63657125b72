"""Exception and warning types shared across the package."""

from __future__ import annotations


class ValidationError(Exception):
    """Input data violates one or more model invariants.

    Carries the machine-readable violation list produced by
    :func:`stefan3.model.validate`.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(lines or "invalid input")


class MissingBoundaryDatum(Exception):
    """An operation needs a boundary parameter the input does not carry."""


class RegimeError(Exception):
    """The boundary datum puts the problem outside the three-phase regime."""

    def __init__(self, regime, message: str):
        self.regime = regime
        super().__init__(message)


class RootFailure(Exception):
    """Bracketed root search could not produce a root.

    ``reason`` is ``"no_sign_change"`` when doubling the upper bracket never
    produced opposite signs, or ``"non_finite"`` when the residual returned
    NaN or infinity inside the bracket.
    """

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


class HypothesisError(Exception):
    """A named inequality required by a parameter mapping does not hold."""

    def __init__(self, name: str, lhs: float, rhs: float):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"hypothesis {name} failed: {lhs!r} <= {rhs!r}")


class StencilCrossesFront(Exception):
    """A finite-difference stencil point left the phase region under test."""


class DiffusivityWarning(UserWarning):
    """Emitted when the two outer diffusivities are exactly equal."""
