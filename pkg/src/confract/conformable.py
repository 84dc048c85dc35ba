"""Conformable time derivative and the residual evaluator for the system class.

The operator T^a_t f = t^(1-a) f'(t) is the single verification primitive the
rest of the package leans on: a candidate pair (u, v) is accepted as a solution
when both residuals of the governing system vanish to tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Mapping

if TYPE_CHECKING:
    from .systems import SystemSpec

__all__ = [
    "Field",
    "EvalPoint",
    "SolutionPair",
    "check_order",
    "conformable_derivative",
    "residual",
    "scaled_residual",
    "X_MARGIN",
    "T_MARGIN",
]

Field = Callable[[float, float], float]

# Verification grids stay away from the domain edges where coefficients such
# as c/x and the weight t^(1-a) degenerate.
X_MARGIN = 0.05
T_MARGIN = 0.05

# Central-difference steps: first derivatives 2nd order, second derivatives
# 3-point; relative steps balance truncation against round-off in doubles.
FD_STEP_FIRST = 1e-5
FD_STEP_SECOND = 3e-4

_SCALE_FLOOR = 1e-300


def check_order(alpha: float) -> float:
    """Validate a fractional order 0 < alpha <= 1 and return it."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"fractional order must satisfy 0 < alpha <= 1, got {alpha}")
    return float(alpha)


def _step1(coord: float) -> float:
    return max(FD_STEP_FIRST, FD_STEP_FIRST * abs(coord))


def _step2(coord: float) -> float:
    return max(FD_STEP_SECOND, FD_STEP_SECOND * abs(coord))


def conformable_derivative(
    f: Callable[[float], float],
    t: float,
    alpha: float,
    dfdt: Callable[[float], float] | None = None,
) -> float:
    """Conformable derivative T^a_t f = t^(1-a) f'(t) at t > 0.

    f'(t) comes from ``dfdt`` when supplied, otherwise from a central
    difference with a step shrunk so the stencil stays inside t > 0.
    """
    check_order(alpha)
    if t <= 0.0:
        raise ValueError(f"conformable derivative requires t > 0, got t = {t}")
    if dfdt is not None:
        deriv = dfdt(t)
    else:
        h = min(_step1(t), 0.5 * t)
        deriv = (f(t + h) - f(t - h)) / (2.0 * h)
    return t ** (1.0 - alpha) * deriv


@dataclass(frozen=True)
class EvalPoint:
    """Interior evaluation point of the quarter-plane x > 0, t > 0."""

    x: float
    t: float

    def __post_init__(self) -> None:
        if not (self.x > 0.0 and self.t > 0.0):
            raise ValueError(f"evaluation point must have x > 0, t > 0, got {self}")


@dataclass(frozen=True)
class SolutionPair:
    """A candidate solution pair (u, v) on x > 0, t > 0.

    ``partials`` may carry closed-form derivatives under the keys
    ``u_x, u_t, u_xx, u_xt, v_x, v_t, v_xx, v_xt``; anything missing is
    replaced by a finite difference of the matching field.
    """

    u: Field
    v: Field
    partials: Mapping[str, Field] = field(default_factory=dict)
    label: str = ""

    @property
    def analytic(self) -> bool:
        """True when every derivative used by the checkers is closed-form."""
        needed = {"u_x", "u_t", "u_xx", "u_xt", "v_x", "v_t", "v_xx", "v_xt"}
        return needed.issubset(self.partials.keys())

    def _field(self, comp: str) -> Field:
        return self.u if comp == "u" else self.v

    def _dx(self, comp: str, x: float, t: float) -> float:
        fn = self.partials.get(comp + "_x")
        if fn is not None:
            return fn(x, t)
        f = self._field(comp)
        h = min(_step1(x), 0.5 * x)
        return (f(x + h, t) - f(x - h, t)) / (2.0 * h)

    def _dt(self, comp: str, x: float, t: float) -> float:
        fn = self.partials.get(comp + "_t")
        if fn is not None:
            return fn(x, t)
        f = self._field(comp)
        h = min(_step1(t), 0.5 * t)
        return (f(x, t + h) - f(x, t - h)) / (2.0 * h)

    def _dxx(self, comp: str, x: float, t: float) -> float:
        fn = self.partials.get(comp + "_xx")
        if fn is not None:
            return fn(x, t)
        f = self._field(comp)
        h = min(_step2(x), 0.5 * x)
        return (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h)

    def _dxt(self, comp: str, x: float, t: float) -> float:
        fn = self.partials.get(comp + "_xt")
        if fn is not None:
            return fn(x, t)
        f = self._field(comp)
        hx = min(_step2(x), 0.5 * x)
        ht = min(_step2(t), 0.5 * t)
        return (
            f(x + hx, t + ht) - f(x + hx, t - ht) - f(x - hx, t + ht) + f(x - hx, t - ht)
        ) / (4.0 * hx * ht)

    # Thin named accessors -- these read better at call sites than _dx("u", ...).
    def u_x(self, x: float, t: float) -> float:
        return self._dx("u", x, t)

    def u_t(self, x: float, t: float) -> float:
        return self._dt("u", x, t)

    def u_xx(self, x: float, t: float) -> float:
        return self._dxx("u", x, t)

    def u_xt(self, x: float, t: float) -> float:
        return self._dxt("u", x, t)

    def v_x(self, x: float, t: float) -> float:
        return self._dx("v", x, t)

    def v_t(self, x: float, t: float) -> float:
        return self._dt("v", x, t)

    def v_xx(self, x: float, t: float) -> float:
        return self._dxx("v", x, t)

    def v_xt(self, x: float, t: float) -> float:
        return self._dxt("v", x, t)

    def conformable_u(self, x: float, t: float, alpha: float) -> float:
        """T^a_t u at (x, t); weight t^(1-a) applied to the plain u_t."""
        return t ** (1.0 - check_order(alpha)) * self.u_t(x, t)

    def conformable_v(self, x: float, t: float, alpha: float) -> float:
        return t ** (1.0 - check_order(alpha)) * self.v_t(x, t)


def residual(spec: "SystemSpec", sol: SolutionPair, p: EvalPoint) -> tuple[float, float]:
    """Raw residuals of both equations of ``spec`` at ``p``.

    Returns (T^a u - h u_xx - f1 u_x - g1 v_x,
             T^a v - h v_xx - f2 v_x - g2 u_x).
    """
    x, t = p.x, p.t
    h = spec.h(x, t)
    ux, vx = sol.u_x(x, t), sol.v_x(x, t)
    r1 = (
        sol.conformable_u(x, t, spec.alpha)
        - h * sol.u_xx(x, t)
        - spec.f1(x, t) * ux
        - spec.g1(x, t) * vx
    )
    r2 = (
        sol.conformable_v(x, t, spec.alpha)
        - h * sol.v_xx(x, t)
        - spec.f2(x, t) * vx
        - spec.g2(x, t) * ux
    )
    return r1, r2


def scaled_residual(spec: "SystemSpec", sol: SolutionPair, p: EvalPoint) -> tuple[float, float]:
    """Residuals divided by the magnitude of the largest term of each equation.

    Kernel entries span many orders of magnitude across (x, t); scaling makes
    one absolute tolerance meaningful over the whole grid.
    """
    x, t = p.x, p.t
    h = spec.h(x, t)
    ux, vx = sol.u_x(x, t), sol.v_x(x, t)
    terms1 = (
        sol.conformable_u(x, t, spec.alpha),
        -h * sol.u_xx(x, t),
        -spec.f1(x, t) * ux,
        -spec.g1(x, t) * vx,
    )
    terms2 = (
        sol.conformable_v(x, t, spec.alpha),
        -h * sol.v_xx(x, t),
        -spec.f2(x, t) * vx,
        -spec.g2(x, t) * ux,
    )
    s1 = max(max(abs(v) for v in terms1), _SCALE_FLOOR)
    s2 = max(max(abs(v) for v in terms2), _SCALE_FLOOR)
    return math.fsum(terms1) / s1, math.fsum(terms2) / s2


def constant_pair(cu: float, cv: float, label: str = "") -> SolutionPair:
    """Constant solution pair with exact partials."""
    zero = lambda x, t: 0.0  # noqa: E731
    return SolutionPair(
        u=lambda x, t: cu,
        v=lambda x, t: cv,
        partials={k: zero for k in ("u_x", "u_t", "u_xx", "u_xt", "v_x", "v_t", "v_xx", "v_xt")},
        label=label or f"const({cu}, {cv})",
    )
