"""System constructors and the equivalence-transformation engine.

A ``SystemSpec`` packages the five coefficient fields of one member of the
class

    T^a_t u = h u_xx + f1 u_x + g1 v_x,
    T^a_t v = h v_xx + f2 v_x + g2 u_x,        x > 0, t > 0.

``TransformationData`` bundles an invertible change of variables
(x~, t~, F U) inside the class, and ``transform_coefficients`` evaluates the
transformed coefficient set numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .conformable import EvalPoint, Field, check_order
from .errors import ParameterError, SingularityError

__all__ = [
    "SystemSpec",
    "TransformationData",
    "make_example31",
    "make_eq2",
    "make_eq3",
    "make_generalequation2",
    "make_power_reduced",
    "make_transformed_example33",
    "identity_transformation",
    "power_transformation",
    "example33_transformation",
    "transform_coefficients",
    "constraint_residual",
    "from_config",
]

# 4th-order central stencils; tighter than the 2nd-order solution-checking
# stencils because transformed coefficients are compared at 1e-8.
_H1 = 1e-4
_H2 = 3e-4


def _d1(f: Callable[[float], float], x: float, scale: float) -> float:
    h = min(_H1 * max(1.0, abs(scale)), 0.25 * abs(scale)) if scale > 0 else _H1
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def _d2(f: Callable[[float], float], x: float, scale: float) -> float:
    h = min(_H2 * max(1.0, abs(scale)), 0.25 * abs(scale)) if scale > 0 else _H2
    return (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12 * h * h)


@dataclass(frozen=True)
class SystemSpec:
    """One system of the coefficient class; fields are evaluable, not symbolic."""

    h: Field
    f1: Field
    f2: Field
    g1: Field
    g2: Field
    alpha: float
    label: str = ""
    params: Mapping[str, float] = field(default_factory=dict)

    def coefficients(self, x: float, t: float) -> tuple[float, float, float, float, float]:
        return (self.h(x, t), self.f1(x, t), self.f2(x, t), self.g1(x, t), self.g2(x, t))


def make_example31(a: float, b: float, alpha: float) -> SystemSpec:
    """System  T^a u = x u_xx + a v_x,  T^a v = x v_xx + b u_x  with ab > 0."""
    check_order(alpha)
    if not a * b > 0.0:
        raise ParameterError(f"example31 requires a*b > 0, got a = {a}, b = {b}")
    return SystemSpec(
        h=lambda x, t: x,
        f1=lambda x, t: 0.0,
        f2=lambda x, t: 0.0,
        g1=lambda x, t: a,
        g2=lambda x, t: b,
        alpha=alpha,
        label="example31",
        params={"a": a, "b": b},
    )


def make_eq2(c: float, m: float, n: float, k: float, alpha: float) -> SystemSpec:
    """System  T^a u = u_xx + (c/x) u_x + m x^k v_x  (and u <-> v, m <-> n)."""
    check_order(alpha)
    if not m * n > 0.0:
        raise ParameterError(f"eq2 requires m*n > 0, got m = {m}, n = {n}")
    return SystemSpec(
        h=lambda x, t: 1.0,
        f1=lambda x, t: c / x,
        f2=lambda x, t: c / x,
        g1=lambda x, t: m * x**k,
        g2=lambda x, t: n * x**k,
        alpha=alpha,
        label="eq2",
        params={"c": c, "m": m, "n": n, "k": k},
    )


def make_eq3(c: float, m: float, n: float, alpha: float) -> SystemSpec:
    """The k = -1 member of the eq2 family, the one with the full Lie algebra."""
    spec = make_eq2(c, m, n, -1.0, alpha)
    return SystemSpec(
        h=spec.h,
        f1=spec.f1,
        f2=spec.f2,
        g1=spec.g1,
        g2=spec.g2,
        alpha=alpha,
        label="eq3",
        params={"c": c, "m": m, "n": n},
    )


def make_generalequation2(a: float, b: float, q: float, alpha: float) -> SystemSpec:
    """Power-diffusion system  T^a u = x^q u_xx + a v_x,  T^a v = x^q v_xx + b u_x."""
    check_order(alpha)
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    return SystemSpec(
        h=lambda x, t: x**q,
        f1=lambda x, t: 0.0,
        f2=lambda x, t: 0.0,
        g1=lambda x, t: a,
        g2=lambda x, t: b,
        alpha=alpha,
        label="generalequation2",
        params={"a": a, "b": b, "q": q},
    )


def make_power_reduced(a: float, b: float, q: float, alpha: float) -> SystemSpec:
    """Target of the power change of variables applied to the x^q system.

    Coefficients  h = 1,  f = q/((q-2) y),  g_i = {a,b} * 2/(2-q) * y^(q/(q-2)).
    """
    check_order(alpha)
    if q >= 2.0:
        raise ParameterError(f"power reduction requires q < 2, got q = {q}")
    fac = 2.0 / (2.0 - q)
    ex = q / (q - 2.0)
    return SystemSpec(
        h=lambda y, t: 1.0,
        f1=lambda y, t: q / ((q - 2.0) * y),
        f2=lambda y, t: q / ((q - 2.0) * y),
        g1=lambda y, t: a * fac * y**ex,
        g2=lambda y, t: b * fac * y**ex,
        alpha=alpha,
        label="power_reduced",
        params={"a": a, "b": b, "q": q},
    )


def _bisect_inverse(
    fn: Callable[[float], float], target: float, lo: float = 1e-12, hi: float = 1.0
) -> float:
    """Solve fn(z) = target for z > 0 by bracket expansion + bisection (tol 1e-12)."""
    increasing = fn(hi) >= fn(lo)
    sgn = 1.0 if increasing else -1.0
    g = lambda z: sgn * (fn(z) - target)  # noqa: E731
    while g(hi) < 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise SingularityError("inverse map: bracket expansion failed")
    while g(lo) > 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise SingularityError("inverse map: bracket expansion failed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TransformationData:
    """The bundle (X, Y, F) of an equivalence transformation, plus inverses.

    ``Z`` / ``Yinv`` may be omitted; they are then recovered by bisection.
    Analytic derivatives (``X_x``, ``X_xx``, ``Y_t``, ``Z_z``) are optional and
    fall back to 4th-order finite differences.
    """

    X: Field
    Y: Callable[[float], float]
    r1: Field
    r2: Field
    r3: Field
    s1: Field
    s2: Field
    s3: Field
    Z: Callable[[float, float], float] | None = None
    Yinv: Callable[[float], float] | None = None
    X_x: Field | None = None
    X_xx: Field | None = None
    Y_t: Callable[[float], float] | None = None
    Z_z: Field | None = None
    label: str = ""

    # -- inverse maps ------------------------------------------------------
    def t_inverse(self, tt: float) -> float:
        if self.Yinv is not None:
            return self.Yinv(tt)
        return _bisect_inverse(self.Y, tt)

    def x_inverse(self, xt: float, tt: float) -> float:
        if self.Z is not None:
            return self.Z(xt, tt)
        t = self.t_inverse(tt)
        return _bisect_inverse(lambda z: self.X(z, t), xt)

    def z_deriv(self, xt: float, tt: float) -> float:
        """dZ/dx~ at fixed t~; reciprocal of X_x when no closed form is given."""
        if self.Z_z is not None:
            return self.Z_z(xt, tt)
        t = self.t_inverse(tt)
        x = self.x_inverse(xt, tt)
        xx = self.dX_dx(x, t)
        if xx == 0.0 or not math.isfinite(xx):
            raise SingularityError(f"X_x vanishes at (x, t) = ({x}, {t})")
        return 1.0 / xx

    # -- derivatives of the forward maps ------------------------------------
    def dX_dx(self, x: float, t: float) -> float:
        if self.X_x is not None:
            return self.X_x(x, t)
        return _d1(lambda z: self.X(z, t), x, x)

    def dX_dxx(self, x: float, t: float) -> float:
        if self.X_xx is not None:
            return self.X_xx(x, t)
        return _d2(lambda z: self.X(z, t), x, x)

    def conformable_X(self, x: float, t: float, alpha: float) -> float:
        return t ** (1.0 - alpha) * _d1(lambda s: self.X(x, s), t, t)

    def conformable_Y(self, t: float, alpha: float) -> float:
        if self.Y_t is not None:
            return t ** (1.0 - alpha) * self.Y_t(t)
        return t ** (1.0 - alpha) * _d1(self.Y, t, t)

    # -- matrix part ---------------------------------------------------------
    def kappa(self, x: float, t: float) -> float:
        return self.r1(x, t) * self.s1(x, t) - self.r2(x, t) * self.s2(x, t)

    def delta(self, x: float, t: float) -> float:
        return self.r2(x, t) * self.s3(x, t) - self.r3(x, t) * self.s1(x, t)

    def varrho(self, x: float, t: float) -> float:
        return self.r3(x, t) * self.s2(x, t) - self.r1(x, t) * self.s3(x, t)

    def F(self, x: float, t: float) -> np.ndarray:
        return np.array(
            [
                [self.r1(x, t), self.r2(x, t)],
                [self.s2(x, t), self.s1(x, t)],
            ]
        )

    def F_inv(self, x: float, t: float) -> np.ndarray:
        kap = self.kappa(x, t)
        if kap == 0.0 or not math.isfinite(kap):
            raise SingularityError(f"det F = kappa vanishes at (x, t) = ({x}, {t})")
        return (
            np.array(
                [
                    [self.s1(x, t), -self.r2(x, t)],
                    [-self.s2(x, t), self.r1(x, t)],
                ]
            )
            / kap
        )


def identity_transformation() -> TransformationData:
    one = lambda x, t: 1.0  # noqa: E731
    zero = lambda x, t: 0.0  # noqa: E731
    return TransformationData(
        X=lambda x, t: x,
        Y=lambda t: t,
        r1=one,
        r2=zero,
        r3=zero,
        s1=one,
        s2=zero,
        s3=zero,
        Z=lambda xt, tt: xt,
        Yinv=lambda tt: tt,
        X_x=one,
        X_xx=zero,
        Y_t=lambda t: 1.0,
        Z_z=one,
        label="identity",
    )


def power_transformation(q: float, alpha: float) -> TransformationData:
    """Change of variables  y = x^((2-q)/2),  tau = (1 - q/2)^(2/a) t  (q < 2)."""
    check_order(alpha)
    if q >= 2.0:
        raise ParameterError(f"power transformation requires q < 2, got q = {q}")
    e = (2.0 - q) / 2.0
    cy = (1.0 - 0.5 * q) ** (2.0 / alpha)
    one = lambda x, t: 1.0  # noqa: E731
    zero = lambda x, t: 0.0  # noqa: E731
    return TransformationData(
        X=lambda x, t: x**e,
        Y=lambda t: cy * t,
        r1=one,
        r2=zero,
        r3=zero,
        s1=one,
        s2=zero,
        s3=zero,
        Z=lambda xt, tt: xt ** (1.0 / e),
        Yinv=lambda tt: tt / cy,
        X_x=lambda x, t: e * x ** (e - 1.0),
        X_xx=lambda x, t: e * (e - 1.0) * x ** (e - 2.0),
        Y_t=lambda t: cy,
        Z_z=lambda xt, tt: (1.0 / e) * xt ** (1.0 / e - 1.0),
        label=f"power(q={q})",
    )


def example33_transformation(
    a1: float, a2: float, b1: float, b2: float, c: float, m: float, n: float
) -> TransformationData:
    """The printed power-law matrix F(x) with x~ = x, t~ = t.

    Requires B2 = a2 b1 - a1 b2 != 0 so that F is invertible.
    """
    if not m * n > 0.0:
        raise ParameterError(f"requires m*n > 0, got m = {m}, n = {n}")
    B2 = a2 * b1 - a1 * b2
    if B2 == 0.0:
        raise ParameterError("requires B2 = a2*b1 - a1*b2 != 0")
    w = math.sqrt(m * n)
    ep = w + c - 1.0
    em = -w + c - 1.0
    zero = lambda x, t: 0.0  # noqa: E731
    return TransformationData(
        X=lambda x, t: x,
        Y=lambda t: t,
        r1=lambda x, t: (b1 * x**em - a1 * x**ep) / (2.0 * B2),
        r2=lambda x, t: -(w / (2.0 * n * B2)) * (a1 * x**ep + b1 * x**em),
        r3=zero,
        s1=lambda x, t: (w / (2.0 * n * B2)) * (a2 * x**ep + b2 * x**em),
        s2=lambda x, t: (a2 * x**ep - b2 * x**em) / (2.0 * B2),
        s3=zero,
        Z=lambda xt, tt: xt,
        Yinv=lambda tt: tt,
        X_x=lambda x, t: 1.0,
        X_xx=zero,
        Y_t=lambda t: 1.0,
        Z_z=lambda xt, tt: 1.0,
        label="example33",
    )


def make_transformed_example33(
    a1: float,
    a2: float,
    b1: float,
    b2: float,
    c: float,
    m: float,
    n: float,
    alpha: float,
) -> tuple[SystemSpec, TransformationData]:
    """Closed-form target system of the Example 3.3 transformation.

    h = 1,
    f1 = -(c - 2 - sqrt(mn) B1/B2) / x,    g1 =  2 sqrt(mn) a1 b1 / (B2 x),
    f2 = -(c - 2 + sqrt(mn) B1/B2) / x,    g2 = -2 sqrt(mn) a2 b2 / (B2 x),
    with B1 = a2 b1 + a1 b2,  B2 = a2 b1 - a1 b2 != 0.
    """
    check_order(alpha)
    td = example33_transformation(a1, a2, b1, b2, c, m, n)
    B1 = a2 * b1 + a1 * b2
    B2 = a2 * b1 - a1 * b2
    w = math.sqrt(m * n)
    cf1 = -(c - 2.0 - w * B1 / B2)
    cf2 = -(c - 2.0 + w * B1 / B2)
    cg1 = 2.0 * w * a1 * b1 / B2
    cg2 = -2.0 * w * a2 * b2 / B2
    spec = SystemSpec(
        h=lambda x, t: 1.0,
        f1=lambda x, t: cf1 / x,
        f2=lambda x, t: cf2 / x,
        g1=lambda x, t: cg1 / x,
        g2=lambda x, t: cg2 / x,
        alpha=alpha,
        label="transformed33",
        params={"a1": a1, "a2": a2, "b1": b1, "b2": b2, "c": c, "m": m, "n": n},
    )
    return spec, td


def _transform_state(spec: SystemSpec, td: TransformationData, xt: float, tt: float):
    """Shared evaluation context for the transformed-coefficient relations."""
    t = td.t_inverse(tt)
    x = td.x_inverse(xt, tt)
    alpha = spec.alpha
    den = tt ** (alpha - 1.0) * td.conformable_Y(t, alpha)
    if den == 0.0 or not math.isfinite(den):
        raise SingularityError(f"Y_t vanishes at t = {t}")
    Xx = td.dX_dx(x, t)
    if Xx == 0.0 or not math.isfinite(Xx):
        raise SingularityError(f"X_x vanishes at (x, t) = ({x}, {t})")
    kap = td.kappa(x, t)
    if kap == 0.0 or not math.isfinite(kap):
        raise SingularityError(f"kappa vanishes at (x, t) = ({x}, {t})")
    return x, t, den, Xx, kap


def transform_coefficients(spec: SystemSpec, td: TransformationData) -> SystemSpec:
    """Transformed coefficient set (h', f1', g1', f2', g2') as evaluable fields.

    Each field maps tilde coordinates back through (Z, Y^-1) and evaluates the
    closed relations; derivatives of X and of the F entries come from closed
    forms when ``td`` has them, else finite differences.
    """
    alpha = spec.alpha

    def hp(xt: float, tt: float) -> float:
        x, t, den, Xx, _ = _transform_state(spec, td, xt, tt)
        return spec.h(x, t) * Xx * Xx / den

    def f1p(xt: float, tt: float) -> float:
        x, t, den, Xx, kap = _transform_state(spec, td, xt, tt)
        h = spec.h(x, t)
        r1, r2 = td.r1(x, t), td.r2(x, t)
        s1, s2 = td.s1(x, t), td.s2(x, t)
        r1x = _d1(lambda z: td.r1(z, t), x, x)
        r2x = _d1(lambda z: td.r2(z, t), x, x)
        return (
            -td.conformable_X(x, t, alpha)
            + h * td.dX_dxx(x, t)
            + (2.0 * h * Xx / kap) * (r2x * s2 - r1x * s1)
            + (Xx / kap)
            * (
                spec.f1(x, t) * r1 * s1
                - spec.g1(x, t) * r1 * s2
                - spec.f2(x, t) * r2 * s2
                + spec.g2(x, t) * r2 * s1
            )
        ) / den

    def g1p(xt: float, tt: float) -> float:
        x, t, den, Xx, kap = _transform_state(spec, td, xt, tt)
        h = spec.h(x, t)
        r1, r2 = td.r1(x, t), td.r2(x, t)
        r1x = _d1(lambda z: td.r1(z, t), x, x)
        r2x = _d1(lambda z: td.r2(z, t), x, x)
        return (
            Xx
            / (kap * den)
            * (
                2.0 * h * (r2 * r1x - r1 * r2x)
                - spec.f1(x, t) * r1 * r2
                + spec.g1(x, t) * r1 * r1
                + spec.f2(x, t) * r1 * r2
                - spec.g2(x, t) * r2 * r2
            )
        )

    def f2p(xt: float, tt: float) -> float:
        x, t, den, Xx, kap = _transform_state(spec, td, xt, tt)
        h = spec.h(x, t)
        r1, r2 = td.r1(x, t), td.r2(x, t)
        s1, s2 = td.s1(x, t), td.s2(x, t)
        s1x = _d1(lambda z: td.s1(z, t), x, x)
        s2x = _d1(lambda z: td.s2(z, t), x, x)
        return (
            -td.conformable_X(x, t, alpha)
            + h * td.dX_dxx(x, t)
            + (2.0 * h * Xx / kap) * (r2 * s2x - r1 * s1x)
            + (Xx / kap)
            * (
                -spec.f1(x, t) * r2 * s2
                + spec.g1(x, t) * r1 * s2
                + spec.f2(x, t) * r1 * s1
                - spec.g2(x, t) * r2 * s1
            )
        ) / den

    def g2p(xt: float, tt: float) -> float:
        x, t, den, Xx, kap = _transform_state(spec, td, xt, tt)
        h = spec.h(x, t)
        s1, s2 = td.s1(x, t), td.s2(x, t)
        s1x = _d1(lambda z: td.s1(z, t), x, x)
        s2x = _d1(lambda z: td.s2(z, t), x, x)
        return (
            Xx
            / (kap * den)
            * (
                2.0 * h * (s2 * s1x - s1 * s2x)
                + spec.f1(x, t) * s1 * s2
                - spec.g1(x, t) * s2 * s2
                - spec.f2(x, t) * s1 * s2
                + spec.g2(x, t) * s1 * s1
            )
        )

    return SystemSpec(
        h=hp,
        f1=f1p,
        f2=f2p,
        g1=g1p,
        g2=g2p,
        alpha=alpha,
        label=f"{spec.label}-via-{td.label}",
        params=dict(spec.params),
    )


def constraint_residual(
    spec: SystemSpec, td: TransformationData, p: EvalPoint
) -> tuple[float, float, float, float, float, float]:
    """The six compatibility constraints on (r_i, s_i) evaluated at ``p``.

    Each is of the form  T^a(g) - h g_xx - f g_x +/- g-coupling  with
    g in {r1/kappa, s1/kappa, r2/kappa, s2/kappa, delta/kappa, varrho/kappa};
    all six vanish when the transformation genuinely preserves the class.
    """
    x, t = p.x, p.t
    alpha = spec.alpha
    h = spec.h(x, t)
    f1, f2 = spec.f1(x, t), spec.f2(x, t)
    g1, g2 = spec.g1(x, t), spec.g2(x, t)

    def ratio(num: Field) -> Callable[[float, float], float]:
        def val(xx: float, ts: float) -> float:
            kap = td.kappa(xx, ts)
            if kap == 0.0 or not math.isfinite(kap):
                raise SingularityError(f"kappa vanishes at (x, t) = ({xx}, {ts})")
            return num(xx, ts) / kap

        return val

    fields = {
        "r1": ratio(td.r1),
        "r2": ratio(td.r2),
        "s1": ratio(td.s1),
        "s2": ratio(td.s2),
        "delta": ratio(td.delta),
        "varrho": ratio(td.varrho),
    }

    def conf_t(g: Callable[[float, float], float]) -> float:
        return t ** (1.0 - alpha) * _d1(lambda s: g(x, s), t, t)

    def dx(g: Callable[[float, float], float]) -> float:
        return _d1(lambda z: g(z, t), x, x)

    def dxx(g: Callable[[float, float], float]) -> float:
        return _d2(lambda z: g(z, t), x, x)

    r1k, r2k = fields["r1"], fields["r2"]
    s1k, s2k = fields["s1"], fields["s2"]
    dk, vk = fields["delta"], fields["varrho"]
    c1 = conf_t(r1k) - h * dxx(r1k) - f2 * dx(r1k) + g2 * dx(r2k)
    c2 = conf_t(s1k) - h * dxx(s1k) - f1 * dx(s1k) + g1 * dx(s2k)
    c3 = conf_t(r2k) - h * dxx(r2k) - f1 * dx(r2k) + g1 * dx(r1k)
    c4 = conf_t(s2k) - h * dxx(s2k) - f2 * dx(s2k) + g2 * dx(s1k)
    c5 = conf_t(dk) - h * dxx(dk) - f1 * dx(dk) - g1 * dx(vk)
    c6 = conf_t(vk) - h * dxx(vk) - f2 * dx(vk) - g2 * dx(dk)
    return c1, c2, c3, c4, c5, c6


_CONSTRUCTORS: dict[str, Callable[..., SystemSpec]] = {
    "example31": lambda params, alpha: make_example31(params["a"], params["b"], alpha),
    "eq2": lambda params, alpha: make_eq2(
        params["c"], params["m"], params["n"], params["k"], alpha
    ),
    "eq3": lambda params, alpha: make_eq3(params["c"], params["m"], params["n"], alpha),
    "generalequation2": lambda params, alpha: make_generalequation2(
        params["a"], params["b"], params["q"], alpha
    ),
    "transformed33": lambda params, alpha: make_transformed_example33(
        params["a1"],
        params["a2"],
        params["b1"],
        params["b2"],
        params["c"],
        params["m"],
        params["n"],
        alpha,
    )[0],
}


def from_config(cfg: Mapping) -> SystemSpec:
    """Build a SystemSpec from a config mapping {system, params, alpha}."""
    try:
        name = cfg["system"]
        params = cfg.get("params", {})
        alpha = float(cfg["alpha"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"invalid system config: {exc}") from exc
    if name not in _CONSTRUCTORS:
        raise ParameterError(
            f"unknown system {name!r}; expected one of {sorted(_CONSTRUCTORS)}"
        )
    try:
        return _CONSTRUCTORS[name](params, alpha)
    except KeyError as exc:
        raise ParameterError(f"system {name!r} is missing parameter {exc}") from exc
