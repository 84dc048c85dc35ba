"""Lie algebra bases, one-parameter group flows and invariant solution families.

The bases are the printed generators of both worked systems.  Flows use the
closed-form group actions; a fixed-step Runge-Kutta integration of the defining
ODE system is included as an independent cross-check utility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .conformable import Field, SolutionPair, check_order
from .errors import ChartExitError, ParameterError

__all__ = [
    "VectorField",
    "lie_basis_example31",
    "lie_basis_eq3",
    "flow_v3_example31",
    "flow_v3_eq3",
    "flow_v1",
    "flow_v2",
    "flow_scaling",
    "flow_v5",
    "steady_seed_example31",
    "steady_seed_eq3",
    "invariant_solution_example31",
    "invariant_solution_eq3",
    "invariant_family_example31",
    "invariant_family_eq3",
    "flow_by_integration",
]

Component = Callable[[float, float, float, float], float]


@dataclass(frozen=True)
class VectorField:
    """Infinitesimal generator  xi d_x + tau d_t + eta d_u + phi d_v."""

    xi: Component
    tau: Component
    eta: Component
    phi: Component
    name: str = ""


def _zero(x: float, t: float, u: float, v: float) -> float:
    return 0.0


def lie_basis_example31(
    a: float,
    b: float,
    alpha: float,
    eta3: Field | None = None,
    phi3: Field | None = None,
) -> list[VectorField]:
    """The seven generators admitted by the x u_xx + a v_x system.

    The infinite-dimensional members V_eta3, V_phi3 are parameterized by
    caller-supplied fields (zero by default); they encode linear superposition
    and carry no finite-dimensional flow of their own.
    """
    check_order(alpha)
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    e3 = (lambda x, t: 0.0) if eta3 is None else eta3
    p3 = (lambda x, t: 0.0) if phi3 is None else phi3
    return [
        VectorField(
            xi=lambda x, t, u, v: alpha * x,
            tau=lambda x, t, u, v: t,
            eta=_zero,
            phi=_zero,
            name="V1",
        ),
        VectorField(
            xi=_zero,
            tau=lambda x, t, u, v: t ** (1.0 - alpha),
            eta=_zero,
            phi=_zero,
            name="V2",
        ),
        VectorField(
            xi=lambda x, t, u, v: 2.0 * alpha * x * t**alpha,
            tau=lambda x, t, u, v: t ** (1.0 + alpha),
            eta=lambda x, t, u, v: -(alpha**2 * x * u + a * alpha * t**alpha * v),
            phi=lambda x, t, u, v: -(alpha**2 * x * v + b * alpha * t**alpha * u),
            name="V3",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=lambda x, t, u, v: u,
            phi=lambda x, t, u, v: v,
            name="V4",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=lambda x, t, u, v: a * v,
            phi=lambda x, t, u, v: b * u,
            name="V5",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=lambda x, t, u, v: e3(x, t),
            phi=_zero,
            name="V_eta3",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=_zero,
            phi=lambda x, t, u, v: p3(x, t),
            name="V_phi3",
        ),
    ]


def lie_basis_eq3(
    c: float,
    m: float,
    n: float,
    alpha: float,
    eta3: Field | None = None,
    phi3: Field | None = None,
) -> list[VectorField]:
    """The printed generators of the k = -1 system (u_xx + (c/x) u_x + ...)."""
    check_order(alpha)
    if not m * n > 0.0:
        raise ParameterError(f"requires m*n > 0, got m = {m}, n = {n}")
    e3 = (lambda x, t: 0.0) if eta3 is None else eta3
    p3 = (lambda x, t: 0.0) if phi3 is None else phi3

    def common(x: float, t: float) -> float:
        return 0.5 * alpha * (c + 1.0) * t**alpha + 0.25 * alpha**2 * x * x

    return [
        VectorField(
            xi=lambda x, t, u, v: 0.5 * alpha * x,
            tau=lambda x, t, u, v: t,
            eta=_zero,
            phi=_zero,
            name="V1",
        ),
        VectorField(
            xi=_zero,
            tau=lambda x, t, u, v: t ** (1.0 - alpha),
            eta=_zero,
            phi=_zero,
            name="V2",
        ),
        VectorField(
            xi=lambda x, t, u, v: alpha * x * t**alpha,
            tau=lambda x, t, u, v: t ** (1.0 + alpha),
            eta=lambda x, t, u, v: -(common(x, t) * u + 0.5 * m * alpha * t**alpha * v),
            phi=lambda x, t, u, v: -(common(x, t) * v + 0.5 * n * alpha * t**alpha * u),
            name="V3",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=lambda x, t, u, v: u,
            phi=lambda x, t, u, v: v,
            name="V4",
        ),
        VectorField(
            xi=_zero,
            tau=_zero,
            eta=lambda x, t, u, v: m * v,
            phi=lambda x, t, u, v: n * u,
            name="V5",
        ),
        VectorField(
            xi=_zero, tau=_zero, eta=lambda x, t, u, v: e3(x, t), phi=_zero, name="V_eta3"
        ),
        VectorField(
            xi=_zero, tau=_zero, eta=_zero, phi=lambda x, t, u, v: p3(x, t), name="V_phi3"
        ),
    ]


# ---------------------------------------------------------------------------
# Closed-form flows
# ---------------------------------------------------------------------------


def _chart(alpha: float, eps: float, t: float) -> float:
    s = 1.0 + alpha * eps * t**alpha
    if s <= 0.0:
        raise ChartExitError(
            f"flow leaves the chart: 1 + alpha*eps*t^alpha = {s} at t = {t}"
        )
    return s


def flow_v3_example31(
    sol: SolutionPair, eps: float, a: float, b: float, alpha: float
) -> SolutionPair:
    """Group action of V3 on a solution of the x u_xx + a v_x system.

    eps = 0 returns ``sol`` itself, so the identity is exact.
    """
    check_order(alpha)
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    if eps == 0.0:
        return sol
    w = math.sqrt(a * b)

    def pair(x: float, t: float) -> tuple[float, float]:
        s = _chart(alpha, eps, t)
        xi = x / (s * s)
        ti = t / s ** (1.0 / alpha)
        u0 = sol.u(xi, ti)
        v0 = sol.v(xi, ti)
        env = math.exp(-(alpha**2) * eps * x / s)
        sm = s**-w
        sp = s**w
        ut = (1.0 / (2.0 * w)) * env * (w * (sm + sp) * u0 + a * (sm - sp) * v0)
        vt = (1.0 / (2.0 * a)) * env * (w * (sm - sp) * u0 + a * (sm + sp) * v0)
        return ut, vt

    return SolutionPair(
        u=lambda x, t: pair(x, t)[0],
        v=lambda x, t: pair(x, t)[1],
        label=f"V3flow(eps={eps}) o {sol.label}",
    )


def flow_v3_eq3(
    sol: SolutionPair, eps: float, c: float, m: float, n: float, alpha: float
) -> SolutionPair:
    """Group action of V3 on a solution of the k = -1 system."""
    check_order(alpha)
    if not m * n > 0.0:
        raise ParameterError(f"requires m*n > 0, got m = {m}, n = {n}")
    if eps == 0.0:
        return sol
    w = math.sqrt(m * n)
    thp = 0.5 * (c + 1.0 + w)
    thm = 0.5 * (c + 1.0 - w)

    def pair(x: float, t: float) -> tuple[float, float]:
        s = _chart(alpha, eps, t)
        xi = x / s
        ti = t / s ** (1.0 / alpha)
        u0 = sol.u(xi, ti)
        v0 = sol.v(xi, ti)
        env = math.exp(-(alpha**2) * eps * x * x / (4.0 * s))
        sp = s**-thp
        sm = s**-thm
        ut = (1.0 / (2.0 * w)) * env * (w * (sp + sm) * u0 + m * (sp - sm) * v0)
        vt = (1.0 / (2.0 * m)) * env * (w * (sp - sm) * u0 + m * (sp + sm) * v0)
        return ut, vt

    return SolutionPair(
        u=lambda x, t: pair(x, t)[0],
        v=lambda x, t: pair(x, t)[1],
        label=f"V3flow(eps={eps}) o {sol.label}",
    )


def flow_v1(sol: SolutionPair, eps: float, x_weight: float) -> SolutionPair:
    """Flow of t d_t + x_weight * x d_x: pull back along the scaling map."""
    if eps == 0.0:
        return sol
    cx = math.exp(-x_weight * eps)
    ct = math.exp(-eps)
    return SolutionPair(
        u=lambda x, t: sol.u(cx * x, ct * t),
        v=lambda x, t: sol.v(cx * x, ct * t),
        label=f"V1flow(eps={eps}) o {sol.label}",
    )


def flow_v2(sol: SolutionPair, eps: float, alpha: float) -> SolutionPair:
    """Flow of t^(1-a) d_t, the conformable time translation t^a -> t^a - a*eps."""
    check_order(alpha)
    if eps == 0.0:
        return sol

    def shift(t: float) -> float:
        ta = t**alpha - alpha * eps
        if ta <= 0.0:
            raise ChartExitError(f"flow leaves the chart: t^alpha - alpha*eps = {ta}")
        return ta ** (1.0 / alpha)

    return SolutionPair(
        u=lambda x, t: sol.u(x, shift(t)),
        v=lambda x, t: sol.v(x, shift(t)),
        label=f"V2flow(eps={eps}) o {sol.label}",
    )


def _linear_mix(
    sol: SolutionPair, auu: float, auv: float, avu: float, avv: float, label: str
) -> SolutionPair:
    """Constant-coefficient mix (u, v) -> (auu u + auv v, avu u + avv v).

    Analytic partials, when present, mix with the same coefficients.
    """
    partials = {}
    for suffix in ("_x", "_t", "_xx", "_xt"):
        pu = sol.partials.get("u" + suffix)
        pv = sol.partials.get("v" + suffix)
        if pu is not None and pv is not None:
            partials["u" + suffix] = (
                lambda x, t, pu=pu, pv=pv, cu=auu, cv=auv: cu * pu(x, t) + cv * pv(x, t)
            )
            partials["v" + suffix] = (
                lambda x, t, pu=pu, pv=pv, cu=avu, cv=avv: cu * pu(x, t) + cv * pv(x, t)
            )
    return SolutionPair(
        u=lambda x, t: auu * sol.u(x, t) + auv * sol.v(x, t),
        v=lambda x, t: avu * sol.u(x, t) + avv * sol.v(x, t),
        partials=partials,
        label=label,
    )


def flow_scaling(sol: SolutionPair, eps: float) -> SolutionPair:
    """Flow of u d_u + v d_v: multiply the pair by e^eps."""
    if eps == 0.0:
        return sol
    c = math.exp(eps)
    return _linear_mix(sol, c, 0.0, 0.0, c, f"V4flow(eps={eps}) o {sol.label}")


def flow_v5(sol: SolutionPair, eps: float, a: float, b: float) -> SolutionPair:
    """Flow of a*v d_u + b*u d_v, the hyperbolic mixing of the two components."""
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    if eps == 0.0:
        return sol
    w = math.sqrt(a * b)
    ch = math.cosh(w * eps)
    sh = math.sinh(w * eps)
    return _linear_mix(
        sol, ch, (a / w) * sh, (b / w) * sh, ch, f"V5flow(eps={eps}) o {sol.label}"
    )


# ---------------------------------------------------------------------------
# Steady seeds and group-invariant families
# ---------------------------------------------------------------------------


def _exp_power_solution(
    ku: float,
    kv: float,
    p: float,
    theta: float,
    lam: float,
    alpha: float,
    quadratic: bool,
    label: str,
) -> SolutionPair:
    """Pair (ku, kv) * x^p * exp(-lam*G(x)/s(t)) / s(t)^theta with closed partials.

    G(x) = x with s = 1 + lam t^a / a for the linear family, G(x) = x^2 with
    s = 1 + 4 lam t^a / a for the quadratic one.  Covers steady seeds (lam = 0)
    and every V3-orbit column used by the verification suites.
    """
    check_order(alpha)
    if lam < 0.0:
        raise ParameterError(f"family parameter must satisfy lam >= 0, got {lam}")
    srate = (4.0 * lam if quadratic else lam) / alpha

    def s_of(t: float) -> float:
        return 1.0 + srate * t**alpha

    def sprime(t: float) -> float:
        return srate * alpha * t ** (alpha - 1.0)

    def base(x: float, t: float) -> float:
        s = s_of(t)
        g = x * x if quadratic else x
        return x**p * math.exp(-lam * g / s) / s**theta

    def ax(x: float, t: float) -> float:
        s = s_of(t)
        return p / x - (2.0 * lam * x if quadratic else lam) / s

    def att(x: float, t: float) -> float:
        s = s_of(t)
        g = x * x if quadratic else x
        return (lam * g / s - theta) * sprime(t) / s

    def axx_extra(x: float, t: float) -> float:
        s = s_of(t)
        return -p / (x * x) - (2.0 * lam / s if quadratic else 0.0)

    def axt_extra(x: float, t: float) -> float:
        s = s_of(t)
        return ((2.0 * lam * x if quadratic else lam) / s) * sprime(t) / s

    def d_x(x: float, t: float) -> float:
        return base(x, t) * ax(x, t)

    def d_t(x: float, t: float) -> float:
        return base(x, t) * att(x, t)

    def d_xx(x: float, t: float) -> float:
        return base(x, t) * (ax(x, t) ** 2 + axx_extra(x, t))

    def d_xt(x: float, t: float) -> float:
        return base(x, t) * (ax(x, t) * att(x, t)) + base(x, t) * axt_extra(x, t)

    def scaled(c: float, f: Callable[[float, float], float]) -> Field:
        return lambda x, t: c * f(x, t)

    partials = {
        "u_x": scaled(ku, d_x),
        "u_t": scaled(ku, d_t),
        "u_xx": scaled(ku, d_xx),
        "u_xt": scaled(ku, d_xt),
        "v_x": scaled(kv, d_x),
        "v_t": scaled(kv, d_t),
        "v_xx": scaled(kv, d_xx),
        "v_xt": scaled(kv, d_xt),
    }
    return SolutionPair(
        u=scaled(ku, base), v=scaled(kv, base), partials=partials, label=label
    )


def steady_seed_example31(which: int, a: float, b: float, alpha: float) -> SolutionPair:
    """Steady solution 1: (1, sqrt(ab)/a); 2: x^(1+sqrt(ab)) (1, -sqrt(ab)/a)."""
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    w = math.sqrt(a * b)
    if which == 1:
        return _exp_power_solution(1.0, w / a, 0.0, 0.0, 0.0, alpha, False, "seed1-ex31")
    if which == 2:
        return _exp_power_solution(
            1.0, -w / a, 1.0 + w, 0.0, 0.0, alpha, False, "seed2-ex31"
        )
    raise ParameterError(f"seed index must be 1 or 2, got {which}")


def steady_seed_eq3(which: int, c: float, m: float, n: float, alpha: float) -> SolutionPair:
    """Steady solution 1: (1, sqrt(mn)/m); 2: x^(1+sqrt(mn)-c) (-sqrt(mn)/n, 1).

    The power 1 + sqrt(mn) - c is the root of (p - 1 + c)^2 = mn selected by
    substituting the ansatz into the system.
    """
    if not m * n > 0.0:
        raise ParameterError(f"requires m*n > 0, got m = {m}, n = {n}")
    w = math.sqrt(m * n)
    if which == 1:
        return _exp_power_solution(1.0, w / m, 0.0, 0.0, 0.0, alpha, True, "seed1-eq3")
    if which == 2:
        return _exp_power_solution(
            -w / n, 1.0, 1.0 + w - c, 0.0, 0.0, alpha, True, "seed2-eq3"
        )
    raise ParameterError(f"seed index must be 1 or 2, got {which}")


def invariant_solution_example31(
    column: int, lam: float, a: float, b: float, alpha: float
) -> SolutionPair:
    """Column of the V3-invariant family of the x u_xx + a v_x system.

    lam = alpha^2 * eps is the Laplace-dual group parameter; lam = 0 recovers
    the steady seed.
    """
    if not a * b > 0.0:
        raise ParameterError(f"requires a*b > 0, got a = {a}, b = {b}")
    w = math.sqrt(a * b)
    if column == 1:
        return _exp_power_solution(
            1.0, w / a, 0.0, w, lam, alpha, False, f"orbit1-ex31(lam={lam})"
        )
    if column == 2:
        return _exp_power_solution(
            1.0, -w / a, 1.0 + w, w + 2.0, lam, alpha, False, f"orbit2-ex31(lam={lam})"
        )
    raise ParameterError(f"column must be 1 or 2, got {column}")


def invariant_solution_eq3(
    column: int, lam: float, c: float, m: float, n: float, alpha: float
) -> SolutionPair:
    """Column of the V3-invariant family of the k = -1 system.

    Here lam = alpha^2 * eps / 4, the parameter matching initial data
    e^(-lam x^2) L(x); with lam = alpha^2 eps the printed family does not
    reduce to its own t = 0 display.
    """
    if not m * n > 0.0:
        raise ParameterError(f"requires m*n > 0, got m = {m}, n = {n}")
    w = math.sqrt(m * n)
    if column == 1:
        theta = 0.5 * (c + 1.0 + w)
        return _exp_power_solution(
            1.0, w / m, 0.0, theta, lam, alpha, True, f"orbit1-eq3(lam={lam})"
        )
    if column == 2:
        theta = 0.5 * (3.0 + w - c)
        return _exp_power_solution(
            -m / w, 1.0, 1.0 + w - c, theta, lam, alpha, True, f"orbit2-eq3(lam={lam})"
        )
    raise ParameterError(f"column must be 1 or 2, got {column}")


def invariant_family_example31(
    lam: float, x: float, t: float, a: float, b: float, alpha: float
) -> np.ndarray:
    """2x2 matrix U_lam(x, t); column j is invariant solution j, rows are (u, v)."""
    cols = [invariant_solution_example31(j, lam, a, b, alpha) for j in (1, 2)]
    return np.array([[s.u(x, t) for s in cols], [s.v(x, t) for s in cols]])


def invariant_family_eq3(
    lam: float, x: float, t: float, c: float, m: float, n: float, alpha: float
) -> np.ndarray:
    cols = [invariant_solution_eq3(j, lam, c, m, n, alpha) for j in (1, 2)]
    return np.array([[s.u(x, t) for s in cols], [s.v(x, t) for s in cols]])


def flow_by_integration(
    vf: VectorField,
    x: float,
    t: float,
    u: float,
    v: float,
    eps: float,
    step: float = 1e-3,
) -> tuple[float, float, float, float]:
    """Exponentiate ``vf`` from (x, t, u, v) by fixed-step RK4 in the parameter.

    Independent cross-check of the closed-form flows; not used by them.
    """
    n = max(1, math.ceil(abs(eps) / step))
    h = eps / n
    state = np.array([x, t, u, v], dtype=float)

    def rhs(y: np.ndarray) -> np.ndarray:
        args = (y[0], y[1], y[2], y[3])
        return np.array(
            [vf.xi(*args), vf.tau(*args), vf.eta(*args), vf.phi(*args)]
        )

    for _ in range(n):
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * h * k1)
        k3 = rhs(state + 0.5 * h * k2)
        k4 = rhs(state + h * k3)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return tuple(state)  # type: ignore[return-value]
