"""Gamma function and modified Bessel function of the first kind for real order.

Self-contained double-precision implementations: the Bessel evaluator uses the
defining power series below a crossover argument and the large-argument
asymptotic expansion above it, so every kernel formula in the package rests on
code that can be cross-checked term by term.
"""

from __future__ import annotations

import math

__all__ = [
    "gamma",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_i_series",
    "bessel_i_asymptotic",
    "BESSEL_CROSSOVER",
]

# Lanczos approximation, g = 7, 9 coefficients (double precision set).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# Largest x with Gamma(x) representable in double precision.
GAMMA_OVERFLOW = 171.62437695630272

# Argument at which bessel_i switches from the power series to the
# asymptotic expansion.  Tunable; both branches overlap accurately in
# a band around this value.
BESSEL_CROSSOVER = 30.0

_SERIES_MAX_TERMS = 200
_SERIES_STOP = 1e-17


def gamma(x: float) -> float:
    """Gamma function on the real line, poles excluded.

    Raises ValueError at non-positive integers and OverflowError once the
    result exceeds double range (x > ~171.62).
    """
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"gamma: argument must be finite, got {x}")
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma: pole at non-positive integer x = {x}")
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"gamma: overflow for x = {x}")
    if x < 0.5:
        # Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # t**(z+0.5) alone overflows near the top of the range even though
    # t**(z+0.5) * e^-t does not; split the power around the exponential.
    half_pow = t ** (0.5 * (z + 0.5))
    return _SQRT_TWO_PI * half_pow * math.exp(-t) * half_pow * acc


def _check_bessel_args(nu: float, z: float) -> None:
    if z < 0.0:
        raise ValueError(f"bessel_i: argument must be non-negative, got z = {z}")
    if not nu >= -1.0:
        raise ValueError(f"bessel_i: order must satisfy nu >= -1, got nu = {nu}")


def bessel_i_series(nu: float, z: float) -> float:
    """I_nu(z) from the defining power series.

    All terms are positive, so the sum is stable for any z; it is only used
    below the crossover where few terms are needed.  Compensated (Kahan)
    accumulation keeps the truncation criterion meaningful for orders near -1,
    where the leading coefficient 1/Gamma(nu+1) is large.
    """
    _check_bessel_args(nu, z)
    if nu == -1.0:
        # 1/Gamma(0) = 0 kills the n = 0 term; the remainder is I_1(z).
        return bessel_i_series(1.0, z)
    if z == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else math.inf
    half = 0.5 * z
    term = half**nu / gamma(nu + 1.0)
    total = term
    comp = 0.0  # Kahan compensation
    q = half * half
    for n in range(1, _SERIES_MAX_TERMS):
        term *= q / (n * (nu + n))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term < _SERIES_STOP * total:
            return total
    return total


def bessel_i_asymptotic(nu: float, z: float, scaled: bool = False) -> float:
    """I_nu(z) from the large-argument expansion e^z/sqrt(2 pi z) * S(nu, z).

    The divergent tail is truncated at its smallest term.  With
    ``scaled=True`` the factor e^z is omitted, returning e^{-z} I_nu(z).
    """
    _check_bessel_args(nu, z)
    if z <= 0.0:
        raise ValueError("bessel_i_asymptotic: requires z > 0")
    mu = 4.0 * nu * nu
    total = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 60):
        term *= -(mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z)
        if abs(term) >= prev:
            break  # asymptotic tail started growing: stop at smallest term
        total += term
        prev = abs(term)
        if abs(term) < 1e-17 * abs(total):
            break
    front = 1.0 / math.sqrt(2.0 * math.pi * z)
    if scaled:
        return front * total
    return math.exp(z) * front * total  # OverflowError for z > ~709 is the signal


def bessel_i(nu: float, z: float) -> float:
    """Modified Bessel function I_nu(z) for real order nu >= -1 and z >= 0.

    Power series below ``BESSEL_CROSSOVER``, asymptotic expansion above.
    Raises OverflowError when e^z overflows double precision; use
    :func:`bessel_i_scaled` in that regime.
    """
    _check_bessel_args(nu, z)
    if z < BESSEL_CROSSOVER:
        return bessel_i_series(nu, z)
    return bessel_i_asymptotic(nu, z)


def bessel_i_scaled(nu: float, z: float) -> float:
    """Exponentially scaled function e^{-z} I_nu(z), stable for all z >= 0.

    This is the form the kernel evaluators use: products of the type
    e^{-decay} I_nu(z) with decay >= z stay bounded even where each factor
    alone would overflow or underflow.
    """
    _check_bessel_args(nu, z)
    if z < BESSEL_CROSSOVER:
        return bessel_i_series(nu, z) * math.exp(-z)
    return bessel_i_asymptotic(nu, z, scaled=True)
