"""Scalar special functions used by the weight constructions.

Everything in this module is plain-float and deterministic: the gamma
function (delegated to :func:`math.gamma`), the Riemann zeta function on
the real interval ``(-4, 2)``, the two-parameter Mittag-Leffler function
``E_{1,beta}`` for complex arguments, and a per-order cache of the handful
of zeta/gamma constants that every weight builder needs.

The zeta evaluation uses the alternating (eta) series accelerated with
Chebyshev-polynomial coefficients, which converges geometrically on
``s > 1/2``, together with the functional equation

    zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)

to cover the negative half of the interval.  Coefficients are computed
once, exactly, as rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class NonConvergenceError(RuntimeError):
    """A series failed to meet its tolerance within the term cap."""


def gamma(x: float) -> float:
    """Gamma function with an explicit pole check.

    Raises:
        ValueError: if ``x`` is zero or a negative integer (a pole).
    """
    if x <= 0.0 and float(x).is_integer():
        raise ValueError(f"gamma pole at x={x!r}")
    return math.gamma(x)


_BORWEIN_N = 36


def _borwein_coefficients(n: int = _BORWEIN_N) -> tuple[float, ...]:
    # c_k = (d_n - d_k) / d_n as exact rationals, then rounded once.
    terms = []
    for i in range(n + 1):
        terms.append(
            Fraction(math.factorial(n + i - 1) * 4**i,
                     math.factorial(n - i) * math.factorial(2 * i))
        )
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += terms[i]
        d.append(n * acc)
    dn = d[n]
    return tuple(float((dn - dk) / dn) for dk in d[:n])


_BORWEIN_C = _borwein_coefficients()


def _eta(s: float) -> float:
    # Alternating zeta function, accelerated; reliable for s > -1 but we
    # only call it on s >= 1/2 where the error bound ~ (3+sqrt(8))^-n holds.
    total = 0.0
    sign = 1.0
    for k, ck in enumerate(_BORWEIN_C):
        total += sign * ck * (k + 1.0) ** (-s)
        sign = -sign
    return total


def zeta(s: float) -> float:
    """Riemann zeta on the open interval ``(-4, 2)``.

    The weight constructions only ever need zeta between ``alpha - 3`` and
    ``alpha + 1`` for ``alpha`` in ``(0, 1)``, so the domain is deliberately
    narrow; wider arguments raise rather than silently extrapolate.

    Raises:
        ValueError: at the pole ``s = 1`` or outside ``(-4, 2)``.
    """
    if not -4.0 < s < 2.0:
        raise ValueError(f"zeta restricted to (-4, 2), got s={s!r}")
    if s == 1.0:
        raise ValueError("zeta pole at s=1")
    if 1.0 - s == 1.0:
        # |s| below machine epsilon: 1 - s would round to the pole inside the
        # reflection, and zeta(0) + O(eps) is -1/2 to full precision anyway.
        return -0.5
    if s >= 0.5:
        return _eta(s) / -math.expm1((1.0 - s) * math.log(2.0))
    # Reflect into s' = 1 - s in (0.5, 5) where the eta series converges.
    sp = 1.0 - s
    reflected = _eta(sp) / -math.expm1((1.0 - sp) * math.log(2.0))
    return (
        2.0**s
        * math.pi ** (s - 1.0)
        * math.sin(0.5 * math.pi * s)
        * math.gamma(sp)
        * reflected
    )


def mittag_leffler_1(beta: float, z: complex, *, max_terms: int = 500) -> complex:
    """Two-parameter Mittag-Leffler function ``E_{1,beta}(z)``.

    Computed from the defining power series ``sum_k z^k / Gamma(k + beta)``
    with a multiplicative term recurrence.  Truncation stops once the next
    term falls below ``1e-18`` of the largest partial sum seen, which keeps
    the result at full double precision for moderate ``|z|``.

    Args:
        beta: second parameter, must be positive.
        z: complex argument with ``|z| <= 50``.

    Returns:
        The (complex) series value; take ``.real`` for real arguments.

    Raises:
        ValueError: if ``beta <= 0`` or ``|z| > 50``.
        NonConvergenceError: if the term cap is hit before the tolerance.
    """
    if beta <= 0.0:
        raise ValueError(f"mittag_leffler_1 needs beta > 0, got {beta!r}")
    zc = complex(z)
    if abs(zc) > 50.0:
        raise ValueError(f"mittag_leffler_1 restricted to |z| <= 50, got |z|={abs(zc)!r}")
    term = complex(1.0 / gamma(beta))
    total = term
    peak = abs(total)
    for k in range(1, max_terms + 1):
        term *= zc / (k - 1.0 + beta)
        total += term
        mag = abs(total)
        if mag > peak:
            peak = mag
        if abs(term) <= 1e-18 * max(peak, 1e-300):
            return total
    raise NonConvergenceError(
        f"mittag_leffler_1(beta={beta!r}, z={z!r}) did not converge in {max_terms} terms"
    )


@dataclass(frozen=True)
class AlphaConstants:
    """Zeta and gamma values reused by every weight builder for one order.

    The builders are contractually forbidden from re-evaluating these inside
    loops; grab the bundle once via :func:`alpha_constants`.
    """

    alpha: float
    zeta_a: float        # zeta(alpha)
    zeta_am1: float      # zeta(alpha - 1)
    zeta_am2: float      # zeta(alpha - 2)
    zeta_am3: float      # zeta(alpha - 3)
    zeta_ap1: float      # zeta(alpha + 1)
    gamma_1ma: float     # Gamma(1 - alpha)
    gamma_2ma: float     # Gamma(2 - alpha)
    gamma_ma: float      # Gamma(-alpha), negative on (0, 1)


@lru_cache(maxsize=None)
def alpha_constants(alpha: float) -> AlphaConstants:
    """Compute (once) the constant pack for a fractional order in ``(0, 1)``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"fractional order must lie in (0, 1), got {alpha!r}")
    return AlphaConstants(
        alpha=alpha,
        zeta_a=zeta(alpha),
        zeta_am1=zeta(alpha - 1.0),
        zeta_am2=zeta(alpha - 2.0),
        zeta_am3=zeta(alpha - 3.0),
        zeta_ap1=zeta(alpha + 1.0),
        gamma_1ma=gamma(1.0 - alpha),
        gamma_2ma=gamma(2.0 - alpha),
        gamma_ma=gamma(-alpha),
    )
