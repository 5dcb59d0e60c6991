"""Special functions and log-space numerics.

Everything downstream (allocation updates, stick/switch expectations,
evaluation) funnels through the four functions here.  ``digamma`` is
self-contained so the runtime has no numerical dependency beyond numpy:
arguments are shifted above 6 with the recurrence psi(x) = psi(x+1) - 1/x
and finished with the asymptotic (de Moivre) series through x**-14, which
keeps the absolute error below 1e-10 for x >= 1e-4.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "digamma",
    "expect_log_beta",
    "expect_log_dirichlet",
    "normalize_log",
    "log_beta_fn",
    "beta_kl",
]

# -B_{2n}/(2n) for n = 1..7: coefficients of x**-2n in the asymptotic series.
_ASYMPTOTIC_COEFFS = (
    -1.0 / 12.0,
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
    691.0 / 32760.0,
    -1.0 / 12.0,
)

_SHIFT_LIMIT = 6.0


def digamma(x):
    """Digamma function psi(x) for x > 0, elementwise on arrays.

    Raises ValueError on any nonpositive argument.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size and np.any(x <= 0.0):
        raise ValueError("digamma requires strictly positive arguments")
    scalar = x.ndim == 0
    x = np.atleast_1d(x).copy()

    # Recurrence: accumulate -1/x while shifting every entry above the
    # series cutoff.  x >= 1e-4 needs at most ceil(6 - 1e-4) + 1 shifts.
    acc = np.zeros_like(x)
    for _ in range(7):
        low = x < _SHIFT_LIMIT
        if not low.any():
            break
        acc[low] -= 1.0 / x[low]
        x[low] += 1.0

    inv2 = 1.0 / (x * x)
    series = np.zeros_like(x)
    for coeff in reversed(_ASYMPTOTIC_COEFFS):
        series = (series + coeff) * inv2
    result = acc + np.log(x) - 0.5 / x + series
    return float(result[0]) if scalar else result


def expect_log_beta(a, b):
    """(E[ln Y], E[ln(1-Y)]) for Y ~ Beta(a, b); works elementwise."""
    dig_sum = digamma(np.asarray(a, dtype=np.float64) + b)
    return digamma(a) - dig_sum, digamma(b) - dig_sum


def expect_log_dirichlet(lam, axis=-1):
    """E[ln theta] for theta ~ Dirichlet(lam), along ``axis``."""
    lam = np.asarray(lam, dtype=np.float64)
    return digamma(lam) - np.expand_dims(digamma(lam.sum(axis=axis)), axis)


def normalize_log(values):
    """Normalize log-domain scores so exp of the result sums to 1.

    -inf entries mark excluded states and pass through unchanged.  Raises
    ValueError when no entry is finite (nothing to normalize).
    """
    values = np.asarray(values, dtype=np.float64)
    top = np.max(values)
    if not np.isfinite(top):
        raise ValueError("no admissible node: all log scores are -inf")
    with np.errstate(divide="ignore"):
        return values - (top + np.log(np.sum(np.exp(values - top))))


def log_beta_fn(a, b):
    """ln B(a, b)."""
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_kl(a, b, a0, b0):
    """KL( Beta(a,b) || Beta(a0,b0) ); scalars only."""
    dig_sum = digamma(a + b)
    return (
        log_beta_fn(a0, b0)
        - log_beta_fn(a, b)
        + (a - a0) * (digamma(a) - dig_sum)
        + (b - b0) * (digamma(b) - dig_sum)
    )
