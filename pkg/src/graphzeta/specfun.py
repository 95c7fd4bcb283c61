"""Special functions: complex log-gamma, modified Bessel I0, binomial counts."""

from __future__ import annotations

import cmath
import math

from .exceptions import DomainError, PoleError
from .validation import as_integer_if_close, check_complex, check_int, check_real

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
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
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

_BESSEL_SERIES_MAX = 15.0


def _log_gamma_right(z: complex) -> complex:
    # valid for Re(z) >= 0.5
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(z) -> complex:
    """Logarithm of the gamma function for complex ``z``.

    On ``Re(z) >= 0.5`` this is the principal (continuous) branch. To the
    left the reflection formula is used, so the imaginary part there is
    only determined modulo ``2*pi``; ``exp(log_gamma(z))`` is exact either
    way, which is all the gamma ratios in this package rely on.

    Raises
    ------
    PoleError
        If ``z`` is zero or a negative integer.
    """
    z = check_complex("z", z)
    n = as_integer_if_close(z)
    if n is not None and n <= 0:
        raise PoleError(f"gamma has a pole at z = {n}", location=n)
    if z.real >= 0.5:
        return _log_gamma_right(z)
    return _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - _log_gamma_right(1.0 - z)


def rgamma(z) -> complex:
    """Reciprocal gamma ``1/Gamma(z)``; entire, zero at non-positive integers."""
    z = check_complex("z", z)
    n = as_integer_if_close(z)
    if n is not None and n <= 0:
        return 0j
    return cmath.exp(-log_gamma(z))


def _i0_series(x: float) -> float:
    q = 0.25 * x * x
    total = term = 1.0
    m = 0
    while term > 1e-17 * total:
        m += 1
        term *= q / (m * m)
        total += term
    return total


def _i0e_asymptotic(x: float) -> float:
    # e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    total = term = 1.0
    k = 0
    while True:
        ratio = (2 * k + 1) ** 2 / (8.0 * (k + 1) * x)
        if ratio >= 1.0:
            break
        term *= ratio
        total += term
        k += 1
        if term < 1e-17 * total:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0e(x) -> float:
    """Exponentially scaled Bessel function ``exp(-x) * I0(x)`` for x >= 0."""
    x = check_real("x", x)
    if x < 0:
        raise DomainError(f"bessel_i0 is only implemented for x >= 0, got {x}")
    if x <= _BESSEL_SERIES_MAX:
        return math.exp(-x) * _i0_series(x)
    return _i0e_asymptotic(x)


def bessel_i0(x) -> float:
    """Modified Bessel function of the first kind, order zero, for x >= 0.

    Power series up to x = 15, the large-argument asymptotic expansion
    beyond (truncated at its smallest term).
    """
    x = check_real("x", x)
    if x < 0:
        raise DomainError(f"bessel_i0 is only implemented for x >= 0, got {x}")
    if x <= _BESSEL_SERIES_MAX:
        return _i0_series(x)
    try:
        return math.exp(x) * _i0e_asymptotic(x)
    except OverflowError:
        return math.inf


def central_binomial(k: int) -> int:
    k = check_int("k", k, minimum=0)
    return math.comb(2 * k, k)


def catalan(n: int) -> int:
    n = check_int("n", n, minimum=0)
    return math.comb(2 * n, n) // (n + 1)


def multinomial(k: int, parts) -> int:
    """``k! / prod(p!)`` for parts summing to ``k``."""
    out = math.factorial(k)
    for p in parts:
        out //= math.factorial(p)
    return out


def compositions(k: int, d: int):
    """All d-tuples of non-negative integers summing to k."""
    if d == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in compositions(k - first, d - 1):
            yield (first,) + rest
