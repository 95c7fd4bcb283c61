"""Spectral zeta functions of rooted graphs.

``zeta_G(s) = int x^{-s} dmu_root(x)``. At ``s = -k`` this is the k-th rooted
moment of the Laplacian, an integer. Finite graphs get an entire function
from their eigenvalues. For Z^d three independent routes are provided: the
gamma closed form (d = 1), the Mellin integral of the heat function inside
its convergence strip, and a meromorphic continuation that splits the Mellin
integral at t = 1.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import DivergenceError, DomainError, PoleError, UnsupportedError
from .graph import GraphModel, Lattice, spectral_moment
from .specfun import bessel_i0e, compositions, log_gamma, multinomial, rgamma
from .spectral import EIGEN_CLUSTER_TOL, spectral_measure
from .validation import as_integer_if_close, check_complex, check_int

SERIES_TAIL_TOL = 1e-10
MELLIN_T_MIN = 1e-8
MELLIN_T_MAX = 200.0
MELLIN_NODES = 4000


class NonTransitiveWarning(UserWarning):
    """Zeta of a graph not known to be vertex-transitive was requested.

    The value returned is the rooted-measure zeta, which differs from the
    eigenvalue average ``(1/n) sum lambda^{-s}`` unless the graph is
    transitive.
    """


def zeta_finite_transitive(model: GraphModel, s) -> complex:
    """``(1/n) * sum_{lambda != 0} lambda^{-s}`` for a finite transitive model.

    Eigenvalues within ``EIGEN_CLUSTER_TOL`` of zero count as zero. For a
    model not known to be transitive the rooted-measure sum
    ``sum_lambda weight_lambda * lambda^{-s}`` is returned and a
    :class:`NonTransitiveWarning` is emitted.
    """
    s = check_complex("s", s)
    if not model.is_finite:
        raise UnsupportedError("zeta_finite_transitive needs a finite model")
    if not model.is_transitive:
        warnings.warn(
            "graph is not known to be vertex-transitive; returning the rooted-measure zeta",
            NonTransitiveWarning,
            stacklevel=2,
        )
    total = 0j
    for lam, w in spectral_measure(model).atoms:
        if lam > EIGEN_CLUSTER_TOL:
            total += float(w) * cmath.exp(-s * math.log(lam))
    return total


def zeta_z_closed(s) -> complex:
    """Zeta of Z in closed form, ``Gamma(1 - 2s) / Gamma(1 - s)^2``.

    Meromorphic with simple poles at s = 1/2, 3/2, ...; it vanishes at the
    positive integers, where ``1/Gamma(1 - s)`` does.
    """
    s = check_complex("s", s)
    half = as_integer_if_close(s - 0.5)
    if half is not None and half >= 0:
        raise PoleError(f"zeta_Z has a pole at s = {half + 0.5}", location=half + 0.5)
    n = as_integer_if_close(1.0 - s)
    if n is not None and n <= 0:
        return 0j
    return cmath.exp(log_gamma(1.0 - 2.0 * s) - 2.0 * log_gamma(1.0 - s))


@lru_cache(maxsize=4096)
def zeta_lattice_negint(d: int, k: int) -> int:
    """Exact ``zeta_{Z^d}(-k)``: sum over compositions of k into d parts of
    ``multinomial(k; parts) * prod C(2 k_m, k_m)``."""
    d = check_int("d", d, minimum=1)
    k = check_int("k", k, minimum=0)
    total = 0
    for parts in compositions(k, d):
        term = multinomial(k, parts)
        for p in parts:
            term *= math.comb(2 * p, p)
        total += term
    return total


def zeta_negint(model: GraphModel, k: int) -> int:
    """Exact ``zeta_G(-k)`` for any model (the k-th rooted moment)."""
    if isinstance(model, Lattice):
        return zeta_lattice_negint(model.d, k)
    return spectral_moment(model, k)


@dataclass(frozen=True)
class RhoCoefficient:
    """Coefficient of ``x^(k - 1 + d/2)`` in the small-x density of Z^d,
    ``value = rational * pi^(-pi_power)``."""

    d: int
    k: int
    rational: Fraction
    pi_power: Fraction

    @property
    def exponent(self) -> Fraction:
        return Fraction(2 * self.k - 2 + self.d, 2)

    @property
    def value(self) -> float:
        return float(self.rational) * math.pi ** (-float(self.pi_power))


def _gamma_half_integer(two_a: int) -> tuple[Fraction, bool]:
    """Gamma(two_a / 2) as ``(q, has_sqrt_pi)`` with Gamma = q * sqrt(pi)^has."""
    if two_a % 2 == 0:
        return Fraction(math.factorial(two_a // 2 - 1)), False
    m = (two_a - 1) // 2  # Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
    return Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), True


def lattice_rho_coeff(d: int, k: int) -> RhoCoefficient:
    """Small-x expansion coefficient of the Z^d density.

    Convolving the d one-dimensional expansions term by term gives
    ``sum_{|l| = k} B(l_1 + 1/2, ..., l_d + 1/2) prod C(2 l_m, l_m)
    / (pi^d 2^(4k + d))`` with B the multivariate beta function; the gamma
    values at half-integers are exact rationals times powers of sqrt(pi).
    """
    d = check_int("d", d, minimum=1)
    k = check_int("k", k, minimum=0)
    denom_q, denom_sqrt = _gamma_half_integer(2 * k + d)
    total = Fraction(0)
    for parts in compositions(k, d):
        num = Fraction(1)
        for p in parts:
            q, _ = _gamma_half_integer(2 * p + 1)
            num *= q * math.comb(2 * p, p)
        total += num
    # numerator carries pi^(d/2), denominator pi^d and possibly sqrt(pi)
    rational = total / (denom_q * 2 ** (4 * k + d))
    pi_power = Fraction(d, 2) + (Fraction(1, 2) if denom_sqrt else 0)
    return RhoCoefficient(d, k, rational, pi_power)


@dataclass(frozen=True)
class ResidueExact:
    """Residue of zeta_{Z^d} at its pole ``k + d/2``."""

    d: int
    k: int
    core: int
    value: float

    @property
    def pole(self) -> float:
        return self.k + self.d / 2


def residue_core(d: int, k: int) -> int:
    """``sum_{|l| = k} multinomial(k; l) prod C(2 l_m, l_m) (2 l_m)!``."""
    total = 0
    for parts in compositions(k, d):
        term = multinomial(k, parts)
        for p in parts:
            term *= math.comb(2 * p, p) * math.factorial(2 * p)
        total += term
    return total


def residue_lattice(d: int, k: int) -> ResidueExact:
    """Residue ``-S / ((4 pi)^(d/2) 2^(6k) k! Gamma(k + d/2))`` with S the
    integer :func:`residue_core`."""
    d = check_int("d", d, minimum=1)
    k = check_int("k", k, minimum=0)
    core = residue_core(d, k)
    try:
        value = -core / (
            (4.0 * math.pi) ** (d / 2)
            * 2.0 ** (6 * k)
            * math.factorial(k)
            * math.gamma(k + d / 2)
        )
    except OverflowError:
        log_mag = (
            math.log(core)
            - (d / 2) * math.log(4.0 * math.pi)
            - 6 * k * math.log(2.0)
            - math.lgamma(k + 1)
            - math.lgamma(k + d / 2)
        )
        value = -math.exp(log_mag)
    return ResidueExact(d, k, core, value)


def functional_z2_sides(k: int) -> tuple[Fraction, Fraction]:
    """Both sides of the Z^2 residue identity as rational multiples of 1/pi.

    Left: residue at ``k + 1`` = ``-S(2, k) / (4 pi 2^(6k) (k!)^2)``.
    Right: ``-zeta_{Z^2}(-k) / (pi 2^(2 + 5k))``.
    """
    k = check_int("k", k, minimum=0)
    left = -Fraction(residue_core(2, k), 4 * 2 ** (6 * k) * math.factorial(k) ** 2)
    right = -Fraction(zeta_lattice_negint(2, k), 2 ** (2 + 5 * k))
    return left, right


def check_functional_z2(k: int) -> bool:
    left, right = functional_z2_sides(k)
    return left == right


def _simpson(y: np.ndarray, h: float):
    if len(y) % 2 == 0:
        raise ValueError("Simpson's rule needs an odd number of nodes")
    return h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-1:2]))


def _log_grid(t_lo: float, t_hi: float, n_nodes: int):
    n = n_nodes if n_nodes % 2 else n_nodes + 1
    u = np.linspace(math.log(t_lo), math.log(t_hi), n)
    return u, u[1] - u[0]


def _lattice_heat(t: np.ndarray, d: int) -> np.ndarray:
    return np.array([bessel_i0e(2.0 * x) for x in t]) ** d


def _heat_tail_coefficients(d: int, n_terms: int = 12) -> np.ndarray:
    """``c_j`` with ``H_t ~ (4 pi t)^(-d/2) sum_j c_j t^(-j)`` as t -> infinity.

    From the large-argument expansion of ``exp(-x) I0(x)`` at x = 2t, raised
    to the d-th power.
    """
    b = np.zeros(n_terms)
    term = 1.0
    for j in range(n_terms):
        b[j] = term
        term *= (2 * j + 1) ** 2 / (8.0 * (j + 1)) / 2.0
    c = np.zeros(n_terms)
    c[0] = 1.0
    for _ in range(d):
        c = np.convolve(c, b)[:n_terms]
    return c


def zeta_mellin(
    model: GraphModel, s, t_max: float = MELLIN_T_MAX, n_nodes: int = MELLIN_NODES
) -> complex:
    """Zeta of Z^d from the Mellin transform of its heat function.

    ``(1 / Gamma(s)) int_0^inf H_t t^(s-1) dt`` on the strip
    ``0 < Re(s) < d/2``: Simpson's rule in ``u = log t`` on
    ``[1e-8, t_max]``, the first-order Taylor expansion of ``H_t`` below,
    and the large-t expansion of ``H_t`` integrated analytically above.
    """
    s = check_complex("s", s)
    if not isinstance(model, Lattice):
        raise DivergenceError(
            "the Mellin integral diverges for finite graphs (H_t tends to a positive constant)"
        )
    d = model.d
    if not 0.0 < s.real < d / 2:
        raise DivergenceError(f"Mellin integral of Z^{d} needs 0 < Re(s) < {d / 2}, got {s}")
    t_lo = MELLIN_T_MIN
    head = t_lo**s / s - 2 * d * t_lo ** (s + 1) / (s + 1)

    u, h = _log_grid(t_lo, t_max, n_nodes)
    t = np.exp(u)
    body = _simpson(_lattice_heat(t, d) * np.exp(u * s), h)

    c = _heat_tail_coefficients(d)
    tail = 0j
    for j, cj in enumerate(c):
        e = d / 2 + j - s
        tail += cj * t_max ** (-e) / e
    tail *= (4.0 * math.pi) ** (-d / 2)
    return rgamma(s) * (head + body + tail)


def _series_terms_needed(d: int, s: complex, tol: float = SERIES_TAIL_TOL) -> int:
    # zeta(-n) <= (4d)^n bounds the first omitted term of the small-t series
    n = 0
    while True:
        nxt = n + 1
        denom = abs(nxt + s)
        log_bound = nxt * math.log(4 * d) - math.lgamma(nxt + 1)
        if denom > 0 and log_bound - math.log(denom) < math.log(tol):
            return n
        n += 1


def zeta_lattice_continuation(d: int, s, M: int = 2, N: int | None = None) -> complex:
    """Meromorphic continuation of zeta_{Z^d} to ``Re(s) < M``.

    The Mellin integral is split at t = 1. Below, the heat function is
    replaced by its Taylor series (coefficients are the exact values at the
    negative integers, truncated after ``N`` terms). Above, the terms of its
    large-t expansion with exponent ``alpha < M`` are integrated in closed
    form (the pole terms ``rho_alpha Gamma(1 + alpha) / (alpha + 1 - s)``)
    and the remainder numerically. ``N`` defaults to the smallest order with
    first omitted term below 1e-10.
    """
    d = check_int("d", d, minimum=1)
    M = check_int("M", M, minimum=1)
    s = check_complex("s", s)
    if s.real >= M:
        raise DomainError(f"Re(s) = {s.real} is outside the strip Re(s) < M = {M}")
    k_pole = as_integer_if_close(s - d / 2)
    if k_pole is not None and k_pole >= 0:
        raise PoleError(f"zeta_Z^{d} has a pole at s = {s.real}", location=s.real)
    n_neg = as_integer_if_close(s)
    if n_neg is not None and n_neg <= 0:
        return complex(zeta_lattice_negint(d, -n_neg))
    needed = _series_terms_needed(d, s)
    if N is None:
        N = needed
    else:
        N = check_int("N", N, minimum=1)
        if N < needed:
            raise DomainError(f"N = {N} leaves a series tail above {SERIES_TAIL_TOL}; need N >= {needed}")

    small = 0j
    for n in range(N + 1):
        coeff = float(Fraction(zeta_lattice_negint(d, n), math.factorial(n)))
        small += (-1) ** n * coeff / (n + s)

    # large-t expansion terms g_k t^(-alpha_k - 1), alpha_k = k - 1 + d/2
    g = []
    k = 0
    while k - 1 + d / 2 < M + 6:
        alpha = k - 1 + d / 2
        g.append((alpha, lattice_rho_coeff(d, k).value * math.gamma(1 + alpha)))
        k += 1
    inside = [(a, gk) for a, gk in g if a < M]
    outside = [(a, gk) for a, gk in g if a >= M]

    poles = sum(gk / (a + 1 - s) for a, gk in inside)

    t_max = MELLIN_T_MAX
    u, h = _log_grid(1.0, t_max, MELLIN_NODES)
    t = np.exp(u)
    remainder = _lattice_heat(t, d)
    for a, gk in inside:
        remainder = remainder - gk * t ** (-a - 1)
    body = _simpson(remainder * np.exp(u * s), h)
    tail = sum(gk * t_max ** (s - a - 1) / (a + 1 - s) for a, gk in outside)

    return rgamma(s) * (small + poles + body + tail)


def spectral_zeta(model: GraphModel, s, M: int | None = None) -> complex:
    """Zeta of any model at complex ``s``, routed to the natural method."""
    s = check_complex("s", s)
    n_neg = as_integer_if_close(s)
    if n_neg is not None and n_neg <= 0:
        return complex(zeta_negint(model, -n_neg))
    if model.is_finite:
        return zeta_finite_transitive(model, s)
    if model.d == 1:
        return zeta_z_closed(s)
    if M is None:
        M = max(2, math.floor(s.real) + 1)
    return zeta_lattice_continuation(model.d, s, M=M)
