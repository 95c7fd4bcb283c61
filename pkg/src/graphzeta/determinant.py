"""Regularized determinants, characteristic polynomials and rooted forests."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import DomainError, ResourceError, UnsupportedError
from .graph import GraphModel, Lattice, laplacian, spectral_moments
from .spectral import spectral_measure
from .validation import check_int, check_real
from .zeta import zeta_lattice_negint

CHARPOLY_MAX_VERTICES = 64
FOREST_MAX_VERTICES = 10


def regdet(model: GraphModel, x: float) -> float:
    """``det*(x + Delta) = exp(int log(x + y) dmu_root(y))`` for real x > 0.

    For a finite transitive model this is ``det(x I + Delta)^(1/n)``. For Z
    the integral has the closed form ``x/2 + 1 + sqrt(x (4 + x))/2``.
    """
    x = check_real("x", x)
    if x <= 0.0:
        raise DomainError(f"regdet is defined here for x > 0, got {x}")
    if isinstance(model, Lattice):
        if model.d != 1:
            raise UnsupportedError("regdet is only available for Z among the lattices")
        return x / 2.0 + 1.0 + math.sqrt(x * (4.0 + x)) / 2.0
    mu = spectral_measure(model)
    return math.exp(math.fsum(float(w) * math.log(x + lam) for lam, w in mu.atoms))


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated expansion ``x + sum_{m >= 0} c_m x^(-m)`` with exact coefficients.

    ``coefficients`` maps degree to :class:`Fraction`; it includes the
    leading degree 1 entry.
    """

    coefficients: dict[int, Fraction]

    @property
    def leading(self) -> tuple[int, Fraction]:
        deg = max(self.coefficients)
        return deg, self.coefficients[deg]

    @property
    def degrees(self) -> list[int]:
        return sorted(self.coefficients, reverse=True)

    def __getitem__(self, degree: int) -> Fraction:
        return self.coefficients[degree]

    def evaluate(self, x: float) -> float:
        return math.fsum(float(c) * x**deg for deg, c in self.coefficients.items())


def _moments(model: GraphModel, kmax: int) -> list[int]:
    if isinstance(model, Lattice):
        return [zeta_lattice_negint(model.d, k) for k in range(kmax + 1)]
    return spectral_moments(model, kmax)


def regdet_series(model: GraphModel, K: int) -> LaurentSeries:
    """Expansion of ``det*(x + Delta)`` at infinity down to degree ``-(K - 1)``.

    ``x * exp(sum_{k=1}^K zeta(-k) (-1)^(k+1) / (k x^k))``, with the formal
    exponential taken through the recurrence ``n e_n = sum_j j s_j e_(n-j)``.
    """
    K = check_int("K", K, minimum=1)
    zeta = _moments(model, K)
    s = [Fraction(0)] + [Fraction((-1) ** (k + 1) * zeta[k], k) for k in range(1, K + 1)]
    e = [Fraction(1)]
    for n in range(1, K + 1):
        e.append(sum((j * s[j] * e[n - j] for j in range(1, n + 1)), Fraction(0)) / n)
    return LaurentSeries({1 - m: e[m] for m in range(K + 1)})


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, power: int) -> int:
        return self.coefficients[power] if 0 <= power < len(self.coefficients) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def charpoly_cycle(n: int) -> IntPolynomial:
    """``det(x + Delta)`` for the n-cycle: ``[x^(n-l)] = C(2n - l, l) 2n / (2n - l)``."""
    n = check_int("n", n, minimum=3)
    coeffs = [0] * (n + 1)
    for l in range(n):
        num = math.comb(2 * n - l, l) * 2 * n
        q, r = divmod(num, 2 * n - l)
        assert r == 0
        coeffs[n - l] = q
    return IntPolynomial(tuple(coeffs))


def charpoly_exact(model: GraphModel) -> IntPolynomial:
    """``det(x I + Delta)`` by the Faddeev-LeVerrier recurrence on ``-Delta``."""
    if not model.is_finite:
        raise UnsupportedError("charpoly_exact needs a finite model")
    n = model.n_vertices
    if n > CHARPOLY_MAX_VERTICES:
        raise ResourceError(f"charpoly_exact is capped at {CHARPOLY_MAX_VERTICES} vertices, got {n}")
    M = -laplacian(model)
    identity = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    Mk = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        Mk = M.dot(Mk) + identity * c[n - k + 1]
        c[n - k] = -Fraction(sum((M.dot(Mk))[i, i] for i in range(n))) / k
    if any(v.denominator != 1 for v in c):
        raise ArithmeticError("characteristic polynomial has non-integer coefficients")
    return IntPolynomial(tuple(int(v) for v in c))


def forest_count_cycle(n: int, k: int) -> int:
    """Rooted spanning forests of the n-cycle with k components, ``C(n + k, n - k) 2n / (n + k)``."""
    n = check_int("n", n, minimum=3)
    k = check_int("k", k)
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in [1, {n}], got {k}")
    q, r = divmod(math.comb(n + k, n - k) * 2 * n, n + k)
    assert r == 0
    return q


def forest_count_bruteforce(model: GraphModel, k: int) -> int:
    """Count (spanning forest, root per component) pairs with k components.

    Every subset of ``n - k`` edges is checked for acyclicity with a
    union-find; an acyclic one has exactly k components and contributes the
    product of the component sizes.
    """
    if not model.is_finite:
        raise UnsupportedError("forest_count_bruteforce needs a finite model")
    k = check_int("k", k, minimum=1)
    n = model.n_vertices
    if n > FOREST_MAX_VERTICES:
        raise ResourceError(f"forest enumeration is capped at {FOREST_MAX_VERTICES} vertices, got {n}")
    if k > n:
        return 0
    edges = [(a, b) for a, b in model.graph.edges() if a != b]
    total = 0
    for subset in itertools.combinations(edges, n - k):
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        acyclic = True
        for a, b in subset:
            ra, rb = find(a), find(b)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic:
            continue
        sizes: dict[int, int] = {}
        for v in range(n):
            r = find(v)
            sizes[r] = sizes.get(r, 0) + 1
        total += math.prod(sizes.values())
    return total
