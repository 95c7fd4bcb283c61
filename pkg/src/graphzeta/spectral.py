"""Rooted spectral measures, the resolvent of Z, and heat functions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import DomainError, PoleError, UnsupportedError
from .graph import GraphModel, Lattice, laplacian
from .specfun import bessel_i0e
from .validation import check_complex, check_int, check_real

EIGEN_CLUSTER_TOL = 1e-9
QUADRATURE_NODES = 10_000


@dataclass(frozen=True)
class LatticeDensity:
    """Absolutely continuous rooted measure of Z^d.

    For d = 1 this is the arcsine law ``1 / (pi sqrt(x (4 - x)))`` on
    [0, 4]; for larger d its d-fold additive convolution on [0, 4d]. The
    density is never tabulated: integrals go through the substitution
    ``x = 2 - 2 cos(theta)`` in every coordinate, which turns each arcsine
    factor into the uniform measure ``dtheta / pi`` on [0, pi].
    """

    d: int

    @property
    def name(self) -> str:
        return "ArcsineZ" if self.d == 1 else f"LatticePower({self.d})"

    @property
    def support(self) -> tuple[float, float]:
        return 0.0, 4.0 * self.d

    def integrate(self, f, n_nodes: int = QUADRATURE_NODES):
        # midpoint rule on the theta cube, n_nodes points in total
        m = max(2, math.ceil(n_nodes ** (1.0 / self.d) - 1e-9))
        theta = (np.arange(m) + 0.5) * (math.pi / m)
        x1 = 2.0 - 2.0 * np.cos(theta)
        x = x1
        for _ in range(self.d - 1):
            x = np.add.outer(x, x1).ravel()
        return np.mean(f(x))


def arcsine_density(x: float) -> float:
    """Density of the rooted spectral measure of Z at ``0 < x < 4``."""
    x = check_real("x", x)
    if not 0.0 < x < 4.0:
        return 0.0
    return 1.0 / (math.pi * math.sqrt(x * (4.0 - x)))


@dataclass(frozen=True)
class SpectralMeasure:
    """Atoms ``(eigenvalue, weight)`` plus an optional lattice density.

    Weights are :class:`fractions.Fraction` when they are known exactly
    (vertex-transitive graphs, where each weight is multiplicity / n) and
    floats otherwise.
    """

    atoms: tuple[tuple[float, Fraction | float], ...] = ()
    density: LatticeDensity | None = None

    @property
    def is_atomic(self) -> bool:
        return self.density is None

    def total_mass(self):
        mass = sum((w for _, w in self.atoms), Fraction(0))
        if self.density is not None:
            mass = float(mass) + self.density.integrate(np.ones_like)
        return mass

    def integrate(self, f, n_nodes: int = QUADRATURE_NODES):
        """Integral of a vectorized function ``f`` against the measure."""
        total = 0.0
        if self.atoms:
            lam = np.array([a for a, _ in self.atoms], dtype=float)
            w = np.array([float(b) for _, b in self.atoms])
            total += float(np.dot(w, f(lam)))
        if self.density is not None:
            total += self.density.integrate(f, n_nodes)
        return total

    def moment(self, k: int, n_nodes: int = QUADRATURE_NODES) -> float:
        k = check_int("k", k, minimum=0)
        return self.integrate(lambda x: x**k, n_nodes)


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    order = np.argsort(values)
    groups: list[list[int]] = []
    for i in order:
        if groups and values[i] - values[groups[-1][-1]] <= tol:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return groups


@lru_cache(maxsize=64)
def spectral_measure(model: GraphModel) -> SpectralMeasure:
    """Rooted spectral measure of ``model``.

    Finite models: atoms at the Laplacian eigenvalues, weighted by the
    squared root components of an orthonormal eigenbasis and merged within
    ``EIGEN_CLUSTER_TOL``. Lattices: the density descriptor, no atoms.
    """
    if isinstance(model, Lattice):
        return SpectralMeasure(density=LatticeDensity(model.d))
    L = laplacian(model).astype(float)
    n = L.shape[0]
    evals, evecs = np.linalg.eigh(L)
    root_sq = evecs[model.root_index, :] ** 2
    atoms = []
    for group in _cluster(evals, EIGEN_CLUSTER_TOL):
        lam = float(np.mean(evals[group]))
        if abs(lam) <= EIGEN_CLUSTER_TOL:
            lam = 0.0
        if model.is_transitive:
            weight = Fraction(len(group), n)
        else:
            weight = float(np.sum(root_sq[group]))
            if weight <= 1e-14:
                continue
        atoms.append((lam, weight))
    return SpectralMeasure(atoms=tuple(atoms))


def convolve_atomic(a: SpectralMeasure, b: SpectralMeasure) -> SpectralMeasure:
    """Additive convolution of two purely atomic measures."""
    if not (a.is_atomic and b.is_atomic):
        raise UnsupportedError("convolve_atomic needs purely atomic measures")
    pairs = [(la + lb, wa * wb) for la, wa in a.atoms for lb, wb in b.atoms]
    lam = np.array([p[0] for p in pairs])
    atoms = []
    for group in _cluster(lam, EIGEN_CLUSTER_TOL):
        weight = pairs[group[0]][1]
        for i in group[1:]:
            weight += pairs[i][1]
        atoms.append((float(np.mean(lam[group])), weight))
    return SpectralMeasure(atoms=tuple(atoms))


def _sqrt_x_x_minus_4(z: complex) -> complex:
    # branch with sqrt(z (z - 4)) ~ z at infinity, cut along [0, 4]
    return z * cmath.sqrt(1.0 - 4.0 / z)


def resolvent_z(x, i: int, j: int) -> complex:
    """Matrix entry ``<delta_i, (x - Delta_Z)^{-1} delta_j>`` of the resolvent of Z.

    Uses the root ``w = (2 - x + r) / 2`` of ``w + 1/w = 2 - x`` with
    ``|w| < 1``, where ``r = sqrt(x (x - 4))`` behaves like ``x`` at
    infinity, so the entries decay in ``|i - j|``.
    """
    z = check_complex("x", x)
    check_int("i", i)
    check_int("j", j)
    if z.imag == 0.0 and 0.0 <= z.real <= 4.0:
        raise PoleError(f"x = {z.real} lies on the spectrum [0, 4] of Z", location=z.real)
    r = _sqrt_x_x_minus_4(z)
    w = (2.0 - z + r) / 2.0
    return w ** abs(i - j) / r


def stieltjes_density_check(x: float, epsilon: float) -> float:
    """``-Im R(x + i epsilon)_{00} / pi``, which tends to the density of Z."""
    x = check_real("x", x)
    epsilon = check_real("epsilon", epsilon)
    if not 0.0 < x < 4.0:
        raise DomainError(f"x must lie in (0, 4), got {x}")
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    return -resolvent_z(complex(x, epsilon), 0, 0).imag / math.pi


def heat_function(model: GraphModel, t: float) -> float:
    """Heat function ``<delta_root, exp(-t Delta) delta_root>`` for real t >= 0."""
    t = check_real("t", t)
    if t < 0.0:
        raise DomainError(f"heat_function needs t >= 0, got {t}")
    if isinstance(model, Lattice):
        return bessel_i0e(2.0 * t) ** model.d
    mu = spectral_measure(model)
    return math.fsum(float(w) * math.exp(-lam * t) for lam, w in mu.atoms)
