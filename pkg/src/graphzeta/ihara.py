"""Ihara zeta functions of regular graphs and their regularized version."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .determinant import regdet
from .exceptions import DomainError, PoleError, RegularityError, UnsupportedError
from .graph import GraphModel, laplacian
from .validation import check_complex, check_real

FUNCTIONAL_RTOL = 1e-9


@dataclass(frozen=True)
class IharaPoint:
    u: complex
    value: complex
    regular_degree: int


def _degree(model: GraphModel) -> int:
    d = model.regular_degree
    if d is None:
        raise RegularityError("Ihara zeta functions need a regular graph")
    return d


def ihara_zeta_finite(model: GraphModel, u) -> complex:
    """Ihara-Bass form ``1 / ((1 - u^2)^((d-2) n / 2) det((1 + (d-1) u^2) I - u A))``."""
    u = check_complex("u", u)
    if not model.is_finite:
        raise UnsupportedError("ihara_zeta_finite needs a finite model")
    d = _degree(model)
    n = model.n_vertices
    A = d * np.eye(n) - laplacian(model).astype(float)
    D = (1.0 + (d - 1) * u * u) * np.eye(n) - u * A
    det = np.linalg.det(D)
    if abs(det) <= 1e-12 * np.prod(np.maximum(np.linalg.norm(D, axis=1), 1.0)):
        raise PoleError(f"Ihara zeta has a pole at u = {u}", location=u)
    power = (d - 2) * n // 2
    factor = (1.0 - u * u) ** power
    if power and abs(factor) < 1e-300:
        raise PoleError(f"Ihara zeta has a pole at u = {u}", location=u)
    return 1.0 / (factor * det)


def x_of_u(u, d: int):
    """``(1 - 1/u) (u (d - 1) - 1)``; exact for :class:`fractions.Fraction` input."""
    return (1 - 1 / u) * (u * (d - 1) - 1)


def y_of_u(u, d: int):
    """``u (1 - u^2)^(d/2 - 1)``."""
    return u * (1 - u * u) ** (d / 2 - 1) if d != 2 else u


def regularized_ihara(model: GraphModel, u: float) -> float:
    """``1 / (y_u det*(x_u + Delta))`` for real u.

    Defined whenever ``x_u > 0`` and ``y_u`` is real. For a finite model on n
    vertices its n-th power is the Ihara zeta function.
    """
    u = check_real("u", u)
    if u == 0.0 or abs(u) == 1.0:
        raise DomainError(f"regularized Ihara zeta is undefined at u = {u}")
    d = _degree(model)
    if d % 2 and abs(u) > 1.0:
        raise DomainError(f"y_u is not real for odd degree {d} and |u| > 1")
    x = x_of_u(u, d)
    if x <= 0.0:
        raise DomainError(f"x_u = {x} is outside the positive axis where det* is defined")
    return 1.0 / (y_of_u(u, d) * regdet(model, x))


def ihara_functional_sides(model: GraphModel, u: float) -> tuple[float, float]:
    """``Z*(v)`` and ``(d-1) u^2 ((1 - v^2) / (1 - u^2))^(1 - d/2) Z*(u)`` with ``v = 1/((d-1) u)``."""
    u = check_real("u", u)
    d = _degree(model)
    v = 1.0 / ((d - 1) * u)
    lhs = regularized_ihara(model, v)
    factor = (d - 1) * u * u * ((1 - v * v) / (1 - u * u)) ** (1 - d / 2)
    return lhs, factor * regularized_ihara(model, u)


def check_ihara_functional(model: GraphModel, u: float) -> bool:
    lhs, rhs = ihara_functional_sides(model, u)
    return abs(lhs - rhs) <= FUNCTIONAL_RTOL * max(abs(lhs), abs(rhs))
