"""Input validation helpers shared by the numerical modules and estimators."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import DomainError, UsageError


def check_int(name: str, value, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise UsageError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_real(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise UsageError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def check_complex(name: str, value) -> complex:
    if isinstance(value, bool) or not isinstance(value, numbers.Number):
        raise UsageError(f"{name} must be a number, got {value!r}")
    value = complex(value)
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def as_integer_if_close(z: complex, tol: float = 0.0) -> int | None:
    """Return ``int(z)`` when ``z`` is (within ``tol`` of) a real integer."""
    if z.imag != 0.0 and abs(z.imag) > tol:
        return None
    r = round(z.real)
    if abs(z.real - r) <= tol:
        return int(r)
    return None


def check_points(X, name: str = "X", dtype=float) -> np.ndarray:
    """Coerce evaluation points to a 1-d array.

    Accepts scalars, 1-d sequences, and single-column 2-d arrays (the shape
    scikit-learn pipelines hand to ``transform``).
    """
    arr = np.asarray(X, dtype=dtype)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    elif arr.ndim == 2:
        if arr.shape[1] != 1:
            raise UsageError(
                f"{name} must have a single column, got shape {arr.shape}"
            )
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise UsageError(f"{name} must be 1-d or a single column, got {arr.ndim}-d")
    if arr.size == 0:
        raise UsageError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    return arr
