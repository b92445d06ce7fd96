"""Input validation helpers (in the spirit of sklearn.utils.validation)."""
import numbers

import numpy as np

from .exceptions import ShapeMismatch


def as_complex_matrix(m, name="matrix"):
    """Return `m` as a finite 2-D complex128 array.

    Scalars and 1-D inputs are promoted with ``np.atleast_2d`` (a 1-D input
    becomes a single row). NaN and Inf are rejected.
    """
    arr = np.atleast_2d(np.asarray(m, dtype=np.complex128))
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_square(m, name="matrix"):
    m = as_complex_matrix(m, name)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def check_sylvester_shapes(a, b, c):
    """Validate A (n x n), B (m x m), C (n x m) and return them as complex arrays."""
    a = check_square(a, "A")
    b = check_square(b, "B")
    c = as_complex_matrix(c, "C")
    if c.shape != (a.shape[0], b.shape[0]):
        raise ShapeMismatch(
            f"C must have shape {(a.shape[0], b.shape[0])}, got {c.shape}"
        )
    return a, b, c


def check_positive_int(value, name, minimum=1):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)
