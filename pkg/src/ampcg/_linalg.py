"""Small shared linear-algebra helpers.

The column-stacking convention ``vec(M) = M.reshape(-1, order="F")`` is
load-bearing: every Kronecker identity used by the likelihood and fitting
code assumes it.
"""

from __future__ import annotations

import numpy as np

__all__ = ["PositiveDefiniteError", "vec", "unvec", "cholesky_or_none", "require_spd"]


class PositiveDefiniteError(ValueError):
    """A matrix required to be symmetric positive definite is not."""


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape(shape, order="F")


def cholesky_or_none(a: np.ndarray) -> np.ndarray | None:
    """Lower Cholesky factor of ``a``, or ``None`` if not positive definite."""
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return None


def require_spd(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Return the lower Cholesky factor, raising a domain error on failure.

    Positive definiteness is certified by Cholesky success; the factor is
    returned so callers can reuse it.
    """
    chol = cholesky_or_none(a)
    if chol is None:
        raise PositiveDefiniteError(f"{what} is not positive definite")
    return chol
