"""Dense vector arithmetic and the weighted-average accumulator.

Vectors are plain 1-D float64 numpy arrays. Binary operations require equal
dimensions and raise :class:`ContractViolation` otherwise. Accumulation is
plain left-to-right summation; runs are short enough (<= ~2^14 steps) that
compensated summation is unnecessary.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ContractViolation

__all__ = [
    "as_vector",
    "dot",
    "l2_norm",
    "axpy",
    "WeightedMeanAccumulator",
]


def as_vector(coords, *, name: str = "vector") -> np.ndarray:
    """Validate and convert to a 1-D float64 array with finite coordinates."""
    v = np.asarray(coords, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise ContractViolation(f"{name} must be a 1-D sequence with d >= 1, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ContractViolation(f"{name} has nonfinite coordinates")
    return v


def _require_same_dim(u: np.ndarray, v: np.ndarray, op: str) -> None:
    if u.shape != v.shape:
        raise ContractViolation(f"{op}: dimension mismatch {u.shape} vs {v.shape}")


def dot(u: np.ndarray, v: np.ndarray) -> float:
    """Inner product sum_i u_i v_i."""
    _require_same_dim(u, v, "dot")
    return float(np.dot(u, v))


def l2_norm(v: np.ndarray) -> float:
    """Euclidean norm; exactly 0 only for the zero vector."""
    return math.sqrt(float(np.dot(v, v)))


def axpy(a: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Return y + a*x without mutating either input."""
    _require_same_dim(x, y, "axpy")
    return y + a * x


class WeightedMeanAccumulator:
    """Streaming weighted mean: push (point, weight) pairs, then finalize.

    Holds weight_sum = sum of pushed weights and weighted_point_sum =
    sum of weight*point. finalize() is defined only after at least one push.
    """

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ContractViolation(f"dimension must be >= 1, got {dimension}")
        self.weight_sum = 0.0
        self.weighted_point_sum = np.zeros(dimension)

    def push(self, x: np.ndarray, w: float) -> None:
        """Accumulate point x with weight w > 0."""
        if not (w > 0.0) or not math.isfinite(w):
            raise ContractViolation(f"weight must be positive and finite, got {w}")
        _require_same_dim(x, self.weighted_point_sum, "WeightedMeanAccumulator.push")
        self.weight_sum += w
        self.weighted_point_sum += w * x

    def finalize(self) -> np.ndarray:
        """Return the weighted mean of all pushed points."""
        if self.weight_sum <= 0.0:
            raise ContractViolation("finalize on an empty accumulator")
        return self.weighted_point_sum / self.weight_sum
