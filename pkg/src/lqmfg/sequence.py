"""Bounded sequences with a finite head and a geometric tail.

A sequence is stored as an explicit head (x_0 .. x_tau) plus a tail ratio r
with |r| <= 1: x_t = x_tau * r^(t - tau) for t > tau. Sequences of this form
are closed under the mean-field update (the head grows by one element, r is
preserved), and the sup distance between two sequences sharing r is attained
on the joint head, which makes the sup-norm metric computable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RatioMismatch


@dataclass(frozen=True)
class TailGeometricSeq:
    """Immutable sequence: explicit head, then geometric continuation with ratio r."""

    head: np.ndarray
    r: float

    def __post_init__(self):
        head = np.asarray(self.head, dtype=float)
        if head.ndim != 1 or head.size == 0:
            raise ValueError("head must be a one-dimensional array with at least one element")
        if not np.all(np.isfinite(head)):
            raise ValueError("head values must be finite")
        r = float(self.r)
        if not abs(r) <= 1.0:  # also rejects NaN
            raise ValueError(f"tail ratio must satisfy |r| <= 1, got {self.r}")
        head = head.copy()
        head.flags.writeable = False
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "r", r)

    @property
    def tail_start(self) -> int:
        """Index from which the sequence continues geometrically."""
        return self.head.size - 1

    def value(self, t: int) -> float:
        """x_t for a single index t >= 0."""
        if t < 0:
            raise ValueError(f"sequence index must be nonnegative, got {t}")
        tau = self.tail_start
        if t <= tau:
            return float(self.head[t])
        return float(self.head[tau] * self.r ** (t - tau))

    def values(self, n: int) -> np.ndarray:
        """The first n elements x_0 .. x_{n-1} as an array."""
        tau = self.tail_start
        out = np.empty(n, dtype=float)
        m = min(tau + 1, n)
        out[:m] = self.head[:m]
        if n > tau + 1:
            # scalar pow per element so this agrees bitwise with value(t);
            # the vectorized ufunc pow can differ in the last ulp
            anchor = float(self.head[tau])
            out[tau + 1:] = [anchor * self.r ** k for k in range(1, n - tau)]
        return out

    def bound(self) -> float:
        """sup_t |x_t|, attained on the head since |r| <= 1."""
        return float(np.max(np.abs(self.head)))


def sup_distance(s1: TailGeometricSeq, s2: TailGeometricSeq) -> float:
    """Sup-norm distance between two sequences sharing a tail ratio.

    Beyond the later tail start both sequences follow the same ratio, so the
    pointwise gap there is |x_tau - y_tau| |r|^(t - tau), maximized at the
    tail start itself. The sup over all t is therefore a max over the joint
    head region.
    """
    if s1.r != s2.r:
        raise RatioMismatch(
            f"sup distance requires a shared tail ratio, got {s1.r} and {s2.r}")
    n = max(s1.tail_start, s2.tail_start) + 1
    return float(np.max(np.abs(s1.values(n) - s2.values(n))))
