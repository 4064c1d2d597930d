"""Square-shell lattice sums over ``Z^2 \\ {0}`` and their continuum tails.

Shell ``r`` is the set ``max(|m|, |k|) = r`` (``8r`` points), always
generated in the same order.  Shell subtotals are reduced pairwise and the
shells are folded in increasing ``r`` with compensated addition, so results
do not depend on how shells are distributed over threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .summation import Neumaier, chunks, ordered_map


def shell_points(r: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer points with ``max(|m|, |k|) = r``, as float arrays."""
    if r == 0:
        return np.zeros(1), np.zeros(1)
    full = np.arange(-r, r + 1, dtype=float)
    inner = np.arange(-r + 1, r, dtype=float)
    m = np.concatenate([full, full, np.full(inner.size, float(r)), np.full(inner.size, float(-r))])
    k = np.concatenate([np.full(full.size, float(r)), np.full(full.size, float(-r)), inner, inner])
    return m, k


@dataclass(frozen=True)
class ShellSum:
    totals: np.ndarray          # shape (n_kernels,)
    shells: np.ndarray          # shape (R, n_kernels): per-shell subtotals, r = 1..R

    @property
    def R(self) -> int:
        return self.shells.shape[0]

    def ratio_tail(self, last: int = 10, safety: float = 4.0) -> np.ndarray:
        """Empirical tail bound from the last shells, assuming ``|s_r| <~ C r^-3``.

        ``C`` is the largest ``|s_r| r^3`` among the last ``last`` shells and
        the tail ``sum_{r>R} C r^-3 <= C / (2 (R - 1/2)^2)`` is multiplied
        by ``safety``.  Kernels decaying faster than ``r^-3`` only make the
        bound more conservative.
        """
        R = self.R
        lo = max(0, R - last)
        r = np.arange(lo + 1, R + 1, dtype=float)[:, None]
        C = np.max(np.abs(self.shells[lo:]) * r ** 3, axis=0)
        return safety * C / (2.0 * (R - 0.5) ** 2)


def shell_sum(kernel: Callable[[np.ndarray, np.ndarray], np.ndarray], R: int,
              threads: int = 1, chunk: int = 64) -> ShellSum:
    """Sum ``kernel(m, k)`` over shells ``1..R``.

    ``kernel`` returns an array of shape ``(n_kernels, npts)`` (or
    ``(npts,)``) of real values.
    """
    if R < 1:
        raise ValueError("shell cutoff must be >= 1")

    def work(span):
        lo, hi = span
        out = []
        for r in range(lo + 1, hi + 1):
            m, k = shell_points(r)
            v = np.atleast_2d(kernel(m, k))
            out.append(np.sum(v, axis=-1))
        return np.array(out)

    parts = ordered_map(work, chunks(R, chunk), threads)
    shells = np.concatenate(parts, axis=0)
    totals = []
    for j in range(shells.shape[1]):
        acc = Neumaier()
        for x in shells[:, j]:
            acc.add(x)
        totals.append(acc.value)
    return ShellSum(np.array(totals), shells)


@lru_cache(maxsize=None)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def edge_integral(g: Callable[[np.ndarray, np.ndarray], np.ndarray], nodes: int = 160) -> np.ndarray:
    """``sum over the 4 edges of [-1,1]^2 of int g dt`` (Gauss-Legendre per edge)."""
    t, w = _gauss(nodes)
    one = np.ones_like(t)
    xs = np.concatenate([one, -one, t, t])
    ys = np.concatenate([t, t, one, -one])
    ws = np.concatenate([w, w, w, w])
    vals = np.atleast_2d(g(xs, ys))
    return vals @ ws


def exterior_integral(g: Callable, degree: float, L: float, nodes: int = 160) -> np.ndarray:
    """``int g dA`` outside ``[-L, L]^2`` for ``g`` homogeneous of degree ``-degree`` (> 2)."""
    return L ** (2.0 - degree) / (degree - 2.0) * edge_integral(g, nodes)
