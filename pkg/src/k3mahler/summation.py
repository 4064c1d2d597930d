"""Deterministic, compensated accumulation helpers.

Every lattice or series sum in the package funnels through these so that the
result depends only on the order of the work units, never on how they were
scheduled across threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")


class Neumaier:
    """Running Kahan-Babuska-Neumaier sum."""

    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        x = float(x)
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


def neumaier_sum(values: Iterable[float]) -> float:
    acc = Neumaier()
    for v in values:
        acc.add(v)
    return acc.value


def block_sum(arr: np.ndarray) -> float:
    """Sum of a float array: pairwise within the array, exact across rows.

    For 2-D input each row is reduced by numpy's pairwise sum and the row
    subtotals are combined with ``math.fsum``.
    """
    arr = np.asarray(arr, dtype=float)
    if arr.ndim <= 1:
        return float(np.sum(arr))
    return math.fsum(np.sum(arr, axis=-1).ravel().tolist())


def ordered_map(fn: Callable[[T], float], items: Sequence[T], threads: int = 1) -> list:
    """Apply ``fn`` to every item, returning results in input order.

    Thread count only changes scheduling; the returned list (and anything
    reduced from it in order) is bit-identical for any ``threads``.
    """
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def chunks(n: int, size: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into contiguous ``[lo, hi)`` chunks of fixed size."""
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]
