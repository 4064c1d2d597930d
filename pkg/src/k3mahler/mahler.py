"""Logarithmic Mahler measure over the unit torus.

Two integrators are provided:

* ``mahler_jensen_grid`` integrates the innermost variable exactly with
  Jensen's formula and the remaining variables with the periodic trapezoid
  rule.  This removes the logarithmic singularity of ``log|P|`` in one
  direction, which is what makes polynomials vanishing on the torus (such as
  ``Q_{-3}``) tractable.
* ``mahler_monte_carlo`` averages ``log|P|`` over uniform torus points with a
  fixed-seed, batch-split generator.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalDegeneracyError
from .laurent import LaurentPolynomial
from .summation import block_sum, ordered_map

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class MeasureEstimate:
    value: float
    error_bound: float
    method: str
    resolution: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.error_bound >= 0:
            raise ValueError("error_bound must be nonnegative")

    def to_json(self) -> dict:
        return {"value": self.value, "error_bound": self.error_bound,
                "method": self.method, "resolution": dict(self.resolution)}


# -- Jensen inner step -------------------------------------------------------

def _quadratic_roots(a, b, c):
    """Roots of ``a z^2 + b z + c`` (arrays, ``a != 0``) without cancellation."""
    disc = np.sqrt(b * b - 4.0 * a * c)
    flip = (np.conj(b) * disc).real < 0
    disc = np.where(flip, -disc, disc)
    q = -0.5 * (b + disc)
    safe_q = np.where(q == 0, 1.0, q)
    r1 = q / a
    r2 = np.where(q == 0, 0.0, c / safe_q)
    return r1, r2


def _log_plus(z) -> np.ndarray:
    return np.log(np.maximum(1.0, np.abs(z)))


def _polish(coeffs_hi_first: np.ndarray, r: np.ndarray) -> np.ndarray:
    p = np.polyval(coeffs_hi_first, r)
    dp = np.polyval(np.polyder(coeffs_hi_first), r)
    ok = dp != 0
    return np.where(ok, r - p / np.where(ok, dp, 1.0), r)


def jensen_values(coeffs: np.ndarray, zero_tol: float = 1e-15) -> tuple[np.ndarray, np.ndarray]:
    """Exact ``(1/2pi) * int log|p(e^{it})| dt`` for a batch of polynomials.

    ``coeffs`` has shape ``(..., d + 1)`` with ``coeffs[..., i]`` the
    coefficient of ``z**i`` (any overall power of ``z`` is irrelevant on the
    circle).  Returns ``(values, valid)`` where ``valid`` is False for
    polynomials that vanish identically.
    """
    C = np.asarray(coeffs, dtype=complex)
    shape = C.shape[:-1]
    C = C.reshape(-1, C.shape[-1])
    mag = np.abs(C)
    norm = mag.max(axis=1)
    valid = norm > 0
    nz = mag > zero_tol * norm[:, None]
    nz &= valid[:, None]
    deg = np.where(valid, C.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1), -1)
    out = np.zeros(C.shape[0])
    for d in np.unique(deg):
        if d < 0:
            continue
        idx = np.nonzero(deg == d)[0]
        lead = C[idx, d]
        if d == 0:
            out[idx] = np.log(np.abs(lead))
        elif d == 1:
            out[idx] = np.log(np.maximum(np.abs(lead), np.abs(C[idx, 0])))
        elif d == 2:
            r1, r2 = _quadratic_roots(lead, C[idx, 1], C[idx, 0])
            out[idx] = np.log(np.abs(lead)) + _log_plus(r1) + _log_plus(r2)
        else:
            out[idx] = [_jensen_general(C[i, : d + 1]) for i in idx]
    return out.reshape(shape), valid.reshape(shape)


def _jensen_general(c: np.ndarray) -> float:
    hi_first = c[::-1]
    roots = np.roots(hi_first)
    scale = np.abs(c).sum()
    res = np.abs(np.polyval(hi_first, roots))
    bad = res >= _RESIDUAL_TOL * scale * np.maximum(1.0, np.abs(roots)) ** (len(c) - 1)
    if np.any(bad):
        roots = _polish(hi_first, roots)
        res = np.abs(np.polyval(hi_first, roots))
        if np.any(res >= _RESIDUAL_TOL * scale * np.maximum(1.0, np.abs(roots)) ** (len(c) - 1)):
            raise NumericalDegeneracyError("root finder residual check failed")
    return float(math.log(abs(c[-1])) + _log_plus(roots).sum())


def jensen_univariate(coeffs: Sequence[complex]) -> float:
    """Mahler measure of a one-variable polynomial, coefficients low to high."""
    vals, ok = jensen_values(np.asarray(coeffs, dtype=complex)[None, :])
    if not ok[0]:
        raise DomainError("zero polynomial has no Mahler measure")
    return float(vals[0])


# -- grid integrator ----------------------------------------------------------

def inner_variable(P: LaurentPolynomial) -> int:
    """Variable with the smallest exponent span; ties go to the last one."""
    spans = [P.span(i) for i in range(P.dimension)]
    best = min(spans)
    return max(i for i, s in enumerate(spans) if s == best)


def _grid_nodes(P: LaurentPolynomial, which: int, grid: Sequence[int], threads: int):
    axes = [TWO_PI * np.arange(n) / n for n in grid]
    if not axes:
        coeffs, _ = P.slice_coefficients(np.zeros((1, 0)), which)
        vals, ok = jensen_values(coeffs)
        return vals.reshape(()), ok.reshape(())

    # chunk along the first outer axis so memory stays bounded for big grids
    def row(i):
        mesh = np.meshgrid(*([axes[0][i:i + 1]] + axes[1:]), indexing="ij")
        ang = np.stack(mesh, axis=-1)
        coeffs, _ = P.slice_coefficients(ang, which)
        return jensen_values(coeffs)

    parts = ordered_map(row, list(range(len(axes[0]))), threads)
    vals = np.concatenate([p[0] for p in parts], axis=0)
    ok = np.concatenate([p[1] for p in parts], axis=0)
    return vals, ok


def _grid_mean(vals: np.ndarray, ok: np.ndarray) -> tuple[float, int]:
    used = int(ok.sum())
    if used == 0:
        raise NumericalDegeneracyError("slice vanishes at every grid node")
    v = np.where(ok, vals, 0.0)
    if v.ndim >= 2:
        v = v.reshape(v.shape[0], -1)
    return block_sum(v) / used, v.size - used


def mahler_jensen_grid(P: LaurentPolynomial, grid: int | Sequence[int] = 512,
                       threads: int = 1) -> MeasureEstimate:
    """Jensen-reduced trapezoid estimate of ``m(P)``.

    ``grid`` gives the point count per outer variable (an int applies to
    all of them).  The error bound is the change against the grid with half
    the points per axis.
    """
    if P.is_zero():
        raise DomainError("zero polynomial has no Mahler measure")
    which = inner_variable(P)
    n_outer = P.dimension - 1
    if isinstance(grid, int):
        grid = [grid] * n_outer
    grid = list(grid)
    if len(grid) != n_outer:
        raise ValueError(f"need {n_outer} grid sizes, got {len(grid)}")
    if any(n < 1 for n in grid):
        raise ValueError("grid sizes must be positive")

    vals, ok = _grid_nodes(P, which, grid, threads)
    value, skipped = _grid_mean(np.atleast_1d(vals), np.atleast_1d(ok))
    if skipped:
        log.warning("skipped %d grid nodes where the slice vanished", skipped)

    if not grid or all(n == 1 for n in grid):
        err = 0.0
    elif all(n % 2 == 0 for n in grid):
        sl = tuple(slice(None, None, 2) for _ in grid)
        coarse, _ = _grid_mean(vals[sl], ok[sl])
        err = abs(value - coarse)
    else:
        half = [max(1, n // 2) for n in grid]
        cv, cok = _grid_nodes(P, which, half, threads)
        coarse, _ = _grid_mean(np.atleast_1d(cv), np.atleast_1d(cok))
        err = abs(value - coarse)
    return MeasureEstimate(
        value=float(value), error_bound=float(err), method="jensen_grid",
        resolution={"grid": grid, "inner_variable": P.variables[which], "skipped_nodes": skipped},
    )


# -- Monte Carlo ----------------------------------------------------------------

def _mc_batch(P: LaurentPolynomial, n: int, seed_seq: np.random.SeedSequence):
    rng = np.random.Generator(np.random.Philox(seed_seq))
    ang = TWO_PI * rng.random((n, P.dimension))
    vals = np.abs(P.eval_angles(ang))
    rejected = 0
    bad = vals == 0
    while bad.any():
        k = int(bad.sum())
        rejected += k
        if rejected > n:
            break
        ang = TWO_PI * rng.random((k, P.dimension))
        vals[bad] = np.abs(P.eval_angles(ang))
        bad = vals == 0
    x = np.log(vals)
    mean = float(np.mean(x))
    m2 = float(np.sum((x - mean) ** 2))
    return n, mean, m2, rejected


def mahler_monte_carlo(P: LaurentPolynomial, samples: int, seed: int, batch: int = 1 << 20,
                       threads: int = 1) -> MeasureEstimate:
    """Monte Carlo estimate of ``m(P)`` with standard error.

    Batches are fixed-size with one Philox stream per batch spawned from
    ``seed``, and their statistics are merged in batch order, so the result
    is bit-reproducible for any thread count.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if P.is_zero():
        raise DomainError("zero polynomial has no Mahler measure")
    sizes = [hi - lo for lo, hi in ((lo, min(lo + batch, samples)) for lo in range(0, samples, batch))]
    seqs = np.random.SeedSequence(seed & 0xFFFFFFFFFFFFFFFF).spawn(len(sizes))
    stats = ordered_map(lambda a: _mc_batch(P, *a), list(zip(sizes, seqs)), threads)

    n_tot, mean, m2, rejected = 0, 0.0, 0.0, 0
    for n, mb, m2b, rej in stats:
        # Chan et al. pairwise update, applied in batch order
        delta = mb - mean
        tot = n_tot + n
        mean += delta * n / tot
        m2 += m2b + delta * delta * n_tot * n / tot
        n_tot = tot
        rejected += rej
    if rejected > samples / 10:
        raise NumericalDegeneracyError(f"{rejected} samples hit |P| = 0")
    var = m2 / (n_tot - 1)
    return MeasureEstimate(
        value=mean, error_bound=math.sqrt(var / n_tot), method="monte_carlo",
        resolution={"samples": samples, "seed": seed, "batch": batch, "rejected": rejected},
    )
