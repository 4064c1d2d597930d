"""Eisenstein-Kronecker double sums for ``m(Q_k)`` and their evaluation at the CM point.

At ``tau0 = (-3 + sqrt(-15)) / 24`` the eta quotient ``t`` gives ``k = -3``
and the four norms ``|j m tau0 + kappa|^2`` become rational multiples of the
forms ``(1,0,15)``, ``(1,1,4)``, ``(3,0,5)`` and ``(2,1,2)``, which is what
lets the Mahler measure split into a modular part (which vanishes) and a
Dirichlet part equal to ``(8/5) d_3``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .lattice import ShellSum, exterior_integral, shell_sum
from .summation import Neumaier

TAU0 = complex(-3.0 / 24.0, math.sqrt(15.0) / 24.0)
Q3_TERMS = ((1, 2), (2, -32), (3, -18), (6, 288))
MODULAR_PREFACTOR = 3.0 * math.sqrt(15.0) / math.pi ** 3
DIRICHLET_PREFACTOR = 6.0 * math.sqrt(15.0) / math.pi ** 3


@dataclass(frozen=True)
class KroneckerSumSpec:
    tau: complex
    terms: tuple[tuple[int, int], ...] = Q3_TERMS
    R: int = 1000

    def __post_init__(self):
        if not complex(self.tau).imag > 0:
            raise DomainError("tau must lie in the upper half plane")
        if self.R < 1:
            raise ValueError("shell cutoff must be >= 1")
        object.__setattr__(self, "terms", tuple((int(j), int(c)) for j, c in self.terms))
        if any(j < 1 for j, _ in self.terms):
            raise ValueError("scales must be positive")

    @classmethod
    def q3(cls, R: int = 1000) -> "KroneckerSumSpec":
        return cls(TAU0, Q3_TERMS, R)


@dataclass(frozen=True)
class LatticeValue:
    value: float
    tail_bound: float                 # empirical shell-ratio bound, safety factor 4
    tail_estimate: float              # continuum integral of the omitted shells
    R: int
    imag_residual: float = 0.0

    @property
    def extrapolated(self) -> float:
        return self.value + self.tail_estimate

    def __float__(self) -> float:
        return self.value


def _bracket(j: int, tau: complex):
    """Complex-accumulated kernel ``2 Re(1/(w^3 wbar)) + 1/(w^2 wbar^2)`` at scale ``j``."""
    def f(m, k):
        w = (j * tau) * m + k
        wb = np.conj(w)
        return 2.0 * np.real(1.0 / (w ** 3 * wb)) + 1.0 / (w * w * wb * wb)
    return f


def _stacked(tau: complex, scales: Sequence[int]):
    fs = [_bracket(j, tau) for j in scales]

    def kern(m, k):
        vals = [f(m, k) for f in fs]
        return np.stack([v.real for v in vals] + [v.imag for v in vals])
    return kern


def _kernel_sums(tau: complex, scales: Sequence[int], R: int, threads: int) -> ShellSum:
    return shell_sum(_stacked(tau, scales), R, threads)


def kernel_K(j: int, tau: complex, R: int, threads: int = 1) -> float:
    """``sum' (2 Re 1/((j m tau + k)^3 (j m taubar + k)) + 1/|j m tau + k|^4)`` over shells ``<= R``."""
    if not complex(tau).imag > 0:
        raise DomainError("tau must lie in the upper half plane")
    return float(_kernel_sums(tau, [j], R, threads).totals[0])


def kernel_K_complex(j: int, tau: complex, R: int) -> complex:
    """Same sum accumulated in complex arithmetic; the imaginary part is pure rounding."""
    s = _kernel_sums(tau, [j], R, 1).totals
    return complex(s[0], s[1])


def _continuum_tail(tau: complex, terms, R: int) -> float:
    def g(x, y):
        out = 0.0
        for j, c in terms:
            out = out + c * _bracket(j, tau)(x, y).real
        return out
    return float(exterior_integral(g, 4.0, R + 0.5)[0])


def m_lattice(spec: KroneckerSumSpec, threads: int = 1) -> LatticeValue:
    """``(Im tau / 8 pi^3) * sum_j c_j K(j)``: ``m(Q_k)`` in lattice-sum form."""
    scales = [j for j, _ in spec.terms]
    weights = np.array([c for _, c in spec.terms], dtype=float)
    pref = spec.tau.imag / (8.0 * math.pi ** 3)
    if not np.any(weights):
        return LatticeValue(0.0, 0.0, 0.0, spec.R)
    ss = _kernel_sums(spec.tau, scales, spec.R, threads)
    n = len(scales)
    acc = Neumaier()
    for c, v in zip(weights, ss.totals[:n]):
        acc.add(c * v)
    imag = float(np.dot(np.abs(weights), np.abs(ss.totals[n:])))
    tail = float(np.dot(np.abs(weights), ss.ratio_tail()[:n]))
    return LatticeValue(
        value=pref * acc.value,
        tail_bound=pref * tail,
        tail_estimate=pref * _continuum_tail(spec.tau, spec.terms, spec.R),
        R=spec.R,
        imag_residual=pref * imag,
    )


def m_lattice_profile(spec: KroneckerSumSpec, cutoffs: Sequence[int], threads: int = 1) -> dict[int, float]:
    """``m_lattice`` at several cutoffs from a single pass to ``max(cutoffs)``."""
    top = max(cutoffs)
    scales = [j for j, _ in spec.terms]
    weights = np.array([c for _, c in spec.terms], dtype=float)
    ss = _kernel_sums(spec.tau, scales, top, threads)
    per_shell = ss.shells[:, : len(scales)] @ weights
    pref = spec.tau.imag / (8.0 * math.pi ** 3)
    out = {}
    for R in cutoffs:
        acc = Neumaier()
        for x in per_shell[:R]:
            acc.add(x)
        out[R] = pref * acc.value
    return out


# -- the rearranged sum at tau0 ----------------------------------------------

def _split_kernel(m, k):
    m2, k2, mk = m * m, k * k, m * k
    F1 = m2 + 15 * k2          # (1,0,15)
    F2 = 3 * m2 + 5 * k2       # (3,0,5)
    F3 = m2 + mk + 4 * k2      # (1,1,4)
    F4 = 2 * m2 + mk + 2 * k2  # (2,1,2)
    return np.stack([
        (15 * k2 - m2) / F1 ** 3,
        (3 * m2 - 5 * k2) / F2 ** 3,
        0.5 * (2 * m2 + 2 * mk - 7 * k2) / F3 ** 3,
        0.5 * (m2 + 8 * mk + k2) / F4 ** 3,
        1.0 / F1 ** 2,
        -1.0 / F2 ** 2,
        1.0 / F4 ** 2,
        -1.0 / F3 ** 2,
    ])


@dataclass(frozen=True)
class MeasureSplit:
    modular_part: float
    dirichlet_part: float
    total: float
    R: int
    modular_tail_bound: float = 0.0
    dirichlet_tail_bound: float = 0.0
    modular_tail_estimate: float = 0.0
    dirichlet_tail_estimate: float = 0.0
    pieces: tuple[float, ...] = field(default=(), repr=False)


def split_prop31(R: int = 1500, threads: int = 1) -> MeasureSplit:
    """Split ``m(Q_{-3})`` into the cubic-denominator (modular) and squared-denominator (Dirichlet) groups."""
    ss = shell_sum(_split_kernel, R, threads)
    t = ss.totals
    mod_acc, dir_acc = Neumaier(), Neumaier()
    for x in t[:4]:
        mod_acc.add(x)
    for x in t[4:]:
        dir_acc.add(x)
    modular = MODULAR_PREFACTOR * mod_acc.value
    dirichlet = DIRICHLET_PREFACTOR * dir_acc.value
    bounds = ss.ratio_tail()
    cont = exterior_integral(_split_kernel, 4.0, R + 0.5)
    return MeasureSplit(
        modular_part=modular,
        dirichlet_part=dirichlet,
        total=modular + dirichlet,
        R=R,
        modular_tail_bound=MODULAR_PREFACTOR * float(bounds[:4].sum()),
        dirichlet_tail_bound=DIRICHLET_PREFACTOR * float(bounds[4:].sum()),
        modular_tail_estimate=MODULAR_PREFACTOR * float(cont[:4].sum()),
        dirichlet_tail_estimate=DIRICHLET_PREFACTOR * float(cont[4:].sum()),
        pieces=tuple(float(x) for x in t),
    )


# -- change of variables at tau0 ---------------------------------------------

def D_numeric(j: int, m: int, k: int, tau: complex = TAU0) -> float:
    w = m * j * tau + k
    return (w * w.conjugate()).real


def D_form(j: int, m: int, k: int) -> Fraction:
    """``|j m tau0 + k|^2`` as a scaled quadratic form in shifted variables."""
    if j == 1:
        mp = m - 3 * k
        return Fraction(mp * mp + 15 * k * k, 24)
    if j == 2:
        mp = m - 2 * k
        return Fraction(mp * mp + mp * k + 4 * k * k, 6)
    if j == 3:
        mp = m - k
        return Fraction(3 * mp * mp + 5 * k * k, 8)
    if j == 6:
        kp = k - m
        return Fraction(2 * m * m + m * kp + 2 * kp * kp, 2)
    raise ValueError("scale must be one of 1, 2, 3, 6")


def max_Dj_residual(trials: int, seed: int, box: int = 50) -> float:
    """Largest ``|D_num - D_form| / (1 + |D|)`` over random nonzero ``(m, k)``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.integers(-box, box + 1, size=(trials, 2))
    worst = 0.0
    for m, k in pts.tolist():
        if m == 0 and k == 0:
            continue
        for j in (1, 2, 3, 6):
            exact = D_form(j, m, k)
            err = abs(D_numeric(j, m, k) - float(exact)) / (1.0 + abs(float(exact)))
            worst = max(worst, err)
    return worst


def check_Dj_identities(trials: int, seed: int) -> bool:
    return max_Dj_residual(trials, seed) < 1e-12


# -- eta quotient ---------------------------------------------------------------

def eta_numeric(tau: complex, N: int = 60) -> complex:
    """``exp(pi i tau / 12) * prod_{n<=N} (1 - q^n)``, ``q = exp(2 pi i tau)``."""
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError("eta needs Im(tau) > 0")
    q = cmath.exp(2j * math.pi * tau)
    prod = 1.0 + 0j
    qn = 1.0 + 0j
    for _ in range(N):
        qn *= q
        prod *= 1.0 - qn
    return cmath.exp(1j * math.pi * tau / 12.0) * prod


ETA_T_NUM = ((3, 4), (12, 8), (2, 12))
ETA_T_DEN = ((1, 4), (4, 8), (6, 12))


def t_of_tau(tau: complex, N: int = 60) -> complex:
    """``eta(3t)^4 eta(12t)^8 eta(2t)^12 / (eta(t)^4 eta(4t)^8 eta(6t)^12)``."""
    num = 1.0 + 0j
    for j, e in ETA_T_NUM:
        num *= eta_numeric(j * tau, N) ** e
    den = 1.0 + 0j
    for j, e in ETA_T_DEN:
        den *= eta_numeric(j * tau, N) ** e
    return num / den


def k_of_t(t: complex) -> complex:
    if t == 0:
        raise DomainError("t = 0")
    return -(t + 1.0 / t) - 2.0
