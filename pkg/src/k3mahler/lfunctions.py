"""Quadratic characters, Dirichlet L-values, zeta, Epstein sums and d_3.

Everything is evaluated at real ``s > 1`` only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .lattice import exterior_integral, shell_sum
from .quadforms import DIAG_1_15, DIAG_3_5, NONPRINCIPAL, PRINCIPAL, BinaryQuadraticForm

DEFAULT_TOL = 1e-12
EPSTEIN_TOL = 1e-10


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol ``(d/n)``."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n) for odd n > 0
    a = d % n if n > 1 else 0
    if n == 1:
        return result
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        core = d
    elif d % 4 == 0 and (d // 4) % 4 in (2, 3):
        core = d // 4
    else:
        return False
    c = abs(core)
    p = 2
    while p * p <= c:
        if c % (p * p) == 0:
            return False
        p += 1
    return True


def is_discriminant(d: int) -> bool:
    """Nonsquare ``d = 0, 1 (mod 4)``; ``(d/.)`` then has period ``|d|``."""
    if d % 4 not in (0, 1):
        return False
    return d < 0 or math.isqrt(d) ** 2 != d


@dataclass(frozen=True)
class QuadraticCharacter:
    """``n -> (d/n)``; ``d`` need not be fundamental (``-60`` is used)."""

    d: int

    def __post_init__(self):
        if not is_discriminant(self.d):
            raise DomainError(f"{self.d} is not a nonsquare discriminant")

    @property
    def period(self) -> int:
        return abs(self.d)

    def __call__(self, n: int) -> int:
        return kronecker(self.d, n)

    @cached_property
    def table(self) -> tuple[int, ...]:
        """Values on ``1..|d|`` (index ``n - 1``)."""
        return tuple(self(n) for n in range(1, self.period + 1))


@dataclass(frozen=True)
class LValue:
    value: float
    tail_bound: float
    terms_used: int

    def __float__(self) -> float:
        return self.value


def _check_s(s: float) -> None:
    if not s > 1:
        raise DomainError("only real s > 1 is supported")


def periodic_series(values: Sequence[float], s: float, tol: float = DEFAULT_TOL) -> LValue:
    """``sum_{n>=1} a(n) n^-s`` for ``a`` periodic with mean zero.

    ``values[i]`` is ``a(i + 1)``.  Summation runs over whole periods until
    the Abel-summation tail bound ``2 M (N+1)^-s`` drops below ``tol``,
    with ``M`` the largest partial sum of ``a`` over one period.
    """
    _check_s(s)
    a = np.asarray(values, dtype=float)
    P = a.size
    if abs(a.sum()) > 1e-12:
        raise ValueError("periodic coefficients must sum to zero over a period")
    M = float(np.max(np.abs(np.cumsum(a))))
    if M == 0:
        return LValue(0.0, 0.0, 0)
    N = math.ceil((2.0 * M / tol) ** (1.0 / s))
    blocks = -(-N // P)
    N = blocks * P
    acc, done = [], 0
    step = max(1, (1 << 20) // P)
    while done < blocks:
        nb = min(step, blocks - done)
        n = np.arange(done * P + 1, (done + nb) * P + 1, dtype=float).reshape(nb, P)
        acc.extend(np.sum(a * n ** (-s), axis=1).tolist())
        done += nb
    return LValue(math.fsum(acc), 2.0 * M * (N + 1) ** (-s), N)


def dirichlet_L(chi: QuadraticCharacter | int, s: float, tol: float = DEFAULT_TOL) -> LValue:
    if isinstance(chi, int):
        chi = QuadraticCharacter(chi)
    return periodic_series(chi.table, s, tol)


_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510)]


def zeta(s: float, N: int = 24, K: int = 6) -> LValue:
    """Riemann zeta by Euler-Maclaurin after ``N - 1`` explicit terms.

    For ``x^-s`` the remainder is bounded by the first omitted correction
    term, which is returned as ``tail_bound``.
    """
    _check_s(s)
    head = math.fsum(n ** (-s) for n in range(1, N))
    parts = [N ** (1.0 - s) / (s - 1.0), 0.5 * N ** (-s)]
    rising = s
    fact = 2
    for k in range(1, K + 2):
        term = float(_BERNOULLI[k - 1]) / math.factorial(2 * k) * rising * N ** (-s - 2 * k + 1)
        if k == K + 1:
            bound = abs(term)
            break
        parts.append(term)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return LValue(head + math.fsum(parts), bound, N - 1)


# -- Epstein-type lattice sums -----------------------------------------------

def _epstein_pieces(Q: BinaryQuadraticForm, s: float):
    a, b, c = float(Q.a), float(Q.b), float(Q.c)

    def f(m, k):
        return (a * m * m + b * m * k + c * k * k) ** (-s)

    def lap(m, k):
        q = a * m * m + b * m * k + c * k * k
        qx = 2 * a * m + b * k
        qy = b * m + 2 * c * k
        return s * (s + 1) * q ** (-s - 2) * (qx * qx + qy * qy) - s * q ** (-s - 1) * (2 * a + 2 * c)

    return f, lap


def epstein_tail(Q: BinaryQuadraticForm, s: float, R: int) -> tuple[float, float]:
    """Continuum estimate of ``sum_{max(|m|,|k|) > R} Q^-s``.

    Treating each lattice point as the midpoint of its unit cell, the tail
    equals ``int f - (1/24) int lap f`` over the exterior of the square of
    half-width ``R + 1/2``, up to ``O(R^(-2s-2))``.  Returns
    ``(estimate, |second term|)``.
    """
    f, lap = _epstein_pieces(Q, s)
    L = R + 0.5
    i0 = float(exterior_integral(f, 2 * s, L)[0])
    i1 = float(exterior_integral(lap, 2 * s + 2, L)[0]) / 24.0
    return i0 - i1, abs(i1)


def epstein_Q(Q: BinaryQuadraticForm, s: float, tol: float = EPSTEIN_TOL, R: int | None = None,
              threads: int = 1) -> LValue:
    """``sum' 1 / Q(m, k)^s`` over nonzero integer pairs.

    Shells ``max(|m|, |k|) <= R`` are summed explicitly and the remainder
    is replaced by its continuum estimate (:func:`epstein_tail`).  With
    ``R=None`` the cutoff is the smallest one whose second-order tail term
    is below ``tol``.
    """
    Q.require_definite()
    _check_s(s)
    if R is None:
        _, c1 = epstein_tail(Q, s, 1)
        scale = c1 * 1.5 ** (2 * s)           # second term ~ C (R + 1/2)^(-2s)
        R = max(16, math.ceil((scale / tol) ** (1.0 / (2 * s)) - 0.5))
    f, _ = _epstein_pieces(Q, s)
    head = shell_sum(f, R, threads).totals[0]
    tail, bound = epstein_tail(Q, s, R)
    return LValue(float(head + tail), bound, R)


# -- constants and identities ------------------------------------------------

def d3(tol: float = DEFAULT_TOL) -> LValue:
    """``(3 sqrt 3 / 4 pi) L(chi_{-3}, 2)``."""
    L = dirichlet_L(-3, 2.0, tol)
    c = 3.0 * math.sqrt(3.0) / (4.0 * math.pi)
    return LValue(c * L.value, c * L.tail_bound, L.terms_used)


def L5_closed_form() -> float:
    return 4.0 * math.pi ** 2 / (25.0 * math.sqrt(5.0))


IDENTITY_FORMS = {
    1: (NONPRINCIPAL, PRINCIPAL, +1),
    2: (DIAG_3_5, DIAG_1_15, +1),
    3: (PRINCIPAL, NONPRINCIPAL, -1),
    4: (DIAG_1_15, DIAG_3_5, -1),
}


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    bound: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def lemma34_sides(item: int, s: float, tol: float = EPSTEIN_TOL, threads: int = 1) -> IdentityCheck:
    """Both sides of one of the four lattice-sum / L-series identities.

    1. ``Q(2,1,2) + Q(1,1,4) = 2 zeta L_{-15}``
    2. ``Q(3,0,5) + Q(1,0,15) = 2 (1 + 2^(1-2s) - 2^(1-s)) zeta L_{-15}``
    3. ``Q(1,1,4) - Q(2,1,2) = 2 L_{-3} L_5``
    4. ``Q(1,0,15) - Q(3,0,5) = 2 (1 + 2^(1-2s) + 2^(1-s)) L_{-3} L_5``
    """
    if item not in IDENTITY_FORMS:
        raise ValueError("item must be 1..4")
    _check_s(s)
    A, B, sign = IDENTITY_FORMS[item]
    qa = epstein_Q(A, s, tol, threads=threads)
    qb = epstein_Q(B, s, tol, threads=threads)
    lhs = qa.value + sign * qb.value
    ltol = min(DEFAULT_TOL, tol / 10)
    if item in (1, 2):
        z, L = zeta(s), dirichlet_L(-15, s, ltol)
        base = z.value * L.value
        err = abs(z.value) * L.tail_bound + abs(L.value) * z.tail_bound
        factor = 1.0 if item == 1 else 1.0 + 2.0 ** (1 - 2 * s) - 2.0 ** (1 - s)
    else:
        L3, L5 = dirichlet_L(-3, s, ltol), dirichlet_L(5, s, ltol)
        base = L3.value * L5.value
        err = abs(L3.value) * L5.tail_bound + abs(L5.value) * L3.tail_bound
        factor = 1.0 if item == 3 else 1.0 + 2.0 ** (1 - 2 * s) + 2.0 ** (1 - s)
    rhs = 2.0 * factor * base
    return IdentityCheck(lhs, rhs, qa.tail_bound + qb.tail_bound + 2 * factor * err)


def verify_lemma34(item: int, s: float, tol: float = EPSTEIN_TOL, threads: int = 1) -> float:
    return lemma34_sides(item, s, tol, threads).residual


def zucker_robertson_sides(s: float, tol: float = EPSTEIN_TOL, threads: int = 1) -> IdentityCheck:
    """``Q(1,0,15)`` against ``(1 - 2^(1-s) + 2^(1-2s)) zeta L_{-15} + (1 + 2^(1-s) + 2^(1-2s)) L_{-3} L_5``."""
    _check_s(s)
    q = epstein_Q(DIAG_1_15, s, tol, threads=threads)
    ltol = min(DEFAULT_TOL, tol / 10)
    z, L15 = zeta(s), dirichlet_L(-15, s, ltol)
    L3, L5 = dirichlet_L(-3, s, ltol), dirichlet_L(5, s, ltol)
    u, v = 2.0 ** (1 - s), 2.0 ** (1 - 2 * s)
    rhs = (1 - u + v) * z.value * L15.value + (1 + u + v) * L3.value * L5.value
    return IdentityCheck(q.value, rhs, q.tail_bound)


def verify_zucker_robertson(s: float, tol: float = EPSTEIN_TOL, threads: int = 1) -> float:
    return zucker_robertson_sides(s, tol, threads).residual


def _parity_table(chi: QuadraticCharacter, parity: int) -> list[int]:
    # period 2|d| so that the parity restriction stays periodic
    return [chi(n) if n % 2 == parity else 0 for n in range(1, 2 * chi.period + 1)]


def a60_table() -> list[int]:
    from .qseries import a_minus60

    return [a_minus60(n) for n in range(1, 61)]


@dataclass(frozen=True)
class SplitResiduals:
    even_odd: float        # |L_{-15} - (L_- + 2^-s L_{-15})|
    even_part: float       # |L_+ - 2^-s L_{-15}|
    odd_is_L60: float      # |L_{-60} - L_-|
    lambert: float         # |(1/2) sum a_n(-60) n^-s - (1 + 2^(1-2s) - 2^(1-s)) L_{-15}|

    def max(self) -> float:
        return max(self.even_odd, self.even_part, self.odd_is_L60, self.lambert)


def verify_even_odd_split(s: float, tol: float = DEFAULT_TOL) -> SplitResiduals:
    _check_s(s)
    chi = QuadraticCharacter(-15)
    L15 = dirichlet_L(chi, s, tol).value
    Lplus = periodic_series(_parity_table(chi, 0), s, tol).value
    Lminus = periodic_series(_parity_table(chi, 1), s, tol).value
    L60 = dirichlet_L(-60, s, tol).value
    half_a = 0.5 * periodic_series(a60_table(), s, tol).value
    two = 2.0 ** (-s)
    return SplitResiduals(
        even_odd=abs(L15 - (Lminus + two * L15)),
        even_part=abs(Lplus - two * L15),
        odd_is_L60=abs(L60 - Lminus),
        lambert=abs(half_a - (1 + 2.0 ** (1 - 2 * s) - 2.0 ** (1 - s)) * L15),
    )
