"""Positive definite binary quadratic forms and the trace data built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, DomainError


@dataclass(frozen=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def positive_definite(self) -> bool:
        return self.discriminant < 0 and self.a > 0

    def require_definite(self) -> None:
        if not self.positive_definite:
            raise DomainError(f"{self} is not positive definite")

    def __call__(self, m, n):
        return self.a * m * m + self.b * m * n + self.c * n * n

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def bounds(self, n: int) -> tuple[int, int]:
        """``|m|, |k|`` bounds containing every solution of ``Q(m, k) <= n``."""
        D = -self.discriminant
        bm = math.isqrt(4 * self.c * n // D + 1) + 1
        bk = math.isqrt(4 * self.a * n // D + 1) + 1
        return bm, bk

    def value_counts(self, N: int) -> np.ndarray:
        """``r_Q(k)`` for ``0 <= k < N`` by enumeration of the ellipse."""
        self.require_definite()
        bm, bk = self.bounds(max(N - 1, 0))
        counts = np.zeros(N, dtype=np.int64)
        m = np.arange(-bm, bm + 1, dtype=np.int64)
        for k in range(-bk, bk + 1):
            v = self(m, k)
            v = v[v < N]
            counts += np.bincount(v, minlength=N)[:N]
        return counts

    def solutions(self, n: int) -> list[tuple[int, int]]:
        """All ``(x, y)`` with ``Q(x, y) = n``, ordered by ``|y|`` then ``|x|``."""
        self.require_definite()
        bx, by = self.bounds(n)
        out = []
        for y in sorted(range(-by, by + 1), key=lambda t: (abs(t), t < 0)):
            for x in sorted(range(-bx, bx + 1), key=lambda t: (abs(t), t < 0)):
                if self(x, y) == n:
                    out.append((x, y))
        return out


PRINCIPAL = BinaryQuadraticForm(1, 1, 4)
NONPRINCIPAL = BinaryQuadraticForm(2, 1, 2)
DIAG_1_15 = BinaryQuadraticForm(1, 0, 15)
DIAG_3_5 = BinaryQuadraticForm(3, 0, 5)
DISC15_FORMS = (DIAG_1_15, DIAG_3_5, PRINCIPAL, NONPRINCIPAL)


def rep_count(Q: BinaryQuadraticForm, n: int) -> int:
    """Number of integer pairs with ``Q(m, k) = n``."""
    if n < 0:
        return 0
    return len(Q.solutions(n))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    i = 17
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def ap_values(p: int) -> list[int]:
    """``A_p`` from every representation of ``p``; empty when ``(p/15) = -1``."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p in (3, 5):
        raise DomainError("3 and 5 are bad primes")
    r = p % 15
    if r in (1, 4):
        return [2 * x * x - 7 * y * y + 2 * x * y for x, y in PRINCIPAL.solutions(p)]
    if r in (2, 8):
        return [x * x + 8 * x * y + y * y for x, y in NONPRINCIPAL.solutions(p)]
    return []


def ap_closed_form(p: int) -> int:
    """Hecke eigenvalue at ``p`` of the level-15 weight-3 newform, from one representation.

    For ``p = 1, 4 (mod 15)`` solve ``x^2 + xy + 4y^2 = p``, for
    ``p = 2, 8 (mod 15)`` solve ``2x^2 + xy + 2y^2 = p``.  Inert primes
    (residues 7, 11, 13, 14) get 0.
    """
    vals = ap_values(p)
    if p % 15 in (7, 11, 13, 14):
        return 0
    if not vals:
        raise ConsistencyError(f"no representation of {p} in its required class")
    if len(set(vals)) != 1:
        raise ConsistencyError(f"A_{p} depends on the chosen solution: {sorted(set(vals))}")
    return vals[0]


def coeff_A1(n: int) -> int | Fraction:
    """Coefficient of ``q^n`` in ``f1 + f2``.

    ``f1 = 1/2 sum (5k^2 - 3m^2) q^(3m^2+5k^2)`` and
    ``f2 = 1/2 sum (m^2 - 15k^2) q^(m^2+15k^2)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for m, k in DIAG_3_5.solutions(n):
        total += 5 * k * k - 3 * m * m
    for m, k in DIAG_1_15.solutions(n):
        total += m * m - 15 * k * k
    val = Fraction(total, 2)
    return int(val) if val.denominator == 1 else val
