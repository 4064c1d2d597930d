"""Truncated q-expansions with exact coefficients.

A :class:`QSeries` stands for ``q^(prefactor24/24) * sum_{j<N} a_j q^j``.
Coefficients are Python ints (or Fractions once a fractional exponent is
differentiated), so every identity checked on them is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .quadforms import BinaryQuadraticForm

DEFAULT_ORDER = 256
_INT64_SAFE = 1 << 62


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, (np.integer,)):
        return int(c)
    return c


def _int64_ok(coeffs) -> bool:
    return all(isinstance(c, int) for c in coeffs)


def _mul_coeffs(a: Sequence, b: Sequence, n: int) -> list:
    """First ``n`` coefficients of the product of two coefficient lists."""
    a, b = list(a[:n]), list(b[:n])
    if not a or not b:
        return [0] * n
    nz_a = [i for i, x in enumerate(a) if x]
    nz_b = [i for i, x in enumerate(b) if x]
    if not nz_a or not nz_b:
        return [0] * n
    if len(nz_a) > len(nz_b):
        a, b, nz_a, nz_b = b, a, nz_b, nz_a
    if _int64_ok(a) and _int64_ok(b):
        ma = max(abs(a[i]) for i in nz_a)
        mb = max(abs(b[i]) for i in nz_b)
        if ma * mb * len(nz_a) < _INT64_SAFE:
            dense = np.zeros(n, dtype=np.int64)
            dense[: len(b)] = b
            out = np.zeros(n, dtype=np.int64)
            for i in nz_a:
                if i >= n:
                    break
                out[i:] += a[i] * dense[: n - i]
            return [int(x) for x in out]
    out = [0] * n
    for i in nz_a:
        ai = a[i]
        for j in nz_b:
            if i + j >= n:
                break
            out[i + j] += ai * b[j]
    return [_norm(x) for x in out]


@dataclass(frozen=True)
class QSeries:
    prefactor24: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_norm(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a QSeries needs at least one coefficient")

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def reach24(self) -> int:
        """Exponent (times 24) of the first unknown term."""
        return self.prefactor24 + 24 * self.N

    @classmethod
    def one(cls, N: int) -> "QSeries":
        return cls(0, (1,) + (0,) * (N - 1))

    def truncate(self, N: int) -> "QSeries":
        if N > self.N:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.prefactor24, self.coeffs[:N])

    def coefficient(self, exponent) -> int | Fraction:
        """Coefficient of ``q**exponent`` (absolute exponent)."""
        j = Fraction(exponent) - Fraction(self.prefactor24, 24)
        if j.denominator != 1:
            return 0
        j = int(j)
        if j >= self.N:
            raise IndexError(f"q^{exponent} lies beyond the truncation order")
        return self.coeffs[j] if j >= 0 else 0

    def absolute(self) -> dict[int, int | Fraction]:
        """Map ``n -> a_n`` for integral absolute exponents ``n`` below the reach."""
        if self.prefactor24 % 24:
            raise ValueError("series has a fractional leading exponent")
        s = self.prefactor24 // 24
        return {s + j: c for j, c in enumerate(self.coeffs)}

    def as_list(self, N: int) -> list:
        """``[a_0, ..., a_{N-1}]`` of the absolute expansion (zeros below the prefactor)."""
        d = self.absolute()
        top = self.prefactor24 // 24 + self.N
        if N > top:
            raise IndexError(f"series only known below q^{top}")
        return [d.get(n, 0) for n in range(N)]

    # -- arithmetic ----------------------------------------------------------

    def _align(self, other: "QSeries") -> tuple[int, list, list]:
        diff = other.prefactor24 - self.prefactor24
        if diff % 24:
            raise ValueError("cannot add series whose exponents differ by a non-integer")
        lo = min(self.prefactor24, other.prefactor24)
        reach = min(self.reach24, other.reach24)
        n = (reach - lo) // 24
        a = [0] * n
        b = [0] * n
        for tgt, src in ((a, self), (b, other)):
            off = (src.prefactor24 - lo) // 24
            for j, c in enumerate(src.coeffs):
                if off + j < n:
                    tgt[off + j] = c
        return lo, a, b

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, (other,) + (0,) * max(0, self.reach24 // 24 - 1))
        if not isinstance(other, QSeries):
            return NotImplemented
        lo, a, b = self._align(other)
        return QSeries(lo, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.prefactor24, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.prefactor24, [c * other for c in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.N, other.N)
        return QSeries(self.prefactor24 + other.prefactor24, _mul_coeffs(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the leading coefficient must be +-1."""
        a = self.coeffs
        if a[0] not in (1, -1):
            raise ValueError("inversion requires leading coefficient +-1")
        nz = [i for i in range(1, self.N) if a[i]]
        b = [0] * self.N
        b[0] = a[0]
        for n in range(1, self.N):
            s = 0
            for k in nz:
                if k > n:
                    break
                s += a[k] * b[n - k]
            b[n] = -s * a[0]
        return QSeries(-self.prefactor24, b)

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = QSeries(0, (1,) + (0,) * (self.N - 1))
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prefactor24 == other.prefactor24 and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prefactor24, self.coeffs))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.N > 8 else ""
        return f"QSeries(q^({self.prefactor24}/24) * [{head}{more}], N={self.N})"


@dataclass(frozen=True)
class WeightedForm:
    series: QSeries
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))

    def __mul__(self, other: "WeightedForm") -> "WeightedForm":
        return WeightedForm(self.series * other.series, self.weight + other.weight)


# -- constructors -------------------------------------------------------------

def pentagonal_coeffs(N: int, j: int = 1) -> list[int]:
    """Coefficients of ``prod_{n>=1} (1 - q^(j n))`` below ``q^N`` (Euler)."""
    out = [0] * N
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = j * kk * (3 * kk - 1) // 2
            if e < N:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return out


def eta_qexp(j: int, N: int) -> QSeries:
    """``eta(j*tau)`` in ``q = exp(2 pi i tau)``: prefactor ``q^(j/24)``."""
    if j < 1 or N < 1:
        raise ValueError("need j >= 1 and N >= 1")
    return QSeries(j, pentagonal_coeffs(N, j))


ETA_G = ((1, 1), (3, 1), (5, 1), (15, 1))
ETA_T = ((3, 4), (12, 8), (2, 12), (1, -4), (4, -8), (6, -12))


def eta_product(spec: Iterable[tuple[int, int]], N: int) -> QSeries:
    """``prod eta(j tau)^e`` for ``(j, e)`` in ``spec``."""
    out = QSeries.one(N)
    for j, e in spec:
        if e:
            out = out * (eta_qexp(j, N) ** e)
    return out


def theta_one_var(a: int, N: int) -> WeightedForm:
    """``sum_{n in Z} q^(a n^2)``, weight 1/2."""
    if a < 1 or N < 1:
        raise ValueError("need a >= 1 and N >= 1")
    c = [0] * N
    c[0] = 1
    n = 1
    while a * n * n < N:
        c[a * n * n] += 2
        n += 1
    return WeightedForm(QSeries(0, c), Fraction(1, 2))


def theta_bqf(Q: BinaryQuadraticForm, N: int) -> QSeries:
    """``sum_{(m,n)} q^Q(m,n)``: coefficient of ``q^k`` is ``r_Q(k)``."""
    counts = Q.value_counts(N)
    return QSeries(0, [int(x) for x in counts])


def q_derivative(f: QSeries) -> QSeries:
    """``q d/dq``; the term ``q^(j + p/24)`` picks up the factor ``j + p/24``."""
    shift = Fraction(f.prefactor24, 24)
    return QSeries(f.prefactor24, [(j + shift) * c for j, c in enumerate(f.coeffs)])


def rankin_cohen(g: WeightedForm, h: WeightedForm, literal: bool = False) -> WeightedForm:
    """First Rankin-Cohen bracket of forms of weights ``k`` and ``l``.

    The default orientation is ``l g' h - k g h'``, the one matching the
    expansions of ``f1`` and ``f2`` used for the trace comparison; with
    ``literal=True`` the opposite sign ``k g h' - l g' h`` is returned.
    """
    k, l = g.weight, h.weight
    n = min(g.series.N, h.series.N)
    G, H = g.series.truncate(n), h.series.truncate(n)
    out = q_derivative(G) * H * l - G * q_derivative(H) * k
    if literal:
        out = -out
    return WeightedForm(out, k + l + 2)


def f1_qexp(N: int) -> WeightedForm:
    return rankin_cohen(theta_one_var(5, N), theta_one_var(3, N))


def f2_qexp(N: int) -> WeightedForm:
    return rankin_cohen(theta_one_var(1, N), theta_one_var(15, N))


def g_qexp(N: int) -> QSeries:
    """``eta(z) eta(3z) eta(5z) eta(15z)`` with ``N`` relative coefficients."""
    return eta_product(ETA_G, N)


def fplus_qexp(N: int) -> QSeries:
    """Weight-3 newform ``g * theta_{(1,1,4)}`` known for all ``q^n`` with ``n < N``."""
    if N < 2:
        raise ValueError("need N >= 2")
    g = g_qexp(N - 1)
    th = theta_bqf(BinaryQuadraticForm(1, 1, 4), N - 1)
    return g * th


def t_qexp(N: int) -> QSeries:
    return eta_product(ETA_T, N)


def lambert_expand(a: Callable[[int], int | Fraction], N: int) -> QSeries:
    """``sum_{n>=1} a(n) q^n / (1 - q^n)`` below ``q^N``."""
    if N < 1:
        raise ValueError("need N >= 1")
    c = [0] * N
    for n in range(1, N):
        an = a(n)
        if an:
            for m in range(n, N, n):
                c[m] += an
    return QSeries(0, c)


# a_n(-60) residue table mod 60; residues sharing a factor with 15 give 0
_A60_PLUS = frozenset({1, 4, 8, 14, 16, 17, 19, 22, 23, 26, 31, 32, 47, 49, 53, 58})
_A60_MINUS = frozenset({2, 7, 11, 13, 28, 29, 34, 37, 38, 41, 43, 44, 46, 52, 56, 59})


def a_minus60(n: int) -> int:
    r = n % 60
    if r in _A60_PLUS:
        return 2
    if r in _A60_MINUS:
        return -2
    return 0


def theta_identity_lhs(N: int) -> QSeries:
    """``phi(q) phi(q^15) + phi(q^3) phi(q^5) - 2``."""
    th = {a: theta_one_var(a, N).series for a in (1, 3, 5, 15)}
    return th[1] * th[15] + th[3] * th[5] - 2


FORMS = {
    "eta": lambda N: eta_qexp(1, N),
    "g": g_qexp,
    "theta1": lambda N: theta_bqf(BinaryQuadraticForm(1, 1, 4), N),
    "fplus": fplus_qexp,
    "f1": lambda N: f1_qexp(N).series,
    "f2": lambda N: f2_qexp(N).series,
    "t": t_qexp,
}
