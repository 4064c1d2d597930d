"""Effective test sets and the trace comparison between ``f1 + f2`` and ``f+``.

Traces of Frobenius are represented by coefficient sequences: ``A1(p)`` is
the ``q^p`` coefficient of ``f1 + f2`` and ``A2(p)`` that of ``f+``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ConsistencyError, DomainError
from .lfunctions import kronecker
from .quadforms import _is_prime, ap_closed_form, coeff_A1
from .qseries import fplus_qexp

DEFAULT_S = (3, 5)
DEFAULT_T = (7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 53, 61, 71, 73, 83)


@dataclass(frozen=True)
class TestSetConfig:
    S: tuple[int, ...] = DEFAULT_S
    T: tuple[int, ...] = DEFAULT_T

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(sorted(set(self.S))))
        object.__setattr__(self, "T", tuple(sorted(set(self.T))))
        if set(self.S) & set(self.T):
            raise ValueError("T must be disjoint from S")
        if 2 in self.T:
            raise ValueError("2 cannot belong to T")
        for p in self.S + self.T:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")

    @property
    def Sprime(self) -> tuple[int, ...]:
        return (-1,) + self.S


def fs_vector(t: int, config: TestSetConfig = TestSetConfig()) -> tuple[int, ...]:
    """``((1 + (s/t)) / 2)_{s in S'}`` for an odd prime ``t`` outside ``S``."""
    if t == 2:
        raise DomainError("t must be odd")
    if not _is_prime(t):
        raise DomainError(f"{t} is not prime")
    if t in config.S:
        raise DomainError(f"{t} lies in S")
    return tuple((1 + kronecker(s, t)) // 2 for s in config.Sprime)


@dataclass(frozen=True)
class CoverageReport:
    S: tuple[int, ...]
    T: tuple[int, ...]
    attained: dict = field(default_factory=dict)   # vector -> primes of T mapping to it
    missing: tuple = ()

    @property
    def n_nonzero(self) -> int:
        return 2 ** (len(self.S) + 1) - 1

    @property
    def effective(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {
            "S": list(self.S), "Sprime": [-1] + list(self.S), "T": list(self.T),
            "nonzero_vectors": self.n_nonzero,
            "attained_nonzero": self.n_nonzero - len(self.missing),
            "attained": {"".join(map(str, v)): ps for v, ps in sorted(self.attained.items())},
            "missing": ["".join(map(str, v)) for v in self.missing],
            "effective": self.effective,
        }


def verify_effective_test_set(config: TestSetConfig = TestSetConfig()) -> CoverageReport:
    """Check that the image of ``T`` covers every nonzero vector of ``(Z/2)^(r+1)``."""
    attained: dict[tuple, list[int]] = {}
    for t in config.T:
        attained.setdefault(fs_vector(t, config), []).append(t)
    dim = len(config.S) + 1
    missing = tuple(v for v in itertools.product((0, 1), repeat=dim) if any(v) and v not in attained)
    return CoverageReport(config.S, config.T, attained, missing)


@dataclass(frozen=True)
class TraceRow:
    p: int
    A1: int
    A2: int

    @property
    def equal(self) -> bool:
        return self.A1 == self.A2


def _fplus_coeffs(max_p: int) -> dict:
    return fplus_qexp(max_p + 1).absolute()


def trace_rows(primes: Iterable[int]) -> list[TraceRow]:
    primes = sorted(primes)
    if not primes:
        return []
    b = _fplus_coeffs(primes[-1])
    rows = []
    for p in primes:
        closed = ap_closed_form(p)
        if closed != b[p]:
            raise ConsistencyError(f"A2({p}): closed form {closed} != q-expansion {b[p]}")
        rows.append(TraceRow(p, coeff_A1(p), closed))
    return rows


def trace_table(config: TestSetConfig = TestSetConfig()) -> list[TraceRow]:
    return trace_rows(config.T)


def format_table(rows: list[TraceRow]) -> str:
    """Row/column layout with primes across the top."""
    header = ["p"] + [str(r.p) for r in rows]
    r1 = ["A_1(p)"] + [str(r.A1) for r in rows]
    r2 = ["A_2(p)"] + [str(r.A2) for r in rows]
    widths = [max(len(a), len(b), len(c)) for a, b, c in zip(header, r1, r2)]
    fmt = lambda cells: " | ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(cells, widths)))
    line = "-+-".join("-" * w for w in widths)
    return "\n".join([fmt(header), line, fmt(r1), fmt(r2)])


@dataclass(frozen=True)
class ParityReport:
    max_p: int
    checked: tuple[int, ...]
    failures: tuple[tuple[int, str], ...]

    def __bool__(self) -> bool:
        return not self.failures


def parity_checks(max_p: int) -> ParityReport:
    """Both trace sequences even at every prime ``7 <= p <= max_p``; determinants agree mod 2.

    The determinant of Frobenius is ``(p/15) p^2`` on both sides (same
    nebentypus, same weight), so its parity check reduces to ``p`` odd and
    ``(p/15) = +-1``.
    """
    if max_p < 7:
        raise ValueError("max_p must be >= 7")
    primes = [p for p in range(7, max_p + 1) if _is_prime(p)]
    b = _fplus_coeffs(max_p)
    failures = []
    for p in primes:
        a1, a2 = coeff_A1(p), b[p]
        if a1 % 2:
            failures.append((p, f"A1={a1} odd"))
        if a2 % 2:
            failures.append((p, f"A2={a2} odd"))
        chi = kronecker(-15, p)
        if chi not in (1, -1) or (chi * p * p) % 2 != 1:
            failures.append((p, "determinant parity"))
    return ParityReport(max_p, tuple(primes), tuple(failures))
