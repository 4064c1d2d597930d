"""Sparse Laurent polynomials with exact rational coefficients.

Exponent vectors are stored as fixed-length tuples and iterated in
lexicographic order, so printing, hashing and evaluation order are all
deterministic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError

Exponent = tuple[int, ...]

DEFAULT_NAMES = ("X", "Y", "Z")


def _default_names(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"X{i + 1}" for i in range(n))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """``sum c_e * x^e`` over a finite set of integer exponent vectors ``e``."""

    dimension: int
    _terms: tuple[tuple[Exponent, Fraction], ...] = field(repr=False)
    variables: tuple[str, ...] = ()

    def __init__(self, dimension: int, terms: Mapping[Sequence[int], object] | Iterable = (),
                 variables: Sequence[str] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != dimension:
                raise ValueError(f"exponent {e} does not have length {dimension}")
            acc[e] = acc.get(e, Fraction(0)) + _as_fraction(c)
        cleaned = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        names = tuple(variables) if variables is not None else _default_names(dimension)
        if len(names) != dimension:
            raise ValueError("one variable name per dimension required")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "variables", names)

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, dimension: int, variables=None) -> "LaurentPolynomial":
        return cls(dimension, {(0,) * dimension: c}, variables)

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1, variables=None) -> "LaurentPolynomial":
        return cls(len(exponent), {tuple(exponent): c}, variables)

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(dict(self._terms))

    def items(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return dict(self._terms).get(tuple(exponent), Fraction(0))

    # -- algebra ------------------------------------------------------------

    def _check(self, other: "LaurentPolynomial") -> None:
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return LaurentPolynomial.constant(other, self.dimension, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(self.dimension, list(self._terms) + list(other._terms), self.variables)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.dimension, [(e, -c) for e, c in self._terms], self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = []
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                prod.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return LaurentPolynomial(self.dimension, prod, self.variables)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dimension, self._terms))

    def inverted(self) -> "LaurentPolynomial":
        """Image under ``x_i -> 1/x_i`` for every variable."""
        return LaurentPolynomial(self.dimension, [(tuple(-a for a in e), c) for e, c in self._terms],
                                 self.variables)

    def span(self, which: int) -> int:
        """Exponent span ``max - min`` of variable ``which``."""
        exps = [e[which] for e, _ in self._terms]
        return max(exps) - min(exps) if exps else 0

    # -- evaluation ---------------------------------------------------------

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence[complex]) -> complex:
        if len(point) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates, got {len(point)}")
        xs = [complex(x) for x in point]
        if any(x == 0 for x in xs):
            raise DomainError("Laurent polynomial evaluated at a zero coordinate")
        total = 0j
        for e, c in self._terms:
            term = complex(float(c))
            for x, a in zip(xs, e):
                if a:
                    term *= x ** a
            total += term
        return total

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorised evaluation; ``points`` has shape ``(..., dimension)``."""
        pts = np.asarray(points, dtype=complex)
        if pts.shape[-1] != self.dimension:
            raise ValueError("last axis must equal the dimension")
        if np.any(pts == 0):
            raise DomainError("Laurent polynomial evaluated at a zero coordinate")
        out = np.zeros(pts.shape[:-1], dtype=complex)
        for e, c in self._terms:
            term = np.full(pts.shape[:-1], float(c), dtype=complex)
            for i, a in enumerate(e):
                if a:
                    term = term * pts[..., i] ** a
            out += term
        return out

    def eval_angles(self, angles: np.ndarray) -> np.ndarray:
        """Evaluate at ``x_j = exp(i*angles[..., j])`` on the torus.

        Monomials are formed as ``exp(i * <e, angles>)`` which avoids
        repeated complex powers.
        """
        th = np.asarray(angles, dtype=float)
        out = np.zeros(th.shape[:-1], dtype=complex)
        for e, c in self._terms:
            phase = th @ np.asarray(e, dtype=float)
            out += float(c) * np.exp(1j * phase)
        return out

    def slice_univariate(self, fixed: Sequence[complex], which: int) -> tuple[list[complex], int]:
        """Substitute every variable but ``which`` and collect powers of it.

        Returns ``(coeffs, e_min)`` where ``coeffs[i]`` multiplies
        ``x_which ** (e_min + i)``. The exponent range is the full range of
        ``which`` in the term map, even if an end coefficient vanishes at
        this particular substitution.
        """
        if not 0 <= which < self.dimension:
            raise IndexError("variable index out of range")
        fixed = list(fixed)
        if len(fixed) != self.dimension - 1:
            raise ValueError(f"expected {self.dimension - 1} fixed values")
        if any(complex(x) == 0 for x in fixed):
            raise DomainError("fixed values must be nonzero")
        if not self._terms:
            return [], 0
        exps = [e[which] for e, _ in self._terms]
        lo, hi = min(exps), max(exps)
        coeffs = [0j] * (hi - lo + 1)
        for e, c in self._terms:
            val = complex(float(c))
            k = 0
            for i, a in enumerate(e):
                if i == which:
                    continue
                if a:
                    val *= complex(fixed[k]) ** a
                k += 1
            coeffs[e[which] - lo] += val
        return coeffs, lo

    def slice_coefficients(self, outer_angles: np.ndarray, which: int) -> tuple[np.ndarray, int]:
        """Vectorised :meth:`slice_univariate` on the torus.

        ``outer_angles`` has shape ``(..., dimension - 1)``; the result has
        shape ``(..., span + 1)`` with the lowest exponent returned alongside.
        """
        th = np.asarray(outer_angles, dtype=float)
        exps = [e[which] for e, _ in self._terms]
        lo, hi = min(exps), max(exps)
        out = np.zeros(th.shape[:-1] + (hi - lo + 1,), dtype=complex)
        for e, c in self._terms:
            rest = np.asarray(e[:which] + e[which + 1:], dtype=float)
            if rest.size:
                val = float(c) * np.exp(1j * (th @ rest))
            else:
                val = complex(float(c))
            out[..., e[which] - lo] += val
        return out, lo

    # -- text format --------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self._terms:
            factors = []
            for name, a in zip(self.variables, e):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.dimension}, '{self}')"


_FACTOR_NUM = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR_VAR = re.compile(r"^([A-Za-z]\w*)(?:\^\(?([+-]?\d+)\)?)?$")
_FACTOR_INV = re.compile(r"^(\d+)/([A-Za-z]\w*)(?:\^\(?([+-]?\d+)\)?)?$")   # 3/X^2


def _split_terms(text: str) -> list[str]:
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    terms, cur = [], ""
    for i, ch in enumerate(s):
        if ch in "+-" and cur and s[i - 1] not in "^(*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    return terms


def parse(text: str, variables: Sequence[str] | None = None) -> LaurentPolynomial:
    """Parse ``c*X^a*Y^b*...`` monomial sums, e.g. ``"X + 1/X + 3/2*Y*Z^-2 - 4"``."""
    raw = []
    seen: list[str] = []
    for tok in _split_terms(text):
        sign = 1
        while tok and tok[0] in "+-":
            sign = -sign if tok[0] == "-" else sign
            tok = tok[1:]
        if not tok:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        powers: dict[str, int] = {}
        for fac in tok.split("*"):
            if m := _FACTOR_NUM.match(fac):
                coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
            elif (m := _FACTOR_VAR.match(fac)) or (inv := _FACTOR_INV.match(fac)):
                if m:
                    name, e = m.group(1), int(m.group(2) or 1)
                else:
                    coeff *= int(inv.group(1))
                    name, e = inv.group(2), -int(inv.group(3) or 1)
                powers[name] = powers.get(name, 0) + e
                if name not in seen:
                    seen.append(name)
            else:
                raise ValueError(f"cannot parse factor {fac!r}")
        raw.append((coeff, powers))
    if variables is None:
        known = [v for v in DEFAULT_NAMES if v in seen]
        others = sorted(v for v in seen if v not in DEFAULT_NAMES)
        if others:
            variables = known + others
        else:
            # keep X,Y,Z prefix so that e.g. "Z + 1" is still 3-variate-compatible
            n = max((DEFAULT_NAMES.index(v) + 1 for v in known), default=1)
            variables = list(DEFAULT_NAMES[:n])
    variables = tuple(variables)
    unknown = set(seen) - set(variables)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    index = {v: i for i, v in enumerate(variables)}
    terms = []
    for coeff, powers in raw:
        e = [0] * len(variables)
        for name, a in powers.items():
            e[index[name]] += a
        terms.append((tuple(e), coeff))
    return LaurentPolynomial(len(variables), terms, variables)


_QK_MONOMIALS = [
    (1, 0, 0), (-1, 0, 0),
    (0, 1, 0), (0, -1, 0),
    (0, 0, 1), (0, 0, -1),
    (1, 1, 0), (-1, -1, 0),
    (0, 1, 1), (0, -1, -1),
    (1, 1, 1), (-1, -1, -1),
]


def build_Qk(k) -> LaurentPolynomial:
    """The 12-monomial family ``X + 1/X + ... + XYZ + 1/(XYZ) - k``."""
    terms = [(e, 1) for e in _QK_MONOMIALS]
    terms.append(((0, 0, 0), -_as_fraction(k)))
    return LaurentPolynomial(3, terms)


def build_P0() -> LaurentPolynomial:
    """``X + 1/X + Y + 1/Y + Z + 1/Z``."""
    return LaurentPolynomial(3, [(e, 1) for e in _QK_MONOMIALS[:6]])


PRESETS = {
    "P0": build_P0,
    "Q-3": lambda: build_Qk(-3),
}


def resolve(spec: str) -> LaurentPolynomial:
    """Resolve a CLI polynomial argument: preset name, ``Qk:<k>``, file path or literal."""
    import os

    if spec in PRESETS:
        return PRESETS[spec]()
    if spec.startswith("Qk:"):
        return build_Qk(Fraction(spec[3:]))
    if os.path.isfile(spec):
        with open(spec) as fh:
            return parse(fh.read())
    return parse(spec)
