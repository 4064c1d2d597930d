import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3mahler.errors import DomainError
from k3mahler.laurent import LaurentPolynomial, build_P0, build_Qk, parse, resolve


def test_qk_examples():
    q = build_Qk(-3)
    assert len(q.terms) == 13
    assert q.coefficient((0, 0, 0)) == 3
    q0 = build_Qk(0)
    assert len(q0.terms) == 12 and q0.coefficient((0, 0, 0)) == 0
    assert q.eval((1, 1, 1)) == 15


def test_qk_rational_parameter():
    q = build_Qk(Fraction(1, 2))
    assert q.coefficient((0, 0, 0)) == Fraction(-1, 2)


def test_p0_values():
    p = build_P0()
    assert p.eval((1, 1, 1)) == 6
    assert p.eval((-1, -1, -1)) == -6
    assert abs(p.eval((1j, 1, 1)) - 4) < 1e-15


def test_eval_examples():
    p = parse("X + X^-1")
    for th in (0.1, 1.3, 2.9):
        assert abs(p.eval((cmath.exp(1j * th),)) - 2 * math.cos(th)) < 1e-15
    assert parse("X*Y*Z").eval((1j, 1j, 1j)) == pytest.approx(-1j)


def test_zero_coordinate_rejected():
    with pytest.raises(DomainError):
        build_P0().eval((0, 1, 1))


def test_slices():
    coeffs, lo = build_Qk(-3).slice_univariate((1, 1), 2)
    assert lo == -1 and np.allclose(coeffs, [3, 9, 3])
    x, y = cmath.exp(0.7j), cmath.exp(-2.1j)
    coeffs, lo = build_P0().slice_univariate((x, y), 2)
    s = x + 1 / x + y + 1 / y
    assert lo == -1 and np.allclose(coeffs, [1, s, 1])
    coeffs, lo = parse("X").slice_univariate((), 0)
    assert lo == 1 and np.allclose(coeffs, [1])


def test_inversion_symmetry():
    for k in (-3, 0, 7, Fraction(2, 3)):
        q = build_Qk(k)
        assert q.inverted() == q


def test_canonical_printer_roundtrip():
    for p in (build_P0(), build_Qk(-3), parse("1/2*X^-3*Y + 3 - Y^2")):
        assert parse(str(p), p.variables) == p


def test_parse_reciprocal_factors():
    assert parse("X + 1/X + Y + 1/Y + Z + 1/Z") == build_P0()
    assert parse("3/X^2*Y") == parse("3*X^-2*Y")


def test_resolve_presets():
    assert resolve("P0") == build_P0()
    assert resolve("Q-3") == build_Qk(-3)
    assert resolve("Qk:5") == build_Qk(5)


def test_span_and_ordering():
    q = build_Qk(-3)
    assert [q.span(i) for i in range(3)] == [2, 2, 2]
    assert list(q.terms) == sorted(q.terms)


monomial = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
poly2 = st.dictionaries(monomial, st.integers(-5, 5).filter(bool), min_size=1, max_size=5).map(
    lambda d: LaurentPolynomial(2, d))
angle = st.floats(0, 2 * math.pi, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(poly2, poly2, angle, angle)
def test_eval_multiplicative(p, q, a, b):
    pt = (cmath.exp(1j * a), cmath.exp(1j * b))
    lhs = (p * q).eval(pt)
    rhs = p.eval(pt) * q.eval(pt)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))


@settings(max_examples=60, deadline=None)
@given(poly2, angle, angle, st.integers(0, 1))
def test_slice_matches_eval(p, a, b, which):
    pt = [cmath.exp(1j * a), cmath.exp(1j * b)]
    other = pt[1 - which]
    coeffs, lo = p.slice_univariate((other,), which)
    z = pt[which]
    val = sum(c * z ** (lo + i) for i, c in enumerate(coeffs))
    ref = p.eval(pt)
    assert abs(val - ref) <= 1e-12 * (1 + abs(ref))
