import math

import mpmath
import numpy as np
import pytest
from sympy import kronecker_symbol

from k3mahler.errors import DomainError
from k3mahler.lfunctions import (L5_closed_form, QuadraticCharacter, a60_table, d3, dirichlet_L, epstein_Q,
                                 is_fundamental, kronecker, lemma34_sides, verify_even_odd_split,
                                 verify_lemma34, verify_zucker_robertson, zeta)
from k3mahler.qseries import a_minus60
from k3mahler.quadforms import NONPRINCIPAL, PRINCIPAL, BinaryQuadraticForm

# sign patterns of L_{-60} over one period of 60 and of L_{-15} over one period of 15
L60_PLUS = {1, 17, 19, 23, 31, 47, 49, 53}
L60_MINUS = {7, 11, 13, 29, 37, 41, 43, 59}
L15_PLUS = {1, 2, 4, 8}
L15_MINUS = {7, 11, 13, 14}


def test_kronecker_examples():
    assert kronecker(-15, 2) == 1
    assert kronecker(-15, 7) == -1
    assert kronecker(-60, 7) == -1


@pytest.mark.parametrize("d", [-3, -4, 5, -15, -60, 12, -7, 8])
def test_kronecker_vs_sympy(d):
    for n in range(1, 400):
        assert kronecker(d, n) == kronecker_symbol(d, n), (d, n)


@pytest.mark.parametrize("d", [-3, 5, -15, -60])
def test_character_properties(d):
    chi = QuadraticCharacter(d)
    for m in range(1, 80):
        assert (chi(m) == 0) == (math.gcd(m, d) > 1)
        assert chi(m + abs(d)) == chi(m)
        for n in range(1, 40):
            assert chi(m * n) == chi(m) * chi(n)


def test_fundamental():
    assert all(is_fundamental(d) for d in (-3, -4, 5, -15, 12))
    assert not is_fundamental(-60)
    with pytest.raises(DomainError):
        QuadraticCharacter(4)


def test_character_sign_patterns():
    for n in range(1, 61):
        r60 = n % 60
        want60 = 1 if r60 in L60_PLUS else -1 if r60 in L60_MINUS else 0
        assert kronecker(-60, n) == want60, n
        r15 = n % 15
        want15 = 1 if r15 in L15_PLUS else -1 if r15 in L15_MINUS else 0
        assert kronecker(-15, n) == want15, n


def test_chi60_is_chi15_on_odd():
    for n in range(1, 1001, 2):
        assert kronecker(-60, n) == kronecker(-15, n)


@pytest.mark.parametrize("d,s", [(-3, 2), (5, 2), (-15, 2), (-60, 2), (-15, 3.5), (-4, 2)])
def test_dirichlet_vs_mpmath(d, s):
    chi = QuadraticCharacter(d)
    ref = float(mpmath.dirichlet(s, [chi(n) for n in range(chi.period)]))
    val = dirichlet_L(chi, s)
    assert abs(val.value - ref) < 1e-12
    assert val.tail_bound <= 1e-12


def test_L5_closed_form():
    assert abs(dirichlet_L(5, 2).value - L5_closed_form()) < 1e-10
    assert L5_closed_form() == pytest.approx(0.706211403259741, abs=1e-14)


def test_domain_errors():
    with pytest.raises(DomainError):
        dirichlet_L(-3, 1.0)
    with pytest.raises(DomainError):
        zeta(0.5)


def test_zeta():
    assert abs(zeta(2).value - math.pi ** 2 / 6) < 1e-12
    assert abs(zeta(4).value - math.pi ** 4 / 90) < 1e-12
    assert abs(zeta(2.5).value - float(mpmath.zeta(2.5))) < 1e-12


def test_d3():
    v = d3()
    assert v.value == pytest.approx(0.3230659472194505, abs=1e-13)
    L3 = dirichlet_L(-3, 2).value
    assert 4 * math.pi * v.value / (3 * math.sqrt(3)) == pytest.approx(L3, rel=1e-15)


def test_epstein_gaussian():
    ref = 4 * zeta(2).value * dirichlet_L(-4, 2).value
    v = epstein_Q(BinaryQuadraticForm(1, 0, 1), 2)
    assert abs(v.value - ref) < 1e-9
    assert abs(v.value - 6.0268120396919) < 1e-9
    assert isinstance(v.value, float)


def test_epstein_class_number_two():
    for s in (2, 2.5, 3):
        lhs = epstein_Q(NONPRINCIPAL, s).value + epstein_Q(PRINCIPAL, s).value
        rhs = 2 * zeta(s).value * dirichlet_L(-15, s).value
        assert abs(lhs - rhs) < 1e-9


def test_epstein_principal_form():
    rhs = zeta(2).value * dirichlet_L(-15, 2).value + dirichlet_L(-3, 2).value * dirichlet_L(5, 2).value
    assert abs(epstein_Q(PRINCIPAL, 2).value - rhs) < 1e-9


def test_epstein_tail_doubling():
    Q = BinaryQuadraticForm(3, 0, 5)
    for R in (20, 40):
        a, b = epstein_Q(Q, 2, R=R), epstein_Q(Q, 2, R=2 * R)
        assert abs(a.value - b.value) < a.tail_bound


def test_epstein_rejects_indefinite():
    with pytest.raises(DomainError):
        epstein_Q(BinaryQuadraticForm(1, 3, 1), 2)


@pytest.mark.parametrize("item", [1, 2, 3, 4])
def test_lemma34_s2(item):
    assert verify_lemma34(item, 2.0) < 1e-9


def test_lemma34_s3():
    assert verify_lemma34(2, 3.0) < 1e-10
    c = lemma34_sides(2, 3.0)
    assert c.residual == abs(c.lhs - c.rhs)


@pytest.mark.parametrize("s,tol", [(2.0, 1e-9), (2.5, 1e-9), (4.0, 1e-11)])
def test_zucker_robertson(s, tol):
    assert verify_zucker_robertson(s) < tol


@pytest.mark.parametrize("s,tol", [(2.0, 1e-8), (3.0, 1e-10)])
def test_even_odd_split(s, tol):
    assert verify_even_odd_split(s).max() < tol


def test_a60_table_is_half_char_pattern():
    # a_n(-60)/2 is chi_{-15}(n), negated for n = 2 mod 4
    for n in range(1, 241):
        c = kronecker(-15, n)
        assert a_minus60(n) == 2 * (-c if n % 4 == 2 else c)
    assert sum(a60_table()) == 0


def test_mellin_partial_sums():
    s = 2.0
    target = (1 + 2 ** (1 - 2 * s) - 2 ** (1 - s)) * dirichlet_L(-15, s).value
    a = np.array([a_minus60(n) for n in range(1, 801)], dtype=float)
    partial = 0.5 * np.cumsum(a / np.arange(1, 801) ** s)
    env = [np.max(np.abs(partial[N - 1:2 * N - 1] - target)) for N in (100, 200, 400)]
    assert env[0] > env[1] > env[2]
