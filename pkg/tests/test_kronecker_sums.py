import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from k3mahler.errors import DomainError
from k3mahler.kronecker_sums import (DIRICHLET_PREFACTOR, Q3_TERMS, TAU0, D_form, D_numeric,
                                     KroneckerSumSpec, _bracket, check_Dj_identities, eta_numeric, k_of_t,
                                     kernel_K, kernel_K_complex, m_lattice, m_lattice_profile,
                                     max_Dj_residual, split_prop31, t_of_tau)
from k3mahler.lfunctions import epstein_Q
from k3mahler.quadforms import DIAG_1_15, DIAG_3_5, NONPRINCIPAL, PRINCIPAL


def test_tau0():
    assert TAU0 == complex(-3 / 24, math.sqrt(15) / 24)
    assert abs(TAU0) ** 2 == pytest.approx(1 / 24, rel=1e-15)


def test_spec_validation():
    with pytest.raises(DomainError):
        KroneckerSumSpec(complex(0.1, -1.0))
    assert KroneckerSumSpec.q3().terms == Q3_TERMS


def test_single_term_kernel():
    f = _bracket(1, 1j)
    assert f(np.array([0]), np.array([1]))[0] == pytest.approx(3.0)


def test_kernel_real():
    z = kernel_K_complex(1, TAU0, 60)
    assert abs(z.imag) < 1e-12 * abs(z.real)
    assert z.real == kernel_K(1, TAU0, 60)


def test_scale_absorption():
    for j in (2, 3, 6):
        a = kernel_K(j, TAU0, 30)
        b = kernel_K(1, j * TAU0, 30)
        assert a == pytest.approx(b, rel=1e-14)


def test_zero_weights():
    spec = KroneckerSumSpec(TAU0, tuple((j, 0) for j, _ in Q3_TERMS), R=20)
    assert m_lattice(spec).value == 0.0


def test_lattice_value(lattice1000, target):
    assert abs(lattice1000.value - target) < 1e-4
    assert abs(lattice1000.extrapolated - target) < 1e-9
    assert lattice1000.imag_residual < 1e-12 * abs(lattice1000.value)
    assert abs(lattice1000.value - target) < lattice1000.tail_bound


def test_shell_monotonicity():
    prof = m_lattice_profile(KroneckerSumSpec.q3(800), [100, 200, 400, 800])
    d = [abs(prof[b] - prof[a]) for a, b in ((100, 200), (200, 400), (400, 800))]
    assert d[0] > d[1] > d[2]


def test_profile_matches_direct():
    prof = m_lattice_profile(KroneckerSumSpec.q3(), [50, 120])
    assert prof[120] == pytest.approx(m_lattice(KroneckerSumSpec.q3(120)).value, abs=1e-15)


def test_split(split1500, target):
    sp = split1500
    assert abs(sp.modular_part) < 1e-6
    assert abs(sp.dirichlet_part - target) < 1e-5
    assert sp.total == sp.modular_part + sp.dirichlet_part


def test_split_matches_lattice_route(split1500):
    v = m_lattice(KroneckerSumSpec.q3(1500))
    assert abs(v.value - split1500.total) < 5e-6


def test_dirichlet_part_vs_epstein(split1500):
    e = {Q: epstein_Q(Q, 2).value for Q in (DIAG_1_15, DIAG_3_5, NONPRINCIPAL, PRINCIPAL)}
    ref = DIRICHLET_PREFACTOR * (e[DIAG_1_15] - e[DIAG_3_5] + e[NONPRINCIPAL] - e[PRINCIPAL])
    assert abs(split1500.dirichlet_part + split1500.dirichlet_tail_estimate - ref) < 1e-9


def test_D_examples():
    assert D_numeric(1, 1, 0) == pytest.approx(1 / 24, rel=1e-14)
    assert D_form(1, 1, 0) == Fraction(1, 24)
    for j, scale in ((1, 24), (2, 6), (3, 8), (6, 2)):
        # the shifted form itself takes the value ``scale`` at (m, k) = (0, 1)
        assert D_form(j, 0, 1) * scale == scale
        assert D_numeric(j, 0, 1) == pytest.approx(1.0)


def test_D_identities():
    assert check_Dj_identities(10_000, seed=5)
    assert max_Dj_residual(10_000, seed=6) < 1e-12


def test_eta_values():
    ref = float(mpmath.gamma(0.25) / (2 * mpmath.pi ** 0.75))
    assert abs(eta_numeric(1j) - ref) < 1e-14
    e2 = eta_numeric(2j)
    assert e2.imag == 0 and e2.real > 0
    assert eta_numeric(TAU0) != 0
    with pytest.raises(DomainError):
        eta_numeric(0.3)


def test_cm_point():
    t = t_of_tau(TAU0, 60)
    assert abs(k_of_t(t) - (-3)) < 1e-8
    assert abs(t - cmath.exp(-1j * math.pi / 3)) < 1e-12


def test_k_of_t():
    assert k_of_t(1) == -4
    rng = np.random.default_rng(3)
    for z in rng.normal(size=5) + 1j * rng.normal(size=5):
        assert k_of_t(z) == pytest.approx(k_of_t(1 / z), rel=1e-13)
    with pytest.raises(DomainError):
        k_of_t(0)


def test_split_deterministic_threads():
    a, b = split_prop31(200, threads=1), split_prop31(200, threads=4)
    assert a == b
