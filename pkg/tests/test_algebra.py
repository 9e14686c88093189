import numpy as np
import pytest

from relwave.algebra import (
    GammaSet,
    PGI_NAMES,
    doublet_spin_set,
    gamma4,
    gamma_standard,
    gamma_tilde,
    kg_factorization_residual,
    pgi_invariance_check,
    pgi_operators,
    spin1_generators,
    verify_gamma_set,
)
from relwave.linalg_core import RealLinearOperator, rl_distance


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def test_standard_gammas_satisfy_clifford_relations():
    report = verify_gamma_set(gamma_standard())
    assert report.anticommutation <= 1e-14
    assert report.hermiticity <= 1e-14


def test_tilde_gammas_satisfy_clifford_relations():
    tilde = gamma_tilde()
    assert all(g.is_antilinear for g in tilde.gammas)
    assert verify_gamma_set(tilde).max_residual <= 1e-14
    with pytest.raises(ValueError):
        tilde.matrices


def test_scaled_gamma_breaks_anticommutation():
    g0, g1, g2, g3 = gamma_standard().matrices
    report = verify_gamma_set(GammaSet.from_matrices([g0, 2 * g1, g2, g3]))
    # {2g1, 2g1} = -8 I against -2 I
    assert report.anticommutation == pytest.approx(12.0)
    assert report.hermiticity == 0.0


def test_gamma_set_needs_four_operators():
    with pytest.raises(ValueError):
        GammaSet.from_matrices(gamma_standard().matrices[:3])


def test_gamma4_is_chirality():
    g0, g1, g2, g3 = gamma_standard().matrices
    g4 = gamma4()
    assert np.allclose(g4, 1j * g0 @ g1 @ g2 @ g3)
    assert np.allclose(g4 @ g4, np.eye(4))
    assert np.allclose(g4, g4.conj().T)
    for g in (g0, g1, g2, g3):
        assert np.allclose(g4 @ g + g @ g4, 0)


def test_kg_factorization(rng):
    for _ in range(100):
        p = rng.normal(scale=3.0, size=4)
        m = rng.uniform(0.0, 3.0)
        assert kg_factorization_residual(p, m) <= 1e-12 * (1.0 + p @ p + m * m)
    with pytest.raises(ValueError):
        kg_factorization_residual(np.ones(4), -1.0)
    with pytest.raises(ValueError):
        kg_factorization_residual(np.ones(3), 1.0)


def test_spin1_generators():
    s1, s2, s3 = spin1_generators()
    assert np.allclose(s1 @ s2 - s2 @ s1, 1j * s3)
    assert np.allclose(s1 @ s1 + s2 @ s2 + s3 @ s3, 2 * np.eye(3))


def test_doublet_spin_set():
    doublet = doublet_spin_set(charge_e=2.0)
    s3 = RealLinearOperator.linear(0.5 * np.diag([1, -1, -1, 1]))
    assert rl_distance(doublet.s[2], s3) == 0.0
    assert np.allclose(np.diag(doublet.charge_operator), [-2, -2, 2, 2])
    # C sigma C is linear, so every doublet spin component is
    assert all(s.is_linear for s in doublet.s)


def test_pgi_operators_are_symmetries(rng):
    ops = pgi_operators(gamma_standard())
    assert tuple(ops) == PGI_NAMES
    report = pgi_invariance_check(ops, trials=4, rng=rng)
    assert report.max_residual <= 1e-10
    assert report.failing(1e-10) == []


def test_gamma0_in_place_of_gamma4_breaks_invariance(rng):
    ops = pgi_operators(gamma_standard(), chirality=gamma_standard().matrices[0])
    report = pgi_invariance_check(ops, trials=4, rng=rng)
    assert report.max_residual > 1e-3
    assert "gamma4" in report.failing(1e-6)


def test_pgi_operators_need_4x4_gammas():
    small = GammaSet((RealLinearOperator.identity(2),) * 4)
    with pytest.raises(ValueError):
        pgi_operators(small)
