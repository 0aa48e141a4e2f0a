import math

import numpy as np
import pytest

from etapairing.exceptions import DomainError
from etapairing.field import (
    EntropyFit,
    HarmonicChainSpec,
    coupling_matrix,
    gaussian_block_entropy,
    ground_covariance,
    half_chain_entropy,
    mass_scan,
    mass_scan_fit,
    symplectic_eigenvalues,
)


def entropy_of(nu):
    return (nu + 0.5) * math.log(nu + 0.5) - (nu - 0.5) * math.log(nu - 0.5)


def chain_covariance(n, mass):
    return ground_covariance(coupling_matrix(HarmonicChainSpec(n, mass)))


def test_coupling_matrix_examples():
    np.testing.assert_allclose(
        coupling_matrix(HarmonicChainSpec(3, 1.0)),
        [[3, -1, 0], [-1, 3, -1], [0, -1, 3]],
    )
    np.testing.assert_allclose(coupling_matrix(HarmonicChainSpec(1, 2.0)), [[6]])
    np.testing.assert_allclose(
        coupling_matrix(HarmonicChainSpec(2, 1.0, spacing=0.5)),
        [[9, -4], [-4, 9]],
    )


def test_covariance_examples():
    cov = ground_covariance(np.eye(2))
    np.testing.assert_allclose(cov.x, np.eye(2) / 2)
    np.testing.assert_allclose(cov.p, np.eye(2) / 2)
    cov = ground_covariance(np.array([[4.0]]))
    assert cov.x[0, 0] == pytest.approx(0.25)
    assert cov.p[0, 0] == pytest.approx(1.0)


def test_ground_state_saturates_uncertainty():
    cov = chain_covariance(30, 0.2)
    np.testing.assert_allclose(cov.x @ cov.p, np.eye(30) / 4, atol=1e-12)
    np.testing.assert_allclose(symplectic_eigenvalues(cov), 0.5, atol=1e-9)


@pytest.mark.parametrize(
    "matrix",
    [
        np.array([[1.0, 2.0], [2.0, 1.0]]),
        np.array([[2.0, 1.0], [0.0, 2.0]]),
        np.ones(3),
    ],
)
def test_covariance_rejects_bad_coupling(matrix):
    with pytest.raises(DomainError):
        ground_covariance(matrix)


def test_decoupled_block_has_no_entropy():
    cov = ground_covariance(np.diag([1.0, 4.0]))
    assert gaussian_block_entropy(cov, [0]) == pytest.approx(0, abs=1e-12)


def test_two_oscillators():
    # normal modes (1, ±1)/√2 with ω = √2 and 2
    cov = ground_covariance(np.array([[3.0, -1.0], [-1.0, 3.0]]))
    x = 1 / (4 * math.sqrt(2)) + 1 / 8
    p = math.sqrt(2) / 4 + 1 / 2
    nu = math.sqrt(x * p)
    assert symplectic_eigenvalues(cov, [0]) == pytest.approx([nu])
    assert gaussian_block_entropy(cov, [0]) == pytest.approx(entropy_of(nu))
    assert gaussian_block_entropy(cov, [1]) == pytest.approx(entropy_of(nu))


def test_block_must_be_proper_subset():
    cov = chain_covariance(4, 0.5)
    for block in ([], range(4), [0, 4], [-1]):
        with pytest.raises(DomainError):
            gaussian_block_entropy(cov, block)


def test_complementary_blocks_agree():
    cov = chain_covariance(100, 0.1)
    rng = np.random.default_rng(11)
    for _ in range(20):
        size = int(rng.integers(1, 100))
        block = set(rng.choice(100, size=size, replace=False).tolist())
        rest = set(range(100)) - block
        assert gaussian_block_entropy(cov, block) == pytest.approx(
            gaussian_block_entropy(cov, rest), abs=1e-8
        )


def test_entropy_grows_as_mass_drops():
    heavy = half_chain_entropy(HarmonicChainSpec(200, 10.0))
    light = half_chain_entropy(HarmonicChainSpec(200, 0.01))
    assert light > heavy
    values = [half_chain_entropy(HarmonicChainSpec(100, m)) for m in (0.3, 0.1, 0.03)]
    assert values[0] < values[1] < values[2]


def test_small_blocks_need_no_clamping():
    cov = chain_covariance(50, 1e-3)
    for block in ([10, 11], [20, 21, 22], [0, 1, 2]):
        assert symplectic_eigenvalues(cov, block)[0] >= 0.5 - 1e-8
        assert gaussian_block_entropy(cov, block) > 0


def test_mass_scan_keeps_order():
    masses = [0.04, 0.01, 0.02, 0.005]
    samples = mass_scan(400, 1.0, masses, threads=3)
    assert [m for m, _ in samples] == masses
    entropies = dict(samples)
    assert entropies[0.005] > entropies[0.01] > entropies[0.02] > entropies[0.04]


def test_area_law_coefficient():
    fit = mass_scan_fit(400, 1.0, [0.005, 0.01, 0.02, 0.04], threads=2)
    assert fit.r_squared > 0.99
    assert 0.125 <= fit.slope <= 0.21
    assert fit.log_mass_squared_slope == pytest.approx(fit.slope / 2)
    assert len(fit.samples) == 4


@pytest.mark.parametrize(
    "masses",
    [
        [0.01, 0.02, 0.04],
        [0.02, 0.02, 0.02, 0.02],
        [0.001, 0.01, 0.02, 0.04],
        [0.01, 0.02, 0.04, 1.5],
    ],
)
def test_mass_scan_rejects_bad_masses(masses):
    with pytest.raises(DomainError):
        mass_scan_fit(400, 1.0, masses)


@pytest.mark.parametrize("args", [(0, 1.0), (5, 0.0), (5, -1.0), (5, 1.0, 0.0)])
def test_chain_spec_validation(args):
    with pytest.raises(DomainError):
        HarmonicChainSpec(*args)


def test_log_mass_squared_slope():
    fit = EntropyFit(samples=[], slope=0.2, intercept=0.0, r_squared=1.0)
    assert fit.log_mass_squared_slope == pytest.approx(0.1)
