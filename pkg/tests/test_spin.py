import math

import numpy as np
import pytest

from etapairing.eta import EtaSpec, build_eta_state
from etapairing.exceptions import CapacityError, DomainError
from etapairing.fock import (
    Ladder,
    ModeIndex,
    Spin,
    apply_sequence,
    basis_state,
    linear_combination,
    vacuum,
)
from etapairing.spin import (
    Geometry,
    HubbardSpec,
    eta_eigenstate_residual,
    free_fermion_ground_energy,
    ground_state,
    heisenberg_limit_check,
    hubbard_ground_report,
    hubbard_hamiltonian,
    hubbard_sector_matrix,
    number_operator,
    onsite_spin_squared,
    sector_indices,
    spin_correlator,
    sz_total,
)

UP0 = ModeIndex(0, Spin.UP)
DOWN0 = ModeIndex(0, Spin.DOWN)
UP1 = ModeIndex(1, Spin.UP)
DOWN1 = ModeIndex(1, Spin.DOWN)


@pytest.fixture
def singlet():
    up_down = apply_sequence(vacuum(2), [(UP0, Ladder.CREATE), (DOWN1, Ladder.CREATE)])
    down_up = apply_sequence(vacuum(2), [(DOWN0, Ladder.CREATE), (UP1, Ladder.CREATE)])
    s = 1 / math.sqrt(2)
    return linear_combination([(s, up_down), (-s, down_up)])


@pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (4, 2), (5, 3)])
def test_eta_states_carry_no_spin_correlation(n, k):
    state = build_eta_state(EtaSpec(n, k))
    for j in range(1, n):
        report = spin_correlator(state, 0, j)
        components = (report.czz, report.cxx, report.cyy)
        assert components == pytest.approx((0, 0, 0), abs=1e-12)
    for site in range(n):
        assert onsite_spin_squared(state, site) == pytest.approx(0, abs=1e-12)


def test_singlet(singlet):
    report = spin_correlator(singlet, 0, 1)
    assert report.czz == pytest.approx(-0.25)
    assert report.cxx == pytest.approx(-0.25)
    assert report.cyy == pytest.approx(-0.25)
    assert report.total == pytest.approx(-0.75)


def test_vacuum_and_single_electron():
    report = spin_correlator(vacuum(2), 0, 1)
    assert report.total == 0
    assert onsite_spin_squared(basis_state(1, [UP0]), 0) == pytest.approx(0.75)


def test_spin_correlator_validates_input(singlet):
    with pytest.raises(DomainError):
        spin_correlator(singlet, 1, 1)
    with pytest.raises(DomainError):
        spin_correlator(linear_combination([(2.0, singlet)]), 0, 1)


@pytest.mark.parametrize(
    "spec",
    [
        HubbardSpec(2, 1.0, 4.0),
        HubbardSpec(3, 0.7, 2.0, Geometry.RING),
        HubbardSpec(4, 1.0, 3.0, Geometry.RING),
    ],
)
def test_hamiltonian_symmetries(spec):
    h = hubbard_hamiltonian(spec)
    np.testing.assert_allclose(h, h.T)
    n_op = number_operator(spec.n_sites)
    sz = sz_total(spec.n_sites)
    np.testing.assert_allclose(h @ n_op - n_op @ h, 0, atol=1e-12)
    np.testing.assert_allclose(h @ sz - sz @ h, 0, atol=1e-12)


def test_atomic_limit_is_diagonal():
    h = hubbard_hamiltonian(HubbardSpec(2, 0.0, 4.0))
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0
    assert set(np.diag(h)) == {0.0, 4.0, 8.0}


def test_bonds():
    assert HubbardSpec(2, 1, 0, Geometry.RING).bonds == [(0, 1)]
    ring = HubbardSpec(4, 1, 0, Geometry.RING)
    assert ring.bonds == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert HubbardSpec(3, 1, 0).bonds == [(0, 1), (1, 2)]


def test_two_site_ground_energy():
    energy, _ = ground_state(HubbardSpec(2, 1.0, 8.0))
    assert energy == pytest.approx((8 - math.sqrt(80)) / 2)


@pytest.mark.parametrize(
    "spec, expected",
    [
        (HubbardSpec(2, 1.0, 0.0), -2.0),
        (HubbardSpec(4, 1.0, 0.0, Geometry.RING), -4.0),
    ],
)
def test_free_fermions(spec, expected):
    energy, _ = ground_state(spec)
    assert energy == pytest.approx(expected)
    assert free_fermion_ground_energy(spec, spec.n_sites) == pytest.approx(expected)


def test_sector_indices():
    indices = sector_indices(2, 2, 0)
    assert len(indices) == 4
    assert len(sector_indices(3, 3, 1)) == 9
    with pytest.raises(DomainError):
        ground_state(HubbardSpec(2, 1.0, 1.0), n_particles=2, sz2=4)


def test_heisenberg_limit():
    points = heisenberg_limit_check(1.0, [0.0, 2.0, 8.0, 30.0, 100.0], threads=2)
    assert [p.ratio for p in points] == [0.0, 2.0, 8.0, 30.0, 100.0]
    assert points[0].spin_correlation > -0.75 + 1e-3
    assert points[-1].spin_correlation == pytest.approx(-0.75, abs=1e-2)
    assert abs(points[-1].pair_correlation) < 1e-2
    correlations = [p.spin_correlation for p in points]
    assert all(b < a for a, b in zip(correlations, correlations[1:], strict=False))


def test_heisenberg_limit_needs_hopping():
    with pytest.raises(DomainError):
        heisenberg_limit_check(0.0, [1.0])


def test_ground_report():
    report = hubbard_ground_report(HubbardSpec(2, 1.0, 8.0))
    assert report.energy == pytest.approx((8 - math.sqrt(80)) / 2)
    assert -0.75 < report.spin_correlation < 0


@pytest.mark.parametrize("k", [1, 2])
def test_eta_pi_is_eigenstate_of_ring(k):
    ring = HubbardSpec(4, 1.0, 3.0, Geometry.RING)
    report = eta_eigenstate_residual(ring, k, math.pi)
    assert report.energy == pytest.approx(3.0 * k)
    assert report.residual <= 1e-10
    assert report.is_eigenstate


def test_eta_on_open_chain():
    report = eta_eigenstate_residual(HubbardSpec(4, 1.0, 2.5), 2, math.pi)
    assert report.energy == pytest.approx(5.0)
    assert report.is_eigenstate


def test_vacuum_residual():
    report = eta_eigenstate_residual(HubbardSpec(3, 1.0, 2.0), 0, 0.0)
    assert report.energy == 0
    assert report.residual == 0


def test_uniform_eta_is_not_eigenstate():
    report = eta_eigenstate_residual(HubbardSpec(4, 1.0, 3.0, Geometry.RING), 1, 0.0)
    assert report.residual > 1e-6
    assert not report.is_eigenstate


def test_momentum_must_fit_ring():
    with pytest.raises(DomainError):
        eta_eigenstate_residual(HubbardSpec(3, 1.0, 1.0, Geometry.RING), 1, math.pi)


@pytest.mark.parametrize("n, error", [(7, CapacityError), (1, DomainError)])
def test_lattice_size_limits(n, error):
    with pytest.raises(error):
        HubbardSpec(n, 1.0, 1.0)


@pytest.mark.parametrize(
    "spec, n_particles, sz2",
    [
        (HubbardSpec(2, 1.0, 4.0), 2, 0),
        (HubbardSpec(3, 0.7, 2.0, Geometry.RING), 3, 1),
        (HubbardSpec(3, 1.0, 5.0), 2, 0),
    ],
)
def test_sector_matrix_is_block_of_full_hamiltonian(spec, n_particles, sz2):
    indices = sector_indices(spec.n_sites, n_particles, sz2)
    block = hubbard_sector_matrix(spec, indices)
    full = hubbard_hamiltonian(spec)
    np.testing.assert_allclose(block, full[np.ix_(indices, indices)], atol=1e-14)


def test_sector_matrix_needs_closed_basis():
    with pytest.raises(DomainError):
        hubbard_sector_matrix(HubbardSpec(2, 1.0, 4.0), [0b0011])
