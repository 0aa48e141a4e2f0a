import itertools
import math

import numpy as np
import pytest

from etapairing.exceptions import DomainError
from etapairing.fock import (
    FockVector,
    Ladder,
    ModeIndex,
    Spin,
    apply_ladder,
    apply_sequence,
    bitstring,
    expectation,
    from_dense,
    inner_product,
    linear_combination,
    pair_create,
    to_dense,
    vacuum,
)

UP0 = ModeIndex(0, Spin.UP)
DOWN0 = ModeIndex(0, Spin.DOWN)
UP1 = ModeIndex(1, Spin.UP)
DOWN1 = ModeIndex(1, Spin.DOWN)


def all_basis_states(n_sites):
    return [FockVector(n_sites, {o: 1.0}) for o in range(4**n_sites)]


def same_state(a: FockVector, b: FockVector, tol=1e-14) -> bool:
    keys = set(a.amplitudes) | set(b.amplitudes)
    return all(
        abs(a.amplitudes.get(k, 0) - b.amplitudes.get(k, 0)) < tol for k in keys
    )


def test_mode_index_linear_is_bijective():
    indices = [ModeIndex(site, spin).linear for site in range(4) for spin in Spin]
    assert sorted(indices) == list(range(8))
    for index in range(8):
        assert ModeIndex.from_linear(index).linear == index


def test_create_on_vacuum():
    state = apply_ladder(vacuum(1), UP0, Ladder.CREATE)
    assert list(state.amplitudes) == [1]
    assert bitstring(1, 1) == "10"
    assert state.amplitudes[1] == 1


def test_annihilate_vacuum_is_zero():
    assert apply_ladder(vacuum(1), UP0, Ladder.ANNIHILATE).is_zero


def test_creation_order_flips_sign():
    down_up = apply_sequence(vacuum(1), [(DOWN0, Ladder.CREATE), (UP0, Ladder.CREATE)])
    up_down = apply_sequence(vacuum(1), [(UP0, Ladder.CREATE), (DOWN0, Ladder.CREATE)])
    assert list(down_up.amplitudes) == list(up_down.amplitudes) == [0b11]
    assert down_up.amplitudes[0b11] == -up_down.amplitudes[0b11]


def test_mode_out_of_range():
    with pytest.raises(DomainError):
        apply_ladder(vacuum(1), UP1, Ladder.CREATE)
    with pytest.raises(DomainError):
        ModeIndex(-1, Spin.UP)


@pytest.mark.parametrize("n_sites", [1, 2])
def test_anticommutation_on_every_basis_string(n_sites):
    modes = [ModeIndex.from_linear(b) for b in range(2 * n_sites)]
    for state in all_basis_states(n_sites):
        for a, b in itertools.product(modes, repeat=2):
            c_a, cdag_b = (a, Ladder.ANNIHILATE), (b, Ladder.CREATE)
            anti = linear_combination(
                [
                    (1, apply_sequence(state, [c_a, cdag_b])),
                    (1, apply_sequence(state, [cdag_b, c_a])),
                ]
            )
            expected = state if a == b else FockVector(n_sites)
            assert same_state(anti, expected)
            if a != b:
                c_b = (b, Ladder.ANNIHILATE)
                swapped = linear_combination(
                    [
                        (1, apply_sequence(state, [c_a, c_b])),
                        (1, apply_sequence(state, [c_b, c_a])),
                    ]
                )
                assert swapped.is_zero


def test_pauli_exclusion():
    for state in all_basis_states(2):
        for b in range(4):
            mode = ModeIndex.from_linear(b)
            twice = apply_sequence(state, [(mode, Ladder.CREATE)] * 2)
            assert twice.is_zero


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_pair_operators_commute(n_sites):
    for state in all_basis_states(n_sites):
        for i, j in itertools.permutations(range(n_sites), 2):
            assert same_state(
                pair_create(pair_create(state, j), i),
                pair_create(pair_create(state, i), j),
            )


def test_inner_product_examples():
    zero = vacuum(1)
    assert inner_product(zero, zero) == 1
    assert inner_product(zero, apply_ladder(zero, UP0, Ladder.CREATE)) == 0
    s = 1 / math.sqrt(2)
    psi = FockVector(1, {0b01: s, 0b10: s})
    assert inner_product(psi, psi) == pytest.approx(1)


def test_inner_product_is_conjugate_linear():
    a = FockVector(1, {0: 1j, 1: 1.0})
    b = FockVector(1, {0: 2.0})
    assert inner_product(a, b) == pytest.approx(-2j)
    assert inner_product(b, a) == pytest.approx(2j)


def test_inner_product_size_mismatch():
    with pytest.raises(DomainError):
        inner_product(vacuum(1), vacuum(2))


def test_number_operator_expectation():
    number = [(UP0, Ladder.CREATE), (UP0, Ladder.ANNIHILATE)]
    one = apply_ladder(vacuum(1), UP0, Ladder.CREATE)
    assert expectation(one, number) == pytest.approx(1)
    assert expectation(vacuum(1), number) == 0


def test_pair_hop_expectation():
    s = 1 / math.sqrt(2)
    state = linear_combination(
        [(s, pair_create(vacuum(2), 0)), (s, pair_create(vacuum(2), 1))]
    )
    hop = [
        (UP1, Ladder.CREATE),
        (DOWN1, Ladder.CREATE),
        (DOWN0, Ladder.ANNIHILATE),
        (UP0, Ladder.ANNIHILATE),
    ]
    assert expectation(state, hop) == pytest.approx(0.5)


def test_expectation_requires_normalized_state():
    with pytest.raises(DomainError):
        expectation(FockVector(1, {0: 2.0}), [])


def test_pruning_and_ordering():
    state = FockVector(2, {5: 1.0, 0: 1e-15, 3: 0.5})
    assert list(state.amplitudes) == [3, 5]
    image = apply_ladder(state, DOWN1, Ladder.CREATE)
    assert list(image.amplitudes) == sorted(image.amplitudes)


def test_dense_round_trip():
    state = FockVector(2, {3: 0.6, 12: -0.8j})
    dense = to_dense(state)
    assert dense.shape == (16,)
    np.testing.assert_allclose(dense[[3, 12]], [0.6, -0.8j])
    assert same_state(from_dense(2, dense), state)
