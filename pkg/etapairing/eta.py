"""
Yang η-pairing states and their off-diagonal long-range order.

``η_q† = Σ_i e^{iqi} c†_{i,↑} c†_{i,↓}``; the states ``(η_q†)^k |0⟩`` hold ``k``
on-site pairs spread coherently over ``n`` sites.

.. note::

    ``(η†)^k = k! Σ_{|S|=k} Π_{i∈S} P†_i`` because the pair operators commute and
    square to zero, so ``‖(η†)^k|0⟩‖ = k!·√C(n,k)``. A prefactor of ``C(n,k)^{-1/2}``
    alone leaves a stray ``k!``; ``build_eta_state`` always divides by the computed
    norm instead.
"""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from etapairing.exceptions import DomainError
from etapairing.fock import (
    FockVector,
    Ladder,
    ModeIndex,
    Spin,
    expectation,
    linear_combination,
    norm,
    normalized,
    number_of_particles,
    pair_create,
    vacuum,
)
from etapairing.validation import requires_distinct_sites, requires_normalized

__all__ = [
    "EtaSpec",
    "OdlroReport",
    "apply_eta_dagger",
    "asymptotic_alpha",
    "build_eta_state",
    "eta_norm",
    "odlro_closed_form",
    "odlro_correlator",
    "raw_eta_state",
    "to_qubit_vector",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EtaSpec:
    n_sites: int
    k_pairs: int
    momentum_phase: float = 0.0

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise DomainError(f"n_sites must be at least 1, got {self.n_sites}")
        if not 0 <= self.k_pairs <= self.n_sites:
            raise DomainError(
                f"k_pairs={self.k_pairs} must lie in [0, {self.n_sites}]: at most "
                f"one pair fits on a site"
            )


@dataclass(frozen=True)
class OdlroReport:
    site_i: int
    site_j: int
    correlator: complex
    closed_form: float
    alpha_limit: float
    coherence_limit: float

    @property
    def deviation(self) -> float:
        return abs(self.correlator - self.closed_form)


def apply_eta_dagger(state: FockVector, momentum_phase: float = 0.0) -> FockVector:
    """
    Applies ``η_q†`` once.

    :param state: input state
    :param momentum_phase: ``q`` in radians per site
    :return: ``Σ_i e^{iqi} P†_i |state⟩`` (not normalized)
    """
    return linear_combination(
        (1.0, pair_create(state, site, cmath.exp(1j * momentum_phase * site)))
        for site in range(state.n_sites)
    )


def raw_eta_state(spec: EtaSpec) -> FockVector:
    """
    The unnormalized ``(η_q†)^k |0⟩``.
    """
    state = vacuum(spec.n_sites)
    for _ in range(spec.k_pairs):
        state = apply_eta_dagger(state, spec.momentum_phase)
    return state


def build_eta_state(spec: EtaSpec) -> FockVector:
    """
    Builds the normalized η state ``(η_q†)^k|0⟩ / ‖(η_q†)^k|0⟩‖``. For ``q = 0`` every
    one of the ``C(n,k)`` pair placements carries amplitude ``C(n,k)^{-1/2}``.

    :param spec: sites, pairs and momentum phase
    :return: unit-norm state
    """
    raw = raw_eta_state(spec)
    logger.debug(
        f"η state n={spec.n_sites} k={spec.k_pairs}: {len(raw)} basis strings, "
        f"norm {norm(raw):.6g}"
    )
    return normalized(raw)


def eta_norm(n_sites: int, k_pairs: int) -> float:
    """
    ``k!·√C(n,k)``, the norm of ``(η†)^k|0⟩``.
    """
    EtaSpec(n_sites, k_pairs)
    return math.factorial(k_pairs) * math.sqrt(math.comb(n_sites, k_pairs))


def odlro_closed_form(n_sites: int, k_pairs: int) -> float:
    if n_sites < 2:
        raise DomainError("the pair correlator needs at least two sites")
    return k_pairs * (n_sites - k_pairs) / (n_sites * (n_sites - 1))


def asymptotic_alpha(x: float) -> float:
    """
    Limit of ``k(n-k)/(n(n-1))`` as ``n → ∞`` at fixed filling ``x = k/n``.

    :param x: filling, strictly between 0 and 1
    :return: ``x(1-x)``
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"filling x must lie in the open interval (0, 1), got {x}")
    return x * (1.0 - x)


@requires_normalized
@requires_distinct_sites
def odlro_correlator(state: FockVector, i: int, j: int) -> OdlroReport:
    """
    Pair-hopping correlator ``⟨c†_{j↑} c†_{j↓} c_{i↓} c_{i↑}⟩``. The reported closed
    form uses the pair number of ``state`` and is exact for ``q = 0`` η states.

    :param state: normalized state
    :param i: site the pair leaves
    :param j: site the pair arrives at
    :return: report with correlator, closed form and its large-n limits
    """
    value = expectation(
        state,
        [
            (ModeIndex(j, Spin.UP), Ladder.CREATE),
            (ModeIndex(j, Spin.DOWN), Ladder.CREATE),
            (ModeIndex(i, Spin.DOWN), Ladder.ANNIHILATE),
            (ModeIndex(i, Spin.UP), Ladder.ANNIHILATE),
        ],
    )
    n = state.n_sites
    k = round(number_of_particles(state) / 2)
    x = k / n
    return OdlroReport(
        site_i=i,
        site_j=j,
        correlator=value,
        closed_form=odlro_closed_form(n, k),
        alpha_limit=x * (1.0 - x),
        coherence_limit=2.0 * x * (1.0 - x),
    )


def to_qubit_vector(state: FockVector) -> np.ndarray:
    """
    The one-qubit-per-site picture of a pair state: an empty site is ``0``, a doubly
    occupied one is ``1``, and site 0 is the most significant qubit.

    :param state: a state with only empty or doubly occupied sites
    :return: ``2**n`` complex amplitudes
    """
    n = state.n_sites
    vector = np.zeros(1 << n, dtype=complex)
    for occupation, amplitude in state.amplitudes.items():
        index = 0
        for site in range(n):
            pair = (occupation >> (2 * site)) & 0b11
            if pair == 0b01 or pair == 0b10:
                raise DomainError(
                    f"site {site} is singly occupied; only pair states have a qubit "
                    f"picture"
                )
            if pair == 0b11:
                index |= 1 << (n - 1 - site)
        vector[index] = amplitude
    return vector
