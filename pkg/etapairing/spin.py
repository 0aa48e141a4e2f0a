"""
Spin sector of pair states and small Hubbard models.

``H = -t Σ_⟨ij⟩,s (c†_{is} c_{js} + h.c.) + U Σ_i n_{i↑} n_{i↓}`` is built densely in
the occupation basis of ``fock`` (dimension ``4**n``), so it is capped at six sites.
"""

import enum
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from etapairing.constants import MAX_HUBBARD_SITES, MIN_HUBBARD_SITES
from etapairing.eta import EtaSpec, build_eta_state, odlro_correlator
from etapairing.exceptions import CapacityError, DomainError
from etapairing.fock import (
    FockVector,
    Ladder,
    ModeIndex,
    Spin,
    expectation,
    from_dense,
    ladder_action,
    to_dense,
)
from etapairing.utilities import parallel_map
from etapairing.validation import requires_distinct_sites, requires_normalized

__all__ = [
    "EtaResidualReport",
    "Geometry",
    "HeisenbergPoint",
    "HubbardGroundReport",
    "HubbardSpec",
    "SpinCorrelatorReport",
    "eta_eigenstate_residual",
    "free_fermion_ground_energy",
    "ground_state",
    "heisenberg_limit_check",
    "hubbard_ground_report",
    "hubbard_hamiltonian",
    "hubbard_sector_matrix",
    "number_operator",
    "onsite_spin_squared",
    "sector_indices",
    "single_particle_spectrum",
    "spin_correlator",
    "sz_total",
]

logger = logging.getLogger(__name__)

ETA_RESIDUAL_TOLERANCE = 1e-10


class Geometry(enum.Enum):
    OPEN_CHAIN = "open"
    RING = "ring"


@dataclass(frozen=True)
class HubbardSpec:
    n_sites: int
    t: float
    U: float
    geometry: Geometry = Geometry.OPEN_CHAIN

    def __post_init__(self) -> None:
        if self.n_sites > MAX_HUBBARD_SITES:
            raise CapacityError(
                f"dense Hubbard matrices are limited to {MAX_HUBBARD_SITES} sites "
                f"(dimension {4**MAX_HUBBARD_SITES}), got {self.n_sites}"
            )
        if self.n_sites < MIN_HUBBARD_SITES:
            raise DomainError(
                f"a Hubbard model needs at least {MIN_HUBBARD_SITES} sites"
            )
        object.__setattr__(self, "geometry", Geometry(self.geometry))

    @property
    def bonds(self) -> list[tuple[int, int]]:
        bonds = [(i, i + 1) for i in range(self.n_sites - 1)]
        # on two sites the closing bond would repeat (0, 1)
        if self.geometry is Geometry.RING and self.n_sites > 2:
            bonds.append((self.n_sites - 1, 0))
        return bonds

    @property
    def dimension(self) -> int:
        return 4**self.n_sites


@dataclass(frozen=True)
class SpinCorrelatorReport:
    i: int
    j: int
    czz: float
    cxx: float
    cyy: float

    @property
    def total(self) -> float:
        return self.czz + self.cxx + self.cyy


@dataclass(frozen=True)
class HeisenbergPoint:
    ratio: float
    spin_correlation: float
    pair_correlation: float


@dataclass(frozen=True)
class HubbardGroundReport:
    spec: HubbardSpec
    energy: float
    spin_correlation: float
    pair_correlation: float


@dataclass(frozen=True)
class EtaResidualReport:
    energy: float
    residual: float

    @property
    def is_eigenstate(self) -> bool:
        return self.residual <= ETA_RESIDUAL_TOLERANCE


def _up(site: int) -> ModeIndex:
    return ModeIndex(site, Spin.UP)


def _down(site: int) -> ModeIndex:
    return ModeIndex(site, Spin.DOWN)


def _flip_up(site: int) -> list[tuple[ModeIndex, Ladder]]:
    # S⁺ = c†↑ c↓
    return [(_up(site), Ladder.CREATE), (_down(site), Ladder.ANNIHILATE)]


def _flip_down(site: int) -> list[tuple[ModeIndex, Ladder]]:
    # S⁻ = c†↓ c↑
    return [(_down(site), Ladder.CREATE), (_up(site), Ladder.ANNIHILATE)]


def _number(mode: ModeIndex) -> list[tuple[ModeIndex, Ladder]]:
    return [(mode, Ladder.CREATE), (mode, Ladder.ANNIHILATE)]


def _expect(state: FockVector, terms: Iterable[tuple[float, list]]) -> complex:
    return sum(coefficient * expectation(state, ops) for coefficient, ops in terms)


@requires_normalized
@requires_distinct_sites
def spin_correlator(state: FockVector, i: int, j: int) -> SpinCorrelatorReport:
    """
    ``⟨S^α_i S^α_j⟩`` for ``α = z, x, y`` with spin operators built from ladder
    operators: ``S^z = (n↑ - n↓)/2``, ``S^± = S^x ± i S^y``.

    :param state: normalized state
    :param i: first site
    :param j: second site
    :return: the three components; ``total`` is ``⟨S_i·S_j⟩``
    """
    zz = 0.25 * _expect(
        state,
        (
            (si * sj, _number(mi) + _number(mj))
            for si, mi in ((1, _up(i)), (-1, _down(i)))
            for sj, mj in ((1, _up(j)), (-1, _down(j)))
        ),
    )
    plus_plus = expectation(state, _flip_up(i) + _flip_up(j))
    plus_minus = expectation(state, _flip_up(i) + _flip_down(j))
    minus_plus = expectation(state, _flip_down(i) + _flip_up(j))
    minus_minus = expectation(state, _flip_down(i) + _flip_down(j))
    xx = 0.25 * (plus_plus + plus_minus + minus_plus + minus_minus)
    yy = -0.25 * (plus_plus - plus_minus - minus_plus + minus_minus)
    return SpinCorrelatorReport(i=i, j=j, czz=zz.real, cxx=xx.real, cyy=yy.real)


@requires_normalized
def onsite_spin_squared(state: FockVector, site: int) -> float:
    """
    ``⟨S_i²⟩ = ¾ ⟨n_i - 2 n_{i↑} n_{i↓}⟩``; zero on empty and doubly occupied sites.
    """
    n_up = expectation(state, _number(_up(site)))
    n_down = expectation(state, _number(_down(site)))
    double = expectation(state, _number(_up(site)) + _number(_down(site)))
    return float((0.75 * (n_up + n_down - 2.0 * double)).real)


def _hopping_targets(spec: HubbardSpec, occupation: int):
    for a, b in spec.bonds:
        for spin in Spin:
            for source, target in ((a, b), (b, a)):
                annihilated = ladder_action(
                    occupation, 2 * source + spin, Ladder.ANNIHILATE
                )
                if annihilated is None:
                    continue
                created = ladder_action(
                    annihilated[0], 2 * target + spin, Ladder.CREATE
                )
                if created is None:
                    continue
                yield created[0], annihilated[1] * created[1]


def hubbard_sector_matrix(spec: HubbardSpec, basis: Sequence[int]) -> np.ndarray:
    """
    The Hubbard Hamiltonian restricted to ``basis``, a list of basis strings closed
    under hopping (a particle-number and ``S^z`` sector, or the whole space).
    Row and column ``r`` belong to ``basis[r]``.

    :param spec: lattice and couplings
    :param basis: basis strings of the block
    :return: real symmetric ``len(basis) × len(basis)`` matrix
    """
    position = {int(o): r for r, o in enumerate(basis)}
    h = np.zeros((len(position), len(position)))
    for occupation, row in position.items():
        doubles = sum(
            (occupation >> (2 * site)) & 0b11 == 0b11 for site in range(spec.n_sites)
        )
        h[row, row] += spec.U * doubles
        for target, sign in _hopping_targets(spec, occupation):
            if target not in position:
                raise DomainError("basis is not closed under hopping")
            h[position[target], row] += -spec.t * sign
    return h


def hubbard_hamiltonian(spec: HubbardSpec) -> np.ndarray:
    """
    Dense Hubbard Hamiltonian indexed by ``fock`` basis strings. The matrix is real:
    hopping signs come from the Jordan-Wigner order of the modes.

    :param spec: lattice and couplings
    :return: ``4**n × 4**n`` real symmetric matrix
    """
    logger.debug(
        f"Hubbard n={spec.n_sites} ({spec.geometry.value}): {2 * spec.n_sites} modes, "
        f"dimension {spec.dimension}"
    )
    return hubbard_sector_matrix(spec, range(spec.dimension))


def number_operator(n_sites: int) -> np.ndarray:
    counts = [o.bit_count() for o in range(4**n_sites)]
    return np.diag(np.array(counts, dtype=float))


def _sz2(occupation: int, n_sites: int) -> int:
    up = sum((occupation >> (2 * s)) & 1 for s in range(n_sites))
    down = sum((occupation >> (2 * s + 1)) & 1 for s in range(n_sites))
    return up - down


def sz_total(n_sites: int) -> np.ndarray:
    """
    Diagonal total ``S^z``.
    """
    values = [0.5 * _sz2(o, n_sites) for o in range(4**n_sites)]
    return np.diag(np.array(values))


def sector_indices(n_sites: int, n_particles: int, sz2: int) -> np.ndarray:
    """
    Basis strings with ``n_particles`` fermions and ``2 S^z = sz2``.
    """
    return np.array(
        [
            o
            for o in range(4**n_sites)
            if o.bit_count() == n_particles and _sz2(o, n_sites) == sz2
        ],
        dtype=int,
    )


def ground_state(
    spec: HubbardSpec, n_particles: int | None = None, sz2: int = 0
) -> tuple[float, FockVector]:
    """
    Lowest eigenpair in a particle-number and ``S^z`` sector; half filling by
    default.

    :param spec: Hubbard model
    :param n_particles: fermion number, defaults to ``n_sites``
    :param sz2: twice the total ``S^z``
    :return: ``(energy, state)``
    """
    if n_particles is None:
        n_particles = spec.n_sites
    indices = sector_indices(spec.n_sites, n_particles, sz2)
    if indices.size == 0:
        raise DomainError(
            f"no states with {n_particles} fermions and 2Sz={sz2} on "
            f"{spec.n_sites} sites"
        )
    block = hubbard_sector_matrix(spec, indices)
    logger.debug(f"{spec}: sector N={n_particles} 2Sz={sz2} has {indices.size} states")
    energies, vectors = linalg.eigh(block)
    dense = np.zeros(spec.dimension, dtype=complex)
    dense[indices] = vectors[:, 0]
    return float(energies[0]), from_dense(spec.n_sites, dense)


def single_particle_spectrum(spec: HubbardSpec) -> np.ndarray:
    hopping = np.zeros((spec.n_sites, spec.n_sites))
    for a, b in spec.bonds:
        hopping[a, b] -= spec.t
        hopping[b, a] -= spec.t
    return linalg.eigvalsh(hopping)


def free_fermion_ground_energy(spec: HubbardSpec, n_particles: int) -> float:
    """
    ``U = 0`` ground energy from filling single-particle levels, spin up and down
    alternately (the ``S^z = 0`` sector for even particle number).
    """
    levels = single_particle_spectrum(spec)
    n_up = (n_particles + 1) // 2
    n_down = n_particles // 2
    return float(levels[:n_up].sum() + levels[:n_down].sum())


def hubbard_ground_report(spec: HubbardSpec) -> HubbardGroundReport:
    """
    Half-filled ``S^z = 0`` ground state with its nearest-neighbour spin correlation
    ``⟨S_0·S_1⟩`` and pair correlator ``⟨P†_1 P_0⟩``.
    """
    energy, state = ground_state(spec)
    return HubbardGroundReport(
        spec=spec,
        energy=energy,
        spin_correlation=spin_correlator(state, 0, 1).total,
        pair_correlation=float(odlro_correlator(state, 0, 1).correlator.real),
    )


def heisenberg_limit_check(
    t: float, u_values: Sequence[float], threads: int | None = None
) -> list[HeisenbergPoint]:
    """
    Two-site, half-filled ground states across ``U``. As ``U/t`` grows the sites hold
    one electron each, ``⟨S_0·S_1⟩`` approaches the singlet value ``-3/4`` and the
    pair correlator vanishes: spin entanglement without ODLRO.

    :param t: hopping, nonzero
    :param u_values: interaction strengths
    :param threads: worker count
    :return: one point per ``U``, in input order
    """
    if t == 0:
        raise DomainError("t must be nonzero to form the ratio U/t")

    def point(u: float) -> HeisenbergPoint:
        report = hubbard_ground_report(HubbardSpec(2, t, u))
        return HeisenbergPoint(
            ratio=u / t,
            spin_correlation=report.spin_correlation,
            pair_correlation=report.pair_correlation,
        )

    return parallel_map(point, list(u_values), threads)


def _check_momentum(spec: HubbardSpec, q: float) -> None:
    if spec.geometry is not Geometry.RING:
        return
    turns = q * spec.n_sites / (2.0 * math.pi)
    if abs(turns - round(turns)) > 1e-9:
        raise DomainError(
            f"momentum phase q={q:g} is not a lattice momentum of a "
            f"{spec.n_sites}-site ring (q·n must be a multiple of 2π)"
        )


def eta_eigenstate_residual(
    spec: HubbardSpec, k: int, q: float
) -> EtaResidualReport:
    """
    Measures whether the normalized ``(η_q†)^k|0⟩`` is an eigenstate of ``H``:
    ``‖H ψ - E ψ‖`` with ``E = ⟨ψ|H|ψ⟩``. Nothing is assumed; the residual is
    reported as measured.

    :param spec: Hubbard model
    :param k: number of pairs
    :param q: momentum phase; on a ring ``q·n`` must be a multiple of ``2π``
    :return: energy and residual
    """
    _check_momentum(spec, q)
    psi = to_dense(build_eta_state(EtaSpec(spec.n_sites, k, q)))
    h_psi = hubbard_hamiltonian(spec) @ psi
    energy = float(np.vdot(psi, h_psi).real)
    residual = float(np.linalg.norm(h_psi - energy * psi))
    report = EtaResidualReport(energy=energy, residual=residual)
    if not report.is_eigenstate:
        logger.warning(
            f"η state k={k} q={q:g} is not an eigenstate of {spec}: residual "
            f"{residual:.3e}"
        )
    return report
