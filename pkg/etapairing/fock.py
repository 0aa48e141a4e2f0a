"""
Fermionic Fock space over ``n_sites`` lattice sites with spin up and down.

A basis string is an integer whose bit ``b`` is the occupation of linear mode ``b``,
where mode ``(site, spin)`` has linear index ``2 * site + spin``. Signs follow the
Jordan-Wigner convention in that order: a ladder operator on mode ``b`` picks up
``(-1)`` for every occupied mode below ``b``.
"""

import enum
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from etapairing.constants import NORM_TOLERANCE, PRUNE_TOLERANCE
from etapairing.exceptions import DomainError
from etapairing.validation import requires_normalized

__all__ = [
    "FockVector",
    "Ladder",
    "ModeIndex",
    "Spin",
    "apply_ladder",
    "apply_sequence",
    "basis_state",
    "bitstring",
    "expectation",
    "from_dense",
    "inner_product",
    "ladder_action",
    "linear_combination",
    "norm",
    "normalized",
    "number_of_particles",
    "pair_create",
    "to_dense",
    "vacuum",
]

logger = logging.getLogger(__name__)


class Spin(enum.IntEnum):
    UP = 0
    DOWN = 1


class Ladder(enum.Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


@dataclass(frozen=True, order=True)
class ModeIndex:
    site: int
    spin: Spin

    def __post_init__(self) -> None:
        if self.site < 0:
            raise DomainError(f"site index must be non-negative, got {self.site}")
        object.__setattr__(self, "spin", Spin(self.spin))

    @property
    def linear(self) -> int:
        return 2 * self.site + int(self.spin)

    @classmethod
    def from_linear(cls, index: int) -> "ModeIndex":
        if index < 0:
            raise DomainError(f"linear mode index must be non-negative, got {index}")
        return cls(index // 2, Spin(index % 2))

    def __str__(self) -> str:
        arrow = "↑" if self.spin is Spin.UP else "↓"
        return f"{self.site}{arrow}"


@dataclass(frozen=True)
class FockVector:
    """
    Immutable sparse state. Amplitudes smaller than ``PRUNE_TOLERANCE`` are dropped
    on construction and the remaining basis strings are kept in ascending order.

    :param n_sites: number of lattice sites (``2 * n_sites`` modes)
    :param amplitudes: basis string → complex amplitude
    """

    n_sites: int
    amplitudes: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise DomainError(f"n_sites must be at least 1, got {self.n_sites}")
        limit = 1 << (2 * self.n_sites)
        cleaned = {}
        for occupation in sorted(self.amplitudes):
            if not 0 <= occupation < limit:
                raise DomainError(
                    f"basis string {occupation} does not fit {self.n_sites} sites"
                )
            amplitude = complex(self.amplitudes[occupation])
            if abs(amplitude) >= PRUNE_TOLERANCE:
                cleaned[occupation] = amplitude
        object.__setattr__(self, "amplitudes", MappingProxyType(cleaned))

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites

    @property
    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_squared - 1.0) <= NORM_TOLERANCE

    @property
    def is_zero(self) -> bool:
        return not self.amplitudes

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{bitstring(o, self.n_sites)}: {a:.6g}" for o, a in self.amplitudes.items()
        )
        return f"FockVector(n_sites={self.n_sites}, {{{terms}}})"


def bitstring(occupation: int, n_sites: int) -> str:
    """
    Renders a basis string with mode 0 leftmost, e.g. ``c†₀↑|0⟩`` on one site is
    ``"10"``.
    """
    return "".join(str((occupation >> b) & 1) for b in range(2 * n_sites))


def vacuum(n_sites: int) -> FockVector:
    return FockVector(n_sites, {0: 1.0})


def basis_state(n_sites: int, modes: Iterable[ModeIndex]) -> FockVector:
    """
    The occupation basis state with the given modes filled, amplitude +1. Note this
    is the bitstring itself, not a product of creation operators; the two differ by
    the ordering sign.
    """
    occupation = 0
    for mode in modes:
        _check_mode(mode, n_sites)
        occupation |= 1 << mode.linear
    return FockVector(n_sites, {occupation: 1.0})


def ladder_action(
    occupation: int, linear_mode: int, kind: Ladder
) -> tuple[int, int] | None:
    """
    Applies one ladder operator to one basis string.

    :param occupation: basis string
    :param linear_mode: target mode
    :param kind: create or annihilate
    :return: ``(new_occupation, sign)``, or ``None`` when the operator kills the string
    """
    bit = 1 << linear_mode
    occupied = bool(occupation & bit)
    if kind is Ladder.CREATE and occupied:
        return None
    if kind is Ladder.ANNIHILATE and not occupied:
        return None
    below = (occupation & (bit - 1)).bit_count()
    sign = -1 if below % 2 else 1
    return occupation ^ bit, sign


def _check_mode(mode: ModeIndex, n_sites: int) -> None:
    if mode.site >= n_sites:
        raise DomainError(f"mode {mode} is outside a lattice of {n_sites} sites")


def apply_ladder(state: FockVector, mode: ModeIndex, kind: Ladder) -> FockVector:
    """
    Applies ``c†`` or ``c`` on ``mode`` to every basis string of ``state``.

    :param state: input state
    :param mode: target mode
    :param kind: ``Ladder.CREATE`` or ``Ladder.ANNIHILATE``
    :return: the image state (possibly the zero vector)
    """
    _check_mode(mode, state.n_sites)
    image: dict[int, complex] = {}
    for occupation, amplitude in state.amplitudes.items():
        action = ladder_action(occupation, mode.linear, kind)
        if action is None:
            continue
        target, sign = action
        # distinct inputs map to distinct outputs, no accumulation needed
        image[target] = sign * amplitude
    return FockVector(state.n_sites, image)


def apply_sequence(
    state: FockVector, ops: Sequence[tuple[ModeIndex, Ladder]]
) -> FockVector:
    """
    Applies the operator product ``ops[0] ops[1] ... ops[-1]`` to ``state``, i.e. the
    last operator acts first.
    """
    for mode, kind in reversed(ops):
        state = apply_ladder(state, mode, kind)
        if state.is_zero:
            break
    return state


def pair_create(state: FockVector, site: int, phase: complex = 1.0) -> FockVector:
    """
    Applies ``phase * c†_{site,↑} c†_{site,↓}``.
    """
    image = apply_sequence(
        state,
        [
            (ModeIndex(site, Spin.UP), Ladder.CREATE),
            (ModeIndex(site, Spin.DOWN), Ladder.CREATE),
        ],
    )
    if phase == 1.0:
        return image
    return FockVector(
        image.n_sites, {o: phase * a for o, a in image.amplitudes.items()}
    )


def linear_combination(terms: Iterable[tuple[complex, FockVector]]) -> FockVector:
    """
    Sums ``coefficient * state`` over ``terms``; all states must share ``n_sites``.
    """
    n_sites = None
    total: dict[int, complex] = {}
    for coefficient, state in terms:
        if n_sites is None:
            n_sites = state.n_sites
        elif state.n_sites != n_sites:
            raise DomainError(
                f"cannot add states on {n_sites} and {state.n_sites} sites"
            )
        for occupation, amplitude in state.amplitudes.items():
            total[occupation] = total.get(occupation, 0.0) + coefficient * amplitude
    if n_sites is None:
        raise DomainError("linear_combination needs at least one term")
    return FockVector(n_sites, total)


def inner_product(a: FockVector, b: FockVector) -> complex:
    """
    ``⟨a|b⟩``, conjugate-linear in ``a``.
    """
    if a.n_sites != b.n_sites:
        raise DomainError(
            f"inner product of states on {a.n_sites} and {b.n_sites} sites"
        )
    if len(a) > len(b):
        return inner_product(b, a).conjugate()
    return complex(
        sum(
            amplitude.conjugate() * b.amplitudes.get(occupation, 0.0)
            for occupation, amplitude in a.amplitudes.items()
        )
    )


def norm(state: FockVector) -> float:
    return math.sqrt(state.norm_squared)


def normalized(state: FockVector) -> FockVector:
    size = norm(state)
    if size < PRUNE_TOLERANCE:
        raise DomainError("cannot normalize the zero vector")
    return FockVector(
        state.n_sites, {o: a / size for o, a in state.amplitudes.items()}
    )


@requires_normalized
def expectation(
    state: FockVector, ops: Sequence[tuple[ModeIndex, Ladder]]
) -> complex:
    """
    ``⟨state| ops[0] ... ops[-1] |state⟩`` with operators applied right to left.

    :param state: a normalized state
    :param ops: the operator product as (mode, kind) pairs
    :return: the expectation value
    """
    for mode, _ in ops:
        _check_mode(mode, state.n_sites)
    return inner_product(state, apply_sequence(state, ops))


def number_of_particles(state: FockVector) -> float:
    """
    Mean particle number ``Σ_b ⟨n_b⟩``; basis strings are particle-number
    eigenstates so no operator application is needed.
    """
    total = state.norm_squared
    if total == 0:
        return 0.0
    weighted = sum(
        abs(a) ** 2 * occupation.bit_count()
        for occupation, a in state.amplitudes.items()
    )
    return weighted / total


def to_dense(state: FockVector) -> np.ndarray:
    """
    Dense vector of length ``4**n_sites`` indexed by basis string.
    """
    vector = np.zeros(1 << state.n_modes, dtype=complex)
    for occupation, amplitude in state.amplitudes.items():
        vector[occupation] = amplitude
    return vector


def from_dense(n_sites: int, vector: np.ndarray) -> FockVector:
    vector = np.asarray(vector)
    if vector.shape != (1 << (2 * n_sites),):
        raise DomainError(
            f"dense vector of shape {vector.shape} does not match {n_sites} sites"
        )
    support = np.flatnonzero(np.abs(vector) >= PRUNE_TOLERANCE)
    logger.debug(f"from_dense: {len(support)} of {vector.size} amplitudes kept")
    return FockVector(n_sites, {int(i): complex(vector[i]) for i in support})
