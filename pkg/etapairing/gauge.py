"""
Pair exchange in a vector potential, and what the symmetric state makes of it.

Exchanging the pairs on two sites takes the pair around a loop. In the branch of the
two-site state where the pair moves, it picks up the Aharonov-Bohm phase
``Φ = (2e/ħc) ∮ A·dl`` relative to the other branch. A totally symmetric state must
come back to itself, so ``e^{iΦ} = 1`` whenever the state carries a ``|01⟩, |10⟩``
coherence (ODLRO):

* if every loop is allowed (simply connected region), the flux through every loop is
  zero and the field vanishes (Meissner effect);
* around a hole, the enclosed flux is a multiple of ``hc/2e`` (flux quantization).

Working with ``Φ`` directly keeps this module free of geometry.

.. note::

    ``(2e/ħc) Φ_c = 2πn`` gives ``Φ_c = n·πħc/e = n·hc/2e``. Quoting the unit as
    ``ħc/2e`` drops a factor ``2π``; the quantum used here is ``hc/2e``.
"""

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants as codata

from etapairing.dicke import DickeSpec, TwoSiteRho
from etapairing.exceptions import DomainError
from etapairing.witness import DensityMatrix

__all__ = [
    "Coherence",
    "DefectReport",
    "FluxReport",
    "PhaseSpec",
    "PhysicalConstants",
    "Topology",
    "UnitSystem",
    "allowed_flux_set",
    "apply_pair_exchange_phase",
    "exchange_defect",
    "exchange_unitary",
    "flux_quantum",
    "is_flux_allowed",
    "loop_phase",
    "symmetry_defect",
]

logger = logging.getLogger(__name__)

NO_ODLRO_STATUS = "no ODLRO: phase unconstrained"
PERSISTENT_CURRENT_NOTE = (
    "flux is discrete, so dissipation cannot change the current continuously: "
    "the current persists indefinitely"
)


class Topology(enum.Enum):
    SIMPLY_CONNECTED = "simply-connected"
    ANNULUS = "annulus"


class UnitSystem(enum.Enum):
    SI = "si"
    NATURAL = "natural"
    GAUSSIAN = "gaussian"


class Coherence(enum.Enum):
    # (|01⟩ + |10⟩)/√2, the ODLRO coherence
    EXCHANGE = "exchange"
    # (|00⟩ + |11⟩)/√2
    COUNTER = "counter"


@dataclass(frozen=True)
class PhaseSpec:
    phi: float


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Constants entering ``Φ = (2e/ħc) ∮ A·dl``. In SI the ``c`` of that relation is
    absorbed into the units of ``A``, so ``c_light`` is only used for Gaussian units.
    """

    e: float
    h: float
    c_light: float
    units: UnitSystem

    def __post_init__(self) -> None:
        for name in ("e", "h", "c_light"):
            if getattr(self, name) <= 0:
                raise DomainError(f"physical constant {name} must be positive")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        # CODATA exact values: h, e and c are defined constants of the SI
        return cls(e=codata.e, h=codata.h, c_light=codata.c, units=UnitSystem.SI)

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        return cls(e=1.0, h=2.0 * math.pi, c_light=1.0, units=UnitSystem.NATURAL)

    @classmethod
    def gaussian(cls) -> "PhysicalConstants":
        statcoulomb = 10.0 * codata.c  # statC per C
        return cls(
            e=codata.e * statcoulomb,
            h=codata.h * 1e7,  # erg·s
            c_light=codata.c * 100.0,  # cm/s
            units=UnitSystem.GAUSSIAN,
        )

    @classmethod
    def for_units(cls, units: UnitSystem | str) -> "PhysicalConstants":
        units = UnitSystem(units)
        return {
            UnitSystem.SI: cls.si,
            UnitSystem.NATURAL: cls.natural,
            UnitSystem.GAUSSIAN: cls.gaussian,
        }[units]()

    @property
    def hbar(self) -> float:
        return self.h / (2.0 * math.pi)

    @property
    def coupling(self) -> float:
        """
        ``2e/ħc`` (``2e/ħ`` in SI): loop phase per unit of enclosed flux.
        """
        c = self.c_light if self.units is UnitSystem.GAUSSIAN else 1.0
        return 2.0 * self.e / (self.hbar * c)


@dataclass(frozen=True)
class DefectReport:
    constrained: bool
    defect: float | None
    status: str


@dataclass(frozen=True)
class FluxReport:
    topology: Topology
    allowed_b_field: float
    allowed_fluxes: list[int]
    symmetry_defect: float
    flux_quantum: float
    flux_values: list[float] = field(default_factory=list)
    note: str = ""


def exchange_unitary(phi: PhaseSpec | float) -> np.ndarray:
    """
    Diagonal two-site unitary of a pair exchange in the basis
    ``|00⟩, |01⟩, |10⟩, |11⟩``. Only the ``|01⟩`` branch, where one pair travels the
    loop, acquires ``e^{iΦ}``; in ``|11⟩`` two pairs travel in opposite directions
    and their phases cancel.
    """
    phi = phi.phi if isinstance(phi, PhaseSpec) else float(phi)
    return np.diag([1.0, np.exp(1j * phi), 1.0, 1.0])


def apply_pair_exchange_phase(rho: TwoSiteRho, phi: PhaseSpec) -> TwoSiteRho:
    """
    Conjugates ρ₁₂ with the exchange unitary: the ``|01⟩⟨10|`` coherence is
    multiplied by ``e^{iΦ}``, its mirror by ``e^{-iΦ}``, and populations are left
    alone.

    :param rho: two-qubit density matrix
    :param phi: loop phase
    :return: the transformed density matrix
    """
    if rho.dims != (2, 2):
        raise DomainError(f"pair exchange acts on two sites, got dims {rho.dims}")
    u = exchange_unitary(phi)
    return DensityMatrix(u @ rho.matrix @ u.conj().T, rho.dims)


def exchange_defect(vector: np.ndarray, phi: PhaseSpec | float) -> float:
    """
    ``1 - |⟨ψ|U_Φ|ψ⟩|²`` for a normalized two-site vector ``ψ``: how far the exchange
    moves the state away from itself.
    """
    psi = np.asarray(vector, dtype=complex)
    if psi.shape != (4,):
        raise DomainError(f"expected a two-site vector of length 4, got {psi.shape}")
    overlap = np.vdot(psi, exchange_unitary(phi) @ psi)
    return float(1.0 - abs(overlap) ** 2)


COHERENCE_VECTORS = {
    Coherence.EXCHANGE: np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0),
    Coherence.COUNTER: np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0),
}


def symmetry_defect(
    spec: DickeSpec, phi: PhaseSpec, coherence: Coherence = Coherence.EXCHANGE
) -> DefectReport:
    """
    How far a pair exchange with loop phase ``Φ`` takes the two-site coherent component
    from the symmetric one. For the ``|01⟩, |10⟩`` coherence this is
    ``sin²(Φ/2)``, zero exactly for ``Φ ∈ 2πℤ``; the ``|00⟩, |11⟩`` component is
    never moved.

    :param spec: ``(n, k)`` of the symmetric state
    :param phi: loop phase
    :param coherence: which two-site component to follow
    :return: report; without ODLRO (``k`` = 0 or ``n``) nothing constrains the phase
    """
    if spec.n < 2:
        raise DomainError("a pair exchange needs at least two sites")
    if coherence is Coherence.EXCHANGE and spec.k in (0, spec.n):
        return DefectReport(constrained=False, defect=None, status=NO_ODLRO_STATUS)
    if coherence is Coherence.EXCHANGE:
        defect = math.sin(phi.phi / 2.0) ** 2
    else:
        defect = exchange_defect(COHERENCE_VECTORS[coherence], phi)
    return DefectReport(constrained=True, defect=defect, status="ok")


def flux_quantum(constants: PhysicalConstants) -> float:
    """
    ``hc/2e`` (``h/2e`` in SI, ``π`` in natural units).
    """
    return 2.0 * math.pi / constants.coupling


def loop_phase(flux: float, constants: PhysicalConstants) -> float:
    return constants.coupling * flux


def is_flux_allowed(
    flux: float, constants: PhysicalConstants, tolerance: float = 1e-9
) -> bool:
    turns = loop_phase(flux, constants) / (2.0 * math.pi)
    return abs(turns - round(turns)) <= tolerance


def allowed_flux_set(
    topology: Topology, max_n: int, constants: PhysicalConstants
) -> FluxReport:
    """
    Fluxes compatible with ``e^{iΦ} = 1``.

    In a simply connected region a pair can take any loop, so the flux through every
    loop must vanish: ``B = 0`` and only ``n = 0``. Around a hole only loops enclosing
    it see flux, which is then quantized as ``n·hc/2e`` for ``|n| <= max_n``.

    :param topology: simply connected region or annulus
    :param max_n: largest flux number to list
    :param constants: unit system
    :return: the allowed field and fluxes
    """
    if max_n < 0:
        raise DomainError(f"max_n must be non-negative, got {max_n}")
    quantum = flux_quantum(constants)
    if topology is Topology.SIMPLY_CONNECTED:
        numbers = [0]
        note = "every loop is available to the pair, so B = 0 (Meissner effect)"
    else:
        numbers = list(range(-max_n, max_n + 1))
        note = PERSISTENT_CURRENT_NOTE
    values = [n * quantum for n in numbers]
    defect = max(math.sin(loop_phase(v, constants) / 2.0) ** 2 for v in values)
    logger.info(
        f"{topology.value}: {len(numbers)} allowed fluxes, quantum {quantum:.6g} "
        f"({constants.units.value})"
    )
    return FluxReport(
        topology=topology,
        allowed_b_field=0.0,
        allowed_fluxes=numbers,
        symmetry_defect=defect,
        flux_quantum=quantum,
        flux_values=values,
        note=note,
    )
