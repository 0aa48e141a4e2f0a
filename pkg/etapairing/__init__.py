from etapairing.constants import VERSION
from etapairing.dicke import DickeSpec
from etapairing.eta import EtaSpec, build_eta_state, odlro_correlator
from etapairing.exceptions import CapacityError, DomainError, EtaPairingError

__all__ = [
    "VERSION",
    "CapacityError",
    "DickeSpec",
    "DomainError",
    "EtaPairingError",
    "EtaSpec",
    "build_eta_state",
    "odlro_correlator",
]
