class EtaPairingError(Exception):
    pass


class DomainError(EtaPairingError, ValueError):
    pass


class CapacityError(EtaPairingError):
    pass


class ReportError(EtaPairingError):
    pass
