from functools import wraps

from etapairing.constants import NORM_TOLERANCE
from etapairing.exceptions import DomainError


def requires_normalized(f):
    """
    Guards functions whose first argument is a ``FockVector`` that must have unit
    norm, such as expectation values.
    """

    @wraps(f)
    def wrapper(state, *args, **kwargs):
        if not state.is_normalized:
            raise DomainError(
                f"{f.__name__} needs a normalized state, got squared norm "
                f"{state.norm_squared:.3e} (tolerance {NORM_TOLERANCE:g})"
            )
        return f(state, *args, **kwargs)

    return wrapper


def requires_distinct_sites(f):
    """
    Guards two-site correlators ``f(state, i, j, ...)``: the sites must differ and
    lie on the lattice of ``state``.
    """

    @wraps(f)
    def wrapper(state, i: int, j: int, *args, **kwargs):
        for site in (i, j):
            if not 0 <= site < state.n_sites:
                raise DomainError(
                    f"site {site} is outside a lattice of {state.n_sites} sites"
                )
        if i == j:
            raise DomainError(
                f"{f.__name__} needs two distinct sites; the on-site term at {i} is "
                f"a density, not a correlation between sites"
            )
        return f(state, i, j, *args, **kwargs)

    return wrapper
