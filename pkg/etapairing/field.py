"""
Entanglement entropy of a massive free scalar field in 1+1 dimensions, discretized as
a chain of coupled harmonic oscillators with Dirichlet ends.

With ``H = ½ Σ π_i² + ½ φᵀ K φ`` the ground state is Gaussian with
``X = ⟨φφ⟩ = K^{-1/2}/2`` and ``P = ⟨ππ⟩ = K^{1/2}/2``. The entropy of a block
follows from the symplectic eigenvalues ``ν = √eig(X_B P_B)``.

Cutting the chain in the middle leaves one entangling point, where the entropy grows
like ``(1/6) ln(1/ma)`` as the mass drops. Written against ``ln(1/m²a²)`` that is a
coefficient of ``1/12``; the fit reports both.
"""

import enum
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import linalg, stats
from scipy.special import xlogy

from etapairing.constants import MIN_FIT_SAMPLES, SYMPLECTIC_CLAMP
from etapairing.exceptions import DomainError
from etapairing.utilities import parallel_map

__all__ = [
    "Boundary",
    "CovarianceData",
    "EntropyFit",
    "HarmonicChainSpec",
    "coupling_matrix",
    "gaussian_block_entropy",
    "ground_covariance",
    "half_chain_entropy",
    "mass_scan",
    "mass_scan_fit",
    "symplectic_eigenvalues",
]

logger = logging.getLogger(__name__)


class Boundary(enum.Enum):
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class HarmonicChainSpec:
    n_osc: int
    mass: float
    spacing: float = 1.0
    boundary: Boundary = Boundary.DIRICHLET

    def __post_init__(self) -> None:
        if self.n_osc < 1:
            raise DomainError(f"n_osc must be at least 1, got {self.n_osc}")
        if not self.mass > 0:
            raise DomainError(
                f"mass must be positive (the massless entropy diverges), got "
                f"{self.mass}"
            )
        if not self.spacing > 0:
            raise DomainError(f"spacing must be positive, got {self.spacing}")


@dataclass(frozen=True, eq=False)
class CovarianceData:
    x: np.ndarray
    p: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class EntropyFit:
    samples: list[tuple[float, float]]
    slope: float
    intercept: float
    r_squared: float

    @property
    def log_mass_squared_slope(self) -> float:
        """
        Slope against ``ln(1/m²a²)`` rather than ``ln(1/ma)``.
        """
        return self.slope / 2.0


def coupling_matrix(spec: HarmonicChainSpec) -> np.ndarray:
    """
    Tridiagonal ``K`` with ``m² + 2/a²`` on the diagonal and ``-1/a²`` beside it.
    Dirichlet ends simply drop the couplings to the missing neighbours.

    :param spec: chain parameters
    :return: symmetric positive definite ``n × n`` matrix
    """
    inverse_a2 = 1.0 / spec.spacing**2
    diagonal = np.full(spec.n_osc, spec.mass**2 + 2.0 * inverse_a2)
    off_diagonal = np.full(spec.n_osc - 1, -inverse_a2)
    return np.diag(diagonal) + np.diag(off_diagonal, 1) + np.diag(off_diagonal, -1)


def ground_covariance(k_matrix: np.ndarray) -> CovarianceData:
    """
    Ground-state covariances of ``H = ½ π² + ½ φᵀ K φ`` via the spectral decomposition
    of ``K``.

    :param k_matrix: symmetric positive definite coupling matrix
    :return: ``X = K^{-1/2}/2`` and ``P = K^{1/2}/2``
    """
    k_matrix = np.asarray(k_matrix, dtype=float)
    if k_matrix.ndim != 2 or k_matrix.shape[0] != k_matrix.shape[1]:
        raise DomainError(f"coupling matrix must be square, got {k_matrix.shape}")
    if not np.allclose(k_matrix, k_matrix.T):
        raise DomainError("coupling matrix is not symmetric")
    omega2, modes = linalg.eigh(k_matrix)
    if omega2[0] <= 0:
        raise DomainError(
            f"coupling matrix is not positive definite: eigenvalue {omega2[0]:.3e}"
        )
    omega = np.sqrt(omega2)
    x = (modes / (2.0 * omega)) @ modes.T
    p = (modes * (omega / 2.0)) @ modes.T
    return CovarianceData(x=x, p=p)


def _block_indices(cov: CovarianceData, block: Iterable[int]) -> np.ndarray:
    indices = np.array(sorted(set(int(i) for i in block)), dtype=int)
    if indices.size == 0 or indices.size >= cov.n_modes:
        raise DomainError(
            f"block must be a proper nonempty subset of {cov.n_modes} oscillators"
        )
    if indices[0] < 0 or indices[-1] >= cov.n_modes:
        raise DomainError(f"block reaches outside {cov.n_modes} oscillators")
    return indices


def symplectic_eigenvalues(
    cov: CovarianceData, block: Iterable[int] | None = None
) -> np.ndarray:
    """
    ``ν_j = √eig_j(X_B P_B)`` in ascending order, without clamping. ``block=None``
    uses the whole chain, whose eigenvalues are all ``1/2`` for a pure state.
    """
    if block is None:
        x_b, p_b = cov.x, cov.p
    else:
        indices = _block_indices(cov, block)
        x_b = cov.x[np.ix_(indices, indices)]
        p_b = cov.p[np.ix_(indices, indices)]
    # X_B P_B is similar to X_B^{1/2} P_B X_B^{1/2}, so its spectrum is real
    products = np.sort(linalg.eigvals(x_b @ p_b).real)
    return np.sqrt(np.clip(products, 0.0, None))


def gaussian_block_entropy(cov: CovarianceData, block: Iterable[int]) -> float:
    """
    Von Neumann entropy of the oscillators in ``block``.

    Symplectic eigenvalues within ``SYMPLECTIC_CLAMP`` below ``1/2`` are rounding
    noise and are set to ``1/2``; anything lower breaks the uncertainty relation.

    :param cov: ground-state covariances
    :param block: oscillator indices, a proper nonempty subset (usually a range)
    :return: entropy in nats
    """
    nu = symplectic_eigenvalues(cov, block)
    if nu[0] < 0.5 - SYMPLECTIC_CLAMP:
        raise DomainError(
            f"symplectic eigenvalue {nu[0]:.10f} violates the uncertainty bound 1/2"
        )
    clamped = nu < 0.5
    if clamped.any():
        logger.debug(f"clamped {int(clamped.sum())} symplectic eigenvalues to 1/2")
        nu = np.where(clamped, 0.5, nu)
    entropy = np.sum(xlogy(nu + 0.5, nu + 0.5) - xlogy(nu - 0.5, nu - 0.5))
    return max(float(entropy), 0.0)


def half_chain_entropy(spec: HarmonicChainSpec) -> float:
    cov = ground_covariance(coupling_matrix(spec))
    entropy = gaussian_block_entropy(cov, range(spec.n_osc // 2))
    logger.debug(f"n={spec.n_osc} m={spec.mass:g}: half-chain entropy {entropy:.6f}")
    return entropy


def _check_scan(n_osc: int, spacing: float, masses: Sequence[float]) -> None:
    if len(masses) < MIN_FIT_SAMPLES:
        raise DomainError(
            f"a mass scan needs at least {MIN_FIT_SAMPLES} masses, got {len(masses)}"
        )
    if len(set(masses)) < 2:
        raise DomainError("all masses are equal, the fit is degenerate")
    for mass in masses:
        # 1/n << ma << 1: correlation length inside the chain, above the cutoff
        if not 1.0 / n_osc < mass * spacing < 1.0:
            raise DomainError(
                f"mass {mass:g} is outside the window 1/n < m·a < 1 for n={n_osc}, "
                f"a={spacing:g}"
            )


def mass_scan(
    n_osc: int, spacing: float, masses: Sequence[float], threads: int | None = None
) -> list[tuple[float, float]]:
    """
    Half-chain entropy at each mass, computed in parallel.

    :return: ``(mass, entropy)`` pairs in input order
    """
    masses = [float(m) for m in masses]
    _check_scan(n_osc, spacing, masses)
    specs = [HarmonicChainSpec(n_osc, m, spacing) for m in masses]
    entropies = parallel_map(half_chain_entropy, specs, threads)
    return list(zip(masses, entropies, strict=True))


def mass_scan_fit(
    n_osc: int,
    spacing: float,
    masses: Sequence[float],
    threads: int | None = None,
) -> EntropyFit:
    """
    Fits ``S = slope · ln(1/(m a)) + intercept`` to half-chain entropies.

    :param n_osc: chain length
    :param spacing: lattice spacing ``a`` (the UV cutoff)
    :param masses: at least four distinct masses with ``1/n < m a < 1``
    :param threads: worker count for the scan
    :return: samples and least-squares fit
    """
    samples = mass_scan(n_osc, spacing, masses, threads)
    log_inverse = [math.log(1.0 / (m * spacing)) for m, _ in samples]
    entropies = [s for _, s in samples]
    result = stats.linregress(log_inverse, entropies)
    fit = EntropyFit(
        samples=samples,
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue**2),
    )
    logger.info(
        f"mass scan n={n_osc}: slope {fit.slope:.6f}, r² {fit.r_squared:.6f}"
    )
    if fit.r_squared < 0.99:
        logger.warning(
            f"entropy is far from linear in ln(1/ma) (r² = {fit.r_squared:.4f}); "
            f"check that the masses sit well inside the scaling window"
        )
    return fit

