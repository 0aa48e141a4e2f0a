"""
Entanglement measures for small bipartite density matrices: partial transpose, the
Peres-Horodecki (PPT) test, negativity and von Neumann entropy.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.special import entr

from etapairing.constants import (
    ENTROPY_EIGENVALUE_CUTOFF,
    HERMITIAN_TOLERANCE,
    NORM_TOLERANCE,
    PPT_TOLERANCE,
    PSD_TOLERANCE,
)
from etapairing.exceptions import DomainError

__all__ = [
    "DensityMatrix",
    "is_ppt",
    "min_partial_transpose_eigenvalue",
    "mutual_information",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "projector",
    "von_neumann_entropy",
]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    A ``d × d`` density matrix with a bipartition ``d = dA · dB``.

    Shape, Hermiticity and trace are checked on construction; positivity is checked
    wherever a spectrum is computed anyway (``von_neumann_entropy``).

    :param matrix: the matrix
    :param dims: ``(dA, dB)``
    """

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DomainError(f"density matrix must be square, got {matrix.shape}")
        d_a, d_b = (int(x) for x in self.dims)
        if d_a < 1 or d_b < 1 or d_a * d_b != matrix.shape[0]:
            raise DomainError(
                f"bipartition {d_a}x{d_b} does not match dimension {matrix.shape[0]}"
            )
        if not np.allclose(matrix, matrix.conj().T, rtol=0, atol=HERMITIAN_TOLERANCE):
            raise DomainError("density matrix is not Hermitian")
        trace = np.trace(matrix)
        if abs(trace - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"density matrix has trace {trace:.12g}, expected 1")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dims", (d_a, d_b))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(self.matrix)


def projector(vector: np.ndarray, dims: tuple[int, int]) -> DensityMatrix:
    """
    ``|ψ⟩⟨ψ|`` for a unit vector ``ψ``.
    """
    psi = np.asarray(vector, dtype=complex)
    return DensityMatrix(np.outer(psi, psi.conj()), dims)


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    """
    Transposes the B factor: ``⟨a b|ρ^{T_B}|a' b'⟩ = ⟨a b'|ρ|a' b⟩``.

    :param rho: bipartite density matrix
    :return: the partially transposed matrix (Hermitian, same trace)
    """
    d_a, d_b = rho.dims
    blocks = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    return blocks.transpose(0, 3, 2, 1).reshape(rho.dimension, rho.dimension)


def min_partial_transpose_eigenvalue(rho: DensityMatrix) -> float:
    return float(linalg.eigvalsh(partial_transpose(rho))[0])


def is_ppt(rho: DensityMatrix, tolerance: float = PPT_TOLERANCE) -> bool:
    """
    Peres-Horodecki test. Eigenvalues in ``(-tolerance, 0)`` count as zero, so
    product states stay separable under rounding noise.
    """
    return min_partial_transpose_eigenvalue(rho) > -tolerance


def negativity(rho: DensityMatrix, tolerance: float = PPT_TOLERANCE) -> float:
    """
    Sum of the magnitudes of the negative partial-transpose eigenvalues, using the
    same tolerance as ``is_ppt`` so that negativity is zero exactly for PPT states.

    :param rho: bipartite density matrix
    :param tolerance: eigenvalues above ``-tolerance`` are treated as non-negative
    :return: negativity ≥ 0
    """
    spectrum = linalg.eigvalsh(partial_transpose(rho))
    negative = spectrum[spectrum < -tolerance]
    return float(-negative.sum()) if negative.size else 0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    ``-Tr ρ ln ρ`` in nats. Eigenvalues below ``ENTROPY_EIGENVALUE_CUTOFF`` are
    skipped (``0 ln 0 = 0``).

    :param rho: density matrix
    :return: entropy ≥ 0
    """
    spectrum = rho.eigenvalues()
    if spectrum[0] < -PSD_TOLERANCE:
        raise DomainError(
            f"density matrix is not positive semidefinite: eigenvalue {spectrum[0]:.3e}"
        )
    kept = spectrum[spectrum > ENTROPY_EIGENVALUE_CUTOFF]
    return float(np.sum(entr(kept)))


def partial_trace(rho: DensityMatrix, keep: str = "A") -> DensityMatrix:
    """
    Traces out one factor of the bipartition.

    :param rho: bipartite density matrix
    :param keep: ``"A"`` or ``"B"``, the factor to keep
    :return: reduced density matrix (trivially bipartitioned as ``(d, 1)``)
    """
    d_a, d_b = rho.dims
    blocks = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        reduced = np.einsum("ijkj->ik", blocks)
        return DensityMatrix(reduced, (d_a, 1))
    if keep == "B":
        reduced = np.einsum("ijil->jl", blocks)
        return DensityMatrix(reduced, (d_b, 1))
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def mutual_information(rho: DensityMatrix) -> float:
    """
    ``S(A) + S(B) - S(AB)``, the total (classical plus quantum) correlation across the
    bipartition.
    """
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )
