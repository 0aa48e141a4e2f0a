"""
The qubit picture of η states: site empty is ``|0⟩``, site paired is ``|1⟩``, and
``|k, n-k⟩`` becomes the Dicke state of ``n`` qubits with ``k`` excitations.

Every pair of sites sees the same reduced state

    ρ₁₂ = a |00⟩⟨00| + b |11⟩⟨11| + c |ψ⁺⟩⟨ψ⁺|,   |ψ⁺⟩ = (|01⟩ + |10⟩)/√2

with ``a = k(k-1)/(n(n-1))``, ``b = (n-k)(n-k-1)/(n(n-1))``, ``c = 2k(n-k)/(n(n-1))``.

.. note::

    The coherence sits between ``|01⟩`` and ``|10⟩``; writing ``ψ⁺`` over
    ``|00⟩, |11⟩`` does not match the partial trace of a Dicke state. Likewise the
    partial transpose of ρ₁₂ has the eigenvalue ``(a + b - √((a-b)² + c²))/2``, so the
    state is entangled iff ``ab < c²/4``, i.e. ``(k-1)(n-k-1) < k(n-k)`` for
    ``0 < k < n``. The variant with ``4c²`` under the root does not reduce to that
    inequality.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from etapairing.constants import MAX_DICKE_QUBITS, MAX_REDUCED_QUBITS
from etapairing.exceptions import CapacityError, DomainError
from etapairing.utilities import binary_entropy, shannon_entropy
from etapairing.witness import (
    DensityMatrix,
    is_ppt,
    mutual_information,
    negativity,
    von_neumann_entropy,
)

__all__ = [
    "DickeSpec",
    "TwoSiteABC",
    "block_entropy",
    "block_entropy_numeric",
    "dicke_state",
    "hypergeometric_weights",
    "is_two_site_entangled",
    "ppt_entangled",
    "reduce_to_sites",
    "two_site_abc",
    "two_site_abc_exact",
    "two_site_mutual_information",
    "two_site_negativity",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DickeSpec:
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"n must be at least 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise DomainError(f"k={self.k} must lie in [0, {self.n}]")

    @property
    def filling(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class TwoSiteABC:
    a: float
    b: float
    c: float
    coherence_phase: float = 0.0

    def to_rho(self) -> DensityMatrix:
        """
        Assembles ρ₁₂ in the basis ``|00⟩, |01⟩, |10⟩, |11⟩``; the ``|01⟩⟨10|`` entry
        is ``(c/2) e^{iθ}`` for coherence phase ``θ``.
        """
        coherence = 0.5 * self.c * np.exp(1j * self.coherence_phase)
        matrix = np.zeros((4, 4), dtype=complex)
        matrix[0, 0] = self.a
        matrix[3, 3] = self.b
        matrix[1, 1] = matrix[2, 2] = 0.5 * self.c
        matrix[1, 2] = coherence
        matrix[2, 1] = np.conj(coherence)
        return DensityMatrix(matrix, (2, 2))


TwoSiteRho = DensityMatrix


def _require_two_sites(spec: DickeSpec) -> None:
    if spec.n < 2:
        raise DomainError(f"two-site quantities need n >= 2, got n={spec.n}")


def dicke_state(spec: DickeSpec) -> np.ndarray:
    """
    Equal superposition of all weight-``k`` bitstrings of ``n`` qubits. Qubit 0 is the
    most significant bit of the index.

    :param spec: ``(n, k)``
    :return: ``2**n`` complex amplitudes
    """
    if spec.n > MAX_DICKE_QUBITS:
        raise CapacityError(
            f"dicke_state is limited to {MAX_DICKE_QUBITS} qubits, got n={spec.n}"
        )
    indices = np.arange(1 << spec.n, dtype=np.int64)
    weights = np.zeros_like(indices)
    for bit in range(spec.n):
        weights += (indices >> bit) & 1
    vector = np.zeros(1 << spec.n, dtype=complex)
    vector[weights == spec.k] = 1.0 / math.sqrt(math.comb(spec.n, spec.k))
    return vector


def reduce_to_sites(state: np.ndarray, sites) -> DensityMatrix:
    """
    Partial trace of an ``n``-qubit pure state onto ``sites``. This is the brute-force
    oracle for the closed forms of this module.

    The result is bipartitioned as first kept site versus the rest, in ascending site
    order.

    :param state: ``2**n`` amplitudes, qubit 0 most significant
    :param sites: sites to keep
    :return: reduced density matrix over ``len(sites)`` qubits
    """
    state = np.asarray(state, dtype=complex)
    n = int(round(math.log2(state.size)))
    if 1 << n != state.size:
        raise DomainError(f"state of size {state.size} is not an n-qubit vector")
    kept = sorted(set(int(s) for s in sites))
    if not kept:
        raise DomainError("reduce_to_sites needs at least one site")
    for site in kept:
        if not 0 <= site < n:
            raise DomainError(f"site {site} is outside a register of {n} qubits")
    if len(kept) > MAX_REDUCED_QUBITS:
        raise CapacityError(
            f"reductions are limited to {MAX_REDUCED_QUBITS} qubits, got {len(kept)}"
        )
    traced = [s for s in range(n) if s not in kept]
    tensor = state.reshape((2,) * n).transpose(kept + traced)
    amplitudes = tensor.reshape(1 << len(kept), -1)
    matrix = amplitudes @ amplitudes.conj().T
    logger.debug(f"reduced {n} qubits to sites {kept}, tracing out {len(traced)}")
    dims = (2, 1 << (len(kept) - 1)) if len(kept) > 1 else (2, 1)
    return DensityMatrix(matrix, dims)


def two_site_abc_exact(spec: DickeSpec) -> tuple[Fraction, Fraction, Fraction]:
    _require_two_sites(spec)
    n, k = spec.n, spec.k
    pairs = Fraction(1, n * (n - 1))
    return (
        k * (k - 1) * pairs,
        (n - k) * (n - k - 1) * pairs,
        2 * k * (n - k) * pairs,
    )


def two_site_abc(spec: DickeSpec) -> TwoSiteABC:
    """
    The two-site reduced state of ``|k, n-k⟩`` in closed form.

    :param spec: ``(n, k)`` with ``n >= 2``
    :return: the ``(a, b, c)`` triple
    """
    a, b, c = two_site_abc_exact(spec)
    return TwoSiteABC(float(a), float(b), float(c))


def is_two_site_entangled(spec: DickeSpec) -> bool:
    """
    Closed-form separability verdict: entangled iff ``0 < k < n`` and
    ``(k-1)(n-k-1) < k(n-k)``, which holds for every such ``k``.
    """
    _require_two_sites(spec)
    n, k = spec.n, spec.k
    if not 0 < k < n:
        return False
    return (k - 1) * (n - k - 1) < k * (n - k)


def two_site_negativity(spec: DickeSpec) -> float:
    return negativity(two_site_abc(spec).to_rho())


def ppt_entangled(spec: DickeSpec) -> bool:
    """
    Numeric verdict: the assembled ρ₁₂ violates the PPT criterion.
    """
    return not is_ppt(two_site_abc(spec).to_rho())


def two_site_mutual_information(spec: DickeSpec) -> float:
    return mutual_information(two_site_abc(spec).to_rho())


def hypergeometric_weights(spec: DickeSpec, m: int) -> list[float]:
    """
    Probability of finding ``j`` pairs inside an ``m``-site block,
    ``C(m,j) C(n-m,k-j) / C(n,k)`` for ``j = 0..m``, computed in exact integers.
    Outside ``max(0, k-(n-m)) <= j <= min(m, k)`` the weight is zero.
    """
    _check_block(spec, m)
    n, k = spec.n, spec.k
    total = math.comb(n, k)
    weights = [0.0] * (m + 1)
    for j in range(max(0, k - (n - m)), min(m, k) + 1):
        weights[j] = float(Fraction(math.comb(m, j) * math.comb(n - m, k - j), total))
    return weights


def _check_block(spec: DickeSpec, m: int) -> None:
    if not 1 <= m <= spec.n - 1:
        raise DomainError(f"block size m={m} must lie in [1, {spec.n - 1}]")


def block_entropy(spec: DickeSpec, m: int) -> float:
    """
    Entanglement entropy between ``m`` sites and the other ``n - m``. The reduced
    state of a Dicke state is diagonal in the block's own Dicke basis, with the
    hypergeometric weights as eigenvalues, so the entropy is their Shannon entropy.

    :param spec: ``(n, k)``
    :param m: block size, ``1 <= m <= n-1``
    :return: entropy in nats
    """
    if m == 1:
        _check_block(spec, m)
        return binary_entropy(spec.filling)
    return shannon_entropy(hypergeometric_weights(spec, m))


def block_entropy_numeric(spec: DickeSpec, m: int) -> float:
    _check_block(spec, m)
    rho = reduce_to_sites(dicke_state(spec), range(m))
    return von_neumann_entropy(rho)
