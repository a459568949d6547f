"""Pure states of a composite system and their reductions.

A pure state of system-plus-surroundings is stored as its coefficient
matrix ``amplitudes[i, mu]`` over the standard coordinate bases of the two
factors, so the flattened joint index is ``k = i * dim_b + mu``.  All
operations are pure functions over read-only values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .linalg import (
    MAX_OPERATOR_DIM,
    Operator,
    as_complex_matrix,
    dagger,
    hermiticity_residual,
    require_hermitian,
    svd,
)

__all__ = [
    "MAX_STATE_AMPLITUDES",
    "BipartitePureState",
    "DensityMatrix",
    "SchmidtResult",
    "from_product",
    "expectation",
    "reduced_density",
    "environment_density",
    "schmidt_decompose",
    "purify",
    "entanglement_entropy",
    "joint_density",
]

# Largest allowed amplitude count dim_a * dim_b for a joint pure state.
MAX_STATE_AMPLITUDES = 1 << 22

# Admission tolerance for state / vector normalization.  Off-norm inputs
# are rejected, never silently renormalized.
NORM_TOL = 1e-9

# Density-matrix admission tolerances (absolute).
DENSITY_TOL = 1e-9

# Schmidt coefficients at or below this fraction of the largest one count
# as zero when determining the rank.
RANK_CUTOFF = 1e-12

# Probabilities below this are dropped from the entropy sum (0 ln 0 = 0).
ENTROPY_CUTOFF = 1e-15


@dataclass(frozen=True)
class BipartitePureState:
    """Normalized pure state of a two-factor system.

    ``amplitudes`` has shape ``(dim_a, dim_b)``; row index for the system,
    column index for the surroundings.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        a = as_complex_matrix(self.amplitudes)
        if a.size > MAX_STATE_AMPLITUDES:
            raise CapacityError(
                f"state with {a.size} amplitudes exceeds the maximum {MAX_STATE_AMPLITUDES}"
            )
        norm_sq = float(np.sum(np.abs(a) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(
                f"state is not normalized: sum of squared amplitudes deviates "
                f"from 1 by {abs(norm_sq - 1.0):.3e}"
            )
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim_a(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def dim_b(self) -> int:
        return self.amplitudes.shape[1]


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator.

    All three axioms are enforced at construction: Hermiticity residual
    and trace deviation at most 1e-9, smallest eigenvalue at least -1e-9.
    """

    op: Operator

    def __post_init__(self):
        m = self.op.matrix
        residual = hermiticity_residual(m)
        if residual > DENSITY_TOL:
            raise ValidationError(
                f"density matrix is not Hermitian: residual {residual:.3e}"
            )
        trace_dev = abs(complex(np.trace(m)) - 1.0)
        if trace_dev > DENSITY_TOL:
            raise ValidationError(
                f"density matrix trace deviates from 1 by {trace_dev:.3e}"
            )
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -DENSITY_TOL:
            raise ValidationError(
                f"density matrix is not positive semidefinite: "
                f"smallest eigenvalue {min_eig:.3e}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def dim(self) -> int:
        return self.op.dim


@dataclass(frozen=True)
class SchmidtResult:
    """Biorthogonal expansion of a bipartite pure state.

    ``coefficients`` are nonnegative and descending with squares summing
    to 1; ``basis_a`` / ``basis_b`` hold the matching orthonormal columns.
    Columns of ``basis_b`` past ``rank`` are zero placeholders: the
    surroundings vector is undefined where the coefficient vanishes.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray
    rank: int

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.float64)
        if np.any(c < 0.0) or np.any(np.diff(c) > 0.0):
            raise ValidationError("Schmidt coefficients must be nonnegative and descending")
        sum_dev = abs(float(np.sum(c**2)) - 1.0)
        if sum_dev > 1e-10:
            raise ValidationError(
                f"squared Schmidt coefficients must sum to 1, deviation {sum_dev:.3e}"
            )
        expected_rank = int(np.sum(c > RANK_CUTOFF * c[0]))
        if self.rank != expected_rank:
            raise ValidationError(
                f"rank {self.rank} does not match coefficient count {expected_rank}"
            )


def from_product(vec_a: np.ndarray, vec_b: np.ndarray) -> BipartitePureState:
    """Product state with amplitudes ``a[i] * b[mu]``.

    Both vectors must be unit norm within 1e-9.
    """
    va = np.asarray(vec_a, dtype=np.complex128).reshape(-1)
    vb = np.asarray(vec_b, dtype=np.complex128).reshape(-1)
    for name, v in (("first", va), ("second", vb)):
        dev = abs(float(np.linalg.norm(v)) - 1.0)
        if dev > NORM_TOL:
            raise ValidationError(f"{name} factor is not unit norm: deviation {dev:.3e}")
    return BipartitePureState(np.outer(va, vb))


def expectation(state: BipartitePureState, observable: Operator) -> float:
    """Expectation value of ``observable (x) identity`` in the given state.

    Evaluated as the double sum over amplitudes and matrix elements of the
    system observable, without forming any density matrix.  The result must
    be real; an imaginary residue above 1e-10 is reported as a defect.
    """
    if observable.dim != state.dim_a:
        raise ValidationError(
            f"observable dimension {observable.dim} does not match "
            f"system dimension {state.dim_a}"
        )
    require_hermitian(observable.matrix, "observable")
    a = state.amplitudes
    value = complex(np.einsum("jm,ji,im->", a.conj(), observable.matrix, a))
    if abs(value.imag) > 1e-10:
        raise ValidationError(
            f"expectation value has imaginary residue {value.imag:.3e}"
        )
    return value.real


def reduced_density(state: BipartitePureState) -> DensityMatrix:
    """Density matrix of the system factor, surroundings traced out."""
    a = state.amplitudes
    return DensityMatrix(Operator(a @ dagger(a)))


def environment_density(state: BipartitePureState) -> DensityMatrix:
    """Density matrix of the surroundings factor, system traced out."""
    a = state.amplitudes
    return DensityMatrix(Operator(a.T @ a.conj()))


def schmidt_decompose(state: BipartitePureState) -> SchmidtResult:
    """Biorthogonal decomposition of a bipartite pure state.

    The amplitude matrix is factored as ``sum_k c_k u_k b_k^T`` with
    orthonormal ``u_k`` (system) and ``b_k`` (surroundings).  Each system
    column is rephased so its first entry of largest modulus is real and
    nonnegative, with the surroundings column compensating, which makes the
    output deterministic whenever the coefficients are nondegenerate.
    """
    u, s, v = svd(state.amplitudes)
    basis_b = v.conj()  # b_k[mu] = conj(V[mu, k]) reproduces a = sum c u b^T

    rank = int(np.sum(s > RANK_CUTOFF * s[0]))

    u = u.copy()
    basis_b = basis_b.copy()
    for k in range(u.shape[1]):
        col = u[:, k]
        lead = int(np.argmax(np.abs(col)))  # first entry of largest modulus
        phase = col[lead] / abs(col[lead])
        u[:, k] = col * phase.conjugate()
        if k < rank:
            basis_b[:, k] = basis_b[:, k] * phase
    basis_b[:, rank:] = 0.0

    result = SchmidtResult(s, u, basis_b, rank)

    rebuilt = (u * s[np.newaxis, :]) @ basis_b.T
    residual = float(np.linalg.norm(state.amplitudes - rebuilt))
    if residual > 1e-10:
        raise ValidationError(
            f"Schmidt reconstruction residual {residual:.3e} exceeds 1e-10"
        )
    return result


def purify(rho: DensityMatrix) -> BipartitePureState:
    """Pure state on a doubled space whose system reduction is ``rho``.

    The surroundings factor has the same dimension as the system.  Its
    coordinate basis is paired with the eigenvectors of ``rho`` in
    descending-eigenvalue order, so the dominant weight sits at
    surroundings index 0 and a projector purifies to a product state on
    the (0, 0) corner.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(rho.matrix)
    weights = np.clip(eigenvalues[::-1], 0.0, None)
    return BipartitePureState(eigenvectors[:, ::-1] * np.sqrt(weights)[np.newaxis, :])


def entanglement_entropy(state: BipartitePureState) -> float:
    """Entropy of entanglement in nats.

    ``-sum p ln p`` over the squared Schmidt coefficients, dropping
    probabilities at or below 1e-15.  Ranges from 0 (product state) to
    ``ln min(dim_a, dim_b)`` (maximally entangled).
    """
    s = np.linalg.svd(state.amplitudes, compute_uv=False)
    p = s**2
    p = p[p > ENTROPY_CUTOFF]
    return float(-np.sum(p * np.log(p)))


def joint_density(state: BipartitePureState) -> DensityMatrix:
    """Projector onto the state, on the flattened joint space.

    Row-major flattening keeps the system index major, so the matrix acts
    on joint index ``k = i * dim_b + mu``.
    """
    joint_dim = state.dim_a * state.dim_b
    if joint_dim > MAX_OPERATOR_DIM:
        raise CapacityError(
            f"joint dimension {joint_dim} exceeds the maximum {MAX_OPERATOR_DIM}"
        )
    vec = state.amplitudes.reshape(-1)
    return DensityMatrix(Operator(np.outer(vec, vec.conj())))
