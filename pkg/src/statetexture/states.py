"""Core quantum-state types and linear-algebra operations.

Density matrices and pure states are immutable value objects validated on
construction; all operations here are pure functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import InvalidStateError, UsageError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-12


def _as_dims(dim: int, subsystem_dims: Optional[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    if subsystem_dims is None:
        return None
    dims = tuple(int(k) for k in subsystem_dims)
    if any(k < 1 for k in dims):
        raise UsageError(f"subsystem dimensions must be positive, got {dims}")
    if int(np.prod(dims)) != dim:
        raise UsageError(
            f"product of subsystem dimensions {dims} does not equal the total dimension {dim}"
        )
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector, optionally carrying a tensor-product structure.

    Attributes
    ----------
    amplitudes : ndarray
        Complex vector of length ``dim`` with unit 2-norm (within 1e-12).
    subsystem_dims : tuple of int, optional
        Ordered local dimensions whose product equals ``dim``.
    """

    amplitudes: np.ndarray
    subsystem_dims: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).ravel()
        object.__setattr__(self, "amplitudes", amp)
        if amp.size < 1:
            raise InvalidStateError("state vector must have at least one amplitude")
        if not np.isfinite(amp).all():
            raise InvalidStateError("state vector contains non-finite entries")
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state vector norm {nrm!r} is not 1 within tolerance")
        object.__setattr__(self, "subsystem_dims", _as_dims(amp.size, self.subsystem_dims))
        amp.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> "DensityMatrix":
        """Return the rank-one density matrix |psi><psi|."""
        amp = self.amplitudes
        return DensityMatrix(np.outer(amp, amp.conj()), self.subsystem_dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian, trace-one, positive-semidefinite matrix.

    Invariants checked on construction: ``max|rho - rho^dag| <= 1e-12``,
    ``|tr(rho) - 1| <= 1e-12``, smallest eigenvalue ``>= -1e-10``.
    """

    matrix: np.ndarray
    subsystem_dims: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got shape {mat.shape}")
        if not np.isfinite(mat).all():
            raise InvalidStateError("density matrix contains non-finite entries")
        herm = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
        if herm > HERMITICITY_TOL:
            raise InvalidStateError(f"density matrix is not Hermitian: residual {herm:.3e}")
        tr = np.trace(mat)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace {tr!r} is not 1 within tolerance")
        lo = float(np.min(np.linalg.eigvalsh(mat)))
        if lo < -PSD_TOL:
            raise InvalidStateError(f"density matrix has eigenvalue {lo:.3e} below -{PSD_TOL}")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "subsystem_dims", _as_dims(mat.shape[0], self.subsystem_dims))
        mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition of a density matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns aligned with eigenvalues

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "eigenvectors", np.asarray(self.eigenvectors, dtype=complex))


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """Schmidt spectrum of a pure bipartite cut.

    Coefficients are the squared Schmidt amplitudes (probabilities), sorted
    descending; they sum to one and there are ``min(d_A, d_B)`` of them.
    """

    cut: Tuple[Tuple[int, ...], Tuple[int, ...]]
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float))

    @property
    def largest(self) -> float:
        return float(self.coefficients[0])


StateLike = Union[PureState, DensityMatrix]


def spectral_decompose(rho: DensityMatrix) -> Spectrum:
    """Eigendecompose a density matrix with eigenvalues sorted descending.

    The reconstruction ``sum_i w_i |v_i><v_i|`` agrees with the input within
    1e-10 in max norm.
    """
    w, v = np.linalg.eigh(rho.matrix)
    order = np.argsort(w)[::-1]
    return Spectrum(w[order], v[:, order])


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out all subsystems not listed in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix
        State with ``subsystem_dims`` set.
    keep : iterable of int
        Indices of the subsystems to retain, in their original order.
    """
    if rho.subsystem_dims is None:
        raise UsageError("partial_trace requires subsystem_dims on the input state")
    dims = rho.subsystem_dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise UsageError("partial_trace: keep set must be non-empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise UsageError(f"partial_trace: keep indices {keep} out of range for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]
    t = rho.matrix.reshape(dims + dims)
    for k in sorted(traced, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + (t.ndim // 2))
    kept_dims = tuple(dims[k] for k in keep)
    d_keep = int(np.prod(kept_dims))
    return DensityMatrix(t.reshape(d_keep, d_keep), kept_dims)


def _normalize_cut(psi: PureState, cut: Iterable[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if psi.subsystem_dims is None:
        raise UsageError("schmidt_decompose requires subsystem_dims on the input state")
    n = len(psi.subsystem_dims)
    side_a = tuple(sorted(set(int(k) for k in cut)))
    if not side_a or any(k < 0 or k >= n for k in side_a) or len(side_a) == n:
        raise UsageError(f"cut {side_a} is not a proper bipartition of {n} subsystems")
    side_b = tuple(k for k in range(n) if k not in side_a)
    return side_a, side_b


def schmidt_decompose(psi: PureState, cut: Iterable[int]) -> SchmidtData:
    """Schmidt probabilities of ``psi`` across the bipartition ``cut`` vs rest.

    Returns the squared Schmidt coefficients sorted descending; they equal
    the eigenvalues of the reduced density matrix on either side.
    """
    side_a, side_b = _normalize_cut(psi, cut)
    dims = psi.subsystem_dims
    tensor = psi.amplitudes.reshape(dims)
    perm = side_a + side_b
    d_a = int(np.prod([dims[k] for k in side_a]))
    d_b = int(np.prod([dims[k] for k in side_b]))
    mat = np.transpose(tensor, perm).reshape(d_a, d_b)
    s = np.linalg.svd(mat, compute_uv=False)
    lam = np.zeros(min(d_a, d_b))
    lam[: s.size] = s ** 2
    lam = np.sort(lam)[::-1]
    lam /= lam.sum()
    return SchmidtData((side_a, side_b), lam)


def random_state(dim: int, kind: str = "pure", seed: int = 0,
                 subsystem_dims: Optional[Sequence[int]] = None) -> StateLike:
    """Sample a Haar-random pure state or a Ginibre-induced mixed state.

    Deterministic for a given ``seed``.
    """
    if dim < 1:
        raise UsageError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    if kind == "pure":
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return PureState(v / np.linalg.norm(v), subsystem_dims)
    if kind == "mixed":
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        rho = 0.5 * (rho + rho.conj().T)
        return DensityMatrix(rho, subsystem_dims)
    raise UsageError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def density_of(state: StateLike) -> DensityMatrix:
    """Coerce a pure state to its projector; pass density matrices through."""
    if isinstance(state, PureState):
        return state.projector()
    return state
