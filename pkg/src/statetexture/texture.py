"""Texture, grand sum and rugosity of quantum states.

The texture of a state in an orthonormal basis is one minus the normalized
grand sum (the sum of all matrix elements of the state written in that
basis).  It vanishes exactly on the projector of the uniform superposition
of the basis kets and reaches one on anything orthogonal to it; rugosity is
the logarithmic form of the same quantity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import InvalidStateError, UsageError
from .states import PureState, StateLike, density_of, spectral_decompose

IMAG_RESIDUAL_LIMIT = 1e-8
GRAND_SUM_SLACK = 1e-10


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """An orthonormal basis given as a unitary whose columns are the kets."""

    unitary: np.ndarray

    def __post_init__(self):
        u = np.array(self.unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise UsageError(f"basis unitary must be square, got shape {u.shape}")
        resid = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if resid > 1e-10:
            raise UsageError(f"basis columns are not orthonormal: residual {resid:.3e}")
        object.__setattr__(self, "unitary", u)
        u.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]


@dataclass(frozen=True)
class TextureReport:
    """Grand sum, texture and rugosity of one (state, basis) pair."""

    grand_sum: float
    texture: float
    rugosity: float
    imag_residual: float


@dataclass(frozen=True, eq=False)
class TextureExtrema:
    """Extremal textures over all orthonormal bases, with witness bases."""

    t_max: float
    t_min: float
    witness_unitaries: Optional[Tuple[np.ndarray, np.ndarray]] = None


def computational_basis(d: int) -> OrthonormalBasis:
    """The computational basis of dimension ``d`` (identity unitary)."""
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    return OrthonormalBasis(np.eye(d, dtype=complex))


def fourier_basis(d: int) -> OrthonormalBasis:
    """Discrete-Fourier basis: column j holds amplitudes w^(k j)/sqrt(d)
    with w = exp(2 pi i / d)."""
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    k = np.arange(d)
    u = np.exp(2j * np.pi * np.outer(k, k) / d) / math.sqrt(d)
    return OrthonormalBasis(u)


def texture_less_state(basis: OrthonormalBasis) -> PureState:
    """The unique zero-texture state of a basis: the uniform superposition
    of its kets, expressed in computational coordinates."""
    d = basis.dim
    uniform = np.full(d, 1.0 / math.sqrt(d), dtype=complex)
    return PureState(basis.unitary @ uniform)


def texture_in_basis(state: StateLike, basis: OrthonormalBasis) -> TextureReport:
    """Texture report of a state relative to a basis.

    The grand sum is computed as ``d <s1| U^dag rho U |s1>`` with ``|s1>``
    the uniform superposition in basis coordinates; its imaginary part is
    recorded and must stay below 1e-8 for Hermitian inputs.
    """
    rho = density_of(state)
    d = rho.dim
    if basis.dim != d:
        raise UsageError(f"basis dimension {basis.dim} does not match state dimension {d}")
    s1 = basis.unitary @ np.full(d, 1.0 / math.sqrt(d), dtype=complex)
    grand = d * np.vdot(s1, rho.matrix @ s1)
    imag_residual = abs(grand.imag)
    if imag_residual > IMAG_RESIDUAL_LIMIT:
        raise InvalidStateError(
            f"grand sum has imaginary residual {imag_residual:.3e}; input state is corrupted"
        )
    e = grand.real
    if e < -GRAND_SUM_SLACK or e > d + GRAND_SUM_SLACK:
        raise InvalidStateError(f"grand sum {e!r} outside [0, {d}] beyond tolerance")
    e = min(max(e, 0.0), float(d))
    texture = 1.0 - e / d
    rugosity = math.inf if e == 0.0 else -math.log(e / d)
    return TextureReport(e, texture, rugosity, imag_residual)


def _unitary_mapping_uniform_to(target: np.ndarray) -> np.ndarray:
    """Build a unitary U with U |uniform> = |target>."""
    d = target.size
    stacked = np.concatenate([target[:, None], np.eye(d, dtype=complex)], axis=1)
    q = np.linalg.qr(stacked)[0]
    # column 0 of q is target up to a phase; rotate it back onto target
    q[:, 0] *= np.vdot(q[:, 0], target)
    k_grid = np.arange(d)
    fourier = np.exp(2j * np.pi * np.outer(k_grid, k_grid) / d) / math.sqrt(d)
    return q @ fourier.conj().T


def texture_extrema(state: StateLike, with_witnesses: bool = True) -> TextureExtrema:
    """Extremal textures over all bases: ``1 - smallest`` and ``1 - largest``
    eigenvalue of the state, with witness bases mapping the matching
    eigenvector onto the uniform superposition."""
    rho = density_of(state)
    spec = spectral_decompose(rho)
    lam = spec.eigenvalues
    t_max = 1.0 - float(lam[-1])
    t_min = 1.0 - float(lam[0])
    witnesses = None
    if with_witnesses:
        u_for_max = _unitary_mapping_uniform_to(spec.eigenvectors[:, -1])
        u_for_min = _unitary_mapping_uniform_to(spec.eigenvectors[:, 0])
        witnesses = (u_for_max, u_for_min)
    return TextureExtrema(t_max, t_min, witnesses)


def rugosity_pure(psi: PureState) -> float:
    """Rugosity of a pure state in the computational basis.

    Equals ``-ln |<u|psi>|^2`` where ``|u>`` is the uniform superposition of
    all computational states, evaluated in O(d) from the amplitude sum.
    Returns ``inf`` when the overlap underflows to zero.
    """
    d = psi.dim
    overlap = abs(np.sum(psi.amplitudes)) ** 2 / d
    if overlap == 0.0:
        warnings.warn("state is orthogonal to the uniform superposition; rugosity is infinite",
                      RuntimeWarning, stacklevel=2)
        return math.inf
    return -math.log(overlap)
