"""Closed-form resource monotones built on minimal texture.

Each monotone is the smallest texture the state can show over the free
unitaries of one resource theory: incoherent unitaries for coherence,
Clifford unitaries for single-qubit non-stabilizerness, local unitaries for
entanglement, bi-local unitaries for genuine multipartite entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np

from .errors import ResourceLimitError, UsageError
from .states import PureState, density_of, schmidt_decompose, _normalize_cut
from .texture import OrthonormalBasis, texture_in_basis

THEORIES = ("coherence", "nonstabilizerness", "entanglement_bipartite", "gme")

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

MAX_GME_PARTIES = 12


@dataclass(frozen=True)
class MonotoneResult:
    theory: str
    value: float
    witness: Dict[str, Any]


def coherence_monotone(psi: PureState) -> MonotoneResult:
    """``1 - max_i |c_i|^2`` over computational amplitudes; the witness is
    the first index attaining the maximum."""
    probs = np.abs(psi.amplitudes) ** 2
    idx = int(np.argmax(probs))
    return MonotoneResult("coherence", float(1.0 - probs[idx]),
                          {"index": idx, "probability": float(probs[idx])})


def nonstabilizerness_monotone(psi: PureState) -> MonotoneResult:
    """Single-qubit magic: ``(1 - max_k |<sigma_k>|) / 2`` over the three
    Pauli axes."""
    if psi.dim != 2:
        raise UsageError(
            f"the closed form covers single qubits only, got dimension {psi.dim}"
        )
    amp = psi.amplitudes
    mags = {
        "x": float(np.real(np.vdot(amp, SIGMA_X @ amp))),
        "y": float(np.real(np.vdot(amp, SIGMA_Y @ amp))),
        "z": float(np.real(np.vdot(amp, SIGMA_Z @ amp))),
    }
    axis = max(("x", "y", "z"), key=lambda k: abs(mags[k]))
    value = 0.5 * (1.0 - abs(mags[axis]))
    return MonotoneResult("nonstabilizerness", value,
                          {"axis": axis, "magnetization": mags[axis]})


def entanglement_monotone(psi: PureState, cut: Iterable[int]) -> MonotoneResult:
    """``1 - lambda_1`` with ``lambda_1`` the largest Schmidt probability of
    the given bipartition."""
    schmidt = schmidt_decompose(psi, cut)
    lam1 = schmidt.largest
    return MonotoneResult("entanglement_bipartite", float(1.0 - lam1),
                          {"cut": schmidt.cut, "largest_schmidt": lam1})


def _bipartitions(n_parties: int):
    # subsets containing party 0; excludes the trivial full set
    for mask in range(2 ** (n_parties - 1) - 1):
        yield (0,) + tuple(k + 1 for k in range(n_parties - 1) if (mask >> k) & 1)


def gme_monotone(psi: PureState) -> MonotoneResult:
    """Genuine multipartite entanglement: ``1 - max`` of the largest Schmidt
    probability over every nontrivial bipartition (exhaustive enumeration)."""
    if psi.subsystem_dims is None or len(psi.subsystem_dims) < 2:
        raise UsageError("gme_monotone requires at least two subsystems")
    n = len(psi.subsystem_dims)
    if n > MAX_GME_PARTIES:
        raise ResourceLimitError(
            f"bipartition enumeration is limited to {MAX_GME_PARTIES} parties, got {n}"
        )
    best_lam = -1.0
    best_cut = None
    for side_a in _bipartitions(n):
        lam1 = schmidt_decompose(psi, side_a).largest
        if lam1 > best_lam:
            best_lam = lam1
            best_cut = side_a
    side_b = tuple(k for k in range(n) if k not in best_cut)
    return MonotoneResult("gme", float(1.0 - best_lam),
                          {"cut": (best_cut, side_b), "largest_schmidt": best_lam})


def _schmidt_witness_basis(psi: PureState, side_a, side_b) -> np.ndarray:
    """Product basis whose uniform superposition is the leading Schmidt pair."""
    from .texture import _unitary_mapping_uniform_to

    dims = psi.subsystem_dims
    d_a = int(np.prod([dims[k] for k in side_a]))
    d_b = int(np.prod([dims[k] for k in side_b]))
    tensor = psi.amplitudes.reshape(dims)
    mat = np.transpose(tensor, side_a + side_b).reshape(d_a, d_b)
    u, _, vh = np.linalg.svd(mat)
    u_a = _unitary_mapping_uniform_to(u[:, 0])
    u_b = _unitary_mapping_uniform_to(vh[0, :])
    return np.kron(u_a, u_b)


def _haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def sampled_local_texture_bound(psi: PureState, cut: Iterable[int],
                                samples: int, seed: int = 0,
                                include_witness: bool = True) -> float:
    """Minimum texture over sampled product bases of the given cut: an upper
    bound on the entanglement monotone, tight when the Schmidt-aligned
    witness basis is included."""
    side_a, side_b = _normalize_cut(psi, cut)
    dims = psi.subsystem_dims
    perm = side_a + side_b
    d_a = int(np.prod([dims[k] for k in side_a]))
    d_b = int(np.prod([dims[k] for k in side_b]))
    amp = np.transpose(psi.amplitudes.reshape(dims), perm).reshape(d_a * d_b)
    psi_sorted = PureState(amp, (d_a, d_b))
    rho = psi_sorted.projector()
    rng = np.random.default_rng(seed)
    best = np.inf
    for _ in range(int(samples)):
        u = np.kron(_haar_unitary(d_a, rng), _haar_unitary(d_b, rng))
        best = min(best, texture_in_basis(rho, OrthonormalBasis(u)).texture)
    if include_witness:
        w = _schmidt_witness_basis(psi, side_a, side_b)
        best = min(best, texture_in_basis(rho, OrthonormalBasis(w)).texture)
    return float(best)


def single_qubit_clifford_group() -> List[np.ndarray]:
    """The 24 single-qubit Clifford unitaries (modulo global phase),
    generated by closure of the Hadamard and phase gates."""
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    s = np.array([[1.0, 0.0], [0.0, 1.0j]], dtype=complex)

    def canon(u: np.ndarray) -> Tuple:
        flat = u.ravel()
        k = np.argmax(np.abs(flat) > 1e-9)
        u = u * (np.conj(flat[k]) / abs(flat[k]))
        return tuple(np.round(u.ravel(), 9))

    group: Dict[Tuple, np.ndarray] = {}
    frontier = [np.eye(2, dtype=complex)]
    group[canon(frontier[0])] = frontier[0]
    while frontier:
        nxt = []
        for u in frontier:
            for g in (h, s):
                v = g @ u
                key = canon(v)
                if key not in group:
                    group[key] = v
                    nxt.append(v)
        frontier = nxt
    if len(group) != 24:
        raise AssertionError(f"Clifford closure produced {len(group)} elements")
    return list(group.values())


def concurrence_two_qubit(state) -> float:
    """Wootters concurrence of a two-qubit state:
    ``max(0, sqrt(nu1) - sqrt(nu2) - sqrt(nu3) - sqrt(nu4))`` from the
    eigenvalues of ``rho (sy x sy) rho* (sy x sy)`` sorted descending."""
    rho = density_of(state)
    if rho.dim != 4:
        raise UsageError(f"concurrence is defined for two qubits, got dimension {rho.dim}")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    m = rho.matrix @ yy @ rho.matrix.conj() @ yy
    nu = np.sort(np.abs(np.linalg.eigvals(m)))[::-1]
    roots = np.sqrt(nu)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))
