"""Convex-roof extension of the pure-state monotones.

The roof value of a mixed state is the smallest probability-weighted average
of a pure-state monotone over decompositions ``rho = sum_i p_i |psi_i><psi_i|``.
Decompositions are parameterized by isometries acting on the eigenbranches of
``rho``; the optimizer is a derivative-free coordinate descent over the
angles of two-branch rotations (each step re-mixes one pair of branches via
bounded scalar line searches), restarted from random isometries.  The result
is always an upper bound on the roof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import UsageError
from .monotones import (MonotoneResult, THEORIES, coherence_monotone,
                        concurrence_two_qubit, entanglement_monotone,
                        gme_monotone, nonstabilizerness_monotone,
                        _bipartitions)
from .states import DensityMatrix, PureState, _normalize_cut, spectral_decompose

RANK_CUTOFF = 1e-12
ANGLE_XATOL = 1e-5


@dataclass(frozen=True)
class RoofConfig:
    """Optimizer knobs: decomposition cardinality (defaults to rank squared),
    number of random restarts, per-sweep improvement tolerance, sweep cap,
    and the seed feeding each restart's substream."""

    cardinality: Optional[int] = None
    restarts: int = 32
    tolerance: float = 1e-6
    max_iterations: int = 2000
    seed: int = 0


@dataclass(frozen=True, eq=False)
class ConvexRoofResult:
    value: float
    decomposition: List[Tuple[float, PureState]]
    restarts_used: int
    converged: bool
    gap_to_oracle: Optional[float] = None


def _term_builder(theory: str, dims, cut) -> Callable[[np.ndarray], float]:
    """Return f(w) = ||w||^2 * monotone(w / ||w||) for unnormalized branch
    vectors; closed forms avoid the normalization where possible."""
    if theory == "coherence":
        def term(w):
            probs = np.abs(w) ** 2
            return float(probs.sum() - probs.max())
        return term

    if theory == "nonstabilizerness":
        if int(np.prod(dims)) != 2:
            raise UsageError("non-stabilizerness roof needs a single qubit")

        def term(w):
            a, b = w[0], w[1]
            mx = 2.0 * np.real(np.conj(a) * b)
            my = 2.0 * np.imag(np.conj(a) * b)
            mz = (a.real ** 2 + a.imag ** 2) - (b.real ** 2 + b.imag ** 2)
            n2 = (a.real ** 2 + a.imag ** 2) + (b.real ** 2 + b.imag ** 2)
            return 0.5 * (n2 - max(abs(mx), abs(my), abs(mz)))
        return term

    if theory == "entanglement_bipartite":
        side_a, side_b = cut
        d_a = int(np.prod([dims[k] for k in side_a]))
        d_b = int(np.prod([dims[k] for k in side_b]))
        perm = side_a + side_b
        n = len(dims)
        shaped = tuple(dims)

        if (d_a, d_b) == (2, 2) and n == 2:
            def term(w):
                # smallest squared singular value of the 2x2 coefficient matrix
                n2 = np.real(np.vdot(w, w))
                det = w[0] * w[3] - w[1] * w[2]
                disc = n2 * n2 - 4.0 * (det.real ** 2 + det.imag ** 2)
                return 0.5 * (n2 - math.sqrt(max(disc, 0.0)))
            return term

        def term(w):
            mat = np.transpose(w.reshape(shaped), perm).reshape(d_a, d_b)
            s = np.linalg.svd(mat, compute_uv=False)
            n2 = float(np.sum(s ** 2))
            return n2 - float(s[0] ** 2)
        return term

    if theory == "gme":
        n = len(dims)
        cuts = list(_bipartitions(n))
        shaped = tuple(dims)

        def term(w):
            t = w.reshape(shaped)
            n2 = np.real(np.vdot(w, w))
            best = -1.0
            for side_a in cuts:
                side_b = tuple(k for k in range(n) if k not in side_a)
                d_a = int(np.prod([dims[k] for k in side_a]))
                mat = np.transpose(t, side_a + side_b).reshape(d_a, -1)
                s0 = np.linalg.svd(mat, compute_uv=False)[0]
                best = max(best, float(s0 ** 2))
            return n2 - best
        return term

    raise UsageError(f"unknown theory {theory!r}; pick one of {THEORIES}")


def _pair_sweep(branches: np.ndarray, terms: np.ndarray,
                term: Callable[[np.ndarray], float]) -> float:
    """One full pass of two-branch rotations; mutates branches/terms in place
    and returns the updated objective."""
    m = branches.shape[0]
    for i in range(m - 1):
        for j in range(i + 1, m):
            wi = branches[i]
            wj = branches[j]
            base = terms[i] + terms[j]

            def rotated(beta, alpha, gamma):
                cb, sb = math.cos(beta), math.sin(beta)
                ea = complex(math.cos(alpha), math.sin(alpha))
                eg = complex(math.cos(gamma), math.sin(gamma))
                ni = (cb * eg) * wi + (sb * ea) * wj
                nj = (-sb * ea.conjugate()) * wi + (cb * eg.conjugate()) * wj
                return ni, nj

            angles = [0.0, 0.0, 0.0]
            bounds = [(-math.pi / 2, math.pi / 2), (-math.pi, math.pi), (-math.pi, math.pi)]
            best = base
            for k in range(3):
                def objective(x, k=k):
                    trial = list(angles)
                    trial[k] = x
                    ni, nj = rotated(*trial)
                    return term(ni) + term(nj)

                res = minimize_scalar(objective, bounds=bounds[k], method="bounded",
                                      options={"xatol": ANGLE_XATOL})
                if res.fun < best:
                    best = res.fun
                    angles[k] = float(res.x)
            if best < base - 1e-15:
                ni, nj = rotated(*angles)
                branches[i] = ni
                branches[j] = nj
                terms[i] = term(ni)
                terms[j] = term(nj)
    return float(terms.sum())


def convex_roof(rho: DensityMatrix, theory: str,
                config: Optional[RoofConfig] = None,
                cut=None) -> ConvexRoofResult:
    """Upper bound on the convex roof of the chosen pure-state monotone.

    Parameters
    ----------
    rho : DensityMatrix
        Mixed state to decompose (``subsystem_dims`` required for the
        entanglement theories).
    theory : str
        One of ``coherence``, ``nonstabilizerness``,
        ``entanglement_bipartite``, ``gme``.
    config : RoofConfig, optional
        Optimizer parameters; defaults per RoofConfig.
    cut : iterable of int, optional
        Bipartition for ``entanglement_bipartite``; defaults to the first
        subsystem versus the rest when exactly two subsystems are present.

    Restarts draw from independent substreams keyed by (seed, restart index)
    and are merged by minimum, so the result does not depend on the order in
    which they execute.
    """
    cfg = config or RoofConfig()
    dims = rho.subsystem_dims
    if theory in ("entanglement_bipartite", "gme") and dims is None:
        raise UsageError(f"theory {theory!r} requires subsystem_dims on the state")
    if dims is None:
        dims = (rho.dim,)
    norm_cut = None
    if theory == "entanglement_bipartite":
        if cut is None:
            if len(dims) != 2:
                raise UsageError("an explicit cut is required for more than two subsystems")
            cut = (0,)
        probe = PureState(np.eye(rho.dim)[0], dims)
        norm_cut = _normalize_cut(probe, cut)
    term = _term_builder(theory, dims, norm_cut)

    spec = spectral_decompose(rho)
    keep = spec.eigenvalues > RANK_CUTOFF
    mu = spec.eigenvalues[keep]
    mu = mu / mu.sum()
    vecs = spec.eigenvectors[:, keep]
    r = mu.size
    m = cfg.cardinality if cfg.cardinality is not None else r * r
    if m < r:
        raise UsageError(f"cardinality {m} is below the state rank {r}")

    base = (vecs * np.sqrt(mu)).T  # r x d rows: sqrt(mu_j) e_j^T

    best_value = math.inf
    best_branches = None
    best_converged = False
    for start in range(int(cfg.restarts)):
        rng = np.random.default_rng((cfg.seed, start))
        if start == 0:
            iso = np.eye(m, r, dtype=complex)
        else:
            g = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
            iso = np.linalg.qr(g)[0]
        branches = np.ascontiguousarray(iso @ base)
        terms = np.array([term(branches[i]) for i in range(m)])
        total = float(terms.sum())
        converged = False
        for _sweep in range(int(cfg.max_iterations)):
            previous = total
            total = _pair_sweep(branches, terms, term)
            if previous - total < cfg.tolerance:
                converged = True
                break
        if total < best_value:
            best_value = total
            best_branches = branches.copy()
            best_converged = converged

    probs = np.real(np.einsum("id,id->i", best_branches, best_branches.conj()))
    order = np.argsort(probs)[::-1]
    decomposition = []
    for i in order:
        p = float(probs[i])
        if p <= 1e-14:
            continue
        decomposition.append((p, PureState(best_branches[i] / math.sqrt(p), dims)))
    total_p = sum(p for p, _ in decomposition)
    decomposition = [(p / total_p, state) for p, state in decomposition]

    gap = None
    if theory == "entanglement_bipartite" and rho.dim == 4 and tuple(dims) == (2, 2):
        c = concurrence_two_qubit(rho)
        oracle = 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - c * c)))
        gap = float(best_value - oracle)

    return ConvexRoofResult(
        value=float(best_value),
        decomposition=decomposition,
        restarts_used=int(cfg.restarts),
        converged=best_converged,
        gap_to_oracle=gap,
    )


def pure_state_monotone(psi: PureState, theory: str, cut=None) -> MonotoneResult:
    """Dispatch to the closed-form pure-state monotone for ``theory``."""
    if theory == "coherence":
        return coherence_monotone(psi)
    if theory == "nonstabilizerness":
        return nonstabilizerness_monotone(psi)
    if theory == "entanglement_bipartite":
        if cut is None:
            if psi.subsystem_dims is None or len(psi.subsystem_dims) != 2:
                raise UsageError("an explicit cut is required for more than two subsystems")
            cut = (0,)
        return entanglement_monotone(psi, cut)
    if theory == "gme":
        return gme_monotone(psi)
    raise UsageError(f"unknown theory {theory!r}; pick one of {THEORIES}")
