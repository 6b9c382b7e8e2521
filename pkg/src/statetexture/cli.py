"""Command-line interface.

One executable with subcommands::

    statetexture texture --state FILE [--basis computational|fourier|PATH]
    statetexture texture extrema --state FILE
    statetexture purity --state FILE [--alpha 2,3,0.5]
    statetexture monotone {coherence,magic,entangle,ggm} --state FILE [--cut A:B]
    statetexture convexroof --state FILE --theory entangle [--restarts N] ...
    statetexture ising point --n N --h H [--g G] [--method ...] [--observable ...]
    statetexture ising scan --n N --axis h --from A --to B --step S --out CSV ...
    statetexture selftest

Exit codes: 0 success, 1 numerical failure (invalid state file,
non-convergence), 2 usage error.  Numeric output uses 12 significant digits.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import StateTextureError, UsageError
from . import ising, purity, roof, stateio, texture
from .states import PureState, density_of
from .selftest import run_selftest

_THEORY_BY_FLAG = {
    "coherence": "coherence",
    "magic": "nonstabilizerness",
    "entangle": "entanglement_bipartite",
    "ggm": "gme",
}

_ALIAS = {
    ("texture", "extrema"): "texture-extrema",
    ("ising", "point"): "ising-point",
    ("ising", "scan"): "ising-scan",
}


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _emit(pairs, human: bool) -> None:
    width = max((len(k) for k, _ in pairs), default=0)
    for key, value in pairs:
        if human:
            print(f"{key.ljust(width)}  {_fmt(value)}")
        else:
            print(f"{key} {_fmt(value)}")


def _parse_cut(text: str, n_parties: int) -> Tuple[int, ...]:
    left, _, right = text.partition(":")
    try:
        side_a = tuple(sorted(int(tok) for tok in left.split(",") if tok != ""))
    except ValueError as exc:
        raise UsageError(f"malformed cut {text!r}") from exc
    if right:
        try:
            side_b = tuple(sorted(int(tok) for tok in right.split(",") if tok != ""))
        except ValueError as exc:
            raise UsageError(f"malformed cut {text!r}") from exc
        expected = tuple(k for k in range(n_parties) if k not in side_a)
        if side_b != expected:
            raise UsageError(f"cut sides {side_a}:{side_b} do not partition {n_parties} parties")
    return side_a


def _load_pure(path) -> PureState:
    state = stateio.load_state(path)
    if not isinstance(state, PureState):
        raise UsageError("this command needs a pure state file (kind = 'pure')")
    return state


def _resolve_basis(name: str, dim: int) -> texture.OrthonormalBasis:
    if name == "computational":
        return texture.computational_basis(dim)
    if name == "fourier":
        return texture.fourier_basis(dim)
    return texture.OrthonormalBasis(stateio.load_unitary(name))


def _cmd_texture(args) -> int:
    state = stateio.load_state(args.state)
    basis = _resolve_basis(args.basis, density_of(state).dim)
    rep = texture.texture_in_basis(state, basis)
    _emit([("grand_sum", rep.grand_sum), ("texture", rep.texture),
           ("rugosity", rep.rugosity), ("imag_residual", rep.imag_residual)],
          args.format == "human")
    return 0


def _cmd_texture_extrema(args) -> int:
    state = stateio.load_state(args.state)
    ex = texture.texture_extrema(state)
    _emit([("t_max", ex.t_max), ("t_min", ex.t_min)], args.format == "human")
    return 0


def _cmd_purity(args) -> int:
    state = density_of(stateio.load_state(args.state))
    try:
        alphas = [float(tok) for tok in args.alpha.split(",") if tok != ""]
    except ValueError as exc:
        raise UsageError(f"malformed --alpha list {args.alpha!r}") from exc
    report = purity.check_renyi2_bound(state, alphas or (2.0,))
    pairs = [("texture_purity", report.texture_purity)]
    for a in sorted(report.renyi_purities):
        pairs.append((f"renyi_purity_{a:g}", report.renyi_purities[a]))
    pairs += [("renyi2_bound_rhs", report.renyi2_bound_rhs),
              ("bound_satisfied", report.bound_satisfied),
              ("single_shot_cost", report.single_shot_cost)]
    if report.single_shot_cost is not None:
        pairs.append(("rank_tolerance", purity.RANK_TOL))
    _emit(pairs, args.format == "human")
    return 0


def _cmd_monotone(args) -> int:
    psi = _load_pure(args.state)
    theory = _THEORY_BY_FLAG[args.theory]
    cut = None
    if args.cut is not None:
        if psi.subsystem_dims is None:
            raise UsageError("--cut requires a state file with more than one subsystem")
        cut = _parse_cut(args.cut, len(psi.subsystem_dims))
    result = roof.pure_state_monotone(psi, theory, cut=cut)
    pairs = [("theory", result.theory), ("value", result.value)]
    pairs += [(f"witness_{k}", v) for k, v in sorted(result.witness.items())]
    _emit(pairs, args.format == "human")
    return 0


def _cmd_convexroof(args) -> int:
    state = density_of(stateio.load_state(args.state))
    theory = _THEORY_BY_FLAG[args.theory]
    cut = None
    if args.cut is not None:
        if state.subsystem_dims is None:
            raise UsageError("--cut requires a state file with more than one subsystem")
        cut = _parse_cut(args.cut, len(state.subsystem_dims))
    cfg = roof.RoofConfig(cardinality=args.cardinality, restarts=args.restarts,
                          tolerance=args.tolerance, max_iterations=args.max_iterations,
                          seed=args.seed)
    result = roof.convex_roof(state, theory, cfg, cut=cut)
    if args.dump_decomposition:
        stateio.save_decomposition(args.dump_decomposition, result.decomposition)
    _emit([("theory", theory), ("value", result.value),
           ("restarts_used", result.restarts_used), ("converged", result.converged),
           ("gap_to_oracle", result.gap_to_oracle),
           ("decomposition_size", len(result.decomposition))],
          args.format == "human")
    return 0


def _default_method(args, axis: str = "h") -> str:
    if args.method is not None:
        return args.method
    if axis == "g" or args.g != 0.0:
        return "ed"
    return "analytic"


def _cmd_ising_point(args) -> int:
    spec = ising.ChainSpec(args.n, args.h, args.g)
    method = _default_method(args)
    pairs = [("n", args.n), ("h", args.h), ("g", args.g), ("method", method),
             ("observable", args.observable)]
    if args.observable == "full":
        value = (ising.analytic_rugosity(spec) if method == "analytic"
                 else ising.ed_rugosity(spec))
        pairs += [("rugosity", value), ("normalized_rugosity", value / args.n)]
    else:
        obs = (ising.pair_observables(spec) if method == "analytic"
               else ising.ed_pair_observables(spec))
        pairs += [("m_z", obs.m_z), ("c_xx", obs.c_xx), ("c_yy", obs.c_yy),
                  ("c_zz", obs.c_zz), ("pair_rugosity", obs.pair_rugosity),
                  ("pair_rugosity_symmetric", obs.pair_rugosity_symmetric),
                  ("pair_rugosity_normalized", obs.pair_rugosity / args.n)]
    _emit(pairs, args.format == "human")
    return 0


def _scan_csv_lines(grid: ising.ScanGrid) -> List[str]:
    lines = ["point,rugosity,normalized_rugosity,d1,d2"]
    npts = grid.points.size
    for k in range(npts):
        d1 = _fmt(grid.first_derivative[k - 1]) if 1 <= k <= npts - 2 else ""
        d2 = _fmt(grid.second_derivative[k - 2]) if 2 <= k <= npts - 3 else ""
        lines.append(",".join([_fmt(float(grid.points[k])), _fmt(float(grid.rugosity[k])),
                               _fmt(float(grid.normalized_rugosity[k])), d1, d2]))
    if grid.kink_estimate is not None:
        lines.append(f"# kink_estimate = {_fmt(grid.kink_estimate)}")
    return lines


_PLOT_TEMPLATE = """\
#!/usr/bin/env python3
\"\"\"Plot a rugosity scan CSV (auto-generated).\"\"\"
import csv
import matplotlib.pyplot as plt

points, normalized = [], []
with open({csv!r}) as handle:
    for row in csv.reader(line for line in handle if not line.startswith('#')):
        if row[0] == 'point':
            continue
        points.append(float(row[0]))
        normalized.append(float(row[2]))

fig, ax = plt.subplots()
ax.plot(points, normalized)
ax.set_xlabel({xlabel!r})
ax.set_ylabel('normalized rugosity')
fig.tight_layout()
plt.show()
"""


def _cmd_ising_scan(args) -> int:
    if args.axis == "h":
        spec = ising.ChainSpec(args.n, h=0.0, g=args.g)
    else:
        if args.h is None:
            raise UsageError("a fixed --h is required for a g-axis scan")
        spec = ising.ChainSpec(args.n, h=args.h, g=0.0)
    if args.step <= 0:
        raise UsageError("--step must be positive")
    count = int(round((args.stop - args.start) / args.step))
    pts = args.start + args.step * np.arange(count + 1)
    pts = pts[pts <= args.stop + 1e-12 * max(1.0, abs(args.stop))]
    window = None
    if args.kink_window is not None:
        try:
            lo, hi = (float(tok) for tok in args.kink_window.split(","))
        except ValueError as exc:
            raise UsageError(f"malformed --kink-window {args.kink_window!r}") from exc
        window = (lo, hi)
    method = _default_method(args, args.axis)
    grid = ising.scan(spec, args.axis, pts, observable=args.observable,
                      method=method, kink_window=window)
    csv_lines = _scan_csv_lines(grid)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write("\n".join(csv_lines) + "\n")
    else:
        print("\n".join(csv_lines))
    if args.emit_plot:
        xlabel = "transverse field h" if args.axis == "h" else "longitudinal field g"
        with open(args.emit_plot, "w") as handle:
            handle.write(_PLOT_TEMPLATE.format(csv=str(args.out or "scan.csv"),
                                               xlabel=xlabel))
    _emit([("axis", grid.axis), ("n", grid.n_sites), ("points", grid.points.size),
           ("observable", grid.observable), ("method", grid.method),
           ("kink_estimate", grid.kink_estimate),
           ("out", args.out or "-")], args.format == "human")
    return 0


def _cmd_selftest(args) -> int:
    return 1 if run_selftest() else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statetexture",
        description="Quantum state texture measures, monotones and Ising scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("human", "structured"), default="human")

    p = sub.add_parser("texture", help="texture report of a state in a basis")
    p.add_argument("--state", required=True)
    p.add_argument("--basis", default="computational",
                   help="computational, fourier, or a unitary file path")
    common(p)
    p.set_defaults(func=_cmd_texture)

    p = sub.add_parser("texture-extrema", help="extremal textures over all bases")
    p.add_argument("--state", required=True)
    common(p)
    p.set_defaults(func=_cmd_texture_extrema)

    p = sub.add_parser("purity", help="texture purity and Renyi purities")
    p.add_argument("--state", required=True)
    p.add_argument("--alpha", default="2", help="comma list of Renyi orders")
    common(p)
    p.set_defaults(func=_cmd_purity)

    p = sub.add_parser("monotone", help="closed-form pure-state monotones")
    p.add_argument("theory", choices=sorted(_THEORY_BY_FLAG))
    p.add_argument("--state", required=True)
    p.add_argument("--cut", help="bipartition such as 0,1:2,3")
    common(p)
    p.set_defaults(func=_cmd_monotone)

    p = sub.add_parser("convexroof", help="convex-roof upper bound for mixed states")
    p.add_argument("--state", required=True)
    p.add_argument("--theory", choices=sorted(_THEORY_BY_FLAG), required=True)
    p.add_argument("--cut", help="bipartition such as 0:1")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--cardinality", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-decomposition", help="write the decomposition to this file")
    common(p)
    p.set_defaults(func=_cmd_convexroof)

    p = sub.add_parser("ising-point", help="rugosity observables at one parameter point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--method", choices=("analytic", "ed"))
    p.add_argument("--observable", choices=("full", "pair"), default="full")
    common(p)
    p.set_defaults(func=_cmd_ising_point)

    p = sub.add_parser("ising-scan", help="rugosity scan over h or g with derivatives")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--axis", choices=("h", "g"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--h", type=float, help="fixed transverse field for g-axis scans")
    p.add_argument("--g", type=float, default=0.0,
                   help="fixed longitudinal field for h-axis scans")
    p.add_argument("--method", choices=("analytic", "ed"))
    p.add_argument("--observable", choices=("full", "pair"), default="full")
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.add_argument("--kink-window", help="window LO,HI for the curvature extremum")
    p.add_argument("--emit-plot", help="write a plotting script referencing the CSV")
    common(p)
    p.set_defaults(func=_cmd_ising_scan)

    p = sub.add_parser("selftest", help="run the fast release-gate checks")
    common(p)
    p.set_defaults(func=_cmd_selftest)

    return parser


def _apply_thread_override() -> None:
    threads = os.environ.get("STATETEXTURE_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


def main(argv: Optional[Sequence[str]] = None) -> int:
    _apply_thread_override()
    argv = list(sys.argv[1:] if argv is None else argv)
    if len(argv) >= 2 and (argv[0], argv[1]) in _ALIAS:
        argv = [_ALIAS[(argv[0], argv[1])]] + argv[2:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except StateTextureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
