"""Command-line interface: gen | select | tune | compare | spectrum.

All randomness flows from --seed (fixed default 0), so identical command lines
produce byte-identical outputs.  Usage and input errors exit 1; numerical
failures exit 2.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .baselines import ICConfig
from .compare import METHODS, run_comparison, write_report_csv
from .errors import (
    CoefficientOverflowError,
    ConvergenceError,
    IndefiniteKernelError,
    KernelimError,
    NotPositiveDefiniteError,
    SolverError,
    ZeroPivotError,
)
from .graphs import (
    GraphFormatError,
    LaplacianKind,
    generate_points_graph,
    laplacian,
    load_graph,
    save_graph,
)
from .kernels import DEFAULT_CLAMP_FLOOR, clamp_spectrum, parse_kernel_spec
from .pgreedy import SelectorConfig, select_nodes
from .plots import write_selection_svg
from .spectral import eigendecompose
from .tuning import CvSpec, grid_search

NUMERICAL_ERRORS = (
    IndefiniteKernelError,
    NotPositiveDefiniteError,
    ZeroPivotError,
    ConvergenceError,
    SolverError,
    CoefficientOverflowError,
)

DEFAULT_GRIDS = {
    "t": "-1e2:-1e-2:25",
    "eps": "1e-16:1e0:25",
    "s": "-1e1:-1e-1:25",
}


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, per the CLI contract
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


GRID_FLAGS = ("--t-grid", "--eps-grid", "--s-grid")


def _fuse_grid_flags(argv):
    # "--s-grid -1e1:-1e-1:25" would read as a flag followed by an option;
    # rewrite the pair as "--s-grid=-1e1:-1e-1:25" so argparse accepts it.
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in GRID_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid {text!r} must look like lo:hi:count")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _load(args):
    return load_graph(args.graph)


def _spectrum(graph, args):
    kind = LaplacianKind.parse(args.laplacian)
    return eigendecompose(laplacian(graph, kind)), kind


def _kernel(args, spectrum):
    kern = parse_kernel_spec(args.kernel, spectrum)
    if getattr(args, "clamp_spectrum", None) is not None:
        kern = clamp_spectrum(kern, args.clamp_spectrum)
    return kern


def _write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ": "), indent=1)
        fh.write("\n")


def cmd_gen(args) -> int:
    if args.kind == "sensor":
        if args.nodes < 1:
            raise ValueError("--nodes must be at least 1")
        graph = generate_points_graph(
            count=args.nodes,
            seed=args.seed,
            thin_radius=args.thin_radius,
            link_radius=args.link_radius,
        )
    else:
        if not args.points_file:
            raise ValueError("--kind points requires --points-file")
        points = []
        with open(args.points_file, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0].strip().replace(",", " ")
                if not body:
                    continue
                tokens = body.split()
                if len(tokens) != 2:
                    raise GraphFormatError(f"{args.points_file}:{lineno}: expected 'x y'")
                points.append((float(tokens[0]), float(tokens[1])))
        graph = generate_points_graph(
            points=np.array(points),
            thin_radius=args.thin_radius,
            link_radius=args.link_radius,
        )
    save_graph(graph, args.out)
    print(f"wrote {args.out}: {graph.n} nodes, {graph.edge_count} edges")
    return 0


def cmd_select(args) -> int:
    if args.budget < 1:
        raise ValueError("--budget must be at least 1")
    graph = _load(args)
    spectrum, kind = _spectrum(graph, args)
    kern = _kernel(args, spectrum)
    initial = tuple(int(tok) for tok in args.initial.split(",")) if args.initial else ()
    state = select_nodes(
        spectrum, kern, SelectorConfig(budget=args.budget, initial=initial, tolerance=args.tol)
    )
    payload = {
        "nodes": state.chosen,
        "max_power": [rec.max_power for rec in state.history],
        "max_residual": [rec.max_residual for rec in state.history],
        "kernel": args.kernel,
        "laplacian": kind.value,
        "tolerance": args.tol,
    }
    _write_json(args.out, payload)
    if args.svg:
        write_selection_svg(args.svg, graph, np.sqrt(np.maximum(state.p2, 0.0)), state.chosen)
    print(f"wrote {args.out}: {len(state.chosen)} nodes ({state.stop_reason})")
    return 0


def cmd_spectrum(args) -> int:
    graph = _load(args)
    spectrum, _ = _spectrum(graph, args)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(spectrum.eigenvalues):
            writer.writerow([i, repr(float(lam))])
    if args.vectors:
        with open(args.vectors, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([f"u{k}" for k in range(spectrum.n)])
            for row in spectrum.eigenvectors:
                writer.writerow([repr(float(x)) for x in row])
    print(f"wrote {args.out}: {spectrum.n} eigenvalues")
    return 0


def cmd_tune(args) -> int:
    graph = _load(args)
    spectrum, kind = _spectrum(graph, args)
    family = args.kernel
    grids = {}
    for name, flag in (("t", args.t_grid), ("eps", args.eps_grid), ("s", args.s_grid)):
        grids[name] = _parse_grid(flag if flag else DEFAULT_GRIDS[name])
    spec = CvSpec(folds=args.folds, seed=args.seed, grids=grids, metric=args.cv_metric)
    result = grid_search(spectrum, family, spec, jitter=args.jitter)
    _write_json(
        args.out,
        {
            "family": family,
            "params": result.best_params,
            "score": result.best_score,
            "folds": args.folds,
            "seed": args.seed,
            "metric": args.cv_metric,
            "laplacian": kind.value,
        },
    )
    if args.table:
        names = sorted(result.table[0].params)
        with open(args.table, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(names + ["score"])
            for row in result.table:
                writer.writerow([repr(row.params[p]) for p in names] + [repr(row.score)])
    print(f"wrote {args.out}: best {result.best_params} (score {result.best_score:.6g})")
    return 0


def cmd_compare(args) -> int:
    if args.budget < 1:
        raise ValueError("--budget must be at least 1")
    methods = [tok.strip() for tok in args.methods.split(",") if tok.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method(s) {unknown}; choose from {list(METHODS)}")
    graph = _load(args)
    spectrum, kind = _spectrum(graph, args)
    kern = _kernel(args, spectrum)
    cfg = ICConfig(p=args.ic_p, runs=args.ic_runs, master_seed=args.seed)
    report = run_comparison(
        graph,
        spectrum,
        kern,
        budget=args.budget,
        ic_cfg=cfg,
        methods=methods,
        damping=args.pr_damping,
        tolerance=args.tol,
        jitter=args.jitter,
        laplacian=kind,
    )
    write_report_csv(report, args.out)
    if args.meta:
        _write_json(args.meta, report.metadata)
    for curve in report.curves:
        if curve.error is not None:
            print(f"method {curve.method} failed: {curve.error}", file=sys.stderr)
    print(f"wrote {args.out}: {len(methods)} methods, budget {args.budget}")
    return 0


def _add_common(sub, kernel=False, tol=False):
    sub.add_argument("--graph", required=True, help="graph file (JSON or edge list)")
    sub.add_argument(
        "--laplacian", default="standard", choices=["standard", "normalized"],
        help="Laplacian feeding the Fourier basis (default: standard)",
    )
    if kernel:
        sub.add_argument(
            "--kernel", required=True,
            help="kernel spec, e.g. diffusion:t=-10 | spline:eps=0.01,s=-1 | custom:file=coeffs.csv",
        )
        sub.add_argument(
            "--clamp-spectrum", nargs="?", const=DEFAULT_CLAMP_FLOOR, default=None,
            type=float, metavar="FLOOR",
            help="replace spectral coefficients below FLOOR (default 1e-14) to force positive definiteness",
        )
    if tol:
        sub.add_argument("--tol", type=float, default=1e-12, help="stopping tolerance (default 1e-12)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kernelim", description=__doc__)
    parser.add_argument("--version", action="version", version=f"kernelim {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a graph", parents=[], description="Generate a point-cloud graph.")
    gen.add_argument("--kind", choices=["sensor", "points"], default="sensor")
    gen.add_argument("--nodes", type=int, default=79, help="node count for --kind sensor")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--points-file", help="x y per line, for --kind points")
    gen.add_argument("--thin-radius", type=float, default=0.0)
    gen.add_argument("--link-radius", type=float, default=0.2)
    gen.add_argument("-o", "--out", required=True)
    gen.set_defaults(func=cmd_gen)

    sel = subs.add_parser("select", help="greedy influential-node selection")
    _add_common(sel, kernel=True, tol=True)
    sel.add_argument("--budget", type=int, required=True)
    sel.add_argument("--initial", default="", help="comma-separated warm-start node ids")
    sel.add_argument("--svg", help="optional SVG scatter colored by final standard deviation")
    sel.add_argument("-o", "--out", required=True)
    sel.set_defaults(func=cmd_select)

    spec = subs.add_parser("spectrum", help="dump Laplacian eigenvalues")
    _add_common(spec)
    spec.add_argument("--vectors", help="optional CSV for the eigenvector matrix")
    spec.add_argument("-o", "--out", required=True)
    spec.set_defaults(func=cmd_spectrum)

    tune = subs.add_parser("tune", help="cross-validated kernel parameter search")
    _add_common(tune)
    tune.add_argument("--kernel", required=True, choices=["diffusion", "spline"], help="kernel family")
    tune.add_argument("--t-grid", help="lo:hi:count (default -1e2:-1e-2:25)")
    tune.add_argument("--eps-grid", help="lo:hi:count (default 1e-16:1e0:25)")
    tune.add_argument("--s-grid", help="lo:hi:count (default -1e1:-1e-1:25)")
    tune.add_argument("--folds", type=int, default=5)
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--cv-metric", choices=["mae", "rmse"], default="mae")
    tune.add_argument("--jitter", type=float, default=0.0, help="diagonal regularization for CV solves")
    tune.add_argument("--table", help="optional CSV score table")
    tune.add_argument("-o", "--out", required=True)
    tune.set_defaults(func=cmd_tune)

    cmp_ = subs.add_parser("compare", help="compare selection methods on shared metrics")
    _add_common(cmp_, kernel=True, tol=True)
    cmp_.add_argument("--budget", type=int, required=True)
    cmp_.add_argument("--methods", default=",".join(METHODS), help=f"comma list from {list(METHODS)}")
    cmp_.add_argument("--ic-p", type=float, default=0.2)
    cmp_.add_argument("--ic-runs", type=int, default=500)
    cmp_.add_argument("--seed", type=int, default=0)
    cmp_.add_argument("--pr-damping", type=float, default=0.85)
    cmp_.add_argument("--jitter", type=float, default=0.0)
    cmp_.add_argument("--meta", help="optional metadata JSON path")
    cmp_.add_argument("-o", "--out", required=True)
    cmp_.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fuse_grid_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NUMERICAL_ERRORS as exc:
        print(f"kernelim: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (KernelimError, ValueError, OSError) as exc:
        print(f"kernelim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
