"""Command-line entry point.

Subcommands: layout, render, metrics, compare, gen.

Exit codes: 2 bad flags (argparse), 3 input parse errors, 4 incompatible
method/geometry combinations.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import graphs, metrics
from .force import ForceParams, layout_force
from .graphs import GraphError, GraphParseError, apsp, parse_graph
from .hmds import SgdParams, run_mds
from .layout_io import LayoutFileError, read_layout_file, write_layout_file
from .projection import Layout, project_pipeline
from .render import RenderStyle, render_svg

EXIT_PARSE = 3
EXIT_INCOMPATIBLE = 4


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read_graph(path: str) -> graphs.Graph:
    try:
        if path == "-":
            text = sys.stdin.read()
            fmt = "edge-list"
        else:
            with open(path) as f:
                text = f.read()
            fmt = "dot" if path.endswith(".dot") else "edge-list"
        return parse_graph(text, fmt)
    except OSError as e:
        raise CliError(str(e), EXIT_PARSE)
    except GraphParseError as e:
        raise CliError(f"{path}: {e}", EXIT_PARSE)
    except GraphError as e:
        raise CliError(f"{path}: {e}", EXIT_PARSE)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HYPERLAY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"HYPERLAY_SEED={env!r} is not an integer",
                           EXIT_PARSE)
    return 0


def cmd_layout(args) -> int:
    g = _read_graph(args.graph)
    seed = _resolve_seed(args)
    trace = None
    if args.method == "project":
        if args.geometry != "hyperbolic":
            raise CliError("--method project is hyperbolic-only",
                           EXIT_INCOMPATIBLE)
        if g.positions is None:
            raise CliError("--method project needs node positions "
                           "(DOT input with pos attributes)",
                           EXIT_INCOMPATIBLE)
        layout = project_pipeline(g.positions, coverage=args.coverage,
                                  rho_base=args.rho_base,
                                  polygons=g.polygons)
    elif args.method == "force":
        if args.geometry != "hyperbolic":
            raise CliError("--method force is hyperbolic-only",
                           EXIT_INCOMPATIBLE)
        p = ForceParams(max_iterations=args.iterations or 200,
                        alpha=args.alpha or 1.0)
        layout, energy = layout_force(g, p=p, seed=seed)
        trace = np.column_stack([energy[:, 0], energy[:, 1],
                                 np.zeros(len(energy))])
    else:  # hmds
        if args.alpha_search and args.geometry == "euclidean":
            raise CliError("--alpha-search is meaningless for euclidean "
                           "geometry", EXIT_INCOMPATIBLE)
        if args.alpha_search:
            mode, alpha = "search", None
        elif args.alpha is not None:
            mode, alpha = "fixed", args.alpha
        else:
            mode, alpha = "default", None
        params = SgdParams(
            schedule_kind=args.schedule, t_max=args.iterations or 20,
            shuffle=args.shuffle, init=args.init,
            alpha_mode=mode, alpha=alpha,
            stop="convergence" if args.until_convergence else "fixed",
            seed=seed)
        layout, trace = run_mds(g, args.geometry, params)
    D = apsp(g)
    report = metrics.evaluate(layout, D,
                              iterations=0 if trace is None else len(trace),
                              seed=seed)
    print(f"geometry={report.geometry} method={layout.method} "
          f"alpha={layout.alpha:.6g} stress={report.stress:.6g} "
          f"distortion={report.distortion:.6g} seed={seed}")
    if args.out:
        write_layout_file(args.out, layout, g, seed=seed, trace=trace)
    return 0


def cmd_render(args) -> int:
    try:
        g, layout, _ = read_layout_file(args.layout)
    except (OSError, LayoutFileError) as e:
        raise CliError(f"{args.layout}: {e}", EXIT_PARSE)
    style = RenderStyle(edge_opacity=args.edge_opacity,
                        label_base_px=args.label_size, zoom=args.zoom,
                        clamp=args.clamp, disk_px=args.disk_px)
    svg = render_svg(layout, g, style)
    if args.out:
        tmp = args.out + ".tmp"
        with open(tmp, "w") as f:
            f.write(svg)
        os.replace(tmp, args.out)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_metrics(args) -> int:
    try:
        g, layout, meta = read_layout_file(args.layout)
    except (OSError, LayoutFileError) as e:
        raise CliError(f"{args.layout}: {e}", EXIT_PARSE)
    D = apsp(g)
    r = metrics.evaluate(layout, D, seed=meta.get("seed") or 0)
    print(f"geometry={r.geometry} alpha={r.alpha:.6g} "
          f"stress={r.stress:.6g} distortion={r.distortion:.6g}")
    return 0


def cmd_compare(args) -> int:
    g = _read_graph(args.graph)
    seeds = list(range(args.seeds))
    means, best, _ = metrics.compare_geometries(g, seeds=seeds)
    sys.stdout.write(metrics.format_comparison(means, best))
    return 0


def cmd_gen(args) -> int:
    try:
        g = graphs.generate(args.kind, *args.params, seed=args.seed or 0)
    except GraphError as e:
        raise CliError(str(e), EXIT_PARSE)
    text = graphs.format_edge_list(g)
    if args.out:
        tmp = args.out + ".tmp"
        with open(tmp, "w") as f:
            f.write(text)
        os.replace(tmp, args.out)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperlay",
        description="Graph layout in hyperbolic, spherical and Euclidean "
                    "geometry")
    sub = ap.add_subparsers(dest="command", required=True)

    lay = sub.add_parser("layout", help="compute a layout")
    lay.add_argument("graph", help="edge-list or .dot file, '-' for stdin")
    lay.add_argument("--method", choices=["project", "force", "hmds"],
                     default="hmds")
    lay.add_argument("--geometry",
                     choices=["euclidean", "hyperbolic", "spherical"],
                     default="hyperbolic")
    lay.add_argument("--alpha", type=float, default=None)
    lay.add_argument("--alpha-search", action="store_true")
    lay.add_argument("--schedule",
                     choices=["exponential", "inverse-t", "inverse-sqrt-t"],
                     default="exponential")
    lay.add_argument("--iterations", type=int, default=None)
    lay.add_argument("--shuffle",
                     choices=["reshuffle", "replacement", "index-shuffle"],
                     default="reshuffle")
    lay.add_argument("--init", choices=["random", "smart"], default="random")
    lay.add_argument("--until-convergence", action="store_true")
    lay.add_argument("--coverage", type=float, default=1.0)
    lay.add_argument("--rho-base", type=float, default=6.0)
    lay.add_argument("--seed", type=int, default=None,
                     help="falls back to $HYPERLAY_SEED, then 0")
    lay.add_argument("--out", default=None)
    lay.set_defaults(func=cmd_layout)

    ren = sub.add_parser("render", help="render a layout file to SVG")
    ren.add_argument("layout")
    ren.add_argument("--edge-opacity", type=float, default=1.0)
    ren.add_argument("--label-size", type=float, default=15.0)
    ren.add_argument("--zoom", type=float, default=1.0)
    ren.add_argument("--clamp", type=float, default=0.999)
    ren.add_argument("--disk-px", type=int, default=400)
    ren.add_argument("--out", default=None)
    ren.set_defaults(func=cmd_render)

    met = sub.add_parser("metrics", help="quality report for a layout file")
    met.add_argument("layout")
    met.set_defaults(func=cmd_metrics)

    cmp_ = sub.add_parser("compare", help="distortion per geometry")
    cmp_.add_argument("graph")
    cmp_.add_argument("--seeds", type=int, default=10)
    cmp_.set_defaults(func=cmd_compare)

    gen = sub.add_parser("gen", help="generate a benchmark graph")
    gen.add_argument("kind", choices=["path", "cycle", "grid",
                                      "triangular-lattice", "cube",
                                      "binary-tree", "random-tree", "random"])
    gen.add_argument("params", nargs="*", type=int)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
