"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error. Every failure writes one
JSON line ``{"error": ..., "message": ...}`` to stderr.
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .clusteval import EvalConfig, evaluate_embedding, evaluate_placement, load_external_embedding
from .datagen import (BilliardConfig, StudyDatasetSpec, gen_study_dataset, gen_teaser, load_bundled, load_csv,
                      simulate_billiard, write_csv)
from .datagen.csvio import BUNDLED
from .model import DataError, Scheme, Strategy, Transform, rescale_minmax
from .placement import place
from .render import RenderStyle, default_cpp_scale, render_cpp, render_glyphs, render_pcp, render_rc

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
DEFAULT_SEED = 42


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": " ".join(str(message).split())}), file=sys.stderr)
    return code


def _load(path: str, label_column: Optional[str]):
    if path in BUNDLED and not Path(path).exists():
        return load_bundled(path)
    if not Path(path).is_file():
        raise DataError(f"no such file: {path}")
    return load_csv(path, label_column)


def _seed(args) -> int:
    return secrets.randbits(32) if args.entropy else args.seed


def _write_json(path: str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_gen(args) -> int:
    meta = None
    if args.kind == "teaser":
        ds = gen_teaser()
    elif args.kind in BUNDLED:
        ds = load_bundled(args.kind)
    elif args.kind == "billiard":
        cfg = BilliardConfig(
            a_values=tuple(args.a_values), b=args.b, trajectories_per_cluster=args.trajectories,
            reflections=args.reflections, seed_step=args.seed_step,
            base_position=args.base_position, base_heading=args.base_heading,
        )
        run = simulate_billiard(cfg)
        ds, meta = run.dataset, run.metadata()
    else:
        spec = StudyDatasetSpec(args.task, n=args.n, members=args.members, inserted_values=tuple(args.value),
                                per_dimension_scaling=args.scaling, seed=_seed(args))
        ds, md = gen_study_dataset(spec)
        meta = md.to_dict()
    write_csv(ds, args.output)
    if meta is not None:
        _write_json(args.meta or str(Path(args.output).with_suffix(".json")), meta)
    return EXIT_OK


def _style(args) -> RenderStyle:
    return RenderStyle(show_arrows=not args.no_arrows, show_dots=not args.no_dots)


def cmd_plot(args) -> int:
    ds = _load(args.csv, args.label_column)
    style = _style(args)
    if args.view == "cpp":
        svg = render_cpp(ds, args.scheme, default_cpp_scale(ds, args.scale), style)
    elif args.view == "pcp":
        svg = render_pcp(ds, style, shared_scale=not args.per_axis)
    else:
        svg = render_rc(ds, style)
    Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def _prepare(ds, mode: str):
    return rescale_minmax(ds) if mode == "minmax" else ds


def cmd_place(args) -> int:
    ds = _prepare(_load(args.csv, args.label_column), args.data_mode)
    layout = place(ds, args.strategy, args.scheme, args.scale_factor)
    Path(args.out).write_text(render_glyphs(layout, style=_style(args), labels=ds.labels), encoding="utf-8")
    if args.coords_out:
        lines = ["x,y"] + [f"{x!r},{y!r}" for x, y in layout.centroids.tolist()]
        Path(args.coords_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def _table(report, title: str) -> str:
    rows = [
        ("jaccard (matched labels)", report.jaccard),
        ("jaccard (pair counting)", report.jaccard_pairs),
        ("silhouette (true labels)", report.silhouette),
        ("silhouette (k-means labels)", report.silhouette_kmeans),
        ("k-means WCSS", report.wcss),
        ("empty clusters", report.empty_clusters),
    ]
    w = max(len(r[0]) for r in rows)
    out = [title, "-" * len(title)]
    for name, v in rows:
        out.append(f"{name:<{w}}  {v:.4f}" if isinstance(v, float) else f"{name:<{w}}  {v}")
    return "\n".join(out)


def cmd_eval(args) -> int:
    ds = _load(args.csv, args.label_column)
    if ds.labels is None:
        raise DataError("evaluation needs a labeled dataset (no class column found)")
    config = EvalConfig(restarts=args.restarts, seed=_seed(args), normalize=args.normalize)
    if args.embedding:
        points = load_external_embedding(args.embedding, expected_rows=len(ds))
        report = evaluate_embedding(points, ds.labels, config, embedding=str(args.embedding))
        title = f"external embedding {args.embedding}"
    else:
        data = _prepare(ds, args.data_mode)
        layout = place(data, args.strategy, args.scheme)
        report = evaluate_placement(layout, ds.labels, config, scheme=Scheme(args.scheme).value,
                                    data_mode=args.data_mode)
        title = f"{args.strategy} placement, {args.scheme} scheme, {args.data_mode} data"
    print(_table(report, title))
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyclopoly", description="Cyclic polygon plots, glyph placement and placement scoring.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, seeded=False):
        sp.add_argument("--label-column", default=None)
        if seeded:
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
            sp.add_argument("--entropy", action="store_true", help="draw a fresh seed instead of --seed")

    def style(sp):
        sp.add_argument("--no-arrows", action="store_true")
        sp.add_argument("--no-dots", action="store_true")

    g = sub.add_parser("gen", help="write a generated or bundled dataset as CSV")
    g.add_argument("kind", choices=["teaser", "billiard", "study", *BUNDLED])
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--meta", help="metadata JSON path (billiard/study); defaults next to the CSV")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--entropy", action="store_true")
    g.add_argument("--task", choices=["od", "vr", "vc"], default="od")
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--members", type=int, default=10)
    g.add_argument("--value", type=float, action="append", default=[])
    g.add_argument("--scaling", action="store_true")
    d = BilliardConfig()
    g.add_argument("--a-values", type=float, nargs="+", default=list(d.a_values))
    g.add_argument("--b", type=float, default=d.b)
    g.add_argument("--trajectories", type=int, default=d.trajectories_per_cluster)
    g.add_argument("--reflections", type=int, default=d.reflections)
    g.add_argument("--seed-step", type=float, default=d.seed_step)
    g.add_argument("--base-position", type=float, default=d.base_position)
    g.add_argument("--base-heading", type=float, default=d.base_heading)
    g.set_defaults(func=cmd_gen)

    pl = sub.add_parser("plot", help="render a CPP, PCP or radar chart as SVG")
    pl.add_argument("csv")
    pl.add_argument("--view", choices=["cpp", "pcp", "rc"], default="cpp")
    pl.add_argument("--scheme", choices=[s.value for s in Scheme], default="abbc")
    pl.add_argument("--scale", choices=[t.value for t in Transform], default="linear")
    pl.add_argument("--per-axis", action="store_true", help="PCP: scale every axis to its own range")
    pl.add_argument("--out", required=True)
    common(pl)
    style(pl)
    pl.set_defaults(func=cmd_plot)

    pc = sub.add_parser("place", help="render a glyph placement as SVG")
    pc.add_argument("csv")
    pc.add_argument("--strategy", choices=[s.value for s in Strategy], required=True)
    pc.add_argument("--scheme", choices=[s.value for s in Scheme], default="abcd")
    pc.add_argument("--scale-factor", type=float, default=0.05)
    pc.add_argument("--data-mode", choices=["raw", "minmax"], default="raw")
    pc.add_argument("--out", required=True)
    pc.add_argument("--coords-out")
    common(pc)
    style(pc)
    pc.set_defaults(func=cmd_place)

    ev = sub.add_parser("eval", help="score a placement (or external embedding) against class labels")
    ev.add_argument("csv")
    ev.add_argument("--strategy", choices=[s.value for s in Strategy], default="geometric")
    ev.add_argument("--scheme", choices=[s.value for s in Scheme], default="abcd")
    ev.add_argument("--data-mode", choices=["raw", "minmax"], default="raw")
    ev.add_argument("--embedding", help="CSV of x,y rows in dataset order; replaces the placement")
    ev.add_argument("--restarts", type=int, default=10)
    ev.add_argument("--normalize", action="store_true", help="min-max scale the 2D coordinates first")
    common(ev, seeded=True)
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return _fail("usage", e, EXIT_USAGE)
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:   # DataError is a ValueError
        return _fail("data", e, EXIT_DATA)


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
