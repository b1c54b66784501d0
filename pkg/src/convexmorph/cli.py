"""Command-line interface.

Every subcommand reads and writes JSON.  Exit status is 0 on success, 1 on a
domain error (a JSON error body is printed) or a failed certificate, and 2
on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import io
from .certify import certify_morph
from .connectivity import STRICT, classify_convexity
from .corpus import DEFAULT_SIZES, gen_corpus
from .decomposition import decompose
from .errors import ConvexMorphError
from .geometry import check_drawing
from .level_drawing import convex_level_drawing, strictify
from .morph_engine import (
    convex_step_bound,
    morph_convex,
    morph_strictly_convex,
    strict_step_bound,
)

PROFILE_ENV = "CONVEXMORPH_VALIDATE"


@dataclass
class RunConfig:
    """Everything a CLI run depends on besides its input files.

    Attributes:
        subcommand: Name of the subcommand.
        inputs: Input paths by role (``graph``, ``from``, ``to`` ...).
        output: Output file or directory; ``None`` writes to stdout.
        mode: ``"strict"``, ``"convex"`` or ``"auto"`` (pick from the inputs).
        profile: ``"release"`` or ``"debug"`` (revalidate every recursion
            level).  The environment variable ``CONVEXMORPH_VALIDATE``
            overrides it.
        frames_per_step: SVG samples per morphing step.
        size: SVG canvas size in pixels.
        precision: Decimal digits in SVG coordinates.
        seed: Corpus seed.
        sizes: Stacked-triangulation sizes in the corpus.
    """

    subcommand: str
    inputs: dict = field(default_factory=dict)
    output: str | None = None
    mode: str = "auto"
    profile: str = "release"
    frames_per_step: int = 24
    size: int = 480
    precision: int = 6
    seed: int = 0
    sizes: tuple = DEFAULT_SIZES


def _emit(cfg: RunConfig, data) -> None:
    text = io.dumps(data)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _mode_for(graph, *drawings) -> str:
    if classify_convexity(graph).tag != STRICT:
        return "convex"
    return "strict" if all(check_drawing(graph, d).is_strict for d in drawings) else "convex"


# -- subcommands -------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    graph = io.graph_from_json(io.read_json(cfg.inputs["graph"]))
    out = classify_convexity(graph).to_dict()
    if cfg.inputs.get("drawing"):
        drawing = io.drawing_from_json(io.read_json(cfg.inputs["drawing"]))
        out["drawing"] = check_drawing(graph, drawing).to_dict()
    _emit(cfg, out)
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    graph = io.graph_from_json(io.read_json(cfg.inputs["graph"]))
    steps = decompose(graph, cfg.inputs.get("method") or "auto")
    _emit(cfg, {
        "steps": [
            {
                "graph": io.graph_to_json(s.graph),
                "smoothed": io.graph_to_json(s.smoothed),
                "removal": s.removal.to_dict() if s.removal is not None else None,
            }
            for s in steps
        ]
    })
    return 0


def cmd_level_draw(cfg: RunConfig) -> int:
    graph = io.graph_from_json(io.read_json(cfg.inputs["graph"]))
    h = io.hierarchy_from_json(io.read_json(cfg.inputs["hierarchy"]))
    outer = io.drawing_from_json(io.read_json(cfg.inputs["outer"]))
    drawing = convex_level_drawing(graph, h, outer)
    if cfg.mode == "strict":
        drawing = strictify(graph, h, drawing)
    _emit(cfg, io.drawing_to_json(drawing))
    return 0


def cmd_morph(cfg: RunConfig) -> int:
    graph = io.graph_from_json(io.read_json(cfg.inputs["graph"]))
    source = io.drawing_from_json(io.read_json(cfg.inputs["from"]))
    target = io.drawing_from_json(io.read_json(cfg.inputs["to"]))
    mode = _mode_for(graph, source, target) if cfg.mode == "auto" else cfg.mode
    if mode == "strict":
        morph, bound = morph_strictly_convex(graph, source, target), strict_step_bound(graph)
    else:
        morph, bound = morph_convex(graph, source, target), convex_step_bound(graph)
    report = morph.certify(mode, bound, source, target)
    data = io.morph_to_json(morph, report.steps)
    data["mode"] = mode
    data["bound"] = bound
    data["passed"] = report.passed
    _emit(cfg, data)
    return 0 if report.passed else 1


def cmd_certify(cfg: RunConfig) -> int:
    data = io.read_json(cfg.inputs["morph"])
    morph = io.morph_from_json(data)
    mode = cfg.mode if cfg.mode != "auto" else data.get("mode", "strict")
    bound = cfg.inputs.get("bound")
    if bound is None:
        bound = data.get("bound")
    report = certify_morph(morph.graph, morph.frames, mode, bound)
    _emit(cfg, report.to_dict())
    return 0 if report.passed else 1


def cmd_render(cfg: RunConfig) -> int:
    from .render import render_morph, render_svg

    if cfg.inputs.get("morph"):
        morph = io.morph_from_json(io.read_json(cfg.inputs["morph"]))
        paths = render_morph(
            morph.graph, morph.frames, cfg.output, cfg.frames_per_step, cfg.size, cfg.precision
        )
        sys.stdout.write(io.dumps({"frames": [str(p) for p in paths]}))
        return 0
    graph = io.graph_from_json(io.read_json(cfg.inputs["graph"]))
    drawing = io.drawing_from_json(io.read_json(cfg.inputs["drawing"]))
    Path(cfg.output).write_text(render_svg(graph, drawing, cfg.size, cfg.precision))
    return 0


def cmd_gen_corpus(cfg: RunConfig) -> int:
    out = Path(cfg.output or "corpus")
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for fx in gen_corpus(cfg.seed, cfg.sizes):
        io.write_json(out / f"{fx.name}.json", io.fixture_to_json(fx))
        names.append(fx.name)
    io.write_json(out / "index.json", {"seed": cfg.seed, "sizes": list(cfg.sizes), "fixtures": names})
    sys.stdout.write(io.dumps({"directory": str(out), "fixtures": len(names)}))
    return 0


COMMANDS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "level-draw": cmd_level_draw,
    "morph": cmd_morph,
    "certify": cmd_certify,
    "render": cmd_render,
    "gen-corpus": cmd_gen_corpus,
}


# -- argument parsing --------------------------------------------------------

def _sizes(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexmorph",
        description="Convex drawings and unidirectional convex morphs of plane graphs.",
    )
    parser.add_argument(
        "--profile",
        choices=("release", "debug"),
        default="release",
        help=f"validation profile; the {PROFILE_ENV} environment variable overrides it",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--out", help="output file (directory for render/gen-corpus); default stdout")
        return p

    p = add("check", "classify a graph (and optionally a drawing) by convexity")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--drawing", help="drawing JSON to check against the graph")

    p = add("decompose", "list the removals that reduce a convex graph to its outer cycle")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--method", choices=("auto", "proof", "greedy"), default="auto",
                   help="removal strategy")

    p = add("level-draw", "convex (or strictly convex) level drawing for a hierarchy")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--hierarchy", required=True, help="hierarchy JSON (direction, levels, assignment)")
    p.add_argument("--outer", required=True, help="drawing JSON with the outer polygon")
    p.add_argument("--mode", choices=("convex", "strict"), default="convex",
                   help="class of the resulting drawing")

    p = add("morph", "morph between two drawings; output includes step certificates")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--from", dest="source", required=True, help="source drawing JSON")
    p.add_argument("--to", dest="target", required=True, help="target drawing JSON")
    p.add_argument("--mode", choices=("auto", "strict", "convex"), default="auto",
                   help="strict morph, convex morph, or pick from the inputs")

    p = add("certify", "re-certify every step of a morph JSON")
    p.add_argument("--morph", required=True, help="morph JSON")
    p.add_argument("--mode", choices=("auto", "strict", "convex"), default="auto",
                   help="class every frame must keep; auto reads it from the morph file")
    p.add_argument("--bound", type=int, help="maximum number of steps")

    p = add("render", "SVG frames of a morph, or one SVG of a drawing")
    p.add_argument("--morph", help="morph JSON")
    p.add_argument("--graph", help="graph JSON (with --drawing)")
    p.add_argument("--drawing", help="drawing JSON (with --graph)")
    p.add_argument("--frames-per-step", type=int, default=24, help="samples per step at times k/N")
    p.add_argument("--size", type=int, default=480, help="canvas size in pixels")
    p.add_argument("--precision", type=int, default=6, help="decimal digits per coordinate")

    p = add("gen-corpus", "write the deterministic fixture corpus")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--sizes", type=_sizes, default=DEFAULT_SIZES,
                   help="comma-separated stacked-triangulation sizes")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    keys = ("graph", "drawing", "method", "hierarchy", "outer", "source", "target", "morph", "bound")
    inputs = {k: getattr(args, k) for k in keys if hasattr(args, k)}
    if "source" in inputs:
        inputs["from"] = inputs.pop("source")
        inputs["to"] = inputs.pop("target")
    return RunConfig(
        subcommand=args.subcommand,
        inputs=inputs,
        output=args.out,
        mode=getattr(args, "mode", "auto"),
        profile=args.profile,
        frames_per_step=getattr(args, "frames_per_step", 24),
        size=getattr(args, "size", 480),
        precision=getattr(args, "precision", 6),
        seed=getattr(args, "seed", 0),
        sizes=getattr(args, "sizes", DEFAULT_SIZES),
    )


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    if cfg.subcommand == "render" and not cfg.inputs.get("morph") and not (
        cfg.inputs.get("graph") and cfg.inputs.get("drawing")
    ):
        parser.error("render needs --morph, or --graph with --drawing")
    if cfg.subcommand == "render" and not cfg.output:
        parser.error("render needs --out")
    preset = PROFILE_ENV in os.environ
    if not preset:
        os.environ[PROFILE_ENV] = cfg.profile
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except (ConvexMorphError, KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(io.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    finally:
        if not preset:
            del os.environ[PROFILE_ENV]


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
