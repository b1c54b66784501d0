"""SVG frames of drawings and morphs (presentation only).

Rationals are converted to decimals at print time; nothing here feeds back
into morph construction or certification.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

from gmpy2 import mpq

from .geometry import interpolate
from .graph_core import PlaneGraph

DEFAULT_SIZE = 480
DEFAULT_PRECISION = 6


def _bbox(drawings: Sequence[Mapping]):
    xs = [p[0] for d in drawings for p in d.values()]
    ys = [p[1] for d in drawings for p in d.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or mpq(1)
    return x0, y0, span


def render_svg(
    graph: PlaneGraph,
    drawing: Mapping,
    size: int = DEFAULT_SIZE,
    precision: int = DEFAULT_PRECISION,
    bbox=None,
    label: str | None = None,
) -> str:
    """One drawing as an SVG document, y axis pointing up.

    Args:
        graph: The plane graph.
        drawing: Exact vertex positions.
        size: Canvas width and height in pixels.
        precision: Decimal digits printed per coordinate.
        bbox: ``(x0, y0, span)`` to share one viewport across frames.
        label: Optional caption.
    """
    x0, y0, span = bbox if bbox is not None else _bbox([drawing])
    margin = mpq(size, 20)
    scale = (size - 2 * margin) / span

    def fmt(v) -> str:
        return f"{float(v):.{precision}f}".rstrip("0").rstrip(".")

    def xy(v):
        p = drawing[v]
        return fmt(margin + (p[0] - x0) * scale), fmt(size - margin - (p[1] - y0) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for u, v in sorted(graph.edges):
        (ax, ay), (bx, by) = xy(u), xy(v)
        out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#333" stroke-width="1.5"/>')
    for v in graph.vertices:
        cx, cy = xy(v)
        fill = "#c33" if v in graph.outer_vertices else "#36c"
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="{fill}"><title>{v}</title></circle>')
    if label:
        out.append(f'<text x="8" y="16" font-family="monospace" font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_morph(
    graph: PlaneGraph,
    frames: Sequence[Mapping],
    out_dir: str | Path,
    frames_per_step: int = 24,
    size: int = DEFAULT_SIZE,
    precision: int = DEFAULT_PRECISION,
) -> list[Path]:
    """Write ``frame_00000.svg`` ... sampling each step at times ``k / frames_per_step``.

    Returns:
        The written paths in order.
    """
    if frames_per_step < 1:
        raise ValueError("frames_per_step must be positive")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    box = _bbox(frames)
    paths = []
    shots = []
    for i, (a, b) in enumerate(zip(frames, frames[1:])):
        for k in range(frames_per_step):
            shots.append((interpolate(a, b, mpq(k, frames_per_step)), f"step {i + 1} t={k}/{frames_per_step}"))
    shots.append((frames[-1], f"step {len(frames) - 1} t=1"))
    for idx, (d, label) in enumerate(shots):
        path = out / f"frame_{idx:05d}.svg"
        path.write_text(render_svg(graph, d, size, precision, box, label))
        paths.append(path)
    return paths
