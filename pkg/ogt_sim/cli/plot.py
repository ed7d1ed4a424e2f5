"""
Static SVG rendering of loss-gap curves.
Pure text output; identical inputs give byte-identical files.
"""

import logging
import math
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from ..exceptions import StorageError
from ..harness.output import read_csv

logger = logging.getLogger(__name__)

LOG_FLOOR = 1e-17
WIDTH = 720
HEIGHT = 440
MARGIN_LEFT = 80
MARGIN_RIGHT = 180
MARGIN_TOP = 20
MARGIN_BOTTOM = 50
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]
X_AXES = {"rounds": "communication rounds", "grads": "gradient evaluations"}

Series = Tuple[str, List[float], List[float]]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def render_svg(series: Sequence[Series], x_label: str) -> str:
    """Render (label, x values, loss gaps) series on a log-y chart.

    Gaps <= 1e-17 are drawn at 1e-17.
    """
    xs = [x for _, values, _ in series for x in values]
    logs = [math.log10(max(y, LOG_FLOOR)) for _, _, gaps in series for y in gaps]
    x_min, x_max = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if x_max <= x_min:
        x_max = x_min + 1.0
    y_min = math.floor(min(logs)) if logs else -1.0
    y_max = math.ceil(max(logs)) if logs else 0.0
    if y_max <= y_min:
        y_max = y_min + 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def py(log_y: float) -> float:
        return MARGIN_TOP + (y_max - log_y) / (y_max - y_min) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="white" stroke="black"/>',
    ]

    for decade in range(int(y_min), int(y_max) + 1):
        y = py(decade)
        out.append(f'<line x1="{MARGIN_LEFT - 4}" y1="{y:.2f}" x2="{MARGIN_LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">1e{decade}</text>')
    for x in (x_min, (x_min + x_max) / 2.0, x_max):
        out.append(f'<text x="{px(x):.2f}" y="{HEIGHT - MARGIN_BOTTOM + 16}" font-size="11" '
                   f'text-anchor="middle">{x:g}</text>')
    out.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 10}" font-size="12" '
               f'text-anchor="middle">{_escape(x_label)}</text>')
    out.append(f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.2f}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.2f})">loss gap</text>')

    for index, (label, values, gaps) in enumerate(series):
        color = PALETTE[index % len(PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(math.log10(max(y, LOG_FLOOR))):.2f}" for x, y in zip(values, gaps))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        legend_y = MARGIN_TOP + 16 + 18 * index
        legend_x = WIDTH - MARGIN_RIGHT + 12
        out.append(f'<line x1="{legend_x}" y1="{legend_y - 4}" x2="{legend_x + 20}" y2="{legend_y - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{legend_x + 26}" y="{legend_y}" font-size="11">{_escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot(csv_paths: Sequence[Union[str, Path]], out_svg: Union[str, Path], x_axis: str = "rounds") -> Path:
    """Render the CSVs into one SVG, legend in argument order.

    Raises:
        ValueError: Unknown x axis
        ParseError: Malformed CSV
    """
    if x_axis not in X_AXES:
        raise ValueError(f"x axis must be one of {sorted(X_AXES)}, got {x_axis}")
    series: List[Series] = []
    for path in csv_paths:
        records = read_csv(path)
        xs = [float(r.k if x_axis == "rounds" else r.grad_evals) for r in records]
        series.append((Path(path).stem, xs, [r.loss_gap for r in records]))

    target = Path(out_svg)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(render_svg(series, X_AXES[x_axis]))
    except OSError as e:
        raise StorageError(f"Cannot write SVG {target}: {e}", path=str(target)) from e
    logger.info(f"Wrote plot with {len(series)} curves to {target}")
    return target
