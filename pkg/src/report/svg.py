"""
SVG picture of the dual diagram cut by the plane p1 + p2 + p3 = 1.

Positive cells are drawn black, vanishing cells blue and non-vanishing cells
red. Regions are shaded and labeled with their monomial and 1 - 1/|nu|.
"""

from typing import List, Tuple

import numpy as np

from ..core.config import SVG_HEIGHT, SVG_MARGIN, SVG_WIDTH
from ..core.dual_diagram import SIMPLEX_CORNERS, SimplexPlan, to_unit_triangle

CLASS_COLORS = {"positive": "black", "vanishing": "blue", "nonvanishing": "red"}


def _screen(bary) -> Tuple[float, float]:
    """Unit-triangle point to SVG user coordinates (y grows downward)."""
    x, y = to_unit_triangle(bary)
    usable_height = SVG_HEIGHT - 2 * SVG_MARGIN
    scale = min(SVG_WIDTH - 2 * SVG_MARGIN, usable_height / SIMPLEX_CORNERS[2, 1])
    left = (SVG_WIDTH - scale) / 2
    return left + scale * x, SVG_HEIGHT - SVG_MARGIN - scale * y


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _points_attr(barys) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_screen(b) for b in barys))


def render_svg(plan: SimplexPlan, title: str = "") -> str:
    """Standalone SVG document; identical plans give identical bytes."""
    lines: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'width="{SVG_WIDTH}" height="{SVG_HEIGHT}">',
        f"<title>{_escape(title)}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]

    corners = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    lines.append(f'<polygon points="{_points_attr(corners)}" fill="none" stroke="gray" stroke-width="1"/>')

    for region in plan.regions:
        color = CLASS_COLORS[region.cell_class]
        lines.append(
            f'<polygon id="{region.cell_id}" points="{_points_attr(region.vertices)}" '
            f'fill="{color}" fill-opacity="0.12" stroke="none"/>'
        )
        centre = np.mean([_screen(vertex) for vertex in region.vertices], axis=0)
        label = region.monomial if region.value is None else f"{region.monomial}: {region.value}"
        lines.append(
            f'<text x="{_fmt(centre[0])}" y="{_fmt(centre[1])}" font-size="14" '
            f'text-anchor="middle" fill="{color}">{_escape(label)}</text>'
        )

    for segment in plan.segments:
        (x1, y1), (x2, y2) = (_screen(end) for end in segment.ends)
        lines.append(
            f'<line id="{segment.cell_id}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{CLASS_COLORS[segment.cell_class]}" stroke-width="2"/>'
        )

    for point in plan.points:
        x, y = _screen(point.bary)
        color = CLASS_COLORS[point.cell_class]
        label = point.label if point.theta_prime is None else f"{point.label} [{point.theta_prime}]"
        lines.append(f'<circle id="{point.cell_id}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="6" fill="{color}"/>')
        lines.append(
            f'<text x="{_fmt(x + 9)}" y="{_fmt(y - 9)}" font-size="13" fill="{color}">{_escape(label)}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
