"""Cross-sections of rank-3 fans as SVG.

Every cone in the positive orthant meets the plane x+y+z = 1 in a convex
polygon whose vertices are the normalized extremal rays.  The section is
computed in exact rational barycentric coordinates and only converted to
fixed-precision decimals when the SVG text is written, so identical fans
always produce identical bytes.
"""

from fractions import Fraction

from .cones import Fan
from .errors import RankNotThree

Bary = tuple[Fraction, Fraction, Fraction]
XY = tuple[Fraction, Fraction]

# corners of the drawing triangle for e1, e2, e3 (y grows downward in SVG)
_CORNERS: tuple[XY, XY, XY] = (
    (Fraction(40), Fraction(360)),
    (Fraction(440), Fraction(360)),
    (Fraction(240), Fraction(360) - Fraction(400) * Fraction(866, 1000)),
)

_FILLS = ("#cfe8ff", "#ffe3c2", "#d6f5d6", "#f5d6ec", "#fff3b0", "#d9d6f5")


def cross_section(fan: Fan) -> list[list[Bary]]:
    """One convex polygon per maximal cone, as ordered barycentric vertex
    lists.  Cones of dimension below 3 have no 2-dimensional section and are
    skipped."""
    if fan.rank != 3:
        raise RankNotThree(f"cross-section needs rank 3, got {fan.rank}")
    polys = []
    for cone in fan.cones:
        if cone.dim() != 3:
            continue
        pts = []
        for ray in cone.rays:
            s = sum(ray)
            if s <= 0:
                # a ray leaving the closed orthant never meets the section
                continue
            pts.append(tuple(Fraction(c, s) for c in ray))
        if len(pts) < 3:
            continue
        polys.append(_convex_order(sorted(set(pts))))
    return polys


def _to_xy(p: Bary) -> XY:
    (ax, ay), (bx, by), (cx, cy) = _CORNERS
    return (
        p[0] * ax + p[1] * bx + p[2] * cx,
        p[0] * ay + p[1] * by + p[2] * cy,
    )


def _convex_order(pts: list[Bary]) -> list[Bary]:
    """Counterclockwise boundary order via monotone chain on exact planar
    coordinates; the input points are extreme, so the hull keeps them all."""
    xy = [(_to_xy(p), p) for p in pts]
    xy.sort()
    if len(xy) <= 2:
        return [p for _, p in xy]

    def cross(o: XY, a: XY, b: XY) -> Fraction:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[XY, Bary]] = []
    for item in xy:
        while len(lower) >= 2 and cross(lower[-2][0], lower[-1][0], item[0]) <= 0:
            lower.pop()
        lower.append(item)
    upper: list[tuple[XY, Bary]] = []
    for item in reversed(xy):
        while len(upper) >= 2 and cross(upper[-2][0], upper[-1][0], item[0]) <= 0:
            upper.pop()
        upper.append(item)
    return [p for _, p in lower[:-1]] + [p for _, p in upper[:-1]]


def section_vertices(fan: Fan) -> list[Bary]:
    """Deduplicated vertex set of the whole section, sorted."""
    seen = set()
    for poly in cross_section(fan):
        seen.update(poly)
    return sorted(seen)


def section_adjacency(fan: Fan) -> set[tuple[int, int]]:
    """Pairs of polygon indices sharing a full edge segment of the drawing."""
    polys = cross_section(fan)
    edges: dict[tuple[Bary, Bary], list[int]] = {}
    for i, poly in enumerate(polys):
        for j in range(len(poly)):
            a, b = poly[j], poly[(j + 1) % len(poly)]
            key = (a, b) if a <= b else (b, a)
            edges.setdefault(key, []).append(i)
    out = set()
    for owners in edges.values():
        for i in range(len(owners)):
            for j in range(i + 1, len(owners)):
                out.add((owners[i], owners[j]))
    return out


def _fmt(x: Fraction) -> str:
    scaled = x.numerator * 1000 // x.denominator  # floor keeps it exact-driven
    return f"{scaled / 1000:.3f}"


def render_svg(fan: Fan) -> str:
    """Deterministic SVG text for the fan's cross-section."""
    polys = cross_section(fan)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" height="420" '
        'viewBox="0 0 480 420">',
        '<rect width="480" height="420" fill="white"/>',
    ]
    for i, poly in enumerate(polys):
        pts = " ".join(
            f"{_fmt(px)},{_fmt(py)}" for px, py in (_to_xy(p) for p in poly)
        )
        fill = _FILLS[i % len(_FILLS)]
        lines.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="#333" stroke-width="1.5"/>'
        )
    labels = ("x1", "x2", "x3")
    offs = ((-26, 14), (8, 14), (-8, -10))
    for (cx, cy), lab, (dx, dy) in zip(_CORNERS, labels, offs):
        lines.append(
            f'<text x="{_fmt(cx + dx)}" y="{_fmt(cy + dy)}" '
            f'font-family="monospace" font-size="14">{lab}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
