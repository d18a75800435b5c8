"""Plain SVG figures: torus multipaths in flat angle coordinates and
Euclidean scenes projected to the xy-plane."""
from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .planners.euclid import RadialData
from .spaces import ObstacleSet, StratumData

SIZE = 480
PAD = 30
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2")


def _svg(body: list[str], title: str) -> str:
    w = SIZE + 2 * PAD
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" '
            f'viewBox="0 0 {w} {w}" font-family="sans-serif" font-size="11">')
    return "\n".join([head, f"<title>{title}</title>", '<rect width="100%" height="100%" fill="white"/>',
                      *body, "</svg>"]) + "\n"


def _poly(points: Sequence[tuple[float, float]], color: str, width: float = 1.5, dash: str = "") -> str:
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>'


def _angle(z: complex) -> float:
    return cmath.phase(z) % (2 * math.pi)


def _flat(th: float, tv: float) -> tuple[float, float]:
    s = SIZE / (2 * math.pi)
    return PAD + th * s, PAD + SIZE - tv * s


def _split_wraps(angles: np.ndarray) -> list[np.ndarray]:
    """Cut a closed-loop trace wherever it jumps across the seam of the square."""
    jumps = np.where(np.abs(np.diff(angles, axis=0)).max(axis=1) > math.pi)[0]
    return np.split(angles, jumps + 1)


def torus_svg(record: dict, strata: StratumData) -> str:
    """Paths of a torus record over the square ``[0, 2pi)^2`` with E, A_x and M_x drawn."""
    body = []
    x0, y0 = _flat(0, 0)
    x1, y1 = _flat(2 * math.pi, 2 * math.pi)
    body.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for tv, lab in ((0.0, "E"), (math.pi, "E")):
        body.append(_poly([_flat(0, tv), _flat(2 * math.pi, tv)], "#999", 1, "4 3"))
        body.append(f'<text x="{x1 + 4:.1f}" y="{_flat(0, tv)[1]:.1f}">{lab}</text>')
    th0 = _angle(strata.x.h)
    lo, hi = (th0 - math.pi / 2) % (2 * math.pi), (th0 + math.pi / 2) % (2 * math.pi)
    for th, lab in ((lo, "C^I"), (hi, "C^D")):
        body.append(_poly([_flat(th, 0), _flat(th, 2 * math.pi)], "#e0a000", 1.2))
        body.append(f'<text x="{_flat(th, 0)[0] + 3:.1f}" y="{PAD - 6}">{lab}</text>')
    tvc = _angle(strata.height)
    arc = np.linspace(th0 - math.pi / 2, th0 + math.pi / 2, 64) % (2 * math.pi)
    for seg in _split_wraps(np.column_stack([arc, np.full_like(arc, tvc)])):
        body.append(_poly([_flat(a, b) for a, b in seg], "#e0a000", 1.2))
    for p, lab in ((strata.x, "x"), (strata.a_x, "a_x"), (strata.b_x, "b_x")):
        cx, cy = _flat(_angle(p.h), _angle(p.v))
        body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3.5" fill="black"/>')
        body.append(f'<text x="{cx + 5:.1f}" y="{cy - 5:.1f}">{lab}</text>')
    for k, path in enumerate(record["paths"]):
        s = np.asarray(path["samples"])
        ang = np.column_stack([np.arctan2(s[:, 2], s[:, 1]), np.arctan2(s[:, 4], s[:, 3])]) % (2 * math.pi)
        for seg in _split_wraps(ang):
            body.append(_poly([_flat(a, b) for a, b in seg], COLORS[k % len(COLORS)], 2))
    return _svg(body, f"torus {record['domain']} {record.get('char_tuple', '')}")


def euclid_svg(record: dict, obs: ObstacleSet, rd: RadialData) -> str:
    """xy-projection with obstacles, their radials and the theta-sectors around them."""
    samples = [np.asarray(p["samples"])[:, 1:3] for p in record["paths"]]
    pts = np.vstack([obs.points[:, :2], *samples, np.zeros((1, 2))])
    half = max(1.0, float(np.abs(pts).max())) * 1.15
    scale = SIZE / (2 * half)

    def xy(p):
        return PAD + (p[0] + half) * scale, PAD + (half - p[1]) * scale

    body = []
    for line in rd.lines:
        body.append(_poly([xy(-half * line * 1.5), xy(half * line * 1.5)], "#999", 1, "4 3"))
        for sgn in (1, -1):
            a = math.atan2(line[1], line[0]) + sgn * rd.theta
            edge = np.array([math.cos(a), math.sin(a)]) * half * 1.5
            body.append(_poly([xy(-edge), xy(edge)], "#e0a000", 0.8, "2 3"))
    for k, s in enumerate(samples):
        body.append(_poly([xy(p) for p in s], COLORS[k % len(COLORS)], 2))
    for p in obs.points:
        cx, cy = xy(p[:2])
        body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="black"/>')
    ox, oy = xy((0.0, 0.0))
    body.append(f'<circle cx="{ox:.2f}" cy="{oy:.2f}" r="3" fill="white" stroke="black"/>')
    body.append(f'<text x="{PAD}" y="{PAD - 8}">theta = {rd.theta:.4f}</text>')
    return _svg(body, f"euclid {record['domain']}")
