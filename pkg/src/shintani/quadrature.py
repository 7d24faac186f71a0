"""Vectorised quadrature over R^n for n <= 2 with the singular weight |N(y)|^{s-1}.

In a quadrant the integrand is written in polar form y = e^u (cos t, sin t).
Generating functions concentrate along the lines Tr(f y) = 0 in strips whose
angular width shrinks like 1/r, so angular panels are graded geometrically
towards every such angle, with Gauss-Jacobi rules at the axes where the
weight is singular.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

NODES = 24


@lru_cache(maxsize=None)
def _legendre(m: int):
    return roots_legendre(m)


@lru_cache(maxsize=None)
def _jacobi_left(m: int, b: float):
    """Nodes/weights on [0, 1] for the weight x^b."""
    x, w = roots_jacobi(m, 0.0, b)
    return (x + 1) / 2, w / 2 ** (b + 1)


def _panels(a: float, b: float, marks: list[float], finest: float, ratio: float = 0.3) -> list[tuple[float, float]]:
    """Split [a, b] at the interior marks, grading geometrically towards each of them."""
    inner = sorted({m for m in marks if a < m < b})
    cuts = [a, *inner, b]
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        pts = {lo, hi}
        for end, sgn in ((lo, 1), (hi, -1)):
            if end in inner:
                w = (hi - lo) / 2
                while w > finest:
                    pts.add(end + sgn * w)
                    w *= ratio
                pts.add(end + sgn * w)
        pts = sorted(pts)
        out.extend(zip(pts, pts[1:]))
    return out


def angular_rule(r: float, strip_angles: list[float], s: float, m: int = NODES):
    """Nodes and weights for int_0^{pi/2} g(t) |cos t sin t|^{s-1} dt at radius r."""
    half = math.pi / 2
    finest = min(1e-3, 1e-3 / max(r, 1.0))
    marks = [t for t in strip_angles if 0 < t < half]
    panels = _panels(0.0, half, marks, finest)
    if panels == [(0.0, half)]:
        panels = [(0.0, half / 2), (half / 2, half)]
    xs, ws = [], []
    xl, wl = _legendre(m)
    for lo, hi in panels:
        h = hi - lo
        if 0 < s < 1 and lo == 0.0:
            x, w = _jacobi_left(m, s - 1)
            t = lo + h * x
            ws.append(w * h**s * ((np.sin(t) / t) * np.cos(t)) ** (s - 1))
            xs.append(t)
        elif 0 < s < 1 and hi == half:
            x, w = _jacobi_left(m, s - 1)
            d = h * x
            t = half - d
            ws.append(w * h**s * ((np.sin(d) / d) * np.cos(d)) ** (s - 1))
            xs.append(t)
        else:
            t = lo + h * (xl + 1) / 2
            ws.append(wl * h / 2 * np.abs(np.cos(t) * np.sin(t)) ** (s - 1))
            xs.append(t)
    return np.concatenate(xs), np.concatenate(ws)


def quadrant_integral(G, s: float, strip_angles: list[float], u_min: float, u_max: float,
                      panel: float = 0.5, m: int = NODES) -> float:
    """int over (0, inf)^2 of G(y) |y_1 y_2|^{s-1} dy, G vectorised on (k, 2) arrays.

    With y = e^u (cos t, sin t) the measure becomes e^{2 s u} |cos t sin t|^{s-1} du dt.
    """
    xl, wl = _legendre(m)
    n_pan = max(1, int(math.ceil((u_max - u_min) / panel)))
    edges = np.linspace(u_min, u_max, n_pan + 1)
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        us = lo + (hi - lo) * (xl + 1) / 2
        uw = wl * (hi - lo) / 2
        for u, w in zip(us, uw):
            r = math.exp(u)
            t, tw = angular_rule(r, strip_angles, s, m)
            Y = np.stack([r * np.cos(t), r * np.sin(t)], axis=1)
            total += w * math.exp(2 * s * u) * float(np.dot(tw, G(Y)))
    return total


def half_line_integral(g, s: float, u_min: float, u_max: float, panel: float = 0.5, m: int = NODES) -> float:
    """int_0^inf g(y) y^{s-1} dy = int g(e^u) e^{s u} du, g vectorised."""
    xl, wl = _legendre(m)
    n_pan = max(1, int(math.ceil((u_max - u_min) / panel)))
    edges = np.linspace(u_min, u_max, n_pan + 1)
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        us = lo + (hi - lo) * (xl + 1) / 2
        uw = wl * (hi - lo) / 2
        total += float(np.dot(uw * np.exp(s * us), g(np.exp(us))))
    return total


def strip_angles(directions: list[tuple[float, float]]) -> list[float]:
    """Angles in (0, pi/2) where a . (cos t, sin t) = 0 for one of the given direction vectors a."""
    out = set()
    for a1, a2 in directions:
        if a2 == 0:
            continue
        t = math.atan2(-a1, a2)
        for c in (t, t + math.pi, t - math.pi):
            if 0 < c < math.pi / 2:
                out.add(round(c, 15))
    return sorted(out)
