"""SVG pictures of GIT fans of rank at most three."""

from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cones import Cone  # noqa: E402
from .gitfan import GITFan  # noqa: E402


class NotPlottable(ValueError):
    pass


def _generators(c: Cone) -> list[tuple]:
    return list(c.rays) + list(c.lineality) + [tuple(-x for x in l) for l in c.lineality]


def _order_polygon(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    if len(points) < 3:
        return points
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def _plane_section(fan: GITFan):
    """Map rank-3 vectors to the plane <u, w> = 1 where u is an interior point of the support."""
    if fan.support.lineality:
        raise NotPlottable("the weight cone contains a line; no affine section exists")
    u = [Fraction(x) for x in fan.support.interior_point()]
    norm = [Fraction(x) for x in (u if any(u) else (1, 1, 1))]
    # orthonormal-ish basis of the plane orthogonal to ``norm``
    a = (norm[1], -norm[0], Fraction(0)) if (norm[0] or norm[1]) else (Fraction(1), Fraction(0), Fraction(0))
    b = (norm[1] * a[2] - norm[2] * a[1], norm[2] * a[0] - norm[0] * a[2], norm[0] * a[1] - norm[1] * a[0])
    la = math.sqrt(sum(float(x) ** 2 for x in a))
    lb = math.sqrt(sum(float(x) ** 2 for x in b))

    def project(v):
        s = sum(Fraction(x) * y for x, y in zip(v, norm))
        if s <= 0:
            raise NotPlottable("a ray does not meet the section plane")
        p = [Fraction(x) / s for x in v]
        return (float(sum(x * y for x, y in zip(p, a))) / la, float(sum(x * y for x, y in zip(p, b))) / lb)

    return project


def _label(ax, xy, text):
    ax.annotate(text, xy, fontsize=7, ha="center", va="center")


def plot_gitfan(fan: GITFan, path, title: str = "") -> None:
    """Write an SVG of the chambers; rank 3 fans are drawn in an affine plane section."""
    k = fan.support.ambient
    if k not in (1, 2, 3):
        raise NotPlottable(f"can only draw fans of rank at most 3 (got {k})")
    plt.rcParams["svg.hashsalt"] = "coxcalc"
    fig, ax = plt.subplots(figsize=(5, 5))
    chambers = fan.chamber_cones()
    colors = plt.get_cmap("tab20")
    if k == 1:
        for i, c in enumerate(chambers):
            xs = sorted(float(g[0]) for g in _generators(c))
            lo, hi = (min(0.0, xs[0]), max(0.0, xs[-1]))
            ax.plot([lo, hi], [0, 0], lw=6, color=colors(i % 20), solid_capstyle="butt")
            _label(ax, ((lo + hi) / 2, 0.15), f"λ{i}")
        ax.plot([0], [0], "ko")
        ax.set_ylim(-1, 1)
    elif k == 2:
        for i, c in enumerate(chambers):
            pts = [(0.0, 0.0)]
            for g in _generators(c):
                n = math.hypot(float(g[0]), float(g[1]))
                pts.append((float(g[0]) / n, float(g[1]) / n))
            ordered = [pts[0]] + sorted(pts[1:], key=lambda p: math.atan2(p[1], p[0]))
            ax.fill(*zip(*ordered), alpha=0.5, color=colors(i % 20), ec="k")
            cx = sum(p[0] for p in ordered) / len(ordered)
            cy = sum(p[1] for p in ordered) / len(ordered)
            _label(ax, (cx, cy), f"λ{i}")
        ax.set_xlim(-1.2, 1.2)
        ax.set_ylim(-1.2, 1.2)
    else:
        project = _plane_section(fan)
        for i, c in enumerate(chambers):
            poly = _order_polygon([project(r) for r in c.rays])
            ax.fill(*zip(*poly), alpha=0.5, color=colors(i % 20), ec="k", lw=0.8)
            cx = sum(p[0] for p in poly) / len(poly)
            cy = sum(p[1] for p in poly) / len(poly)
            _label(ax, (cx, cy), f"λ{i}")
        for oc in fan.orbit_cones:
            if oc.dim == 1:
                x, y = project(oc.rays[0])
                ax.plot([x], [y], "k.", ms=4)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
