# portrait.py
"""
    Phase portrait of a Filippov system as SVG.

    Sigma is drawn colored by region, the loci X.f = 0 (above) and Y.f = 0 (below)
    dotted, folds as circles (filled visible, open invisible), pseudo-equilibria colored
    by kind, and forward trajectories from a seed lattice. Canard cycles and the
    Sigma-graph are overlaid when present.
"""

import logging

import numpy as np

import foldsaddle.settings as sts
from foldsaddle.classify import detect_sigma_graph
from foldsaddle.core import NsvfSystem, Visibility, find_folds, find_pseudo_equilibria, sigma_regions
from foldsaddle.errors import FoldSaddleError
from foldsaddle.flow import advance
from foldsaddle.helpers.collections import emit
from foldsaddle.helpers.svg import Canvas, pseudo_colors, region_colors, stability_colors, zero_locus
from foldsaddle.normal_forms import Behavior, FamilyParams, geometry, make_system
from foldsaddle.return_map import find_canard_cycles

logger = logging.getLogger(__name__)


def seed_points(Z: NsvfSystem, seed_grid: int) -> list:
    """seed_grid x seed_grid lattice strictly inside the domain, none on Sigma"""
    x_min, x_max, y_min, y_max = Z.domain
    xs = np.linspace(x_min, x_max, seed_grid + 2)[1:-1]
    ys = np.linspace(y_min, y_max, seed_grid + 2)[1:-1]
    nudge = 0.01 * (y_max - y_min)
    return [(float(x), float(y) if abs(y) > nudge else float(y + nudge)) for y in ys for x in xs]


def render(
    Z: NsvfSystem,
    *args,
    seed_grid: int = 5,
    saddles: list = (),
    cycles: list = (),
    graph=None,
    title: str = "",
    window: tuple = None,
    **kwargs,
) -> str:
    canvas = Canvas(Z.domain, title=title or Z.name)
    x_min, x_max, y_min, y_max = Z.domain
    # half-plane loci
    for fld, lo, hi in ((Z.upper, 0.0, y_max), (Z.lower, y_min, 0.0)):
        for x, y in zero_locus(lambda x, y, fld=fld: fld.velocity(x, y)[1], (x_min, x_max, lo, hi)):
            canvas.circle((x, y), 0.8, fill="#7f7f7f")
    for start in seed_points(Z, seed_grid):
        try:
            traj = advance(Z, start, sts.portrait_t_max, directive="slide")
        except FoldSaddleError as e:
            logger.debug(f"portrait: trajectory from {start} dropped, {type(e).__name__}: {e}")
            continue
        for seg in traj.segments:
            canvas.polyline(seg.points[:, 1:3], stroke="#4d4d4d", width=0.7)
        canvas.circle(start, 1.5, fill="#4d4d4d")
    for piece in sigma_regions(Z):
        canvas.line((piece.x_lo, 0.0), (piece.x_hi, 0.0), stroke=region_colors[piece.region.value], width=3)
    for cycle in cycles:
        canvas.polyline(cycle.polyline, stroke=stability_colors[cycle.stability.value], width=2)
    if graph is not None:
        canvas.polyline(graph.polyline, stroke="#000000", width=1.5, dash="6,3")
    for fold in find_folds(Z):
        fill = "#000000" if fold.visibility == Visibility.VISIBLE else "#ffffff"
        canvas.circle(fold.location, 4, stroke="#000000", width=1.2, fill=fill)
    for point, real in saddles:
        canvas.square(point, 4, stroke="#000000", width=1.2, fill="#000000" if real else "#ffffff")
    for pe in find_pseudo_equilibria(Z, window=window):
        canvas.circle((pe.x, 0.0), 4, stroke="#000000", width=1, fill=pseudo_colors.get(pe.kind.value, "#000000"))
    canvas.text((x_min + 0.02 * (x_max - x_min), y_max - 0.05 * (y_max - y_min)), title or Z.name)
    return canvas.render()


def family_portrait(p: FamilyParams, seed_grid: int) -> str:
    Z = make_system(p)
    geo = geometry(p)
    cycles = find_canard_cycles(p) if p.tau == "inv" and geo.behavior == Behavior.YPLUS else []
    window = (Z.domain[0], min(Z.domain[1], p.lam + sts.inv_local_reach)) if p.tau == "inv" else None
    # the saddle of Y is real below Sigma only for beta >= 0
    return render(
        Z,
        seed_grid=seed_grid,
        saddles=[(geo.S, p.beta >= 0)],
        cycles=cycles,
        graph=detect_sigma_graph(p),
        title=f"{p.tau} lambda={p.lam:g} beta={p.beta:g} mu={p.mu:g}",
        window=window,
    )


def main(
    *args,
    tau: str,
    lam: float,
    beta: float,
    mu: float,
    seed_grid: int = 5,
    out: str = None,
    verbose: int = 0,
    **kwargs,
) -> str:
    text = family_portrait(FamilyParams(tau, lam, beta, mu), seed_grid)
    emit(text, out, verbose=verbose)
    return text
