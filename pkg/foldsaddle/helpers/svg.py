# svg.py
"""
    Minimal SVG writer with a fixed viewBox over a data rectangle.
    Output depends only on the drawn content: numbers are printed with a fixed
    precision and the header names the generator version.
"""

import numpy as np

import foldsaddle.settings as sts

region_colors = {
    "Crossing": "#9e9e9e",
    "Sliding": "#1f77b4",
    "Escaping": "#d62728",
    "Tangential": "#000000",
    "PseudoEquilibrium": "#000000",
}

pseudo_colors = {
    "SigmaAttractor": "#2ca02c",
    "SigmaRepeller": "#ff7f0e",
    "SigmaSaddle": "#9467bd",
}

stability_colors = {"Attractor": "#2ca02c", "Repeller": "#ff7f0e", "NonHyperbolic": "#8c564b"}


class Canvas:
    def __init__(self, bounds: tuple, *args, size: int = None, precision: int = None, title: str = "", **kwargs):
        self.x_min, self.x_max, self.y_min, self.y_max = (float(b) for b in bounds)
        self.size = sts.svg_size if size is None else size
        self.precision = sts.svg_precision if precision is None else precision
        self.title = title
        self.elements = []

    def _n(self, v: float) -> str:
        s = f"{v:.{self.precision}f}"
        # avoid -0.0000 flipping between runs
        return s[1:] if s.startswith("-") and float(s) == 0 else s

    def px(self, x: float, y: float) -> tuple:
        sx = (x - self.x_min) / (self.x_max - self.x_min) * self.size
        sy = (self.y_max - y) / (self.y_max - self.y_min) * self.size
        return sx, sy

    def _pt(self, x: float, y: float) -> str:
        sx, sy = self.px(x, y)
        return f"{self._n(sx)},{self._n(sy)}"

    @staticmethod
    def _style(stroke: str = "none", width: float = 1.0, fill: str = "none", dash: str = None) -> str:
        style = f'stroke="{stroke}" stroke-width="{width}" fill="{fill}"'
        return style + (f' stroke-dasharray="{dash}"' if dash else "")

    def rect(self, x0: float, y0: float, x1: float, y1: float, *args, fill: str, opacity: float = 1.0, **kwargs):
        (ax, ay), (bx, by) = self.px(x0, y1), self.px(x1, y0)
        self.elements.append(
            f'<rect x="{self._n(ax)}" y="{self._n(ay)}" width="{self._n(bx - ax)}" '
            f'height="{self._n(by - ay)}" fill="{fill}" fill-opacity="{opacity}"/>'
        )

    def line(self, p: tuple, q: tuple, **style):
        (ax, ay), (bx, by) = self.px(*p), self.px(*q)
        self.elements.append(
            f'<line x1="{self._n(ax)}" y1="{self._n(ay)}" x2="{self._n(bx)}" y2="{self._n(by)}" '
            f"{self._style(**style)}/>"
        )

    def polyline(self, points, **style):
        """Draws points (rows of x, y), broken at non-finite rows."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or len(points) < 2:
            return
        finite = np.isfinite(points).all(axis=1)
        runs, current = [], []
        for row, ok in zip(points, finite):
            if ok:
                current.append(row)
            elif current:
                runs.append(current)
                current = []
        runs.append(current)
        for run in runs:
            if len(run) < 2:
                continue
            coords = " ".join(self._pt(x, y) for x, y in run)
            self.elements.append(f'<polyline points="{coords}" {self._style(**style)}/>')

    def circle(self, p: tuple, r: float, **style):
        sx, sy = self.px(*p)
        self.elements.append(f'<circle cx="{self._n(sx)}" cy="{self._n(sy)}" r="{r}" {self._style(**style)}/>')

    def square(self, p: tuple, half: float, **style):
        sx, sy = self.px(*p)
        self.elements.append(
            f'<rect x="{self._n(sx - half)}" y="{self._n(sy - half)}" width="{2 * half}" '
            f'height="{2 * half}" {self._style(**style)}/>'
        )

    def text(self, p: tuple, s: str, *args, size: int = 12, fill: str = "#000000", **kwargs):
        sx, sy = self.px(*p)
        self.elements.append(
            f'<text x="{self._n(sx)}" y="{self._n(sy)}" font-size="{size}" fill="{fill}" '
            f'font-family="monospace">{s}</text>'
        )

    def render(self) -> str:
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f"<!-- generator: {sts.generator_version} -->",
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {self.size} {self.size}" '
            f'width="{self.size}" height="{self.size}">',
        ]
        if self.title:
            head.append(f"<title>{self.title}</title>")
        head.append(f'<rect x="0" y="0" width="{self.size}" height="{self.size}" fill="#ffffff"/>')
        return "\n".join(head + self.elements + ["</svg>"]) + "\n"


def zero_locus(fun, bounds: tuple, n: int = 121) -> np.ndarray:
    """
    Points where fun(x, y) changes sign along the rows and columns of an n x n grid,
    linearly interpolated. Drawn as dots they trace the curve fun = 0.
    """
    x_min, x_max, y_min, y_max = bounds
    xs, ys = np.linspace(x_min, x_max, n), np.linspace(y_min, y_max, n)
    XX, YY = np.meshgrid(xs, ys)
    V = np.asarray(fun(XX, YY), dtype=float) * np.ones_like(XX)
    found = []
    # along x
    a, b = V[:, :-1], V[:, 1:]
    r, c = np.nonzero(a * b < 0)
    t = a[r, c] / (a[r, c] - b[r, c])
    found.append(np.column_stack([xs[c] + t * (xs[c + 1] - xs[c]), ys[r]]))
    # along y
    a, b = V[:-1, :], V[1:, :]
    r, c = np.nonzero(a * b < 0)
    t = a[r, c] / (a[r, c] - b[r, c])
    found.append(np.column_stack([xs[c], ys[r] + t * (ys[r + 1] - ys[r])]))
    # exact zeros on grid nodes
    r, c = np.nonzero(V == 0)
    found.append(np.column_stack([xs[c], ys[r]]))
    pts = np.vstack(found)
    return pts[np.lexsort((pts[:, 1], pts[:, 0]))]
