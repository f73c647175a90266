# scan.py
import logging
from collections import Counter

import numpy as np
from colorama import Fore, Style

from foldsaddle.classify import ScanResult, scan, slice_mu
from foldsaddle.errors import FoldSaddleError
from foldsaddle.helpers.collections import emit, to_csv, to_json, to_tbl
from foldsaddle.helpers.svg import Canvas
from foldsaddle.normal_forms import i1, thresholds_M

logger = logging.getLogger(__name__)

csv_headers = ["lambda", "beta", "theorem", "case"]


def case_color(case_index: str) -> str:
    case = int(case_index.split("_")[0])
    return f"hsl({(case * 47) % 360},55%,72%)"


def threshold_curves(result: ScanResult, n: int = 400) -> dict:
    """lambda(beta) of every threshold of the slice, nan where undefined"""
    betas = np.linspace(result.beta_grid[0], result.beta_grid[-1], n)
    names = ["-beta", "beta", "i1"] + (["M0", "M1", "M2"] if result.tau == "inv" else [])
    curves = {name: np.full(n, np.nan) for name in names}
    for k, b in enumerate(betas):
        try:
            alpha = slice_mu(result.mu_rule, float(b), mu=result.mu, mu_offset=result.mu_offset) - 1.0
        except FoldSaddleError:
            continue
        curves["-beta"][k], curves["beta"][k] = -b, b
        if b <= 0:
            continue
        curves["i1"][k] = i1(alpha, b)
        if result.tau == "inv" and alpha < 0:
            curves["M0"][k], curves["M1"][k], curves["M2"][k] = thresholds_M(alpha, float(b))
    return {name: np.column_stack([values, betas]) for name, values in curves.items()}


def case_map(result: ScanResult) -> str:
    lams, betas = result.lambda_grid, result.beta_grid
    dl = (lams[-1] - lams[0]) / max(len(lams) - 1, 1)
    db = (betas[-1] - betas[0]) / max(len(betas) - 1, 1)
    bounds = (lams[0] - dl / 2, lams[-1] + dl / 2, betas[0] - db / 2, betas[-1] + db / 2)
    canvas = Canvas(bounds, title=f"scan {result.tau} {result.mu_rule}")
    for cell in result.cells(with_lane=False):
        fill = case_color(cell.label.case_index) if cell.label else "#ffffff"
        canvas.rect(cell.lam - dl / 2, cell.beta - db / 2, cell.lam + dl / 2, cell.beta + db / 2, fill=fill)
    for name, curve in threshold_curves(result).items():
        inside = (curve[:, 0] >= bounds[0]) & (curve[:, 0] <= bounds[1])
        curve[~inside] = np.nan
        canvas.polyline(curve, stroke="#000000", width=1, dash=None if name in ("M1", "i1") else "4,2")
    for cell in result.cells(with_lane=False):
        if cell.label:
            canvas.text((cell.lam - dl / 3, cell.beta - db / 6), cell.label.case_index.split("_")[0], size=8)
    return canvas.render()


def summary(result: ScanResult) -> str:
    counts = Counter(c.label.case_index for c in result.cells() if c.label)
    rows = [(case, counts[case]) for case in result.distinct_labels()]
    rows += [(f"{Fore.RED}failed{Style.RESET_ALL}", len(result.failures()))]
    return to_tbl(rows, headers=["case", "cells"])


def main(
    *args,
    tau: str,
    mu_rule: str,
    lambda_range: tuple,
    beta_range: tuple,
    resolution: int,
    mu: float = None,
    mu_offset: float = 0.0,
    boundary_lane: bool = False,
    workers: int = None,
    format: str = "csv",
    out: str = None,
    verbose: int = 0,
    **kwargs,
) -> str:
    result = scan(
        tau,
        mu_rule,
        lambda_range,
        beta_range,
        resolution,
        mu=mu,
        mu_offset=mu_offset,
        boundary_lane=boundary_lane,
        workers=workers,
    )
    if format == "json":
        text = to_json(result.to_dict())
    elif format == "svg":
        text = case_map(result)
    else:
        text = to_csv(result.csv_rows(), csv_headers)
    emit(text, out, verbose=verbose)
    if out is not None:
        print(f"{Fore.GREEN}{len(result.distinct_labels())} distinct cases{Style.RESET_ALL}")
        print(summary(result))
    return text
