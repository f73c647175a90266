# demo_spring.py
"""
    Spring-mass system a x'' + b x' + c x = g(x) switching at x = 0.
    Prints the Sigma structure (folds, regions, pseudo-equilibria) and one trajectory,
    as JSON or as a portrait.
"""

import logging
import sys

from foldsaddle.apis.portrait import render
from foldsaddle.core import find_folds, find_pseudo_equilibria, sigma_regions
from foldsaddle.flow import advance
from foldsaddle.helpers.collections import emit, to_json, to_tbl
from foldsaddle.normal_forms import spring_mass_preset

logger = logging.getLogger(__name__)


def sigma_table(folds: list, pes: list) -> str:
    rows = [(f.x, "fold", f.owner.value, f.visibility.value) for f in folds]
    rows += [(pe.x, "pseudo-equilibrium", pe.region.value, pe.kind.value) for pe in pes]
    return to_tbl(sorted(rows), headers=["x", "point", "owner/region", "kind"])


def describe(Z, start: tuple) -> dict:
    folds, pes = find_folds(Z), find_pseudo_equilibria(Z)
    traj = advance(Z, start, directive="slide")
    return {
        "system": Z.name,
        "folds": [{"x": f.x, "owner": f.owner.value, "visibility": f.visibility.value} for f in folds],
        "sigma_regions": [{"region": s.region.value, "x_lo": s.x_lo, "x_hi": s.x_hi} for s in sigma_regions(Z)],
        "pseudo_equilibria": [{"x": pe.x, "kind": pe.kind.value, "slope": pe.slope} for pe in pes],
        "trajectory": {"start": list(start), **traj.to_dict()},
    }


def main(
    *args,
    spring: list,
    variant: str = "invisible",
    seed_grid: int = 5,
    format: str = "json",
    out: str = None,
    verbose: int = 0,
    **kwargs,
) -> str:
    a, b, c, A = spring
    Z = spring_mass_preset(a, b, c, A, variant=variant)
    x_min, x_max, y_min, y_max = Z.domain
    start = (x_min / 2.0, y_max / 2.0)
    if format == "svg":
        text = render(Z, seed_grid=seed_grid, saddles=[((0.0, 0.0), True)], title=f"spring {variant}")
    else:
        doc = describe(Z, start)
        doc["params"] = {"a": a, "b": b, "c": c, "A": A, "variant": variant}
        text = to_json(doc)
    emit(text, out, verbose=verbose)
    print(sigma_table(find_folds(Z), find_pseudo_equilibria(Z)), file=sys.stdout if out else sys.stderr)
    return text
