# return_map.py
from foldsaddle.helpers.collections import emit, to_csv
from foldsaddle.normal_forms import FamilyParams
from foldsaddle.return_map import sample_return_map

csv_headers = ["x", "phi", "dphi"]


def main(
    *args,
    tau: str = "inv",
    lam: float,
    beta: float,
    mu: float,
    resolution: int = 200,
    out: str = None,
    verbose: int = 0,
    **kwargs,
) -> str:
    rows = sample_return_map(FamilyParams(tau, lam, beta, mu), resolution)
    text = to_csv(rows.tolist(), csv_headers)
    emit(text, out, verbose=verbose)
    return text
