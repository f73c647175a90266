# collections.py
import csv, io, json, os

import numpy as np
from colorama import Fore, Style
from tabulate import tabulate as tb


def unalias_path(work_path: str) -> str:
    """
    replaces path aliases such as . ~ with path text
    """
    if not any([e in work_path for e in [".", "~", "%"]]):
        return work_path
    work_path = work_path.replace(r"%USERPROFILE%", "~")
    work_path = work_path.replace("~", os.path.expanduser("~"))
    return os.path.normpath(os.path.abspath(work_path))


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def to_json(data) -> str:
    """Deterministic JSON: key order as built, floats in repr form."""
    return json.dumps(data, indent=2, default=_jsonable) + "\n"


def to_csv(rows: list, headers: list) -> str:
    buffer = io.StringIO()
    w = csv.writer(buffer, lineterminator="\n")
    w.writerow(headers)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buffer.getvalue()


def emit(text: str, out: str = None, *args, verbose: int = 0, **kwargs) -> str:
    """Writes text to out, or to stdout without out. Returns the target."""
    if out is None:
        print(text, end="")
        return "stdout"
    path = unalias_path(out)
    if os.path.dirname(path):
        os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)
    if verbose:
        print(f"{Fore.GREEN}written:{Style.RESET_ALL} {path}")
    return path


def to_tbl(rows: list, *args, headers: list, tablefmt: str = "simple", floatfmt: str = ".6g", **kwargs) -> str:
    return tb(rows, headers=headers, tablefmt=tablefmt, floatfmt=floatfmt)
