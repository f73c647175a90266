# classify.py
import logging

import foldsaddle.settings as sts
from foldsaddle.classify import classify_case
from foldsaddle.helpers.collections import emit, to_json
from foldsaddle.normal_forms import FamilyParams, geometry, thresholds

logger = logging.getLogger(__name__)


def label_document(p: FamilyParams) -> dict:
    doc = classify_case(p).to_dict()
    doc["geometry"] = geometry(p).to_dict()
    doc["thresholds"] = thresholds(p).to_dict()
    # d and S both at the origin: the fold-saddle point itself
    doc["fold_saddle_point"] = abs(p.lam) <= sts.boundary_tol and abs(p.beta) <= sts.boundary_tol
    return doc


def main(*args, tau: str, lam: float, beta: float, mu: float, out: str = None, verbose: int = 0, **kwargs) -> str:
    p = FamilyParams(tau, lam, beta, mu)
    text = to_json(label_document(p))
    emit(text, out, verbose=verbose)
    return text
