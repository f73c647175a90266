# verify.py
"""
    Runs the reference checks of foldsaddle and reports each one with its expected
    value, actual value and tolerance. Any failed check ends the run with exit code 3.

        thresholds      closed-form connection thresholds against shooting
        fixed_point     the unique canard cycle at alpha = -1, beta = 1/2
        window          the two-cycle window below L1 on the resonance curve, with orbits
                        seeded on both sides of each cycle
        identities      identities between closed forms and half maps, 1000 random samples each
        simulation      pseudo-equilibrium kinds against forward sliding, on the T1-T6 scans
        pseudo          closed-form pseudo-equilibria of the visible family are roots of H
        half_maps       semi-analytic half maps against integration, and their involution
        counts          distinct case labels of the six theorem slices (--counts)
"""

import logging
import math
import sys
from dataclasses import dataclass

import numpy as np
from colorama import Fore, Style

import foldsaddle.settings as sts
from foldsaddle.classify import scan, sliding_trials
from foldsaddle.core import direction_function, normal_components, sliding_field
from foldsaddle.errors import FoldSaddleError, IllDefinedSliding, VerificationFailure
from foldsaddle.flow import find_connection_lambda, integrate_free, poincare_iterates
from foldsaddle.helpers.collections import emit, to_json, to_tbl
from foldsaddle.normal_forms import (
    FamilyParams,
    alpha0,
    i1,
    make_system,
    mu0,
    p_root_visible,
    q_root_visible,
    thresholds_L,
    thresholds_M,
)
from foldsaddle.return_map import (
    Stability,
    composed_domain,
    find_canard_cycles,
    find_saddle_node,
    gamma_x,
    gamma_y,
)

logger = logging.getLogger(__name__)

# distinct labels per theorem slice and the slice that produces them
case_counts = {"T1": 19, "T2": 21, "T3": 21, "T4": 13, "T5": 13, "T6": 13}
count_lambda_range = (-0.95, 0.95, 11)
count_beta_range = (-0.4, 0.6, 6)
sim_lambda_range = (-0.9, 0.9, 7)
sim_beta_range = (0.1, 0.7, 3)


@dataclass
class Check:
    group: str
    name: str
    expected: object
    actual: object
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _close(group: str, name: str, expected: float, actual: float, tol: float) -> Check:
    passed = actual is not None and np.isfinite(actual) and abs(actual - expected) <= tol
    return Check(group, name, expected, actual, tol, bool(passed))


def _worst(group: str, name: str, errors: list, tol: float) -> Check:
    worst = float(max(errors)) if errors else math.nan
    return Check(group, name, 0.0, worst, tol, bool(errors) and worst <= tol)


def threshold_checks() -> list:
    checks = []
    for beta in (0.1, 0.3, 0.5, 0.7):
        for alpha in (alpha0(beta), -1.0, -0.5):
            closed = dict(zip(("h->i", "h->j", "i->j"), thresholds_M(alpha, beta)))
            for pair, expected in closed.items():
                try:
                    shot = find_connection_lambda("inv", alpha, beta, pair)
                except FoldSaddleError as e:
                    logger.warning(f"threshold check {pair} at beta={beta}, alpha={alpha}: {e}")
                    shot = None
                name = f"{pair} beta={beta} alpha={alpha:.6g}"
                checks.append(_close("thresholds", name, expected, shot, 1e-9))
        for name, expected, pair in zip(("L0", "L1", "L2"), thresholds_L(beta), ("h->i", "h->j", "i->j")):
            shot = find_connection_lambda("inv", alpha0(beta), beta, pair)
            checks.append(_close("thresholds", f"{name} beta={beta}", expected, shot, 1e-9))
    l1_half = -0.5 + math.sqrt(6.0) / 6.0
    checks.append(_close("thresholds", "L1(1/2) = -1/2 + sqrt(6)/6", l1_half, thresholds_L(0.5)[1], 1e-12))
    return checks


def fixed_point_checks() -> list:
    p = FamilyParams.from_alpha("inv", -0.5 + 11.0 * math.sqrt(6.0) / 60.0, 0.5, -1.0)
    cycles = find_canard_cycles(p)
    checks = [Check("fixed_point", "cycle count", 1, len(cycles), 0.0, len(cycles) == 1)]
    if cycles:
        c = cycles[0]
        x_star = -math.sqrt(29.0 / 2.0) / 10.0
        checks.append(_close("fixed_point", "x* = -sqrt(29/2)/10", x_star, c.fixed_x, 1e-6))
        checks.append(Check("fixed_point", "multiplier > 1", "> 1", c.multiplier, 0.0, c.multiplier > 1.0))
    return checks


def window_checks(beta: float = 0.5) -> list:
    alpha = alpha0(beta)
    l0, l1, l2 = thresholds_L(beta)
    try:
        l3 = find_saddle_node(alpha, beta)
    except FoldSaddleError as e:
        return [Check("window", "saddle-node exists", "L3", str(e), 0.0, False)]
    checks = [Check("window", "L3 < L1 < L2", "ordered", [l3, l1, l2], 0.0, l3 < l1 < l2)]
    p = FamilyParams.from_alpha("inv", 0.5 * (l3 + l1), beta, alpha)
    cycles = find_canard_cycles(p)
    kinds = [c.stability.value for c in cycles]
    want = ["Attractor", "Repeller"]
    checks.append(Check("window", "cycles inside (L3, L1)", want, kinds, 0.0, kinds == want))
    below = FamilyParams.from_alpha("inv", 0.5 * (l0 + l3), beta, alpha)
    n_below = len(find_canard_cycles(below))
    checks.append(Check("window", "cycles in (L0, L3)", 0, n_below, 0.0, n_below == 0))
    above = FamilyParams.from_alpha("inv", 0.5 * (l1 + l2), beta, alpha)
    n_above = len(find_canard_cycles(above))
    checks.append(Check("window", "cycles in (L1, L2)", 0, n_above, 0.0, n_above == 0))
    if len(cycles) == 2:
        checks += seed_checks(p, cycles)
    return checks


def seed_checks(p: FamilyParams, cycles: list) -> list:
    """
    Seeds one orbit on each side of every cycle (sorted by fixed_x, the outer cycle
    first) and asks whether the first return moves it toward the cycle. It must do so
    exactly when the multiplier made the cycle an attractor.
    """
    Z = make_system(p)
    lo, hi = composed_domain(p)
    xs = [c.fixed_x for c in cycles]
    room = min([b - a for a, b in zip([lo] + xs, xs + [hi])])
    checks = []
    for k, cycle in enumerate(cycles):
        for side, where in ((-1.0, "outside"), (1.0, "inside")):
            x0 = cycle.fixed_x + side * 0.25 * room
            iterates = poincare_iterates(Z, x0, 1)
            closer = len(iterates) > 1 and abs(iterates[1] - cycle.fixed_x) < abs(x0 - cycle.fixed_x)
            want = cycle.stability == Stability.ATTRACTOR
            name = f"seed {where} cycle {k} ({cycle.stability.value}) {'approaches' if want else 'leaves'}"
            checks.append(Check("window", name, want, closer, 0.0, closer == want))
    return checks


def sliding_identity_errors(rng: np.random.Generator, samples: int) -> list:
    """|H - first sliding component| / max(1, |H|) at random points of Sigma_s and Sigma_e"""
    errors = []
    for _ in range(50 * samples):
        if len(errors) == samples:
            break
        tau = str(rng.choice(["inv", "vis"]))
        lam, beta, mu = rng.uniform(-0.9, 0.9), rng.uniform(-0.8, 0.8), rng.uniform(-2.0, 0.9)
        Z = make_system(FamilyParams(tau, float(lam), float(beta), float(mu)))
        x = float(rng.uniform(*Z.domain[:2]))
        xf, yf = (float(v) for v in normal_components(Z, x))
        if not xf * yf < 0:
            continue
        try:
            h, first = direction_function(Z, x), float(sliding_field(Z, x)[0])
        except IllDefinedSliding:
            continue
        errors.append(abs(h - first) / max(1.0, abs(h)))
    return errors


def involution_errors(rng: np.random.Generator, samples: int) -> tuple:
    """|gamma_X(gamma_X(x)) - x| and |gamma_Y(gamma_Y(x)) - x| on random parameters and points"""
    x_err, y_err = [], []
    for _ in range(samples):
        lam, beta, alpha = rng.uniform(-0.9, 0.9), rng.uniform(0.05, 0.8), rng.uniform(-2.0, -0.2)
        p = FamilyParams.from_alpha("inv", float(lam), float(beta), float(alpha))
        u0 = rng.choice([-1.0, 1.0]) * rng.uniform(0.01, 0.45)
        x0 = float(lam + (u0 if u0 < 0 else 2.0 * u0))
        x_err.append(abs(gamma_x(p, gamma_x(p, x0)) - x0))
        x0 = float(rng.uniform(-0.9, 0.9) * beta)
        try:
            y_err.append(abs(gamma_y(p, gamma_y(p, x0)) - x0))
        except FoldSaddleError as e:
            logger.debug(f"involution sample skipped at x0 = {x0}: {e}")
    return x_err, y_err


def identity_checks(samples: int = 1000, seed: int = 11) -> list:
    rng = np.random.default_rng(seed)
    betas = rng.uniform(0.02, 0.84, samples)
    mu_err = [abs(mu0(b) - (alpha0(b) + 1.0)) for b in betas]
    fold_err = [abs(i1(alpha0(b), b) - thresholds_L(b)[1]) for b in betas]
    lm_err = [
        max(abs(x - y) for x, y in zip(thresholds_L(b), thresholds_M(alpha0(b), b))) for b in betas
    ]
    x_err, y_err = involution_errors(rng, samples)
    return [
        _worst("identities", "H = first sliding component", sliding_identity_errors(rng, samples), 1e-12),
        _worst("identities", "gamma_X o gamma_X = id", x_err, 1e-9),
        _worst("identities", "gamma_Y o gamma_Y = id", y_err, 1e-9),
        _worst("identities", "mu0 = alpha0 + 1", mu_err, 1e-12),
        _worst("identities", "i1(alpha0) = L1", fold_err, 1e-12),
        _worst("identities", "L = M on the resonance curve", lm_err, 1e-9),
    ]


def pseudo_checks(samples: int = 100, seed: int = 7) -> list:
    rng = np.random.default_rng(seed)
    checks = []
    roots = ((0.0, p_root_visible, "P at alpha = -1"), (0.5, q_root_visible, "Q at alpha = -1/2"))
    for mu, root, name in roots:
        errors = []
        for lam, beta in zip(rng.uniform(-0.9, 0.9, samples), rng.uniform(0.05, 0.8, samples)):
            p = FamilyParams("vis", float(lam), float(beta), mu)
            Z = make_system(p)
            try:
                x = root(p.alpha, beta, lam)
            except FoldSaddleError:
                continue
            if not Z.domain[0] < x < Z.domain[1]:
                continue
            xf, yf = (float(v) for v in normal_components(Z, x))
            if xf * yf >= 0:
                continue
            errors.append(abs(direction_function(Z, x)))
        checks.append(_worst("pseudo", f"H({name}) = 0", errors, 1e-9))
    # closed form of P at alpha = -1
    samples = ((0.3, 0.5), (-0.4, 0.2), (0.7, 0.6))
    errs = [abs(p_root_visible(-1.0, b, l) - b * l / (b - 1.0)) for l, b in samples]
    checks.append(_worst("pseudo", "P = beta lambda / (beta - 1)", errs, 1e-12))
    return checks


def half_map_checks(samples: int = 500) -> list:
    p = FamilyParams.from_alpha("inv", -0.1, 0.5, alpha0(0.5))
    Z = make_system(p)
    lo, hi = composed_domain(p)
    # orbits through the ends of the domain graze the saddle separatrices
    pad = 0.05 * (hi - lo)
    xs = np.linspace(lo + pad, hi - pad, samples)
    x_err, y_err, inv_err = [], [], []
    for x0 in xs:
        x1 = gamma_x(p, x0)
        up = integrate_free(Z.upper, (float(x0), 0.0), "upper", domain=Z.domain)
        x_err.append(abs(up.end[0] - x1))
        down = integrate_free(Z.lower, (x1, 0.0), "lower", domain=Z.domain)
        y_err.append(abs(down.end[0] - gamma_y(p, x1)))
        inv_err.append(max(abs(gamma_x(p, x1) - x0), abs(gamma_y(p, gamma_y(p, x1)) - x1)))
    return [
        _worst("half_maps", "gamma_X against integration", x_err, 1e-8),
        _worst("half_maps", "gamma_Y against integration", y_err, 1e-8),
        _worst("half_maps", "gamma o gamma = id", inv_err, 1e-9),
    ]


def theorem_slices() -> dict:
    return {
        "T1": ("inv", "mu0_curve", {"mu_offset": 0.0}),
        "T2": ("inv", "mu0_curve", {"mu_offset": sts.slice_offsets["T2"]}),
        "T3": ("inv", "mu0_curve", {"mu_offset": sts.slice_offsets["T3"]}),
        "T4": ("vis", "fixed", {"mu": sts.slice_mu["T4"]}),
        "T5": ("vis", "fixed", {"mu": sts.slice_mu["T5"]}),
        "T6": ("vis", "fixed", {"mu": sts.slice_mu["T6"]}),
    }


def count_checks(workers: int = None) -> list:
    checks = []
    for theorem, (tau, rule, extra) in theorem_slices().items():
        result = scan(
            tau, rule, count_lambda_range, count_beta_range, 0, boundary_lane=True, workers=workers, **extra
        )
        found = len([c for c in result.distinct_labels() if c.endswith(f"_{theorem[1]}")])
        want = case_counts[theorem]
        checks.append(Check("counts", f"{theorem} distinct cases", want, found, 0.0, found == want))
    return checks


def simulation_checks(workers: int = None) -> list:
    """Slides next to every pseudo-equilibrium of a coarse scan of each theorem slice."""
    checks = []
    for theorem, (tau, rule, extra) in theorem_slices().items():
        result = scan(tau, rule, sim_lambda_range, sim_beta_range, 0, workers=workers, **extra)
        trials = []
        for cell in result.cells():
            if cell.label is not None:
                trials += sliding_trials(cell.label.params)
        for t in trials:
            if not t.agrees:
                logger.warning(f"{theorem} sliding trial disagrees: {t.to_dict()}")
        agreeing = sum(t.agrees for t in trials)
        name = f"{theorem} pseudo-equilibria against sliding"
        passed = bool(trials) and agreeing == len(trials)
        checks.append(Check("simulation", name, len(trials), agreeing, 0.0, passed))
    return checks


def run_checks(*args, counts: bool = False, workers: int = None, **kwargs) -> list:
    groups = [
        threshold_checks,
        fixed_point_checks,
        window_checks,
        identity_checks,
        pseudo_checks,
        half_map_checks,
        simulation_checks,
    ]
    checks = []
    for group in groups:
        found = group(workers=workers) if group is simulation_checks else group()
        logger.info(f"verify {group.__name__}: {sum(c.passed for c in found)}/{len(found)} passed")
        checks += found
    if counts:
        checks += count_checks(workers)
    return checks


def report_table(checks: list) -> str:
    rows = [
        (
            c.group,
            c.name,
            c.expected,
            c.actual,
            c.tol,
            f"{Fore.GREEN}ok{Style.RESET_ALL}" if c.passed else f"{Fore.RED}FAIL{Style.RESET_ALL}",
        )
        for c in checks
    ]
    return to_tbl(rows, headers=["group", "check", "expected", "actual", "tol", ""], floatfmt=".10g")


def main(*args, counts: bool = False, workers: int = None, out: str = None, verbose: int = 0, **kwargs) -> str:
    checks = run_checks(counts=counts, workers=workers)
    failed = [c for c in checks if not c.passed]
    report = {
        "generator": sts.generator_version,
        "passed": not failed,
        "checks": [c.to_dict() for c in checks],
    }
    text = to_json(report)
    emit(text, out, verbose=verbose)
    print(report_table(checks), file=sys.stdout if out else sys.stderr)
    if failed:
        raise VerificationFailure(
            f"{len(failed)} of {len(checks)} checks failed: {', '.join(c.name for c in failed)}", failed=failed
        )
    return text
