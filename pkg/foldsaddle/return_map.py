# return_map.py
"""
    First return map of the inverse-fold family around the two invisible folds d and i.

        gamma_X  closed form, the XInv arc from (x0, 0) lands where F(x1 - lam) = F(x0 - lam)
        gamma_Y  the YSaddle orbit in p = x + (y + beta), q = x - (y + beta):
                 p = p0 exp(alpha t), q = q0 exp(t), back on y = 0 when p - q = 2 beta
        phi      gamma_Y o gamma_X on the left of d; its fixed points are canard cycles

    gamma_Y solves (p0 expm1(alpha t) - q0 expm1(t)) / t = 0, the trivial root t = 0 removed.
    Points right of i return in forward time, points left of i in backward time.
"""

import enum
import functools
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq, minimize_scalar

import foldsaddle.settings as sts
from foldsaddle.errors import DomainError, NoReturn, NoSaddleNode, NumericalFailure, ParameterError
from foldsaddle.normal_forms import FamilyParams, LinearParams, i1, inv_landing, thresholds_M, x_orbit_height

logger = logging.getLogger(__name__)

Params = Union[FamilyParams, LinearParams]
_bisections = 100


class Stability(str, enum.Enum):
    ATTRACTOR = "Attractor"
    REPELLER = "Repeller"
    NON_HYPERBOLIC = "NonHyperbolic"


@dataclass(frozen=True)
class HalfMap:
    owner: str
    params: Params
    domain_interval: tuple

    def __call__(self, x0: float) -> float:
        return gamma_x(self.params, x0) if self.owner == "X" else gamma_y(self.params, x0)


@dataclass
class CanardCycle:
    fixed_x: float
    multiplier: float
    stability: Stability
    polyline: np.ndarray

    def to_dict(self, with_polyline: bool = False) -> dict:
        d = {"fixed_x": self.fixed_x, "multiplier": self.multiplier, "stability": self.stability.value}
        if with_polyline:
            d["polyline"] = self.polyline.tolist()
        return d


def _check_return_params(params: Params) -> None:
    if isinstance(params, FamilyParams) and params.tau != "inv":
        raise ParameterError("the return map needs tau = inv, the visible fold of X has no return")
    if not params.beta > sts.boundary_tol:
        raise ParameterError(f"the return map needs beta > 0, got {params.beta}")


def half_maps(params: Params) -> tuple:
    _check_return_params(params)
    if isinstance(params, LinearParams):
        x_interval = (-np.inf, np.inf)
    else:
        x_interval = (params.lam - 0.5, params.lam + 1.0)
    return HalfMap("X", params, x_interval), HalfMap("Y", params, (-params.beta, params.beta))


# ---------------------------------------
# Half maps
# ---------------------------------------
def gamma_x(params: Params, x0: float) -> float:
    _check_return_params(params)
    if isinstance(params, LinearParams):
        # y = -x**2 / 2 along X = (1, -x)
        return -x0
    u0 = x0 - params.lam
    if not -0.5 < u0 < 1.0:
        raise NoReturn(f"the X-orbit from x0 = {x0} does not return near the fold at {params.lam}")
    return params.lam + float(inv_landing(u0))


def _gamma_x_many(params: Params, xs: np.ndarray) -> np.ndarray:
    if isinstance(params, LinearParams):
        return -xs
    return params.lam + inv_landing(xs - params.lam)


def _time_equation(alpha: float, p0, q0):
    return lambda t: (p0 * np.expm1(alpha * t) - q0 * np.expm1(t)) / t


def _time_bracket(alpha: float, forward):
    span = sts.gamma_y_t_span
    lo = np.where(forward, 1e-12, -span / abs(alpha))
    hi = np.where(forward, span, -1e-12)
    return lo, hi


def return_time(params: Params, x0: float) -> float:
    """Signed time for the Y-orbit through (x0, 0) to meet y = 0 again."""
    _check_return_params(params)
    alpha, beta = params.alpha, params.beta
    p0, q0 = x0 + beta, x0 - beta
    slope = alpha * p0 - q0
    if slope == 0.0:
        return 0.0
    eq = _time_equation(alpha, p0, q0)
    lo, hi = (float(v) for v in _time_bracket(alpha, slope < 0))
    with np.errstate(over="ignore"):
        f_lo, f_hi = eq(lo), eq(hi)
    if not (np.isfinite(f_lo) and np.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise NoReturn(f"the Y-orbit from x0 = {x0} escapes (beta = {beta}, alpha = {alpha})")
    try:
        return brentq(eq, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
    except RuntimeError as e:
        raise NumericalFailure(f"gamma_Y did not converge at x0 = {x0}: {e}") from None


def _landing(alpha: float, beta: float, x0, t):
    return ((x0 + beta) * np.exp(alpha * t) + (x0 - beta) * np.exp(t)) / 2.0


def gamma_y(params: Params, x0: float) -> float:
    t = return_time(params, x0)
    return float(_landing(params.alpha, params.beta, x0, t))


def _gamma_y_many(params: Params, xs: np.ndarray) -> np.ndarray:
    """gamma_Y on an array by simultaneous bisection in t, nan where the orbit escapes."""
    alpha, beta = params.alpha, params.beta
    p0, q0 = xs + beta, xs - beta
    slope = alpha * p0 - q0
    eq = _time_equation(alpha, p0, q0)
    lo, hi = _time_bracket(alpha, slope < 0)
    with np.errstate(over="ignore", invalid="ignore"):
        f_lo = eq(lo)
        ok = np.isfinite(f_lo) & (np.sign(f_lo) != np.sign(eq(hi)))
        for _ in range(_bisections):
            mid = 0.5 * (lo + hi)
            f_mid = eq(mid)
            left = np.sign(f_mid) == np.sign(f_lo)
            lo, f_lo = np.where(left, mid, lo), np.where(left, f_mid, f_lo)
            hi = np.where(left, hi, mid)
        t = 0.5 * (lo + hi)
        t = np.where(slope == 0.0, 0.0, t)
        out = _landing(alpha, beta, xs, t)
    return np.where(ok | (slope == 0.0), out, np.nan)


# ---------------------------------------
# First return map
# ---------------------------------------
def composed_domain(params: Params) -> tuple:
    """
    Open interval left of d where phi is defined: gamma_X must land between
    max(i1, lam) and the stable separatrix foot j, past which the Y-orbit escapes.
    """
    _check_return_params(params)
    beta = params.beta
    if isinstance(params, LinearParams):
        return -beta, 0.0
    lam = params.lam
    land_lo = max(i1(params.alpha, beta), lam)
    land_hi = min(beta, lam + 1.0)
    if not land_lo < land_hi:
        raise DomainError(f"empty return domain for {params}")
    left = gamma_x(params, land_hi) if land_hi < lam + 1.0 else lam - 0.5
    return left, gamma_x(params, land_lo)


def first_return(params: Params, x0: float) -> float:
    return gamma_y(params, gamma_x(params, x0))


def _phi_many(params: Params, xs: np.ndarray) -> np.ndarray:
    return _gamma_y_many(params, _gamma_x_many(params, xs))


def return_derivative(params: Params, x0: float) -> float:
    """Central difference of phi, one Richardson step."""
    lo, hi = composed_domain(params)
    h = sts.return_step
    if not (lo < x0 - h and x0 + h < hi):
        raise DomainError(f"x0 = {x0} too close to the edge of ({lo}, {hi}) for the stencil")
    d = lambda s: (first_return(params, x0 + s) - first_return(params, x0 - s)) / (2.0 * s)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def _derivative_many(params: Params, xs: np.ndarray) -> np.ndarray:
    h = sts.return_step
    d = lambda s: (_phi_many(params, xs + s) - _phi_many(params, xs - s)) / (2.0 * s)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def sample_return_map(params: Params, n: int) -> np.ndarray:
    """Rows of (x, phi(x), phi'(x)) on n interior points of the composed domain."""
    lo, hi = composed_domain(params)
    xs = np.linspace(lo, hi, n + 2)[1:-1]
    return np.column_stack([xs, _phi_many(params, xs), _derivative_many(params, xs)])


def return_gap_minimum(params: FamilyParams) -> tuple:
    """(x, phi(x) - x) at the minimum of the return gap over the composed domain."""
    lo, hi = composed_domain(params)
    xs = np.linspace(lo, hi, sts.sn_profile_grid + 2)[1:-1]
    gaps = _phi_many(params, xs) - xs
    if not np.isfinite(gaps).any():
        raise NumericalFailure(f"return map undefined on ({lo}, {hi})")
    k = int(np.nanargmin(gaps))
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, len(xs) - 1)]
    if a < b:
        res = minimize_scalar(
            lambda s: first_return(params, s) - s, bounds=(a, b), method="bounded", options={"xatol": 1e-12}
        )
        if res.success and res.fun < gaps[k]:
            return float(res.x), float(res.fun)
    return float(xs[k]), float(gaps[k])


def classify_multiplier(multiplier: float) -> Stability:
    if abs(multiplier - 1.0) <= sts.nonhyperbolic_tol:
        return Stability.NON_HYPERBOLIC
    return Stability.ATTRACTOR if multiplier < 1.0 else Stability.REPELLER


def cycle_polyline(params: FamilyParams, x_star: float, n: int = 120) -> np.ndarray:
    """Closed polyline of the cycle through (x_star, 0): the X-arc over Sigma, the Y-arc below it."""
    x1 = gamma_x(params, x_star)
    xs = np.linspace(x_star, x1, n)
    upper = np.column_stack([xs, x_orbit_height("inv", params.lam, x_star, xs)])
    t_ret = return_time(params, x1)
    ts = np.linspace(0.0, t_ret, n)
    alpha, beta = params.alpha, params.beta
    p, q = (x1 + beta) * np.exp(alpha * ts), (x1 - beta) * np.exp(ts)
    lower = np.column_stack([(p + q) / 2.0, (p - q) / 2.0 - beta])
    return np.vstack([upper, lower[1:]])


def find_canard_cycles(params: FamilyParams) -> list:
    """All isolated fixed points of phi, by sign changes of phi(x) - x on a grid."""
    if isinstance(params, LinearParams):
        raise ParameterError("the linear model has phi = identity, every orbit near d is closed")
    _check_return_params(params)
    try:
        lo, hi = composed_domain(params)
    except DomainError:
        logger.debug(f"find_canard_cycles: empty return domain for {params}")
        return []
    xs = np.linspace(lo, hi, sts.cycle_grid + 2)[1:-1]
    gaps = _phi_many(params, xs) - xs
    gap = lambda s: first_return(params, s) - s
    roots = []
    for k in range(len(xs) - 1):
        a, b = gaps[k], gaps[k + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0.0:
            roots.append((float(xs[k]), k))
        elif a * b < 0:
            roots.append((brentq(gap, xs[k], xs[k + 1], xtol=1e-14), k))
    roots += _hidden_pairs(params, xs, gaps, gap)
    cycles = []
    for x_star, k in sorted(roots):
        residual = abs(gap(x_star))
        if residual > sts.fixed_point_tol:
            logger.warning(f"find_canard_cycles: residual {residual:.2e} at x = {x_star}")
        try:
            multiplier = return_derivative(params, x_star)
        except DomainError:
            multiplier = 1.0 + (gaps[k + 1] - gaps[k]) / (xs[k + 1] - xs[k])
        cycles.append(
            CanardCycle(x_star, multiplier, classify_multiplier(multiplier), cycle_polyline(params, x_star))
        )
    logger.debug(f"find_canard_cycles {params}: {[(c.fixed_x, c.stability.value) for c in cycles]}")
    return cycles


def _hidden_pairs(params: FamilyParams, xs: np.ndarray, gaps: np.ndarray, gap) -> list:
    """
    Fixed points that come in pairs between two grid points, next to the saddle-node.
    Every grid extremum of phi - x that keeps its sign is refined, a refined extremum
    of the other sign brackets two roots.
    """
    found = []
    for k in range(1, len(xs) - 1):
        left, mid, right = gaps[k - 1], gaps[k], gaps[k + 1]
        if not np.isfinite([left, mid, right]).all() or mid == 0.0:
            continue
        sign = 1.0 if mid > 0 else -1.0
        rise = sign * (left - mid) + sign * (right - mid)
        if not (sign * mid <= sign * left and sign * mid <= sign * right) or sign * mid > rise:
            continue
        res = minimize_scalar(
            lambda s: sign * gap(s), bounds=(xs[k - 1], xs[k + 1]), method="bounded", options={"xatol": 1e-14}
        )
        if not (res.success and res.fun < 0.0):
            continue
        x_ext = float(res.x)
        found.append((brentq(gap, xs[k - 1], x_ext, xtol=1e-14), k - 1))
        found.append((brentq(gap, x_ext, xs[k + 1], xtol=1e-14), k))
        logger.debug(f"find_canard_cycles: cycle pair inside ({xs[k - 1]}, {xs[k + 1]})")
    return found


# ---------------------------------------
# Saddle-node of canard cycles
# ---------------------------------------
def _lowest_gap(alpha: float, beta: float, lam: float) -> float:
    try:
        return return_gap_minimum(FamilyParams.from_alpha("inv", lam, beta, alpha))[1]
    except (DomainError, NumericalFailure):
        return np.inf


@functools.lru_cache(maxsize=256)
def find_saddle_node(alpha: float, beta: float) -> float:
    """
    lam where the two canard cycles merge. The two-cycle window sits just below
    min(M1, i1); it is found by stepping sn_window_offsets below that bound and
    bracketed from below by bisection on the sign of min(phi - x).
    """
    if not beta > 0:
        raise ParameterError(f"canard cycles need beta > 0, got {beta}")
    m0, m1, _ = thresholds_M(alpha, beta)
    top = min(m1, i1(alpha, beta))
    inside = None
    for delta in sts.sn_window_offsets:
        if _lowest_gap(alpha, beta, top - delta) < 0:
            inside = top - delta
            break
    if inside is None:
        raise NoSaddleNode(f"no two-cycle window below lambda = {top} for alpha={alpha}, beta={beta}")
    outside = max(-beta, m0) + 1e-9
    if _lowest_gap(alpha, beta, outside) < 0:
        raise NoSaddleNode(f"the two-cycle window does not close above lambda = {outside}")
    while inside - outside > sts.sn_lambda_xtol:
        mid = 0.5 * (inside + outside)
        if _lowest_gap(alpha, beta, mid) < 0:
            inside = mid
        else:
            outside = mid
    lam = 0.5 * (inside + outside)
    logger.debug(f"find_saddle_node alpha={alpha}, beta={beta}: lambda = {lam}")
    return lam
