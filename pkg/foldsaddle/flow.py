# flow.py
"""
    Filippov trajectories: free arcs of X and Y glued on y = 0 by the crossing,
    sliding and tangency rules of core.classify_sigma_point.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

import foldsaddle.settings as sts
from foldsaddle.core import (
    NsvfSystem,
    Owner,
    Region,
    SmoothField,
    classify_sigma_point,
    direction_function,
    normal_components,
)
from foldsaddle.errors import EscapingStart, IllDefinedSliding, NoBracket, NumericalFailure, ParameterError
from foldsaddle.normal_forms import i1, inv_landing, x_orbit_height

logger = logging.getLogger(__name__)

directives = ("go-up", "go-down", "slide")
pairs = ("h->i", "h->j", "i->j")


class Regime(str, enum.Enum):
    FREE_X = "FreeX"
    FREE_Y = "FreeY"
    SLIDING = "Sliding"


class Termination(str, enum.Enum):
    HIT_SIGMA = "HitSigma"
    LEFT_DOMAIN = "LeftDomain"
    TIME_BUDGET = "TimeBudget"
    REACHED_PSEUDO_EQUILIBRIUM = "ReachedPseudoEquilibrium"
    REACHED_FOLD = "ReachedFold"
    NUMERICAL_FAILURE = "NumericalFailure"


@dataclass
class OrbitSegment:
    points: np.ndarray  # rows of (t, x, y)
    regime: Regime
    termination: Termination

    @property
    def start(self) -> tuple:
        return float(self.points[0, 1]), float(self.points[0, 2])

    @property
    def end(self) -> tuple:
        return float(self.points[-1, 1]), float(self.points[-1, 2])

    @property
    def t_end(self) -> float:
        return float(self.points[-1, 0])

    def rows(self) -> list:
        return [(float(t), float(x), float(y), self.regime.value) for t, x, y in self.points]


@dataclass
class Trajectory:
    segments: list = field(default_factory=list)
    events: list = field(default_factory=list)  # (t, kind, x)

    @property
    def termination(self) -> Optional[Termination]:
        return self.segments[-1].termination if self.segments else None

    @property
    def end(self) -> Optional[tuple]:
        return self.segments[-1].end if self.segments else None

    def event_kinds(self) -> list:
        return [kind for _, kind, _ in self.events]

    def rows(self) -> list:
        return [row for seg in self.segments for row in seg.rows()]

    def to_dict(self) -> dict:
        return {
            "termination": self.termination.value if self.termination else None,
            "events": [{"t": t, "kind": kind, "x": x} for t, kind, x in self.events],
            "segments": [
                {"regime": s.regime.value, "termination": s.termination.value, "start": s.start, "end": s.end}
                for s in self.segments
            ],
        }


def _resample(t0: float, t1: float, n_steps: int) -> np.ndarray:
    if t1 == t0:
        return np.empty(0)
    return np.linspace(t0, t1, max(n_steps, 50))


def _domain_margin(domain: tuple):
    x_min, x_max, y_min, y_max = domain

    def margin(t, s):
        return min(s[0] - x_min, x_max - s[0], s[1] - y_min, y_max - s[1])

    margin.terminal, margin.direction = True, -1
    return margin


def integrate_free(
    field: SmoothField,
    start: tuple,
    half: str,
    t_max: float = None,
    *args,
    t0: float = 0.0,
    domain: tuple = None,
    **kwargs,
) -> OrbitSegment:
    """
    Integrates one smooth field inside its half-plane until the orbit returns to y = 0,
    leaves the domain or uses up t_max.
    """
    t_max = sts.t_max if t_max is None else t_max
    domain = domain or sts.default_domain
    x, y = start
    if (half == "upper" and y < -sts.event_ytol) or (half == "lower" and y > sts.event_ytol):
        raise ParameterError(f"start {start} is not in the {half} half-plane")

    def sigma(t, s):
        return s[1]

    sigma.terminal, sigma.direction = True, -1 if half == "upper" else 1
    sol = solve_ivp(
        lambda t, s: field(s[0], s[1]),
        (t0, t0 + t_max),
        np.array([x, y], dtype=float),
        method=sts.integrator,
        rtol=sts.rtol,
        atol=sts.atol,
        events=[sigma, _domain_margin(domain)],
        dense_output=True,
    )
    if sol.status == -1:
        raise NumericalFailure(f"integration of {field} from {start} failed: {sol.message}")
    if sol.t_events[0].size:
        termination = Termination.HIT_SIGMA
    elif sol.t_events[1].size:
        termination = Termination.LEFT_DOMAIN
    else:
        termination = Termination.TIME_BUDGET
    t1 = float(sol.t[-1])
    ts = _resample(t0, t1, len(sol.t))
    if ts.size:
        xs, ys = sol.sol(ts)
        xs[-1], ys[-1] = sol.y[0, -1], sol.y[1, -1]
    else:
        ts, xs, ys = np.array([t0]), np.array([x]), np.array([y])
    if termination == Termination.HIT_SIGMA:
        if abs(ys[-1]) > sts.event_ytol:
            logger.debug(f"integrate_free: Sigma hit with residual y = {ys[-1]:.3e}")
        ys[-1] = 0.0
    regime = Regime.FREE_X if half == "upper" else Regime.FREE_Y
    return OrbitSegment(np.column_stack([ts, xs, ys]), regime, termination)


def slide(
    Z: NsvfSystem, x0: float, t_max: float = None, *args, t0: float = 0.0, backward: bool = False, **kwargs
) -> OrbitSegment:
    """
    Integrates x' = H(x) on Sigma from x0 inside the sliding or escaping region.
    backward runs time from t0 down to t0 - t_max, the direction in which the
    escaping region carries structure.
    """
    t_max = sts.t_max if t_max is None else t_max
    xf, yf = (float(v) for v in normal_components(Z, x0))
    if not (xf * yf < 0):
        raise IllDefinedSliding(f"x0 = {x0} is not in the sliding or escaping region")
    if abs(direction_function(Z, x0)) < sts.sliding_stop:
        pts = np.array([[t0, x0, 0.0]])
        return OrbitSegment(pts, Regime.SLIDING, Termination.REACHED_PSEUDO_EQUILIBRIUM)

    def fold_x(t, s):
        return float(Z.upper.lie(s[0], 0.0)[0])

    def fold_y(t, s):
        return float(Z.lower.lie(s[0], 0.0)[0])

    def resting(t, s):
        return abs(direction_function(Z, s[0])) - sts.sliding_stop

    def edge(t, s):
        return min(s[0] - Z.domain[0], Z.domain[1] - s[0])

    for ev in (fold_x, fold_y, resting, edge):
        ev.terminal = True
    resting.direction = edge.direction = -1
    sol = solve_ivp(
        lambda t, s: [direction_function(Z, s[0])],
        (t0, t0 - t_max if backward else t0 + t_max),
        [x0],
        method=sts.integrator,
        rtol=sts.rtol,
        atol=sts.atol,
        events=[fold_x, fold_y, resting, edge],
        dense_output=True,
    )
    if sol.status == -1:
        raise NumericalFailure(f"sliding from x0 = {x0} failed: {sol.message}")
    if sol.t_events[0].size or sol.t_events[1].size:
        termination = Termination.REACHED_FOLD
    elif sol.t_events[2].size:
        termination = Termination.REACHED_PSEUDO_EQUILIBRIUM
    elif sol.t_events[3].size:
        termination = Termination.LEFT_DOMAIN
    else:
        termination = Termination.TIME_BUDGET
    t1 = float(sol.t[-1])
    ts = _resample(t0, t1, len(sol.t))
    if ts.size:
        xs = sol.sol(ts)[0]
        xs[-1] = sol.y[0, -1]
    else:
        ts, xs = np.array([t0]), np.array([x0])
    logger.debug(f"slide from {x0}: {termination.value} at x = {xs[-1]}")
    return OrbitSegment(np.column_stack([ts, xs, np.zeros_like(xs)]), Regime.SLIDING, termination)


def _tangent_step(Z: NsvfSystem, x: float, owner: Owner) -> float:
    fld = Z.upper if owner == Owner.X else Z.lower
    v1 = float(fld.velocity(x, 0.0)[0])
    return x + sts.tangent_step * (1.0 if v1 >= 0 else -1.0)


def advance(
    Z: NsvfSystem, start: tuple, t_max: float = None, *args, directive: str = None, **kwargs
) -> Trajectory:
    """
    Forward Filippov trajectory from start. On Sigma crossing points switch fields,
    sliding points slide, tangency points are stepped past along the tangent field.
    Escaping points need a directive: go-up, go-down or slide.
    """
    t_max = sts.t_max if t_max is None else t_max
    if directive is not None and directive not in directives:
        raise ParameterError(f"unknown branch directive {directive!r}, use one of {directives}")
    x, y = (float(v) for v in start)
    if not Z.contains(x, y):
        raise ParameterError(f"start {start} outside the domain {Z.domain}")
    traj, t = Trajectory(), 0.0
    for _ in range(sts.max_events):
        if t >= t_max:
            return traj
        half = None
        if abs(y) > sts.event_ytol:
            half = "upper" if y > 0 else "lower"
        else:
            y = 0.0
            point = classify_sigma_point(Z, x)
            if point.region == Region.PSEUDO_EQUILIBRIUM:
                traj.events.append((t, "pseudo-equilibrium", x))
                traj.segments.append(
                    OrbitSegment(
                        np.array([[t, x, 0.0]]), Regime.SLIDING, Termination.REACHED_PSEUDO_EQUILIBRIUM
                    )
                )
                return traj
            if point.region == Region.TANGENTIAL:
                traj.events.append((t, "tangency", x))
                if point.owner == Owner.BOTH:
                    logger.info(f"advance: both fields tangent at x = {x}, trajectory stops")
                    return traj
                x = _tangent_step(Z, x, point.owner)
                continue
            if point.region == Region.CROSSING:
                traj.events.append((t, "crossing", x))
                half = "upper" if float(normal_components(Z, x)[0]) > 0 else "lower"
            elif point.region == Region.ESCAPING and directive != "slide":
                if directive is None:
                    raise EscapingStart(f"x = {x} lies in the escaping region, a branch directive is needed")
                traj.events.append((t, directive, x))
                half = "upper" if directive == "go-up" else "lower"
        if half is not None:
            fld = Z.upper if half == "upper" else Z.lower
            seg = integrate_free(fld, (x, y), half, t_max - t, t0=t, domain=Z.domain)
            traj.segments.append(seg)
            if seg.termination != Termination.HIT_SIGMA:
                return traj
            t, (x, y) = seg.t_end, seg.end
            continue
        traj.events.append((t, "sliding-entry", x))
        seg = slide(Z, x, t_max - t, t0=t)
        traj.segments.append(seg)
        t, x = seg.t_end, seg.end[0]
        if seg.termination != Termination.REACHED_FOLD:
            return traj
        traj.events.append((t, "sliding-exit", x))
        xf, yf = (float(v) for v in normal_components(Z, x))
        # the field whose normal component vanished carries the orbit off Sigma
        x = _tangent_step(Z, x, Owner.X if abs(xf) <= abs(yf) else Owner.Y)
    logger.warning(f"advance: stopped after {sts.max_events} events at x = {x}")
    return traj


def poincare_iterates(Z: NsvfSystem, x0: float, n: int, *args, **kwargs) -> list:
    """Returns x0 followed by up to n successive X-then-Y returns to Sigma."""
    iterates = [float(x0)]
    x = float(x0)
    for _ in range(n):
        up = integrate_free(Z.upper, (x, 0.0), "upper", domain=Z.domain)
        if up.termination != Termination.HIT_SIGMA:
            break
        down = integrate_free(Z.lower, (up.end[0], 0.0), "lower", domain=Z.domain)
        if down.termination != Termination.HIT_SIGMA:
            break
        x = down.end[0]
        iterates.append(x)
    logger.debug(f"poincare_iterates from {x0}: {iterates}")
    return iterates


def pair_abscissae(alpha: float, beta: float, pair: str) -> tuple:
    loci = {"h": -beta, "j": beta, "i": i1(alpha, beta)}
    source, target = pair.replace("→", "->").split("->")
    return loci[source.strip()], loci[target.strip()]


def find_connection_lambda(tau: str, alpha: float, beta: float, pair: str, *args, **kwargs) -> float:
    """
    Shoots for the lam where the XInv arc leaving the source abscissa lands on the target,
    by sign changes of F(target - lam) - F(source - lam) over (-1, 1).
    """
    if tau != "inv":
        raise ParameterError("connections are defined for tau = inv")
    if not beta > 0:
        raise ParameterError(f"connections need beta > 0, got {beta}")
    if pair.replace("→", "->") not in pairs:
        raise ParameterError(f"unknown connection {pair!r}, use one of {pairs}")
    x_s, x_t = pair_abscissae(alpha, beta, pair)
    gap = lambda lam: float(x_orbit_height("inv", lam, x_s, x_t))
    lams = np.linspace(-1.0 + 1e-9, 1.0 - 1e-9, 2001)
    values = x_orbit_height("inv", lams, x_s, x_t)
    for k in np.nonzero(values[:-1] * values[1:] < 0)[0]:
        lam = brentq(gap, lams[k], lams[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
        u_s = x_s - lam
        if not -0.5 < u_s < 0:
            continue
        if abs(float(inv_landing(u_s)) + lam - x_t) <= 1e-9:
            logger.debug(f"find_connection_lambda {pair}: lambda = {lam}")
            return lam
    raise NoBracket(f"no lambda in (-1, 1) connects {pair} for alpha={alpha}, beta={beta}")
