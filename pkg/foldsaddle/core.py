# core.py
"""
    Pointwise Filippov theory for planar systems switching on y = 0.
    ###################################################################################

    Z = (X, Y) uses X on y >= 0 and Y on y <= 0. With f(x, y) = y every first Lie
    derivative is the second velocity component of the field.

        Crossing    (X.f)(Y.f) > 0
        Sliding     X.f < 0 and Y.f > 0
        Escaping    X.f > 0 and Y.f < 0

    The direction function H is the first component of the sliding field,
        H = (E2 D1 - D2 E1) / (E2 - D2),    D = X(x, 0), E = Y(x, 0)
    H > 0 moves along +x, H < 0 along -x, H = 0 is a pseudo-equilibrium.

    ###################################################################################
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

import foldsaddle.settings as sts
from foldsaddle.errors import (
    DomainError,
    IllDefinedSliding,
    NotARoot,
    ParameterError,
    UnsupportedOrder,
)

logger = logging.getLogger(__name__)


class Owner(str, enum.Enum):
    X = "X"
    Y = "Y"
    BOTH = "Both"


class Visibility(str, enum.Enum):
    VISIBLE = "Visible"
    INVISIBLE = "Invisible"
    DEGENERATE = "Degenerate"


class Region(str, enum.Enum):
    CROSSING = "Crossing"
    SLIDING = "Sliding"
    ESCAPING = "Escaping"
    TANGENTIAL = "Tangential"
    PSEUDO_EQUILIBRIUM = "PseudoEquilibrium"


class PseudoKind(str, enum.Enum):
    SIGMA_SADDLE = "SigmaSaddle"
    SIGMA_ATTRACTOR = "SigmaAttractor"
    SIGMA_REPELLER = "SigmaRepeller"
    DEGENERATE = "Degenerate"


# ---------------------------------------
# Smooth fields
# ---------------------------------------
class SmoothField:
    """
    A smooth planar field with closed-form Lie derivatives along f = y.
    Subclasses implement velocity(x, y) and lie(x, y) -> (X.f, X^2.f, X^3.f).
    Both accept numpy arrays.
    """

    kind: ClassVar[str] = "Custom"

    def velocity(self, x, y):
        raise NotImplementedError

    def lie(self, x, y):
        raise NotImplementedError

    def __call__(self, x, y) -> np.ndarray:
        v1, v2 = self.velocity(x, y)
        return np.array([v1, v2], dtype=float)

    def lie_derivatives(self, x, y, order: int = 3) -> tuple:
        return tuple(self.lie(x, y)[:order])


@dataclass(frozen=True)
class XInv(SmoothField):
    lam: float
    kind: ClassVar[str] = "XInv"

    def velocity(self, x, y):
        u = x - self.lam
        return 1.0 + 0.0 * u, -u + u * u

    def lie(self, x, y):
        u = x - self.lam
        return -u + u * u, -1.0 + 2.0 * u, 2.0 + 0.0 * u


@dataclass(frozen=True)
class XVis(SmoothField):
    lam: float
    kind: ClassVar[str] = "XVis"

    def velocity(self, x, y):
        u = x - self.lam
        return 1.0 + 0.0 * u, u

    def lie(self, x, y):
        u = x - self.lam
        return u, 1.0 + 0.0 * u, 0.0 * u


@dataclass(frozen=True)
class YSaddle(SmoothField):
    """
    Lower field with a saddle at S = (0, -beta), eigenvalues alpha and 1.
    In p = x + (y + beta), q = x - (y + beta) it reads p' = alpha p, q' = q.
    """

    alpha: float
    beta: float
    kind: ClassVar[str] = "YSaddle"

    def __post_init__(self):
        if not self.alpha < 0:
            raise ParameterError(f"YSaddle needs alpha < 0, got {self.alpha = }")

    @property
    def _ab(self):
        return (1.0 + self.alpha) / 2.0, (self.alpha - 1.0) / 2.0

    def velocity(self, x, y):
        a, b = self._ab
        w = y + self.beta
        return a * x + b * w, b * x + a * w

    def lie(self, x, y):
        a, b = self._ab
        v1, v2 = self.velocity(x, y)
        l2 = b * v1 + a * v2
        l3 = 2.0 * a * b * v1 + (a * a + b * b) * v2
        return v2, l2, l3


@dataclass(frozen=True)
class LinearModel(SmoothField):
    """
    Fields of the linear model: upper (rho1, a1 x) with a1 = -1 for inv and 1 for vis,
    lower (k1 y, k1 x).
    """

    rho1: float = 1.0
    k1: float = -1.0
    tau: str = "inv"
    side: str = "upper"
    kind: ClassVar[str] = "LinearModel"

    @property
    def a1(self) -> float:
        return -1.0 if self.tau == "inv" else 1.0

    def velocity(self, x, y):
        if self.side == "upper":
            return self.rho1 + 0.0 * x, self.a1 * x
        return self.k1 * y, self.k1 * x

    def lie(self, x, y):
        if self.side == "upper":
            return self.a1 * x, self.a1 * self.rho1 + 0.0 * x, 0.0 * x
        k2 = self.k1 * self.k1
        return self.k1 * x, k2 * y, k2 * self.k1 * x


@dataclass(frozen=True)
class Custom(SmoothField):
    """
    A user field. lie_closures lists callables (x, y) -> X^k.f for k = 1, 2, ...
    """

    vector: Callable
    lie_closures: tuple = ()
    name: str = "custom"
    kind: ClassVar[str] = "Custom"

    def velocity(self, x, y):
        v1, v2 = self.vector(x, y)
        return v1, v2

    def lie(self, x, y):
        if not self.lie_closures:
            raise UnsupportedOrder(f"Custom field {self.name!r} has no Lie derivative closures")
        return tuple(c(x, y) for c in self.lie_closures)

    def lie_derivatives(self, x, y, order: int = 3) -> tuple:
        if order > len(self.lie_closures):
            raise UnsupportedOrder(
                f"Custom field {self.name!r} registers {len(self.lie_closures)} Lie derivatives, "
                f"order {order} requested"
            )
        return tuple(c(x, y) for c in self.lie_closures[:order])


@dataclass(frozen=True)
class NsvfSystem:
    upper: SmoothField
    lower: SmoothField
    domain: tuple = sts.default_domain
    name: str = ""

    def __post_init__(self):
        x_min, x_max, y_min, y_max = self.domain
        if not (x_min < 0 < x_max and y_min < 0 < y_max):
            raise ParameterError(f"domain {self.domain} must contain the origin in its interior")

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    def contains(self, x: float, y: float) -> bool:
        x_min, x_max, y_min, y_max = self.domain
        return x_min <= x <= x_max and y_min <= y <= y_max


@dataclass(frozen=True)
class SigmaPointClass:
    region: Region
    x: float
    owner: Optional[Owner] = None
    visibility: dict = field(default_factory=dict)
    kind: Optional[PseudoKind] = None

    def to_dict(self) -> dict:
        return {
            "region": self.region.value,
            "x": self.x,
            "owner": self.owner.value if self.owner else None,
            "visibility": {k.value: v.value for k, v in self.visibility.items()},
            "kind": self.kind.value if self.kind else None,
        }


@dataclass(frozen=True)
class FoldPoint:
    x: float
    owner: Owner
    visibility: Visibility

    @property
    def location(self) -> tuple:
        return (self.x, 0.0)


@dataclass(frozen=True)
class PseudoEquilibrium:
    x: float
    kind: PseudoKind
    region: Region
    slope: float


@dataclass(frozen=True)
class SigmaInterval:
    region: Region
    x_lo: float
    x_hi: float


# ---------------------------------------
# Operations
# ---------------------------------------
def lie_derivative(field: SmoothField, p: Sequence[float], order: int) -> float:
    if order not in (1, 2, 3):
        raise UnsupportedOrder(f"Lie derivative order must be 1, 2 or 3, got {order}")
    x, y = p
    return float(field.lie_derivatives(x, y, order)[order - 1])


def _check_on_sigma(Z: NsvfSystem, x: float) -> None:
    if not Z.contains(x, 0.0):
        raise DomainError(f"({x}, 0) lies outside the domain {Z.domain}")


def _scale(field: SmoothField, x, y):
    v1, v2 = field.velocity(x, y)
    return 1.0 + np.maximum(np.abs(v1), np.abs(v2))


def normal_components(Z: NsvfSystem, x):
    """X.f and Y.f on Sigma, works for arrays"""
    return Z.upper.lie(x, 0.0)[0], Z.lower.lie(x, 0.0)[0]


def _visibility(owner: Owner, second: float) -> Visibility:
    if abs(second) <= sts.tangency_tol:
        return Visibility.DEGENERATE
    # for Y visible means the arc bends into y <= 0
    if owner == Owner.X:
        return Visibility.VISIBLE if second > 0 else Visibility.INVISIBLE
    return Visibility.VISIBLE if second < 0 else Visibility.INVISIBLE


def _region_of(xf: float, yf: float) -> Region:
    if xf * yf > 0:
        return Region.CROSSING
    if xf < 0 < yf:
        return Region.SLIDING
    if yf < 0 < xf:
        return Region.ESCAPING
    return Region.TANGENTIAL


def region_codes(Z: NsvfSystem, xs: np.ndarray) -> np.ndarray:
    """1 sliding, -1 escaping, 0 crossing or tangential"""
    xf, yf = normal_components(Z, xs)
    codes = np.zeros_like(xs, dtype=int)
    codes[(xf < 0) & (yf > 0)] = 1
    codes[(xf > 0) & (yf < 0)] = -1
    return codes


def classify_sigma_point(Z: NsvfSystem, x: float) -> SigmaPointClass:
    _check_on_sigma(Z, x)
    xf, x2f = (float(v) for v in Z.upper.lie(x, 0.0)[:2])
    yf, y2f = (float(v) for v in Z.lower.lie(x, 0.0)[:2])
    x_tan = abs(xf) <= sts.tangency_tol * float(_scale(Z.upper, x, 0.0))
    y_tan = abs(yf) <= sts.tangency_tol * float(_scale(Z.lower, x, 0.0))
    if x_tan or y_tan:
        visibility = {}
        if x_tan:
            visibility[Owner.X] = _visibility(Owner.X, x2f)
        if y_tan:
            visibility[Owner.Y] = _visibility(Owner.Y, y2f)
        owner = Owner.BOTH if x_tan and y_tan else (Owner.X if x_tan else Owner.Y)
        return SigmaPointClass(Region.TANGENTIAL, x, owner=owner, visibility=visibility)
    region = _region_of(xf, yf)
    if region in (Region.SLIDING, Region.ESCAPING):
        if abs(direction_function(Z, x)) <= sts.pseudo_eq_tol:
            kind = classify_pseudo_equilibrium(Z, x)
            return SigmaPointClass(Region.PSEUDO_EQUILIBRIUM, x, kind=kind)
    return SigmaPointClass(region, x)


def _direction_values(Z: NsvfSystem, xs):
    d1, d2 = Z.upper.velocity(xs, 0.0)
    e1, e2 = Z.lower.velocity(xs, 0.0)
    return (e2 * d1 - d2 * e1) / (e2 - d2)


def direction_function(Z: NsvfSystem, x: float) -> float:
    d1, d2 = (float(v) for v in Z.upper.velocity(x, 0.0))
    e1, e2 = (float(v) for v in Z.lower.velocity(x, 0.0))
    den = e2 - d2
    if abs(den) <= sts.denominator_tol:
        raise IllDefinedSliding(f"direction function undefined at x = {x}: E2 - D2 = {den}")
    return (e2 * d1 - d2 * e1) / den


def sliding_field(Z: NsvfSystem, x: float) -> np.ndarray:
    xf, yf = (float(v) for v in normal_components(Z, x))
    if _region_of(xf, yf) not in (Region.SLIDING, Region.ESCAPING):
        raise IllDefinedSliding(f"x = {x} is not in the sliding or escaping region")
    den = yf - xf
    if abs(den) <= sts.denominator_tol:
        raise IllDefinedSliding(f"sliding field undefined at x = {x}: Y.f - X.f = {den}")
    x1 = float(Z.upper.velocity(x, 0.0)[0])
    y1 = float(Z.lower.velocity(x, 0.0)[0])
    return np.array([(yf * x1 - xf * y1) / den, 0.0])


def direction_slope(Z: NsvfSystem, x: float) -> float:
    step = sts.h_prime_rel_step * Z.width
    return (direction_function(Z, x + step) - direction_function(Z, x - step)) / (2 * step)


def classify_pseudo_equilibrium(Z: NsvfSystem, x_star: float) -> PseudoKind:
    xf, yf = (float(v) for v in normal_components(Z, x_star))
    region = _region_of(xf, yf)
    if region not in (Region.SLIDING, Region.ESCAPING):
        raise NotARoot(f"x* = {x_star} is not in the sliding or escaping region")
    h = direction_function(Z, x_star)
    if abs(h) > sts.pseudo_eq_tol:
        raise NotARoot(f"H({x_star}) = {h} is not a root")
    slope = direction_slope(Z, x_star)
    if abs(slope) <= sts.pseudo_eq_tol:
        return PseudoKind.DEGENERATE
    if region == Region.SLIDING:
        return PseudoKind.SIGMA_ATTRACTOR if slope < 0 else PseudoKind.SIGMA_SADDLE
    return PseudoKind.SIGMA_REPELLER if slope > 0 else PseudoKind.SIGMA_SADDLE


def _sign_change_roots(fun: Callable, xs: np.ndarray, values: np.ndarray, xtol: float) -> list:
    roots = []
    for k in range(len(xs) - 1):
        a, b = values[k], values[k + 1]
        if a == 0.0:
            roots.append(float(xs[k]))
        elif a * b < 0:
            roots.append(brentq(fun, xs[k], xs[k + 1], xtol=xtol))
    if values[-1] == 0.0:
        roots.append(float(xs[-1]))
    return roots


def find_folds(Z: NsvfSystem) -> list:
    x_min, x_max = Z.domain[:2]
    xs = np.linspace(x_min, x_max, sts.fold_grid)
    folds = []
    for owner, fld in ((Owner.X, Z.upper), (Owner.Y, Z.lower)):
        values = np.asarray(fld.lie(xs, 0.0)[0], dtype=float) * np.ones_like(xs)
        first = lambda s, fld=fld: float(fld.lie(s, 0.0)[0])
        for root in _sign_change_roots(first, xs, values, sts.fold_xtol):
            if any(abs(root - f.x) < 1e3 * sts.fold_xtol and f.owner == owner for f in folds):
                continue
            v1, v2 = fld.velocity(root, 0.0)
            if max(abs(float(v1)), abs(float(v2))) <= sts.tangency_tol:
                logger.debug(f"find_folds: {owner.value} vanishes at x = {root}, equilibrium skipped")
                continue
            vis = _visibility(owner, float(fld.lie(root, 0.0)[1]))
            if vis == Visibility.DEGENERATE:
                logger.debug(f"find_folds: degenerate contact of {owner.value} at x = {root}")
                continue
            folds.append(FoldPoint(root, owner, vis))
    return sorted(folds, key=lambda f: (f.x, f.owner.value))


def _region_breaks(Z: NsvfSystem, lo: float, hi: float) -> list:
    """Zeros of X.f and Y.f in (lo, hi), the points where the region of Sigma can change."""
    xs = np.linspace(lo, hi, sts.fold_grid)
    breaks = []
    for fld in (Z.upper, Z.lower):
        values = np.asarray(fld.lie(xs, 0.0)[0], dtype=float) * np.ones_like(xs)
        first = lambda s, fld=fld: float(fld.lie(s, 0.0)[0])
        breaks += _sign_change_roots(first, xs, values, sts.fold_xtol)
    return sorted(b for b in breaks if lo < b < hi)


def find_pseudo_equilibria(Z: NsvfSystem, window: tuple = None, grid: int = None) -> list:
    """
    All pseudo-equilibria in window. Sigma is cut at the zeros of X.f and Y.f, and H is
    scanned for sign changes on every sliding or escaping piece separately.
    """
    lo, hi = window if window is not None else Z.domain[:2]
    lo, hi = max(lo, Z.domain[0]), min(hi, Z.domain[1])
    n = grid or sts.pe_grid
    edges = [lo] + _region_breaks(Z, lo, hi) + [hi]
    h = lambda s: direction_function(Z, s)
    found = []
    for a, b in zip(edges[:-1], edges[1:]):
        pad = 1e3 * sts.fold_xtol
        if b - a <= 2 * pad:
            continue
        mid = 0.5 * (a + b)
        region = _region_of(*(float(v) for v in normal_components(Z, mid)))
        if region not in (Region.SLIDING, Region.ESCAPING):
            continue
        m = max(50, int(n * (b - a) / (hi - lo)))
        xs = np.linspace(a + pad, b - pad, m)
        hs = _direction_values(Z, xs)
        for root in _sign_change_roots(h, xs, hs, 1e-14):
            kind = classify_pseudo_equilibrium(Z, root)
            found.append(PseudoEquilibrium(root, kind, region, direction_slope(Z, root)))
    logger.debug(f"find_pseudo_equilibria on [{lo}, {hi}]: {[(p.x, p.kind.value) for p in found]}")
    return found


def sigma_regions(Z: NsvfSystem, n: int = 2001) -> list:
    """Maximal crossing, sliding and escaping intervals of Sigma inside the domain."""
    xs = np.linspace(Z.domain[0], Z.domain[1], n)
    xf, yf = normal_components(Z, xs)
    xf, yf = xf * np.ones_like(xs), yf * np.ones_like(xs)
    regions = [_region_of(a, b) for a, b in zip(xf, yf)]
    intervals, start = [], 0
    for k in range(1, n + 1):
        if k == n or regions[k] != regions[start]:
            intervals.append(SigmaInterval(regions[start], float(xs[start]), float(xs[k - 1])))
            start = k
    return intervals
