# normal_forms.py
"""
    Families unfolding the fold-saddle singularity and their closed-form loci.

    Z = (X, Y) with X = XInv(lam) or XVis(lam) above y = 0 and Y = YSaddle(alpha, beta)
    below it, mu = alpha + 1. Named points on Sigma:
        d = (lam, 0)                     fold of X
        S = (0, -beta)                   saddle of Y
        e or i = (i1, 0)                 fold of Y, i1 = beta (1 + alpha) / (1 - alpha)
        h = (-beta, 0), j = (beta, 0)    feet of the unstable and stable separatrices of S

    Since X has first component 1, the X-orbit leaving (x0, 0) reaches abscissa x at height
    F(x - lam) - F(x0 - lam), F(u) = -u**2/2 + u**3/3 (inv) or u**2/2 (vis).
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

import foldsaddle.settings as sts
from foldsaddle.core import Custom, LinearModel, NsvfSystem, Visibility, XInv, XVis, YSaddle
from foldsaddle.errors import NoReturn, ParameterError

logger = logging.getLogger(__name__)

taus = ("inv", "vis")


class Behavior(str, enum.Enum):
    YMINUS = "Yminus"
    YZERO = "Yzero"
    YPLUS = "Yplus"


@dataclass(frozen=True)
class FamilyParams:
    tau: str
    lam: float
    beta: float
    mu: float

    def __post_init__(self):
        if self.tau not in taus:
            raise ParameterError(f"tau must be one of {taus}, got {self.tau!r}")
        if not abs(self.lam) < sts.lambda_bound + sts.param_slack:
            raise ParameterError(f"lambda = {self.lam} outside (-1, 1)")
        check_beta(self.beta)
        if not self.alpha < 0:
            raise ParameterError(f"mu = {self.mu} must be < 1 for Y to have a saddle")
        if not self.mu > -sts.eps0 - sts.param_slack:
            raise ParameterError(f"mu = {self.mu} below -eps0 = {-sts.eps0}")

    @property
    def alpha(self) -> float:
        return self.mu - 1.0

    @classmethod
    def from_alpha(cls, tau: str, lam: float, beta: float, alpha: float) -> "FamilyParams":
        return cls(tau, lam, beta, alpha + 1.0)

    def to_dict(self) -> dict:
        return {"tau": self.tau, "lambda": self.lam, "beta": self.beta, "mu": self.mu}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilyParams":
        try:
            return cls(d["tau"], float(d["lambda"]), float(d["beta"]), float(d["mu"]))
        except KeyError as e:
            raise ParameterError(f"family parameters miss the key {e}") from None

    def replace(self, **kwargs) -> "FamilyParams":
        vals = {"tau": self.tau, "lam": self.lam, "beta": self.beta, "mu": self.mu}
        vals.update(kwargs)
        return FamilyParams(**vals)


@dataclass(frozen=True)
class LinearParams:
    """The linear model X = (rho1, -x) over Y = YSaddle(-1, beta)."""

    beta: float
    rho1: float = 1.0
    k1: float = -1.0
    tau: str = "inv"

    def __post_init__(self):
        check_beta(self.beta)
        if self.rho1 not in (-1.0, 1.0) or self.k1 not in (-1.0, 1.0):
            raise ParameterError("the linear model needs rho1 and k1 in {-1, 1}")

    @property
    def alpha(self) -> float:
        return -1.0

    @property
    def mu(self) -> float:
        return 0.0

    @property
    def lam(self) -> float:
        return 0.0


@dataclass(frozen=True)
class GeometryReport:
    d: tuple
    S: tuple
    e_or_i: Optional[tuple]
    fold_visibility: Optional[Visibility]
    h: tuple
    j: tuple
    behavior: Behavior

    def to_dict(self) -> dict:
        return {
            "d": list(self.d),
            "S": list(self.S),
            "e_or_i": list(self.e_or_i) if self.e_or_i else None,
            "fold_visibility": self.fold_visibility.value if self.fold_visibility else None,
            "h": list(self.h),
            "j": list(self.j),
            "behavior": self.behavior.value,
        }


@dataclass(frozen=True)
class Thresholds:
    mu0: float
    alpha0: float
    i1: float
    L0: Optional[float] = None
    L1: Optional[float] = None
    L2: Optional[float] = None
    M0: Optional[float] = None
    M1: Optional[float] = None
    M2: Optional[float] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_beta(beta: float) -> None:
    if not abs(beta) < sts.beta_bound + sts.param_slack:
        raise ParameterError(f"beta = {beta} outside (-sqrt(3)/2, sqrt(3)/2)")


# ---------------------------------------
# Systems
# ---------------------------------------
def make_system(p: FamilyParams, *args, domain: tuple = None, **kwargs) -> NsvfSystem:
    upper = XInv(p.lam) if p.tau == "inv" else XVis(p.lam)
    return NsvfSystem(
        upper,
        YSaddle(p.alpha, p.beta),
        domain=domain or sts.default_domain,
        name=f"Z_{p.tau}(lambda={p.lam}, beta={p.beta}, mu={p.mu})",
    )


def make_linear_model(
    tau: str = "inv", beta: float = None, rho1: float = 1.0, k1: float = -1.0, *args, **kwargs
) -> NsvfSystem:
    """
    Linear model of the fold-saddle. Without beta the lower field is (k1 y, k1 x);
    with beta it is the saddle (-(y + beta), -x), whose return map composes to the identity.
    """
    if tau not in taus:
        raise ParameterError(f"tau must be one of {taus}, got {tau!r}")
    upper = LinearModel(rho1, k1, tau, "upper")
    if beta is None:
        lower = LinearModel(rho1, k1, tau, "lower")
    else:
        check_beta(beta)
        lower = YSaddle(-1.0, beta)
    return NsvfSystem(upper, lower, name=f"linear_{tau}")


def behavior(beta: float) -> Behavior:
    if abs(beta) <= sts.boundary_tol:
        return Behavior.YZERO
    return Behavior.YPLUS if beta > 0 else Behavior.YMINUS


def i1(alpha: float, beta: float) -> float:
    return beta * (1.0 + alpha) / (1.0 - alpha)


def geometry(p: FamilyParams) -> GeometryReport:
    beh = behavior(p.beta)
    if beh == Behavior.YZERO:
        fold, vis = None, None
    else:
        fold = (i1(p.alpha, p.beta), 0.0)
        vis = Visibility.INVISIBLE if beh == Behavior.YPLUS else Visibility.VISIBLE
    return GeometryReport(
        d=(p.lam, 0.0),
        S=(0.0, -p.beta),
        e_or_i=fold,
        fold_visibility=vis,
        h=(-p.beta, 0.0),
        j=(p.beta, 0.0),
        behavior=beh,
    )


# ---------------------------------------
# Thresholds
# ---------------------------------------
def mu0(beta: float) -> float:
    check_beta(beta)
    r = math.sqrt(max(9.0 - 12.0 * beta * beta, 0.0))
    # rationalized form, finite at beta = 0
    return -4.0 * beta / (3.0 + r - 2.0 * beta)


def alpha0(beta: float) -> float:
    return mu0(beta) - 1.0


def connection_lambda(source: float, target: float) -> float:
    """lam at which the XInv arc leaving (source, 0) lands on (target, 0)."""
    disc = 9.0 - 3.0 * (source - target) ** 2
    if disc < 0:
        raise ParameterError(f"no XInv arc joins {source} and {target}")
    return (source + target) / 2.0 - 0.5 + math.sqrt(disc) / 6.0


def _positive_beta(beta: float) -> float:
    check_beta(beta)
    if not beta > 0:
        raise ParameterError(f"connection thresholds need beta > 0, got {beta}")
    return math.sqrt(9.0 - 12.0 * beta * beta)


def thresholds_L(beta: float) -> tuple:
    r = _positive_beta(beta)
    l0 = (-9.0 - 6.0 * beta + r + math.sqrt(2.0) * math.sqrt(15.0 + r - 2.0 * beta * (-3.0 + 2.0 * beta + r))) / 12.0
    l1 = -0.5 + r / 6.0
    l2 = (-9.0 + 6.0 * beta + r + math.sqrt(2.0) * math.sqrt(15.0 + r + 2.0 * beta * (-3.0 - 2.0 * beta + r))) / 12.0
    return l0, l1, l2


def thresholds_M(alpha: float, beta: float) -> tuple:
    r = _positive_beta(beta)
    if not alpha < 0:
        raise ParameterError(f"alpha = {alpha} must be negative")
    w = 1.0 - alpha
    m0 = (6.0 * alpha * beta - 3.0 * w + math.sqrt(9.0 * w * w - 12.0 * beta * beta)) / (6.0 * w)
    m1 = -0.5 + r / 6.0
    m2 = (6.0 * beta - 3.0 * w + math.sqrt(9.0 * w * w - 12.0 * alpha * alpha * beta * beta)) / (6.0 * w)
    return m0, m1, m2


def thresholds(p: FamilyParams) -> Thresholds:
    m0 = mu0(p.beta)
    if behavior(p.beta) != Behavior.YPLUS:
        return Thresholds(m0, m0 - 1.0, i1(p.alpha, p.beta))
    l0, l1, l2 = thresholds_L(p.beta)
    mm0, mm1, mm2 = thresholds_M(p.alpha, p.beta)
    return Thresholds(m0, m0 - 1.0, i1(p.alpha, p.beta), l0, l1, l2, mm0, mm1, mm2)


def height_primitive(tau: str, u):
    if tau == "inv":
        return -u * u / 2.0 + u**3 / 3.0
    return u * u / 2.0


def x_orbit_height(tau: str, lam: float, x_from, x_to):
    return height_primitive(tau, np.asarray(x_to) - lam) - height_primitive(
        tau, np.asarray(x_from) - lam
    )


def inv_landing(u0):
    """
    The other root u1 of F(u1) = F(u0) for tau = inv, offsets taken from the fold.
    Dividing the cubic difference by (u1 - u0) leaves 2 u1**2 + (2 u0 - 3) u1 + 2 u0**2 - 3 u0,
    whose smaller root is the landing of the arc. Real for u0 in [-1/2, 3/2].
    """
    disc = 9.0 + 12.0 * np.asarray(u0) - 12.0 * np.asarray(u0) ** 2
    return (3.0 - 2.0 * np.asarray(u0) - np.sqrt(disc)) / 4.0


# ---------------------------------------
# Pseudo-equilibria of the visible family
# ---------------------------------------
def _visible_quadratic(alpha: float, beta: float, lam: float) -> tuple:
    """H = 0 for tau = vis reads a x**2 - s x + c = 0"""
    a = 1.0 + alpha
    s = (alpha - 1.0) * (1.0 - beta) + lam * a
    c = -beta * (a + lam * (alpha - 1.0))
    disc = s * s - 4.0 * a * c
    if disc < 0:
        raise NoReturn(f"H has no real root for alpha={alpha}, beta={beta}, lambda={lam}")
    return a, s, c, math.sqrt(disc)


def q_root_visible(alpha: float, beta: float, lam: float) -> float:
    """The Sigma-saddle Q, the root of H that leaves to infinity as alpha -> -1."""
    if not alpha < 0:
        raise ParameterError(f"alpha = {alpha} must be negative")
    if abs(alpha + 1.0) <= sts.param_slack:
        raise ParameterError("Q is at infinity for alpha = -1")
    a, s, c, root = _visible_quadratic(alpha, beta, lam)
    return (s - root) / (2.0 * a)


def p_root_visible(alpha: float, beta: float, lam: float) -> float:
    """The bounded root P of H, beta lam / (beta - 1) at alpha = -1."""
    a, s, c, root = _visible_quadratic(alpha, beta, lam)
    if abs(s - root) > sts.denominator_tol:
        return 2.0 * c / (s - root)
    return (s + root) / (2.0 * a)


# ---------------------------------------
# Spring-mass demo
# ---------------------------------------
def spring_mass_preset(
    a: float, b: float, c: float, A: float, *args, variant: str = "invisible", **kwargs
) -> NsvfSystem:
    """
    a x'' + b x' + c x = g(x) with g = A x + 1 - sgn(x) (invisible) or A x - 1 + sgn(x)
    (visible), as a first order system switching on x = 0. It is returned in the
    coordinates (xi, eta) = (-x', x) so that the switching line is eta = 0. The upper
    field has the saddle at the origin, the lower one the fold.
    """
    if not a > 0:
        raise ParameterError(f"the mass a = {a} must be positive")
    if not A > c / a:
        raise ParameterError(f"A = {A} must exceed c / a = {c / a} for a saddle")
    if variant not in ("invisible", "visible"):
        raise ParameterError(f"unknown spring variant {variant!r}")
    k, damp = A - c / a, b / a
    push = -2.0 if variant == "invisible" else 2.0

    def affine(shift: float) -> Custom:
        v1 = lambda x, y: -k * y - damp * x + shift
        return Custom(
            vector=lambda x, y: (v1(x, y), -x),
            lie_closures=(
                lambda x, y: -x,
                lambda x, y: -v1(x, y),
                lambda x, y: damp * v1(x, y) - k * x,
            ),
            name=f"spring{shift:+g}",
        )

    logger.debug(f"spring_mass_preset: {a = }, {b = }, {c = }, {A = }, {variant = }")
    return NsvfSystem(affine(0.0), affine(push), name=f"spring_{variant}")
