# classify.py
"""
    Case taxonomy of the fold-saddle families.
    ###################################################################################

    which_theorem picks the theorem from (tau, mu, beta):
        inv   T1 mu = mu0(beta)    T2 mu0(beta) < mu < 1    T3 -eps0 < mu < mu0(beta)
        vis   T4 mu = 0            T5 0 < mu < 1            T6 -eps0 < mu < 0

    Inside a theorem the case follows from where lambda sits on a ladder of thresholds.
    beta < 0 (cases 1-3) compares lambda with the visible fold e of Y, beta = 0 (4-6)
    with the boundary saddle s = 0. For beta > 0:

        T1   -beta  L0  L3  L1  L2  beta             cases 7 .. 19
        T2   -beta  M0  M3  M1  i1  M2  beta         cases 7 .. 21
        T3   -beta  M0  M3  i1  M1  M2  beta         cases 7 .. 21
        vis  -beta  i1  beta                         cases 7 .. 13

    L3/M3 is the saddle-node of canard cycles; when no two-cycle window exists its two
    cells drop out. An open cell is checked against the computed pseudo-equilibria and
    canard cycles, a boundary label against its own degeneracy (fold coincidence,
    connection or double fixed point). Disagreement raises StructuralMismatch.

    ###################################################################################
"""

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

import foldsaddle.settings as sts
from foldsaddle.core import (
    Owner,
    PseudoKind,
    Region,
    find_folds,
    find_pseudo_equilibria,
    normal_components,
    region_codes,
)
from foldsaddle.errors import (
    CodimensionTwo,
    FoldSaddleError,
    NoReturn,
    NoSaddleNode,
    ParameterError,
    StructuralMismatch,
)
from foldsaddle.flow import Termination, advance, integrate_free, pair_abscissae
from foldsaddle.normal_forms import (
    Behavior,
    FamilyParams,
    check_beta,
    geometry,
    i1,
    make_system,
    mu0,
    p_root_visible,
    q_root_visible,
    thresholds_L,
    thresholds_M,
    x_orbit_height,
)
from foldsaddle.return_map import find_canard_cycles, find_saddle_node, return_derivative, return_gap_minimum

logger = logging.getLogger(__name__)

mu_rules = ("mu0_curve", "fixed")
pools = {"thread": ThreadPoolExecutor, "process": ProcessPoolExecutor}


class Theorem(str, enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"

    @property
    def number(self) -> int:
        return int(self.value[1])


@dataclass(frozen=True)
class Breakpoint:
    name: str
    value: float
    case: int
    connections: tuple = ()
    coincidences: tuple = ()
    non_hyperbolic: bool = False


@dataclass
class Ladder:
    breakpoints: list
    cells: list  # case of each open interval, len(breakpoints) + 1
    cycles: dict = field(default_factory=dict)  # open case -> expected stabilities, inner last


@dataclass
class Descriptors:
    behavior: str
    pseudo_equilibria: list = field(default_factory=list)
    cycles: list = field(default_factory=list)
    connections: list = field(default_factory=list)
    tangency_coincidences: list = field(default_factory=list)
    sigma_graph: bool = False
    non_hyperbolic_cycle: bool = False

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["cycle_count"] = self.cycle_count
        return d


@dataclass
class CaseLabel:
    theorem: Theorem
    case_index: str
    params: FamilyParams
    descriptors: Descriptors

    @property
    def label(self) -> str:
        return f"{self.theorem.value}/{self.case_index.split('_')[0]}"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "case_index": self.case_index,
            "label": self.label,
            "params": self.params.to_dict(),
            "descriptors": self.descriptors.to_dict(),
        }


@dataclass
class SigmaGraph:
    kind: str
    vertices: dict
    polyline: np.ndarray

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": self.vertices, "polyline": self.polyline.tolist()}


@dataclass
class ScanCell:
    lam: float
    beta: float
    mu: Optional[float]
    status: str = "ok"  # ok | OutOfRange | failed
    label: Optional[CaseLabel] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "beta": self.beta,
            "mu": self.mu,
            "status": self.status,
            "label": self.label.to_dict() if self.label else None,
            "error": self.error,
        }


@dataclass
class ScanResult:
    tau: str
    mu_rule: str
    mu: Optional[float]
    mu_offset: float
    lambda_grid: np.ndarray
    beta_grid: np.ndarray
    labels: list  # rows follow beta_grid, columns lambda_grid
    boundary_lane: list = field(default_factory=list)

    def cells(self, with_lane: bool = True) -> list:
        grid = [cell for row in self.labels for cell in row]
        return grid + (self.boundary_lane if with_lane else [])

    def distinct_labels(self, with_lane: bool = True) -> list:
        found = {c.label.case_index for c in self.cells(with_lane) if c.label is not None}
        return sorted(found, key=lambda s: (int(s.split("_")[1]), int(s.split("_")[0])))

    def failures(self) -> list:
        return [c for c in self.cells() if c.status == "failed"]

    def csv_rows(self) -> list:
        rows = []
        for cell in self.cells(with_lane=False):
            theorem = cell.label.theorem.value if cell.label else ""
            case = cell.label.case_index if cell.label else cell.status
            rows.append((cell.lam, cell.beta, theorem, case))
        return rows

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "mu_rule": self.mu_rule,
            "mu": self.mu,
            "mu_offset": self.mu_offset,
            "lambda_grid": [float(v) for v in self.lambda_grid],
            "beta_grid": [float(v) for v in self.beta_grid],
            "labels": [[c.to_dict() for c in row] for row in self.labels],
            "boundary_lane": [c.to_dict() for c in self.boundary_lane],
        }


# ---------------------------------------
# Theorem and ladder
# ---------------------------------------
def which_theorem(tau: str, mu: float, beta: float) -> Theorem:
    check_beta(beta)
    if not -sts.eps0 - sts.param_slack < mu < 1.0:
        raise ParameterError(f"mu = {mu} outside (-eps0, 1)")
    if tau == "inv":
        pivot, theorems = mu0(beta), (Theorem.T1, Theorem.T2, Theorem.T3)
    elif tau == "vis":
        pivot, theorems = 0.0, (Theorem.T4, Theorem.T5, Theorem.T6)
    else:
        raise ParameterError(f"tau must be inv or vis, got {tau!r}")
    if abs(mu - pivot) <= sts.boundary_tol:
        return theorems[0]
    return theorems[1] if mu > pivot else theorems[2]


def _saddle_node(alpha: float, beta: float) -> Optional[float]:
    try:
        return find_saddle_node(alpha, beta)
    except NoSaddleNode:
        return None


def ladder(p: FamilyParams, theorem: Theorem) -> Ladder:
    alpha, beta = p.alpha, p.beta
    beh = geometry(p).behavior
    if beh == Behavior.YMINUS:
        e1 = i1(alpha, beta)
        return Ladder([Breakpoint("e1", e1, 2, coincidences=("d=e",))], [1, 3])
    if beh == Behavior.YZERO:
        return Ladder([Breakpoint("s1", 0.0, 5, coincidences=("d=s",))], [4, 6])
    fold = i1(alpha, beta)
    h = Breakpoint("-beta", -beta, 8, coincidences=("d=h",))
    if p.tau == "vis":
        return Ladder(
            [h, Breakpoint("i1", fold, 10, coincidences=("d=i",)), Breakpoint("beta", beta, 12, coincidences=("d=j",))],
            [7, 9, 11, 13],
        )
    m3 = _saddle_node(alpha, beta)
    if theorem == Theorem.T1:
        l0, l1, l2 = thresholds_L(beta)
        points = [h, Breakpoint("L0", l0, 10, connections=("h->i",))]
        cells = [7, 9, 11]
        if m3 is not None:
            points.append(Breakpoint("L3", m3, 14, non_hyperbolic=True))
            cells.append(13)
        points += [
            Breakpoint("L1", l1, 12, connections=("h->j",), coincidences=("d=i",)),
            Breakpoint("L2", l2, 16, connections=("i->j",)),
            Breakpoint("beta", beta, 18, coincidences=("d=j",)),
        ]
        cells += [15, 17, 19]
        return Ladder(points, cells, {13: ["Attractor", "Repeller"]})
    m0, m1, m2 = thresholds_M(alpha, beta)
    points = [h, Breakpoint("M0", m0, 10, connections=("h->i",))]
    cells = [7, 9, 11]
    cycles = {}
    if m3 is not None:
        points.append(Breakpoint("M3", m3, 16, non_hyperbolic=True))
        cells.append(15)
        cycles[15] = ["Attractor", "Repeller"]
    # the loop and the tangency swap order across the resonance curve
    if theorem == Theorem.T2:
        points += [
            Breakpoint("M1", m1, 12, connections=("h->j",)),
            Breakpoint("i1", fold, 14, coincidences=("d=i",)),
        ]
        cycles[13] = ["Repeller"]
    else:
        points += [
            Breakpoint("i1", fold, 12, coincidences=("d=i",)),
            Breakpoint("M1", m1, 14, connections=("h->j",)),
        ]
        cycles[13] = ["Attractor"]
    cells.append(13)
    points += [Breakpoint("M2", m2, 18, connections=("i->j",)), Breakpoint("beta", beta, 20, coincidences=("d=j",))]
    cells += [17, 19, 21]
    return Ladder(points, cells, cycles)


def _locate(lam: float, lad: Ladder, theorem: Theorem) -> tuple:
    """(case, breakpoint or None) of lam on the ladder."""
    values = [b.value for b in lad.breakpoints]
    if any(b > a + sts.boundary_tol for a, b in zip(values[1:], values[:-1])):
        order = ", ".join(f"{b.name}={b.value:.6g}" for b in lad.breakpoints)
        raise StructuralMismatch(f"{theorem.value} thresholds out of order: {order}", field="thresholds")
    hits = [b for b in lad.breakpoints if abs(lam - b.value) <= sts.boundary_tol]
    if len(hits) > 1:
        joint = "+".join(f"{b.case}_{theorem.number}" for b in hits)
        raise CodimensionTwo(
            f"lambda = {lam} lies on {', '.join(b.name for b in hits)} at once", joint_label=joint
        )
    if hits:
        return hits[0].case, hits[0]
    return lad.cells[sum(lam > v for v in values)], None


# ---------------------------------------
# Structure, predicted and computed
# ---------------------------------------
def _pe_window(p: FamilyParams, Z) -> tuple:
    if p.tau == "inv":
        return Z.domain[0], min(Z.domain[1], p.lam + sts.inv_local_reach)
    return Z.domain[:2]


def _placement(Z, x: float) -> str:
    """in, out, or edge when x lies within the margin band around the domain boundary"""
    margin = 0.01 * Z.width
    lo, hi = Z.domain[:2]
    if lo + margin < x < hi - margin:
        return "in"
    if x < lo - margin or x > hi + margin:
        return "out"
    return "edge"


def predicted_pseudo_equilibria(p: FamilyParams, Z) -> Optional[list]:
    """Kinds the theorems give for the open cell of p, None where they say nothing."""
    if p.beta <= sts.boundary_tol:
        return [] if p.tau == "inv" else None
    fold = i1(p.alpha, p.beta)
    if p.tau == "inv":
        return ["SigmaAttractor"] if p.lam < fold else ["SigmaRepeller"]
    try:
        roots = {"P": p_root_visible(p.alpha, p.beta, p.lam)}
        if abs(p.alpha + 1.0) > sts.param_slack:
            roots["Q"] = q_root_visible(p.alpha, p.beta, p.lam)
    except NoReturn:
        return []
    if len(roots) == 2 and abs(roots["P"] - roots["Q"]) < 1e-3:
        return None
    places = {name: _placement(Z, x) for name, x in roots.items()}
    if "edge" in places.values():
        return None
    kinds = []
    if places["P"] == "in":
        kinds.append("SigmaRepeller" if p.lam < fold else "SigmaAttractor")
    if places.get("Q") == "in":
        xf, yf = (float(v) for v in normal_components(Z, roots["Q"]))
        if xf * yf < 0:
            kinds.append("SigmaSaddle")
    return sorted(kinds)


def _near_threshold(lam: float, lad: Ladder) -> bool:
    for b in lad.breakpoints:
        margin = sts.sn_verify_margin if b.non_hyperbolic else sts.verify_margin
        if abs(lam - b.value) <= margin:
            return True
    return False


def _nearest(values: list, x: float) -> float:
    return min(values, key=lambda v: abs(v - x), default=math.inf)


def degeneracy_residuals(p: FamilyParams, point: Breakpoint, Z) -> list:
    """
    (name, residual, tol) of the degeneracy behind a boundary label: fold abscissae
    from find_folds for d=e, d=s, d=h, d=i and d=j, the landing of the integrated
    X-arc for a connection, the double fixed point of phi for the saddle-node.
    """
    residuals = []
    if point.coincidences:
        folds = find_folds(Z)
        x_d = _nearest([f.x for f in folds if f.owner == Owner.X], p.lam)
        for name in point.coincidences:
            target = name.split("=")[1]
            if target in ("e", "i"):
                x_y = _nearest([f.x for f in folds if f.owner == Owner.Y], i1(p.alpha, p.beta))
                residual = abs(x_d - x_y)
            elif target == "s":
                # the boundary saddle is an equilibrium of Y on Sigma, not a fold
                residual = abs(x_d) + float(np.hypot(*Z.lower.velocity(0.0, 0.0)))
            else:
                residual = abs(x_d - (-p.beta if target == "h" else p.beta))
            residuals.append((name, residual, sts.coincidence_tol))
    for pair in point.connections:
        x_s, x_t = pair_abscissae(p.alpha, p.beta, pair)
        seg = integrate_free(Z.upper, (x_s, 0.0), "upper", domain=Z.domain)
        landed = seg.termination == Termination.HIT_SIGMA
        residuals.append((pair, abs(seg.end[0] - x_t) if landed else math.inf, sts.connection_tol))
    if point.non_hyperbolic:
        x_min, gap = return_gap_minimum(p)
        residuals.append(("double fixed point", abs(gap), sts.sn_gap_tol))
        residuals.append(("multiplier 1", abs(return_derivative(p, x_min) - 1.0), sts.sn_slope_tol))
    return residuals


def classify_case(p: FamilyParams, *args, verify: bool = True, **kwargs) -> CaseLabel:
    theorem = which_theorem(p.tau, p.mu, p.beta)
    lad = ladder(p, theorem)
    case, point = _locate(p.lam, lad, theorem)
    case_index = f"{case}_{theorem.number}"
    Z = make_system(p)
    descriptors = Descriptors(behavior=geometry(p).behavior.value)
    if point is not None:
        descriptors.connections = list(point.connections)
        descriptors.tangency_coincidences = list(point.coincidences)
        descriptors.non_hyperbolic_cycle = point.non_hyperbolic
    computed = find_pseudo_equilibria(Z, window=_pe_window(p, Z))
    descriptors.pseudo_equilibria = [pe.kind.value for pe in computed]
    if p.tau == "inv" and geometry(p).behavior == Behavior.YPLUS:
        descriptors.cycles = [c.stability.value for c in find_canard_cycles(p)]
    descriptors.sigma_graph = detect_sigma_graph(p) is not None
    label = CaseLabel(theorem, case_index, p, descriptors)
    if verify and point is not None:
        _verify_degeneracy(label, point, Z)
    elif verify and not _near_threshold(p.lam, lad):
        _verify(label, lad, Z)
    logger.info(f"classify_case {p.to_dict()}: {case_index}")
    return label


def _verify_degeneracy(label: CaseLabel, point: Breakpoint, Z) -> None:
    try:
        residuals = degeneracy_residuals(label.params, point, Z)
    except FoldSaddleError as e:
        raise StructuralMismatch(
            f"case {label.case_index} at {point.name}: degeneracy not computable, {e}",
            label=label,
            field="degeneracy",
        ) from None
    failed = [f"{name} off by {res:.3e} > {tol:g}" for name, res, tol in residuals if not res <= tol]
    if failed:
        logger.warning(f"{label.case_index} at {point.name}: {failed}")
        raise StructuralMismatch(
            f"case {label.case_index} at {point.name} without its degeneracy: {'; '.join(failed)}",
            label=label,
            field="degeneracy",
        )


def _verify(label: CaseLabel, lad: Ladder, Z) -> None:
    p, d = label.params, label.descriptors
    expected = predicted_pseudo_equilibria(p, Z)
    if expected is not None and sorted(d.pseudo_equilibria) != expected:
        logger.warning(f"{label.case_index}: pseudo-equilibria {d.pseudo_equilibria}, expected {expected}")
        raise StructuralMismatch(
            f"case {label.case_index} predicts pseudo-equilibria {expected}, computed {sorted(d.pseudo_equilibria)}",
            label=label,
            field="pseudo_equilibria",
        )
    if p.tau == "inv" and d.behavior == Behavior.YPLUS.value:
        case = int(label.case_index.split("_")[0])
        want = lad.cycles.get(case, [])
        if d.cycles != want:
            logger.warning(f"{label.case_index}: cycles {d.cycles}, expected {want}")
            raise StructuralMismatch(
                f"case {label.case_index} predicts canard cycles {want}, computed {d.cycles}",
                label=label,
                field="cycles",
            )


# ---------------------------------------
# Sigma-graphs
# ---------------------------------------
def detect_sigma_graph(p: FamilyParams, n: int = 120) -> Optional[SigmaGraph]:
    """
    The loop h -> j over Sigma closed through the saddle S at lambda = M1 (inv), or
    the Sigma segment h j closed through S when d = i (vis). None otherwise.
    """
    beta = p.beta
    if geometry(p).behavior != Behavior.YPLUS:
        return None
    h, j, s = (-beta, 0.0), (beta, 0.0), (0.0, -beta)
    if p.tau == "inv":
        if abs(p.lam - (-0.5 + np.sqrt(9.0 - 12.0 * beta * beta) / 6.0)) > sts.boundary_tol:
            return None
        xs = np.linspace(-beta, beta, n)
        top = np.column_stack([xs, x_orbit_height("inv", p.lam, -beta, xs)])
        kind = "loop-through-saddle"
    else:
        if abs(p.lam - i1(p.alpha, beta)) > sts.boundary_tol:
            return None
        top = np.column_stack([np.linspace(-beta, beta, n), np.zeros(n)])
        kind = "fold-fold-family"
    legs = [np.linspace(j, s, n)[1:], np.linspace(s, h, n)[1:]]
    return SigmaGraph(kind, {"h": h, "j": j, "S": s, "d": (p.lam, 0.0)}, np.vstack([top] + legs))


# ---------------------------------------
# Pseudo-equilibria against sliding
# ---------------------------------------
@dataclass
class SlideTrial:
    x_star: float
    kind: str
    region: str
    start: float
    expected: str  # approach | leave
    observed: str  # approach | leave | stay

    @property
    def agrees(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["agrees"] = self.agrees
        return d


def _attracts_along_sigma(kind: PseudoKind, region: Region) -> bool:
    # a saddle of the escaping region attracts along Sigma and repels off it
    if kind == PseudoKind.SIGMA_SADDLE:
        return region == Region.ESCAPING
    return kind == PseudoKind.SIGMA_ATTRACTOR


def sliding_trials(p: FamilyParams, delta: float = 1e-3, t_max: float = 50.0) -> list:
    """
    Slides forward from x* - delta and x* + delta for every pseudo-equilibrium of p and
    compares the motion along Sigma with the kind classify_pseudo_equilibrium gave.
    """
    Z = make_system(p)
    trials = []
    for pe in find_pseudo_equilibria(Z, window=_pe_window(p, Z)):
        if pe.kind == PseudoKind.DEGENERATE:
            continue
        expected = "approach" if _attracts_along_sigma(pe.kind, pe.region) else "leave"
        code = region_codes(Z, np.array([pe.x]))[0]
        for x0 in (pe.x - delta, pe.x + delta):
            if not Z.domain[0] < x0 < Z.domain[1] or region_codes(Z, np.array([x0]))[0] != code:
                continue
            traj = advance(Z, (x0, 0.0), t_max, directive="slide")
            x_end = traj.segments[0].end[0] if traj.segments else x0
            before, after = abs(x0 - pe.x), abs(x_end - pe.x)
            observed = "approach" if after < before else "leave" if after > before else "stay"
            trials.append(SlideTrial(pe.x, pe.kind.value, pe.region.value, x0, expected, observed))
    logger.debug(f"sliding_trials {p.to_dict()}: {[(t.kind, t.observed) for t in trials]}")
    return trials


# ---------------------------------------
# Scans
# ---------------------------------------
def slice_mu(mu_rule: str, beta: float, *args, mu: float = None, mu_offset: float = 0.0, **kwargs) -> float:
    if mu_rule == "mu0_curve":
        return mu0(beta) + mu_offset
    if mu_rule == "fixed":
        if mu is None:
            raise ParameterError("the fixed mu rule needs a value of mu")
        return mu
    raise ParameterError(f"unknown mu rule {mu_rule!r}, use one of {mu_rules}")


def _classify_cell(tau: str, lam: float, beta: float, mu: float) -> ScanCell:
    cell = ScanCell(lam, beta, mu)
    try:
        p = FamilyParams(tau, lam, beta, mu)
    except ParameterError as e:
        cell.status, cell.error = "OutOfRange", str(e)
        return cell
    try:
        cell.label = classify_case(p)
    except CodimensionTwo as e:
        cell.status, cell.error = "failed", f"CodimensionTwo {e.joint_label}: {e}"
    except FoldSaddleError as e:
        cell.status, cell.error = "failed", f"{type(e).__name__}: {e}"
    return cell


def _lane_lambdas(tau: str, beta: float, mu: float, lam_lo: float, lam_hi: float) -> list:
    """Every threshold of (beta, mu), the midpoints between them and one point past each end."""
    try:
        p = FamilyParams(tau, 0.0, beta, mu)
        values = sorted(b.value for b in ladder(p, which_theorem(tau, mu, beta)).breakpoints)
    except FoldSaddleError:
        return []
    mids = [0.5 * (a + b) for a, b in zip(values[:-1], values[1:])]
    ends = [values[0] - 0.05, values[-1] + 0.05]
    return sorted(v for v in values + mids + ends if lam_lo <= v <= lam_hi)


def _axis(rng: tuple, resolution: int) -> np.ndarray:
    lo, hi = rng[0], rng[1]
    n = int(rng[2]) if len(rng) > 2 else resolution
    if n < 2:
        raise ParameterError(f"a scan axis needs at least 2 points, got {n}")
    return np.linspace(lo, hi, n)


def scan(
    tau: str,
    mu_rule: str,
    lambda_range: tuple,
    beta_range: tuple,
    resolution: int,
    *args,
    mu: float = None,
    mu_offset: float = 0.0,
    boundary_lane: bool = False,
    workers: int = None,
    **kwargs,
) -> ScanResult:
    """
    Classifies every cell of the (lambda, beta) grid. With boundary_lane each beta row
    (and beta = 0) is also sampled on its thresholds and between them, so that the
    equality cases show up.
    """
    lams, betas = _axis(lambda_range, resolution), _axis(beta_range, resolution)
    workers = workers or sts.workers
    if sts.scan_pool not in pools:
        raise ParameterError(f"scan_pool must be one of {sorted(pools)}, got {sts.scan_pool!r}")
    jobs = [(tau, float(l), float(b), slice_mu(mu_rule, float(b), mu=mu, mu_offset=mu_offset)) for b in betas for l in lams]
    lane_jobs = []
    if boundary_lane:
        for b in sorted(set(float(v) for v in betas) | {0.0}):
            try:
                m = slice_mu(mu_rule, b, mu=mu, mu_offset=mu_offset)
            except ParameterError:
                continue
            lane_jobs += [(tau, l, b, m) for l in _lane_lambdas(tau, b, m, lams[0], lams[-1])]
    logger.info(
        f"scan {tau} {mu_rule}: {len(jobs)} grid cells, {len(lane_jobs)} boundary cells, "
        f"{workers} {sts.scan_pool} workers"
    )
    # map keeps job order, so the result does not depend on the pool
    with pools[sts.scan_pool](max_workers=workers) as pool:
        cells = list(pool.map(_classify_cell, *zip(*(jobs + lane_jobs))))
    n = len(lams)
    grid = [cells[k * n : (k + 1) * n] for k in range(len(betas))]
    result = ScanResult(tau, mu_rule, mu, mu_offset, lams, betas, grid, cells[len(jobs) :])
    for cell in result.failures():
        logger.warning(f"scan cell lambda={cell.lam}, beta={cell.beta}: {cell.error}")
    return result
