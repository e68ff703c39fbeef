"""Extrema and discontinuities of the circle-goal length function.

The length of a fixed CSC type as a function of the arrival angle alpha
jumps by 2*pi*r wherever one of the arc angles wraps through zero modulo
2*pi.  Between jumps the function is smooth (counter-rotational) or
linear with slope r (co-rotational).  The solver locates every wrap,
splits [0, 2*pi) into smooth pieces, finds the stationary points of the
derivative ``r - 2*r*cos(phi2)`` on each piece, and takes the global
minimum over stationary minima and one-sided jump values.

Wraps of the first arc always come in pairs (the wrap locus is a circle
crossing a ray), so a counter-rotational instance has one or three
discontinuities, and the global minimum occasionally sits at a jump
rather than at a phi2 = pi/3 stationary point.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .circle_target import (
    CanonicalInstance,
    RotationalRelation,
    TargetCircle,
    assumption_check,
    canonical_instance,
    canonical_terms_scalar,
    closed_form_length,
    length_at_alpha,
    lsl_terms,
    rotational_relation,
    rsl_terms,
)
from .errors import AtDiscontinuityError, InfeasiblePathError
from .geometry import Configuration, HALF_PI, TWO_PI, normalize_angle, wrap_to_pi
from .paths import CscPath, PathType

SCAN_SAMPLES = 4096
BISECT_TOL = 1e-12
ROOT_TOL = 1e-10
ROOT_MAX_ITER = 200
JUMP_PROBE = 1e-7
SIDE_PROBE = 1e-9
TIE_REL_TOL = 1e-9
# cells whose endpoints are this close to a wrap get a midpoint probe to
# catch crossing pairs that do not change the endpoint sign
NEAR_WRAP_GUARD = 0.05

CAUSE_PHI1 = "phi1-wrap"
CAUSE_PHI2 = "phi2-wrap"

KIND_STATIONARY = "stationary"
KIND_DEGENERATE = "degenerate-cs"
KIND_DISCONTINUITY = "discontinuity"
KIND_BOUNDARY = "feasibility-boundary"

_TYPE_ORDER = (PathType.LSL, PathType.RSL, PathType.RSR, PathType.LSR)


@dataclass(frozen=True)
class Extremum:
    alpha: float
    length: float
    phi2: float


@dataclass(frozen=True)
class Discontinuity:
    alpha: float
    jump: float  # signed left-to-right length change in world alpha order
    cause: str


@dataclass(frozen=True)
class GlobalMinimum:
    alpha: float
    length: float
    phi2: float
    kind: str
    path: CscPath


@dataclass(frozen=True)
class ExtremumReport:
    path_type: PathType
    relation: RotationalRelation
    minima: tuple[Extremum, ...]
    maxima: tuple[Extremum, ...]
    discontinuities: tuple[Discontinuity, ...]
    global_min: GlobalMinimum
    assumption_ok: bool
    tie: bool = False


@dataclass(frozen=True)
class SolveResult:
    path_type: PathType
    path: CscPath
    alpha: float
    length: float
    per_type: dict[PathType, ExtremumReport]
    assumption_ok: bool
    tie: bool


# ---------------------------------------------------------------------------
# wrap proximity: signed angular distance of each arc angle from its wrap
# ---------------------------------------------------------------------------


def _phi1_wrap_scalar(ci: CanonicalInstance, a: float) -> float:
    c, d, r = ci.c, ci.d, ci.r
    if ci.kind is PathType.LSL:
        if ci.cw:
            dx = c + 2.0 * r * math.cos(a)
            dy = d + 2.0 * r * math.sin(a) - r
        else:
            dx, dy = c, d - r
        return math.atan2(dy, dx)
    if ci.cw:
        wx = c + 2.0 * r * math.cos(a) - r
        wy = d + 2.0 * r * math.sin(a)
    else:
        wx, wy = c - r, d
    lcc = math.hypot(wx, wy)
    ls2 = lcc * lcc - 4.0 * r * r
    if ls2 < 0.0:
        return math.nan
    psi1 = math.atan2(wy, wx)
    psi2 = math.atan2(2.0 * r, math.sqrt(ls2))
    return wrap_to_pi(-psi1 + psi2 + HALF_PI)


def _phi2_wrap_scalar(ci: CanonicalInstance, a: float) -> float:
    _, phi1, _, _, feasible = canonical_terms_scalar(ci, a)
    if not feasible:
        return math.nan
    theta = a - HALF_PI if ci.cw else a + HALF_PI
    if ci.kind is PathType.LSL:
        return wrap_to_pi(theta - phi1)
    return wrap_to_pi(theta + phi1 - HALF_PI)


def _phi1_wrap_grid(ci: CanonicalInstance, alphas: np.ndarray) -> np.ndarray:
    c, d, r = ci.c, ci.d, ci.r
    if ci.kind is PathType.LSL:
        if ci.cw:
            dx = c + 2.0 * r * np.cos(alphas)
            dy = d + 2.0 * r * np.sin(alphas) - r
        else:
            dx = np.full_like(alphas, c)
            dy = np.full_like(alphas, d - r)
        return np.arctan2(dy, dx)
    if ci.cw:
        wx = c + 2.0 * r * np.cos(alphas) - r
        wy = d + 2.0 * r * np.sin(alphas)
    else:
        wx = np.full_like(alphas, c - r)
        wy = np.full_like(alphas, d)
    lcc = np.hypot(wx, wy)
    ls2 = lcc * lcc - 4.0 * r * r
    with np.errstate(invalid="ignore"):
        ls = np.sqrt(np.where(ls2 < 0.0, np.nan, ls2))
    psi1 = np.arctan2(wy, wx)
    psi2 = np.arctan2(2.0 * r, ls)
    return _wrap_to_pi_array(-psi1 + psi2 + HALF_PI)


def _phi2_wrap_grid(ci: CanonicalInstance, alphas: np.ndarray) -> np.ndarray:
    terms = lsl_terms(ci, alphas) if ci.kind is PathType.LSL else rsl_terms(ci, alphas)
    phi1 = terms[1]
    theta = alphas - HALF_PI if ci.cw else alphas + HALF_PI
    if ci.kind is PathType.LSL:
        return _wrap_to_pi_array(theta - phi1)
    return _wrap_to_pi_array(theta + phi1 - HALF_PI)


def _wrap_to_pi_array(a: np.ndarray) -> np.ndarray:
    b = np.mod(a, TWO_PI)
    return np.where(b > math.pi, b - TWO_PI, b)


def _bisect_zero(f: Callable[[float], float], lo: float, hi: float, flo: float) -> float:
    for _ in range(ROOT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BISECT_TOL:
            return mid
        fm = f(mid)
        if math.isnan(fm):
            return mid
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _zero_crossings(f: Callable[[float], float], vals: np.ndarray, grid: np.ndarray) -> list[float]:
    """Angles where the wrap-proximity function crosses zero.

    ``vals`` holds f on the cyclic grid.  Sign changes with both ends
    within pi/2 of zero are bisected (this excludes the harmless branch
    jump at +-pi); near-zero cells with equal end signs get a midpoint
    probe to catch crossing pairs inside one cell.
    """
    n = len(grid)
    roots: list[float] = []
    for k in range(n):
        a, b = grid[k], grid[k] + (grid[1] - grid[0])
        fa, fb = vals[k], vals[(k + 1) % n]
        if math.isnan(fa) or math.isnan(fb):
            continue
        if abs(fa) > HALF_PI or abs(fb) > HALF_PI:
            continue
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0.0:
            roots.append(_bisect_zero(f, a, b, fa))
        elif abs(fa) < NEAR_WRAP_GUARD and abs(fb) < NEAR_WRAP_GUARD:
            mid = 0.5 * (a + b)
            fm = f(mid)
            if not math.isnan(fm) and fa * fm < 0.0:
                roots.append(_bisect_zero(f, a, mid, fa))
                roots.append(_bisect_zero(f, mid, b, fm))
    return roots


def _canonical_discontinuities(ci: CanonicalInstance, scan: int) -> list[tuple[float, str]]:
    """(canonical alpha, cause) for every arc-angle wrap, unsorted."""
    if not ci.cw:
        # co-rotational: phi1 is constant, phi2 wraps exactly once
        _, phi1, _, _, feasible = canonical_terms_scalar(ci, 0.0)
        if not feasible:
            raise InfeasiblePathError("inner-tangent type infeasible for every alpha")
        a0 = phi1 - HALF_PI if ci.kind is PathType.LSL else -phi1
        return [(a0 % TWO_PI, CAUSE_PHI2)]
    grid = np.arange(scan) * (TWO_PI / scan)
    found: list[tuple[float, str]] = []
    w1 = _phi1_wrap_grid(ci, grid)
    for a in _zero_crossings(lambda x: _phi1_wrap_scalar(ci, x), w1, grid):
        found.append((a % TWO_PI, CAUSE_PHI1))
    w2 = _phi2_wrap_grid(ci, grid)
    for a in _zero_crossings(lambda x: _phi2_wrap_scalar(ci, x), w2, grid):
        found.append((a % TWO_PI, CAUSE_PHI2))
    return found


def discontinuities(
    start: Configuration,
    circle: TargetCircle,
    path_type: PathType,
    *,
    scan: int = SCAN_SAMPLES,
) -> tuple[Discontinuity, ...]:
    """All discontinuities of the length function, sorted by world alpha.

    Each entry carries the signed length jump measured across the wrap in
    world-frame alpha order; its magnitude is 2*pi*r.
    """
    ci = canonical_instance(start, circle, path_type)
    out = []
    for a_c, cause in _canonical_discontinuities(ci, scan):
        a_w = ci.to_world_alpha(a_c)
        before = closed_form_length(start, circle, path_type, a_w - JUMP_PROBE)
        after = closed_form_length(start, circle, path_type, a_w + JUMP_PROBE)
        out.append(Discontinuity(alpha=a_w, jump=after - before, cause=cause))
    out.sort(key=lambda disc: disc.alpha)
    return tuple(out)


def analytic_derivative(
    start: Configuration,
    circle: TargetCircle,
    path_type: PathType,
    alpha: float,
    *,
    known_discontinuities: Optional[tuple[Discontinuity, ...]] = None,
    discontinuity_tolerance: float = 1e-9,
) -> float:
    """Derivative of the path length with respect to the arrival angle.

    Counter-rotational: ``r - 2*r*cos(phi2(alpha))`` up to orientation;
    co-rotational: the constant slope ``r`` up to orientation.  The sign
    is positive when the second arc turns counter-clockwise (LSL, RSL)
    and negative for RSR/LSR, whose reduction mirrors the angular
    coordinate.  Raises AtDiscontinuityError within
    ``discontinuity_tolerance`` of a detected discontinuity.
    """
    if known_discontinuities is None:
        known_discontinuities = discontinuities(start, circle, path_type)
    a = normalize_angle(alpha)
    for disc in known_discontinuities:
        gap = abs(wrap_to_pi(a - disc.alpha))
        if gap <= discontinuity_tolerance:
            raise AtDiscontinuityError(
                f"length derivative undefined at alpha={alpha!r} "
                f"(discontinuity at {disc.alpha!r})"
            )
    r = circle.radius
    ci = canonical_instance(start, circle, path_type)
    if rotational_relation(path_type, circle.direction) is RotationalRelation.CO_ROTATIONAL:
        return ci.alpha_sign * r
    _, _, phi2, _, feasible = canonical_terms_scalar(ci, ci.to_canonical_alpha(a))
    if not feasible:
        raise InfeasiblePathError(f"path type infeasible at alpha={alpha!r}")
    return ci.alpha_sign * (r - 2.0 * r * math.cos(phi2))


# ---------------------------------------------------------------------------
# per-type extremum search
# ---------------------------------------------------------------------------


def _feasible_pieces(ci: CanonicalInstance, breaks: list[float], scan: int):
    """Smooth canonical-alpha intervals, clipped to feasible runs.

    Pieces are (lo, hi, lo_is_jump, hi_is_jump) with hi possibly > 2*pi
    for the cyclic wrap-around piece.
    """
    if breaks:
        anchors = sorted(breaks)
        intervals = [
            (anchors[i], anchors[i + 1] if i + 1 < len(anchors) else anchors[0] + TWO_PI)
            for i in range(len(anchors))
        ]
        jump_edges = True
    else:
        intervals = [(0.0, TWO_PI)]
        jump_edges = False

    if ci.kind is PathType.LSL or not ci.cw:
        # LSL always feasible; co-rotational RSL feasibility is alpha-free
        return [(lo, hi, jump_edges, jump_edges) for lo, hi in intervals]

    pieces = []
    for lo, hi in intervals:
        grid = np.linspace(lo, hi, max(16, int((hi - lo) / (TWO_PI / scan)) + 2))
        feas = rsl_terms(ci, grid)[4]
        if feas.all():
            pieces.append((lo, hi, jump_edges, jump_edges))
            continue
        # split into maximal feasible runs at the grid resolution
        run_start = None
        for idx, ok in enumerate(feas):
            if ok and run_start is None:
                run_start = idx
            if (not ok or idx == len(feas) - 1) and run_start is not None:
                run_end = idx if ok else idx - 1
                if run_end > run_start:
                    pieces.append(
                        (
                            grid[run_start],
                            grid[run_end],
                            jump_edges and run_start == 0,
                            jump_edges and run_end == len(feas) - 1,
                        )
                    )
                run_start = None
    return pieces


def _stationary_points(ci: CanonicalInstance, piece, scan: int):
    """(canonical alpha, is_minimum) for derivative roots inside a piece."""
    lo, hi, _, _ = piece
    span = hi - lo
    if span <= 4.0 * BISECT_TOL:
        return []
    inset = max(1e-9, 1e-9 * span)
    m = max(8, int(span / (TWO_PI / scan)) + 1)
    grid = np.linspace(lo + inset, hi - inset, m)
    terms = lsl_terms(ci, grid) if ci.kind is PathType.LSL else rsl_terms(ci, grid)
    r = ci.r
    deriv = r - 2.0 * r * np.cos(terms[2])

    def d_scalar(a: float) -> float:
        _, _, phi2, _, feasible = canonical_terms_scalar(ci, a)
        return r - 2.0 * r * math.cos(phi2) if feasible else math.nan

    roots = []
    for k in range(m - 1):
        fa, fb = deriv[k], deriv[k + 1]
        if math.isnan(fa) or math.isnan(fb):
            continue
        if fa == 0.0:
            roots.append((grid[k], fb > 0.0))
        elif fa * fb < 0.0:
            root = _bisect_root(d_scalar, grid[k], grid[k + 1], fa)
            roots.append((root, fa < 0.0))
    return roots


def _bisect_root(f: Callable[[float], float], lo: float, hi: float, flo: float) -> float:
    for _ in range(ROOT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= ROOT_TOL:
            return mid
        fm = f(mid)
        if math.isnan(fm):
            return mid
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _world_extremum(
    start: Configuration, circle: TargetCircle, path_type: PathType, alpha_world: float
) -> Extremum:
    evaluation = length_at_alpha(start, circle, path_type, alpha_world)
    return Extremum(alpha=alpha_world, length=evaluation.length, phi2=evaluation.path.phi2)


def _degenerate_cs_minimum(
    start: Configuration, circle: TargetCircle, path_type: PathType, alpha_world: float
) -> GlobalMinimum:
    """Build the two-segment CS minimum, pinning the vanished arc to zero."""
    evaluation = length_at_alpha(start, circle, path_type, alpha_world)
    path = evaluation.path
    if path.phi2 > math.pi:
        # rounding pushed the wrapped arc onto the 2*pi branch
        path = dataclasses.replace(
            path, phi2=0.0, total_length=path.ls + path.r * path.phi1
        )
    return GlobalMinimum(
        alpha=alpha_world,
        length=path.total_length,
        phi2=path.phi2,
        kind=KIND_DEGENERATE,
        path=path,
    )


def shortest_for_type(
    start: Configuration,
    circle: TargetCircle,
    path_type: PathType,
    *,
    scan: int = SCAN_SAMPLES,
) -> ExtremumReport:
    """Extrema, discontinuities, and the global minimum for one CSC type.

    Co-rotational types get the closed-form degenerate-CS minimum at the
    angle where the final arc vanishes.  Counter-rotational types are
    searched piece by piece: stationary minima satisfy phi2 = pi/3 and
    maxima phi2 = 5*pi/3; one-sided values at every jump complete the
    global-minimum candidate set.
    """
    relation = rotational_relation(path_type, circle.direction)
    ok = assumption_check(start, circle)
    ci = canonical_instance(start, circle, path_type)
    discs = discontinuities(start, circle, path_type, scan=scan)

    if relation is RotationalRelation.CO_ROTATIONAL:
        alpha_min = discs[0].alpha
        global_min = _degenerate_cs_minimum(start, circle, path_type, alpha_min)
        minimum = Extremum(alpha=alpha_min, length=global_min.length, phi2=global_min.phi2)
        return ExtremumReport(
            path_type=path_type,
            relation=relation,
            minima=(minimum,),
            maxima=(),
            discontinuities=discs,
            global_min=global_min,
            assumption_ok=ok,
        )

    breaks = [ci.to_canonical_alpha(d.alpha) % TWO_PI for d in discs]
    pieces = _feasible_pieces(ci, breaks, scan)

    minima: list[Extremum] = []
    maxima: list[Extremum] = []
    candidates: list[tuple[float, float, str]] = []  # (length, world alpha, kind)

    for piece in pieces:
        for a_c, is_min in _stationary_points(ci, piece, scan):
            a_w = ci.to_world_alpha(a_c)
            extremum = _world_extremum(start, circle, path_type, a_w)
            if is_min:
                minima.append(extremum)
                candidates.append((extremum.length, a_w, KIND_STATIONARY))
            else:
                maxima.append(extremum)
        lo, hi, lo_jump, hi_jump = piece
        for edge, is_jump in ((lo, lo_jump), (hi, hi_jump)):
            a_w = ci.to_world_alpha(edge % TWO_PI)
            kind = KIND_DISCONTINUITY if is_jump else KIND_BOUNDARY
            for side in (-SIDE_PROBE, SIDE_PROBE):
                length = closed_form_length(start, circle, path_type, a_w + side)
                if not math.isnan(length):
                    candidates.append((length, a_w, kind))

    if not candidates:
        raise InfeasiblePathError(
            f"{path_type.value} has no feasible arrival angle for this instance"
        )
    best_length, best_alpha, best_kind = min(candidates, key=lambda cand: cand[0])
    if best_kind == KIND_STATIONARY:
        evaluation = length_at_alpha(start, circle, path_type, best_alpha)
        global_min = GlobalMinimum(
            alpha=best_alpha,
            length=evaluation.length,
            phi2=evaluation.path.phi2,
            kind=KIND_STATIONARY,
            path=evaluation.path,
        )
    else:
        global_min = _jump_minimum(start, circle, path_type, best_alpha, best_kind)

    minima.sort(key=lambda e: e.alpha)
    maxima.sort(key=lambda e: e.alpha)
    return ExtremumReport(
        path_type=path_type,
        relation=relation,
        minima=tuple(minima),
        maxima=tuple(maxima),
        discontinuities=discs,
        global_min=global_min,
        assumption_ok=ok,
    )


def _jump_minimum(
    start: Configuration,
    circle: TargetCircle,
    path_type: PathType,
    alpha_world: float,
    kind: str,
) -> GlobalMinimum:
    """Global minimum attained at a jump: take the lower one-sided path."""
    sides = []
    for side in (-SIDE_PROBE, SIDE_PROBE):
        try:
            evaluation = length_at_alpha(start, circle, path_type, alpha_world + side)
        except InfeasiblePathError:
            continue
        sides.append(evaluation)
    if not sides:
        raise InfeasiblePathError(
            f"{path_type.value} infeasible on both sides of alpha={alpha_world!r}"
        )
    best = min(sides, key=lambda ev: ev.length)
    return GlobalMinimum(
        alpha=normalize_angle(alpha_world),
        length=best.length,
        phi2=best.path.phi2,
        kind=kind,
        path=best.path,
    )


def shortest_to_circle(
    start: Configuration, circle: TargetCircle, *, scan: int = SCAN_SAMPLES
) -> SolveResult:
    """Shortest CSC path over all four types.

    Ties within 1e-9*r resolve to the first type in the fixed order LSL,
    RSL, RSR, LSR; tied reports carry ``tie=True``.  Types with no
    feasible arrival angle (possible only when the 4r assumption fails)
    are left out of ``per_type``.
    """
    reports = {}
    for pt in _TYPE_ORDER:
        try:
            reports[pt] = shortest_for_type(start, circle, pt, scan=scan)
        except InfeasiblePathError:
            continue
    if not reports:
        raise InfeasiblePathError("no CSC type reaches the circle tangentially")
    best_length = min(rep.global_min.length for rep in reports.values())
    tol = TIE_REL_TOL * circle.radius
    tied = [
        pt
        for pt in _TYPE_ORDER
        if pt in reports and reports[pt].global_min.length <= best_length + tol
    ]
    chosen = tied[0]
    if len(tied) > 1:
        for pt in tied:
            reports[pt] = dataclasses.replace(reports[pt], tie=True)
    winner = reports[chosen].global_min
    return SolveResult(
        path_type=chosen,
        path=winner.path,
        alpha=winner.alpha,
        length=winner.length,
        per_type=reports,
        assumption_ok=reports[chosen].assumption_ok,
        tie=len(tied) > 1,
    )
