"""Unit tests for extremum search, discontinuities, and the global solver."""

import dataclasses
import math
import random

import numpy as np
import pytest

from dubins_circle import (
    AtDiscontinuityError,
    Configuration,
    PathType,
    RotationDirection,
    RotationalRelation,
    TargetCircle,
    analytic_derivative,
    closed_form_length,
    discontinuities,
    length_at_alpha,
    mirror_problem,
    perpendicular_distance_to_center,
    shortest_for_type,
    shortest_to_circle,
    wrap_to_pi,
)
from dubins_circle import solver as solver_mod
from dubins_circle.instances import random_instance
from dubins_circle.sweep import refine_min, sweep

TWO_PI = 2.0 * math.pi
PI_3 = math.pi / 3.0
ORIGIN = Configuration(0, 0, 0)
CW, CCW = RotationDirection.CW, RotationDirection.CCW


def counter_rotational_instances(rng, count):
    out = []
    while len(out) < count:
        inst = random_instance(rng)
        out.append(inst)
    return out


class TestDegenerateInstance:
    circle = TargetCircle((10, 1), 1.0, CCW)

    def test_report(self):
        report = shortest_for_type(ORIGIN, self.circle, PathType.LSL)
        assert report.relation is RotationalRelation.CO_ROTATIONAL
        assert len(report.minima) == 1
        minimum = report.minima[0]
        assert minimum.alpha == pytest.approx(3 * math.pi / 2, abs=1e-9)
        assert minimum.length == pytest.approx(10.0, abs=1e-9)
        assert minimum.phi2 <= 1e-7
        assert report.maxima == ()
        assert report.global_min.kind == "degenerate-cs"
        assert report.assumption_ok is True

    def test_single_discontinuity_at_minimum(self):
        discs = discontinuities(ORIGIN, self.circle, PathType.LSL)
        assert len(discs) == 1
        assert discs[0].alpha == pytest.approx(3 * math.pi / 2, abs=1e-9)
        assert discs[0].cause == "phi2-wrap"
        assert abs(discs[0].jump) == pytest.approx(TWO_PI, abs=1e-6)


class TestCounterRotationalInstance:
    """start at origin, circle (10,5) r=1 clockwise: frozen oracle values."""

    circle = TargetCircle((10, 5), 1.0, CW)

    def test_lsl_minimum(self):
        report = shortest_for_type(ORIGIN, self.circle, PathType.LSL)
        assert report.relation is RotationalRelation.COUNTER_ROTATIONAL
        assert len(report.minima) == 1
        minimum = report.minima[0]
        assert minimum.alpha == pytest.approx(3.091481874418, abs=1e-6)
        assert minimum.length == pytest.approx(10.512440006594, abs=1e-8)
        assert minimum.phi2 == pytest.approx(PI_3, abs=1e-6)

    def test_lsl_maximum(self):
        report = shortest_for_type(ORIGIN, self.circle, PathType.LSL)
        assert len(report.maxima) == 1
        maximum = report.maxima[0]
        assert maximum.alpha == pytest.approx(0.997086827053, abs=1e-6)
        assert maximum.length == pytest.approx(18.165331826518, abs=1e-8)
        assert maximum.phi2 == pytest.approx(5 * PI_3, abs=1e-6)

    def test_lsl_discontinuity(self):
        discs = discontinuities(ORIGIN, self.circle, PathType.LSL)
        assert len(discs) == 1
        assert discs[0].alpha == pytest.approx(2.138082164989, abs=1e-6)
        assert discs[0].jump == pytest.approx(-TWO_PI, abs=1e-5)

    def test_straight_line_through_center_at_extrema(self):
        report = shortest_for_type(ORIGIN, self.circle, PathType.LSL)
        for extremum in report.minima + report.maxima:
            _, path = length_at_alpha(ORIGIN, self.circle, PathType.LSL, extremum.alpha)
            assert perpendicular_distance_to_center(path, self.circle) <= 1e-6


class TestDerivative:
    circle = TargetCircle((10, 5), 1.0, CW)

    def test_counter_rotational_formula(self):
        discs = discontinuities(ORIGIN, self.circle, PathType.LSL)
        rng = random.Random(7)
        for _ in range(50):
            a = rng.uniform(0, TWO_PI)
            if any(abs(wrap_to_pi(a - d.alpha)) < 1e-3 for d in discs):
                continue
            h = 1e-6
            fd = (
                closed_form_length(ORIGIN, self.circle, PathType.LSL, a + h)
                - closed_form_length(ORIGIN, self.circle, PathType.LSL, a - h)
            ) / (2 * h)
            analytic = analytic_derivative(
                ORIGIN, self.circle, PathType.LSL, a, known_discontinuities=discs
            )
            assert fd == pytest.approx(analytic, abs=1e-4)
            _, path = length_at_alpha(ORIGIN, self.circle, PathType.LSL, a)
            assert analytic == pytest.approx(1.0 - 2.0 * math.cos(path.phi2), abs=1e-12)

    def test_phi2_pi_gives_3r(self):
        # derivative value r - 2r*cos(pi) = 3r wherever phi2 = pi
        report = shortest_for_type(ORIGIN, self.circle, PathType.LSL)
        lo, hi = report.minima[0].alpha, report.discontinuities[0].alpha
        # phi2 passes through pi between the minimum (pi/3) and the wrap (2*pi)
        for a in np.linspace(lo, lo + TWO_PI, 20000):
            _, path = length_at_alpha(ORIGIN, self.circle, PathType.LSL, a)
            if abs(path.phi2 - math.pi) < 2e-4:
                d = analytic_derivative(
                    ORIGIN,
                    self.circle,
                    PathType.LSL,
                    a,
                    known_discontinuities=report.discontinuities,
                )
                assert d == pytest.approx(3.0, abs=1e-3)
                return
        pytest.fail("no alpha with phi2 near pi found")

    def test_co_rotational_slope_is_r(self):
        circle = TargetCircle((10, 1), 2.5, CCW)
        d = analytic_derivative(ORIGIN, circle, PathType.LSL, 1.0)
        assert d == 2.5

    def test_raises_at_discontinuity(self):
        discs = discontinuities(ORIGIN, self.circle, PathType.LSL)
        with pytest.raises(AtDiscontinuityError):
            analytic_derivative(
                ORIGIN, self.circle, PathType.LSL, discs[0].alpha, known_discontinuities=discs
            )


class TestTableConditions:
    """Fixed-point conditions for the extremum/discontinuity angles.

    With phi1 evaluated at the solution and theta_i the start heading:
    counter-rotational minima satisfy alpha = theta_i +- phi1 +- 5*pi/6 and
    co-rotational minima alpha = theta_i +- phi1 -+ pi/2, with signs fixed
    by the first turn (+ for L) and the tangent direction.
    """

    @staticmethod
    def _phi1_at(start, circle, ptype, alpha):
        _, path = length_at_alpha(start, circle, ptype, alpha)
        return path.phi1

    def test_counter_rotational_rows(self, subtests=None):
        rng = random.Random(211)
        rows = {
            (PathType.LSL, CW): (1.0, 5 * math.pi / 6),
            (PathType.RSL, CW): (-1.0, 5 * math.pi / 6),
            (PathType.RSR, CCW): (-1.0, -5 * math.pi / 6),
            (PathType.LSR, CCW): (1.0, -5 * math.pi / 6),
        }
        for (ptype, direction), (sign, offset) in rows.items():
            checked = 0
            while checked < 8:
                inst = random_instance(rng)
                start = Configuration(0.0, 0.0, rng.uniform(0, TWO_PI))
                circle = TargetCircle(inst.circle.center, 1.0, direction)
                report = shortest_for_type(start, circle, ptype)
                if not report.minima:
                    continue
                for minimum in report.minima:
                    phi1 = self._phi1_at(start, circle, ptype, minimum.alpha)
                    residual = wrap_to_pi(
                        minimum.alpha - (start.theta + sign * phi1 + offset)
                    )
                    assert residual == pytest.approx(0.0, abs=1e-6)
                checked += 1

    def test_co_rotational_rows(self):
        rng = random.Random(223)
        rows = {
            (PathType.LSL, CCW): (1.0, -math.pi / 2),
            (PathType.RSL, CCW): (-1.0, -math.pi / 2),
            (PathType.RSR, CW): (-1.0, math.pi / 2),
            (PathType.LSR, CW): (1.0, math.pi / 2),
        }
        for (ptype, direction), (sign, offset) in rows.items():
            for _ in range(8):
                inst = random_instance(rng)
                start = Configuration(0.0, 0.0, rng.uniform(0, TWO_PI))
                circle = TargetCircle(inst.circle.center, 1.0, direction)
                report = shortest_for_type(start, circle, ptype)
                minimum = report.minima[0]
                phi1 = self._phi1_at(start, circle, ptype, minimum.alpha + 1e-7)
                residual = wrap_to_pi(
                    minimum.alpha - (start.theta + sign * phi1 + offset)
                )
                assert residual == pytest.approx(0.0, abs=1e-5)


class TestDiscontinuities:
    def test_counts_one_or_three(self):
        rng = random.Random(307)
        seen = set()
        for _ in range(150):
            inst = random_instance(rng)
            for ptype in PathType:
                relation_counter = (
                    shortest_for_type(inst.start, inst.circle, ptype).relation
                    is RotationalRelation.COUNTER_ROTATIONAL
                )
                discs = discontinuities(inst.start, inst.circle, ptype)
                if relation_counter:
                    assert len(discs) in (1, 3)
                    seen.add(len(discs))
                else:
                    assert len(discs) == 1
        assert seen == {1, 3}  # the corpus contains both counts

    def test_jump_magnitudes(self):
        rng = random.Random(311)
        for _ in range(40):
            inst = random_instance(rng)
            r = inst.circle.radius
            for ptype in PathType:
                for disc in discontinuities(inst.start, inst.circle, ptype):
                    assert abs(disc.jump) == pytest.approx(TWO_PI * r, abs=1e-6 * r)

    def test_detections_match_sweep_jumps(self):
        rng = random.Random(313)
        n = 100000
        for _ in range(12):
            inst = random_instance(rng)
            r = inst.circle.radius
            for ptype in PathType:
                result = sweep(inst.start, inst.circle, ptype, n=n)
                diffs = np.diff(np.append(result.lengths, result.lengths[0]))
                jump_idx = np.nonzero(np.abs(diffs) > 0.1 * r)[0]
                detected = discontinuities(inst.start, inst.circle, ptype)
                # every sweep jump has a detection within one grid cell
                for k in jump_idx:
                    mid = result.alphas[k] + math.pi / n
                    assert any(
                        abs(wrap_to_pi(d.alpha - mid)) <= TWO_PI / n for d in detected
                    ), f"unmatched sweep jump at {mid}"
                # every detection coincides with a sweep jump
                for d in detected:
                    assert any(
                        abs(wrap_to_pi(d.alpha - (result.alphas[k] + math.pi / n)))
                        <= TWO_PI / n
                        for k in jump_idx
                    ), f"spurious detection at {d.alpha}"


class TestGlobalMinima:
    def test_matches_refined_sweep(self):
        rng = random.Random(401)
        for _ in range(30):
            inst = random_instance(rng)
            r = inst.circle.radius
            for ptype in PathType:
                report = shortest_for_type(inst.start, inst.circle, ptype)
                refined = refine_min(
                    sweep(inst.start, inst.circle, ptype, n=20000), inst.start, inst.circle
                )
                assert report.global_min.length == pytest.approx(
                    refined.length, abs=1e-6 * r
                )

    def test_kink_minimum_instance(self):
        # three discontinuities; the global minimum sits at a phi1 wrap,
        # not at the phi2 = pi/3 stationary point
        start = Configuration(0, 0, math.pi / 2)
        circle = TargetCircle((-0.36757402429701647, 9.786850901450004), 1.0, CW)
        report = shortest_for_type(start, circle, PathType.RSL)
        assert len(report.discontinuities) == 3
        assert report.global_min.kind == "discontinuity"
        assert abs(report.global_min.phi2 - PI_3) > 1e-3
        refined = refine_min(sweep(start, circle, PathType.RSL, n=200000), start, circle)
        assert report.global_min.length == pytest.approx(refined.length, abs=1e-6)
        assert abs(wrap_to_pi(report.global_min.alpha - refined.alpha)) < 1e-4
        # a stationary pi/3 minimum exists but is not the global one
        assert len(report.minima) == 1
        assert report.minima[0].phi2 == pytest.approx(PI_3, abs=1e-6)
        assert report.minima[0].length > report.global_min.length


class TestMirrorSymmetry:
    def test_reports_swap_under_mirroring(self):
        rng = random.Random(419)
        for _ in range(25):
            inst = random_instance(rng)
            start, circle = inst.start, inst.circle
            _, mirrored_circle, _ = mirror_problem(start, circle)
            for ptype in PathType:
                rep = shortest_for_type(start, circle, ptype)
                rep_m = shortest_for_type(start, mirrored_circle, ptype.mirrored)
                assert rep.global_min.length == pytest.approx(
                    rep_m.global_min.length, abs=1e-9
                )
                # alpha reflects across the start heading line (theta = 0)
                assert wrap_to_pi(
                    rep.global_min.alpha + rep_m.global_min.alpha
                ) == pytest.approx(0.0, abs=1e-6)
                assert len(rep.minima) == len(rep_m.minima)
                for e, em in zip(
                    rep.minima, sorted(rep_m.minima, key=lambda m: -m.alpha)
                ):
                    assert e.length == pytest.approx(em.length, abs=1e-9)


class TestShortestToCircle:
    def test_oracle_verified_global_choice(self):
        # LSR tangent arrival beats the straight-line LSL on this instance
        result = shortest_to_circle(ORIGIN, TargetCircle((10, 1), 1.0, CCW))
        assert result.path_type is PathType.LSR
        assert result.length == pytest.approx(9.365188535855, abs=1e-8)
        assert result.per_type[PathType.LSL].global_min.length == pytest.approx(
            10.0, abs=1e-9
        )

    def test_counter_instance(self):
        result = shortest_to_circle(ORIGIN, TargetCircle((10, 5), 1.0, CW))
        assert result.path_type is PathType.LSL
        assert result.length == pytest.approx(10.512440006594, abs=1e-8)
        assert set(result.per_type) == set(PathType)

    def test_equals_sweep_argmin(self):
        rng = random.Random(431)
        for _ in range(10):
            inst = random_instance(rng)
            result = shortest_to_circle(inst.start, inst.circle)
            best = min(
                refine_min(
                    sweep(inst.start, inst.circle, pt, n=50000), inst.start, inst.circle
                ).length
                for pt in PathType
            )
            assert result.length == pytest.approx(best, abs=1e-6 * inst.circle.radius)

    def test_mirrored_instance_swaps_type(self):
        rng = random.Random(433)
        for _ in range(10):
            inst = random_instance(rng)
            result = shortest_to_circle(inst.start, inst.circle)
            _, mirrored, _ = mirror_problem(inst.start, inst.circle)
            result_m = shortest_to_circle(inst.start, mirrored)
            assert result_m.length == pytest.approx(result.length, abs=1e-10)
            if not result.tie:
                assert result_m.path_type is result.path_type.mirrored

    def test_tie_break_fixed_order(self, monkeypatch):
        inst = random_instance(random.Random(437))
        real = solver_mod.shortest_for_type
        baseline = {pt: real(inst.start, inst.circle, pt) for pt in PathType}
        target = min(rep.global_min.length for rep in baseline.values())

        def forced(start, circle, ptype, **kwargs):
            rep = baseline[ptype]
            forced_min = dataclasses.replace(rep.global_min, length=target)
            return dataclasses.replace(rep, global_min=forced_min)

        monkeypatch.setattr(solver_mod, "shortest_for_type", forced)
        result = solver_mod.shortest_to_circle(inst.start, inst.circle)
        assert result.path_type is PathType.LSL  # first in fixed order
        assert result.tie is True
        assert all(rep.tie for rep in result.per_type.values())

    def test_assumption_warning_flag(self):
        close = TargetCircle((3, 0), 1.0, CW)
        result = shortest_to_circle(ORIGIN, close)
        assert result.assumption_ok is False
        assert result.length > 0.0

    def test_wholly_infeasible_type_is_skipped(self):
        # RSL has no inner tangent for any alpha on this non-assumption instance
        circle = TargetCircle((0.5, -1.0), 1.0, CCW)
        result = shortest_to_circle(ORIGIN, circle)
        assert PathType.RSL not in result.per_type
        assert result.length > 0.0
        assert result.assumption_ok is False
