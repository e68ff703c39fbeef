"""Pose sampling along CSC paths."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Configuration
from .paths import CscPath, arc_end, straight_end


@dataclass(frozen=True)
class PolylineSample:
    """Poses along a path, spaced at most ``arc_length_step`` apart."""

    poses: tuple[tuple[float, float, float], ...]
    arc_length_step: float

    def polyline_length(self) -> float:
        total = 0.0
        for (x1, y1, _), (x2, y2, _) in zip(self.poses, self.poses[1:]):
            total += math.hypot(x2 - x1, y2 - y1)
        return total


def sample_path(path: CscPath, start: Configuration, step: float) -> PolylineSample:
    """Sample arc, straight, arc with consecutive spacing <= ``step``.

    Segments are parametrized in closed form (arcs by angle, the straight
    by distance); the first pose is the start and the last is the goal.
    """
    if not (step > 0.0 and math.isfinite(step)):
        raise ValueError(f"step must be positive, got {step!r}")
    r = path.r
    poses = [(start.x, start.y, start.theta)]
    pose = start

    def emit(p: Configuration) -> None:
        poses.append((p.x, p.y, p.theta))

    for seg_kind, amount in (
        ("arc1", path.phi1),
        ("line", path.ls),
        ("arc2", path.phi2),
    ):
        if seg_kind == "line":
            seg_len = amount
        else:
            seg_len = amount * r
        if seg_len <= 0.0:
            continue
        count = max(1, math.ceil(seg_len / step))
        for i in range(1, count + 1):
            frac = i / count
            if seg_kind == "line":
                p = straight_end(pose, amount * frac)
            else:
                turn = path.path_type.first_turn if seg_kind == "arc1" else path.path_type.second_turn
                p = arc_end(pose, turn, amount * frac, r)
            emit(p)
        pose = p
    return PolylineSample(poses=tuple(poses), arc_length_step=step)
