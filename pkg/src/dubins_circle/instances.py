"""Problem-instance serialization and random instance generation."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .circle_target import RotationDirection, TargetCircle
from .errors import DubinsCircleError
from .geometry import Configuration, TWO_PI


class InstanceFormatError(DubinsCircleError):
    """An instance document failed validation; the message names the field."""


@dataclass(frozen=True)
class Instance:
    start: Configuration
    circle: TargetCircle
    seed: Optional[int] = None


def _require_number(obj: dict, section: str, key: str) -> float:
    if key not in obj:
        raise InstanceFormatError(f"{section}.{key} is required")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFormatError(f"{section}.{key} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise InstanceFormatError(f"{section}.{key} must be finite, got {value!r}")
    return float(value)


def parse_instance(doc: dict) -> Instance:
    """Validate and build an Instance from a parsed JSON document.

    The start heading must be given as exactly one of theta_degrees or
    theta_radians.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    for section in ("start", "circle"):
        if section not in doc or not isinstance(doc[section], dict):
            raise InstanceFormatError(f"{section} must be a JSON object")
    start_doc = doc["start"]
    x = _require_number(start_doc, "start", "x")
    y = _require_number(start_doc, "start", "y")
    has_deg = "theta_degrees" in start_doc
    has_rad = "theta_radians" in start_doc
    if has_deg == has_rad:
        raise InstanceFormatError(
            "start must contain exactly one of theta_degrees or theta_radians"
        )
    if has_deg:
        theta = math.radians(_require_number(start_doc, "start", "theta_degrees"))
    else:
        theta = _require_number(start_doc, "start", "theta_radians")

    circle_doc = doc["circle"]
    cx = _require_number(circle_doc, "circle", "cx")
    cy = _require_number(circle_doc, "circle", "cy")
    r = _require_number(circle_doc, "circle", "r")
    if r <= 0.0:
        raise InstanceFormatError(f"circle.r must be positive, got {r!r}")
    direction = circle_doc.get("direction")
    if direction not in ("cw", "ccw"):
        raise InstanceFormatError(
            f"circle.direction must be 'cw' or 'ccw', got {direction!r}"
        )
    seed = doc.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise InstanceFormatError(f"seed must be an integer, got {seed!r}")
    return Instance(
        start=Configuration(x, y, theta),
        circle=TargetCircle((cx, cy), r, RotationDirection(direction)),
        seed=seed,
    )


def load_instance(path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON in {path!r}: {exc}") from exc
    return parse_instance(doc)


def random_instance(rng: random.Random, r: float = 1.0) -> Instance:
    """Random instance satisfying the 4r-distance assumption.

    Start fixed at the origin heading 0; circle center drawn with radius
    uniform in [6r, 30r] and angle uniform, direction by fair coin.
    """
    radius = rng.uniform(6.0 * r, 30.0 * r)
    angle = rng.uniform(0.0, TWO_PI)
    direction = RotationDirection.CW if rng.random() < 0.5 else RotationDirection.CCW
    return Instance(
        start=Configuration(0.0, 0.0, 0.0),
        circle=TargetCircle(
            (radius * math.cos(angle), radius * math.sin(angle)), r, direction
        ),
    )
