"""Scoring of what a window shows.

A view is described by which of the three stacked layers (sky, landscape,
ground) are visible, how far away the main content is, whether anything in
the scene moves, and how much of the view is vegetation or water.  Each
visible layer contributes up to 0.25 to the content score; the landscape,
ground and nature contributions are weighted by distance, movement and
nature-fraction factors respectively.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

LAYER_VALUE = 0.25


class Layer(enum.Enum):
    SKY = "sky"
    LANDSCAPE = "landscape"
    GROUND = "ground"


class Movement(enum.Enum):
    """Where moving elements (people, traffic, foliage) appear in the scene."""

    NONE = "none"
    NEARBY_ONLY = "nearby_only"
    DISTANT_ONLY = "distant_only"
    BOTH = "both"


@dataclass(frozen=True)
class SceneDescription:
    """What an occupant sees through one window.

    Args:
        layers_present: which of the three layers are visible.
        nature_fraction: share of the view occupied by natural elements, 0..1.
        content_distance_m: distance to the main visible content, metres.
        landscape_is_predominantly_natural: short distances are not penalised
            when the nearby landscape itself is natural (garden, water).
        movement: where moving elements appear.
    """

    layers_present: frozenset[Layer] = frozenset()
    nature_fraction: float = 0.0
    content_distance_m: float = 0.0
    landscape_is_predominantly_natural: bool = False
    movement: Movement = Movement.NONE

    def __post_init__(self):
        object.__setattr__(self, "layers_present", frozenset(self.layers_present))
        if not 0.0 <= self.nature_fraction <= 1.0:
            raise DomainError(f"nature_fraction must be in [0, 1], got {self.nature_fraction}")
        if not (math.isfinite(self.content_distance_m) and self.content_distance_m >= 0.0):
            raise DomainError(f"content_distance_m must be finite and >= 0, got {self.content_distance_m}")
        if self.nature_fraction > 0.0 and not self.layers_present:
            raise DomainError("a scene with nature_fraction > 0 must have at least one layer present")


@dataclass(frozen=True)
class ContentScore:
    """Content score with its per-layer breakdown. value == sum of the terms."""

    value: float
    sky: float
    landscape: float
    ground: float
    nature: float

    @property
    def breakdown(self) -> dict[str, float]:
        return {"sky": self.sky, "landscape": self.landscape, "ground": self.ground, "nature": self.nature}


def layer_weight(present: bool) -> float:
    """Weight of one visible layer: 0.25 if present, else 0."""
    return LAYER_VALUE if present else 0.0


def wf_content_distance(distance_m: float, predominantly_natural: bool = False) -> float:
    """Distance weighting of the landscape layer.

    Natural nearby landscape is never penalised for being close.  Otherwise
    the weight steps up with distance: 0 at 6 m or less, 0.5 out to 20 m,
    0.75 out to 50 m, 1 beyond.
    """
    if not (math.isfinite(distance_m) and distance_m >= 0.0):
        raise DomainError(f"distance must be finite and >= 0, got {distance_m}")
    if predominantly_natural:
        return 1.0
    if distance_m <= 6.0:
        return 0.0
    if distance_m <= 20.0:
        return 0.5
    if distance_m <= 50.0:
        return 0.75
    return 1.0


def wf_movement(movement: Movement) -> float:
    """Movement weighting of the ground layer.

    Distant movement enlivens a view; nearby movement distracts.  A scene
    with both is weighted like the nearby-only case (the distraction wins).
    """
    if movement is Movement.DISTANT_ONLY:
        return 1.0
    if movement is Movement.NONE:
        return 0.5
    return 0.0  # nearby movement present, alone or mixed


def wf_nature(fraction: float) -> float:
    """Weighting of the nature bonus by the share of natural elements."""
    if not 0.0 <= fraction <= 1.0:
        raise DomainError(f"nature fraction must be in [0, 1], got {fraction}")
    if fraction == 0.0:
        return 0.0
    if fraction <= 0.25:
        return 0.5
    if fraction <= 0.5:
        return 0.75
    return 1.0


def v_content(scene: SceneDescription) -> ContentScore:
    """Content score of a scene: the sum of its four weighted layer terms."""
    sky = layer_weight(Layer.SKY in scene.layers_present)
    landscape = layer_weight(Layer.LANDSCAPE in scene.layers_present) * wf_content_distance(
        scene.content_distance_m, scene.landscape_is_predominantly_natural
    )
    ground = layer_weight(Layer.GROUND in scene.layers_present) * wf_movement(scene.movement)
    # nature acts as a fourth layer that only exists when something natural is visible
    nature = layer_weight(scene.nature_fraction > 0.0) * wf_nature(scene.nature_fraction)
    return ContentScore(
        value=sky + landscape + ground + nature,
        sky=sky,
        landscape=landscape,
        ground=ground,
        nature=nature,
    )
