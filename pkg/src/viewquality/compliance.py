"""Checks against published view requirements in building standards.

Every check returns a ComplianceResult whose citation field quotes the
requirement it was decided against, so a verdict can be traced back to the
source table without re-reading the rule code.  Environmental-information
expectations that a standard attaches to a level are reported as advisories,
not folded into the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .content import Layer, Movement, SceneDescription
from .errors import DomainError


@dataclass(frozen=True)
class ComplianceResult:
    standard: str
    criterion: str
    verdict: str
    citation: str
    advisories: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# European view content levels

EN_SLL_STANDARD = "EN 17037 / SLL LG10"

_EN_LEVELS = (
    # (verdict, needs_all_layers, needs_extra_layer, min_distance_m, min_horizontal_deg, citation)
    ("High/Excellent", True, True, 50.0, 54.0, "all layers; outside distance >= 50 m; horizontal sight angle >= 54 deg"),
    ("Medium/Good", False, True, 20.0, 28.0, "landscape and one more layer; outside distance >= 20 m; horizontal sight angle >= 28 deg"),
    ("Minimum/Sufficient", False, False, 6.0, 14.0, "landscape layer; outside distance >= 6 m; horizontal sight angle >= 14 deg"),
)

_EN_ENVIRONMENT = {
    "Minimum/Sufficient": ("expects environmental information: location",),
    "Medium/Good": (
        "expects environmental information: location, time, weather",
        "expects one of: nature, people",
    ),
    "High/Excellent": (
        "expects environmental information: location, time, weather, nature, people",
    ),
}

_EN_DEEP_ROOM_ADVISORY = (
    "rooms deeper than 4 m additionally expect an opening at least 1.0 m wide and 1.25 m high"
)


def en_sll_content_level(
    scene: SceneDescription,
    horizontal_angle_deg: float,
    room_depth_m: float | None = None,
) -> ComplianceResult:
    """Graded view level: the highest of three layer/distance/angle tiers met.

    Args:
        scene: what the window shows.
        horizontal_angle_deg: horizontal sight angle at the viewing position.
        room_depth_m: optional; beyond 4 m a minimum-opening advisory applies.
    """
    if not horizontal_angle_deg >= 0.0:
        raise DomainError(f"horizontal angle must be >= 0, got {horizontal_angle_deg}")
    layers = scene.layers_present
    has_landscape = Layer.LANDSCAPE in layers
    verdict = "Insufficient"
    citation = "no tier reached: needs at least landscape layer, >= 6 m and >= 14 deg"
    all_layers = frozenset({Layer.SKY, Layer.LANDSCAPE, Layer.GROUND})
    for level, needs_all, needs_extra, min_d, min_a, cite in _EN_LEVELS:
        if needs_all:
            layers_ok = layers == all_layers
        else:
            layers_ok = has_landscape and (not needs_extra or len(layers) >= 2)
        if layers_ok and scene.content_distance_m >= min_d and horizontal_angle_deg >= min_a:
            verdict, citation = level, cite
            break
    advisories = list(_EN_ENVIRONMENT.get(verdict, ()))
    if room_depth_m is not None and room_depth_m > 4.0:
        advisories.append(_EN_DEEP_ROOM_ADVISORY)
    return ComplianceResult(
        standard=EN_SLL_STANDARD,
        criterion="view content level",
        verdict=verdict,
        citation=citation,
        advisories=tuple(advisories),
    )


# ---------------------------------------------------------------------------
# North-American element checks

def leed_visual_elements(scene: SceneDescription) -> ComplianceResult:
    """Pass when at least two of three visual elements are present: flora or
    sky, movement, and content at least 7.5 m away."""
    flora_or_sky = scene.nature_fraction > 0.0 or Layer.SKY in scene.layers_present
    movement = scene.movement is not Movement.NONE
    far_content = scene.content_distance_m >= 7.5
    count = int(flora_or_sky) + int(movement) + int(far_content)
    return ComplianceResult(
        standard="LEED v4.1",
        criterion="visual elements (2 of 3)",
        verdict="pass" if count >= 2 else "fail",
        citation=(
            "at least two of: flora or sky; movement; objects at least 7.5 m away "
            f"(present: {count} of 3)"
        ),
    )


def well_view_check(vertical_angle_deg: float, sees_ground_or_sky: bool) -> ComplianceResult:
    """Pass when the window subtends at least 30 degrees vertically and the
    view includes ground or sky."""
    if not vertical_angle_deg >= 0.0:
        raise DomainError(f"vertical angle must be >= 0, got {vertical_angle_deg}")
    ok = vertical_angle_deg >= 30.0 and sees_ground_or_sky
    return ComplianceResult(
        standard="WELL",
        criterion="vertical view angle with sky or ground",
        verdict="pass" if ok else "fail",
        citation="vertical view angle >= 30 deg and direct line of sight to ground or sky",
    )


# ---------------------------------------------------------------------------
# Distance-to-window rules

def distance_rules(distance_to_window_m: float, head_height_m: float | None = None) -> tuple[ComplianceResult, ...]:
    """Maximum allowed distance from a window, per standard.

    The head-height-proportional rule is only evaluated when the window head
    height is known.
    """
    if not distance_to_window_m >= 0.0:
        raise DomainError(f"distance must be >= 0, got {distance_to_window_m}")
    d = distance_to_window_m
    results = [
        ComplianceResult(
            standard="BREEAM",
            criterion="distance to window",
            verdict="pass" if d <= 8.0 else "fail",
            citation="within 8 m of a window",
        ),
        ComplianceResult(
            standard="WELL v2",
            criterion="distance to window",
            verdict="pass" if d <= 10.0 else "fail",
            citation="within 10 m of a window",
        ),
        ComplianceResult(
            standard="DIN 5034",
            criterion="distance to window",
            verdict="pass" if d <= 10.0 else "fail",
            citation="within 10 m of a window",
        ),
    ]
    if head_height_m is not None:
        if not head_height_m > 0.0:
            raise DomainError(f"head height must be positive, got {head_height_m}")
        limit = 3.0 * head_height_m
        results.append(
            ComplianceResult(
                standard="LEED",
                criterion="distance to window",
                verdict="pass" if d <= limit else "fail",
                citation=f"within 3 times the window head height ({limit:.2f} m here)",
            )
        )
    return tuple(results)


def breeam_wwr_requirement(distance_from_window_m: float) -> float:
    """Required window-to-wall ratio for a space, by its depth from the
    window wall: 20% up to 8 m, then 25%, 30% at 11 to 14 m, 35% beyond."""
    d = distance_from_window_m
    if not d >= 0.0:
        raise DomainError(f"distance must be >= 0, got {d}")
    if d < 8.0:
        return 0.20
    if d < 11.0:
        return 0.25
    if d <= 14.0:
        return 0.30
    return 0.35


# ---------------------------------------------------------------------------
# Internal courtyard / atrium alternatives

GREENERY_TAGS = frozenset({"greenery", "plants", "plant-containers", "green-wall", "trees", "water"})


@dataclass(frozen=True)
class AtriumSpec:
    """An internal courtyard or atrium offered as the view target.

    visual_features are free tags; greenery-type tags (see GREENERY_TAGS)
    satisfy checks that ask for green features.
    """

    kind: str  # "courtyard" or "atrium"
    width_m: float
    depth_m: float | None = None
    content_distance_m: float = 0.0
    visual_features: tuple[str, ...] = ()
    exterior_view_from_all_primary_spaces: bool = False

    def __post_init__(self):
        if self.kind not in ("courtyard", "atrium"):
            raise DomainError(f"kind must be 'courtyard' or 'atrium', got {self.kind!r}")
        if not self.width_m > 0.0:
            raise DomainError(f"width must be positive, got {self.width_m}")
        if self.depth_m is not None and not self.depth_m > 0.0:
            raise DomainError(f"depth must be positive, got {self.depth_m}")
        if self.content_distance_m < 0.0:
            raise DomainError(f"content distance must be >= 0, got {self.content_distance_m}")
        object.__setattr__(self, "visual_features", tuple(self.visual_features))


def alternative_access_check(atrium: AtriumSpec, standard: str) -> ComplianceResult:
    """Whether an internal courtyard or atrium counts as an adequate view.

    Recognised standards: "breeam" (and national variants), "green-star",
    "green-star-nz", "green-globes".
    """
    key = standard.strip().lower().replace(" ", "-").replace("_", "-")
    has_greenery = any(tag.lower() in GREENERY_TAGS for tag in atrium.visual_features)
    if key in ("breeam", "breeam-nor", "breeam-nl"):
        ok = atrium.content_distance_m >= 10.0 and has_greenery
        return ComplianceResult(
            standard="BREEAM",
            criterion="internal courtyard or atrium view",
            verdict="pass" if ok else "fail",
            citation="court content at least 10 m away with greenery-type visual features",
        )
    if key == "green-star":
        ok = atrium.width_m >= 8.0 and atrium.depth_m is not None and atrium.depth_m >= 8.0
        return ComplianceResult(
            standard="Green Star",
            criterion="atrium dimensions",
            verdict="pass" if ok else "fail",
            citation="atrium at least 8 m wide and 8 m deep",
        )
    if key == "green-star-nz":
        ok = atrium.width_m >= 8.0
        return ComplianceResult(
            standard="Green Star NZ",
            criterion="atrium width",
            verdict="pass" if ok else "fail",
            citation="atrium at least 8 m wide",
        )
    if key == "green-globes":
        ok = atrium.exterior_view_from_all_primary_spaces
        return ComplianceResult(
            standard="Green Globes",
            criterion="exterior view from primary spaces",
            verdict="pass" if ok else "fail",
            citation="an exterior view from all regularly occupied primary spaces",
        )
    raise DomainError(f"unknown standard for alternative access: {standard!r}")


# ---------------------------------------------------------------------------
# Credits for the share of floor area with a view

# certification id -> ordered (threshold percent, credits at or above it)
SPATIAL_CREDIT_TABLE: dict[str, tuple[tuple[float, int], ...]] = {
    "berde": ((50.0, 1), (75.0, 2)),
    "breeam-uk": ((95.0, 1),),
    "breeam-international": ((80.0, 1), (95.0, 2)),
    "gbi": ((60.0, 1), (75.0, 2)),
    "greenship": ((75.0, 1),),
    "green-star-nz": ((60.0, 1), (90.0, 2)),
    "hqe": ((30.0, 1), (50.0, 2), (75.0, 3)),
    "igbc-option-1": ((75.0, 1),),
    "igbc-option-2": ((95.0, 1),),
    "leed-canada": ((90.0, 1),),
    "leed-india": ((90.0, 1),),
    "leed-v4.1": ((75.0, 1),),
    "pearl": ((75.0, 1),),
    "well-v2-pilot": ((50.0, 1),),
    "well-v2": ((75.0, 1),),
}

_CREDIT_DISPLAY = {
    "berde": "BERDE",
    "breeam-uk": "BREEAM UK",
    "breeam-international": "BREEAM International",
    "gbi": "GBI",
    "greenship": "GreenShip",
    "green-star-nz": "Green Star NZ",
    "hqe": "HQE",
    "igbc-option-1": "IGBC (option 1)",
    "igbc-option-2": "IGBC (option 2)",
    "leed-canada": "LEED Canada",
    "leed-india": "LEED India",
    "leed-v4.1": "LEED v4.1",
    "pearl": "Pearl",
    "well-v2-pilot": "WELL v2 pilot",
    "well-v2": "WELL v2",
}


def spatial_credit(fraction_with_view: float, certification: str) -> ComplianceResult:
    """Credits awarded for the fraction of floor area that has a view.

    fraction_with_view is a fraction in [0, 1]; thresholds are quoted in
    percent. The verdict is the credit count as a string.
    """
    if not 0.0 <= fraction_with_view <= 1.0:
        raise DomainError(f"fraction must be in [0, 1], got {fraction_with_view}")
    key = certification.strip().lower().replace(" ", "-").replace("_", "-")
    if key not in SPATIAL_CREDIT_TABLE:
        raise DomainError(f"unknown certification for spatial credits: {certification!r}")
    percent = fraction_with_view * 100.0
    credits = 0
    reached = None
    for threshold, credit in SPATIAL_CREDIT_TABLE[key]:
        if percent >= threshold:
            credits = credit
            reached = threshold
    thresholds_text = ", ".join(f"{int(t)}% -> {c}" for t, c in SPATIAL_CREDIT_TABLE[key])
    if reached is None:
        citation = f"below the lowest threshold ({thresholds_text})"
    else:
        citation = f"reached {int(reached)}% ({thresholds_text})"
    return ComplianceResult(
        standard=_CREDIT_DISPLAY[key],
        criterion="floor area with a view",
        verdict=str(credits),
        citation=citation,
    )
