"""How clearly the view comes through glazing, shading and framing.

A deployed fabric shade blurs the view; its clarity rating is an empirical
function of the fabric's openness factor and visible transmittance, fitted on
view-through experiments.  Instantaneous clarity mixes the shaded and
unshaded parts of the glazing by deployed fraction, and the clarity score
rescales it between a floor and a saturation value.  Mullion coverage is
reported separately as an obstruction diagnostic, not folded into clarity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ShadeMaterial:
    """A shading fabric, described by its optics.

    openness_factor and visible_transmittance are fractions in [0, 1]; the
    openness factor (the weave's open-area share) can never exceed the total
    visible transmittance.
    """

    openness_factor: float
    visible_transmittance: float
    name: str = ""

    def __post_init__(self):
        of, tv = self.openness_factor, self.visible_transmittance
        if not 0.0 <= of <= 1.0:
            raise DomainError(f"openness factor must be in [0, 1], got {of}")
        if not 0.0 < tv <= 1.0:
            raise DomainError(f"visible transmittance must be in (0, 1], got {tv}")
        if of > tv:
            raise DomainError(f"openness factor {of} exceeds visible transmittance {tv}")


def view_clarity_index(material: ShadeMaterial) -> float:
    """Empirical view-through clarity of a fabric, clamped to [0, 1].

    Raw value: 1.43 * OF^0.48 + 0.64 * (OF/Tv)^1.1 - 0.22.
    """
    of = material.openness_factor
    tv = material.visible_transmittance
    if tv <= 0.0:
        if of > 0.0:
            raise DomainError("visible transmittance 0 with a positive openness factor is undefined")
        return 0.0
    raw = 1.43 * of**0.48 + 0.64 * (of / tv) ** 1.1 - 0.22
    return min(1.0, max(0.0, raw))


def instantaneous_clarity(deployed_fraction: float, material: ShadeMaterial) -> float:
    """Clarity of a window with a shade partly drawn: the unshaded share plus
    the shaded share seen at the fabric's clarity."""
    if not 0.0 <= deployed_fraction <= 1.0:
        raise DomainError(f"deployed fraction must be in [0, 1], got {deployed_fraction}")
    return (1.0 - deployed_fraction) + deployed_fraction * view_clarity_index(material)


@dataclass(frozen=True)
class ClarityThresholds:
    """Clarity values between which the score ramps from 0.5 to 1.

    The defaults are provisional placeholders, not validated limits; reports
    flag them whenever they are used.
    """

    beta_min: float = 0.5
    beta_saturation: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.beta_min < self.beta_saturation <= 1.0:
            raise DomainError(
                f"need 0 < beta_min < beta_saturation <= 1, got "
                f"{self.beta_min} and {self.beta_saturation}"
            )


DEFAULT_CLARITY_THRESHOLDS = ClarityThresholds()


def v_clarity(beta: float, thresholds: ClarityThresholds = DEFAULT_CLARITY_THRESHOLDS) -> float:
    """Clarity score: 0 below the floor, 0.5 at it, ramping linearly to 1 at
    saturation."""
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"clarity must be in [0, 1], got {beta}")
    if beta < thresholds.beta_min:
        return 0.0
    if beta == thresholds.beta_min:
        return 0.5
    if beta >= thresholds.beta_saturation:
        return 1.0
    return 0.5 + 0.5 * (beta - thresholds.beta_min) / (thresholds.beta_saturation - thresholds.beta_min)


@dataclass(frozen=True)
class MullionBar:
    """One frame bar across the glazing. position is the bar centreline as a
    fraction of the window dimension it crosses; thickness is in metres."""

    position: float
    thickness_m: float

    def __post_init__(self):
        if not 0.0 <= self.position <= 1.0:
            raise DomainError(f"bar position must be a fraction in [0, 1], got {self.position}")
        if self.thickness_m < 0.0:
            raise DomainError(f"bar thickness must be >= 0, got {self.thickness_m}")


@dataclass(frozen=True)
class MullionLayout:
    """Frame bars over one window: horizontal bars cross the height, vertical
    bars cross the width."""

    window_width_m: float
    window_height_m: float
    horizontal: tuple[MullionBar, ...] = ()
    vertical: tuple[MullionBar, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "horizontal", tuple(self.horizontal))
        object.__setattr__(self, "vertical", tuple(self.vertical))
        if not (self.window_width_m > 0.0 and self.window_height_m > 0.0):
            raise DomainError("window dimensions must be positive")


@dataclass(frozen=True)
class BoundaryConflict:
    """A horizontal bar sitting on a layer boundary, where it hides the
    transition the view is scored on."""

    bar_index: int
    boundary: str
    boundary_fraction: float
    distance_fraction: float


@dataclass(frozen=True)
class MullionReport:
    occluded_fraction: float
    conflicts: tuple[BoundaryConflict, ...] = ()


def _merged_strip_length(bars: tuple[MullionBar, ...], extent_m: float) -> float:
    """Total covered length after clipping each bar to the window and merging
    overlaps."""
    intervals = []
    for bar in bars:
        center = bar.position * extent_m
        lo = max(0.0, center - bar.thickness_m / 2.0)
        hi = min(extent_m, center + bar.thickness_m / 2.0)
        if hi > lo:
            intervals.append((lo, hi))
    intervals.sort()
    total = 0.0
    cur_lo, cur_hi = None, None
    for lo, hi in intervals:
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def mullion_obstruction(
    layout: MullionLayout,
    layer_boundaries: dict[str, float] | None = None,
    boundary_tolerance: float = 0.02,
) -> MullionReport:
    """Glazing fraction hidden by frame bars, with layer-boundary conflicts.

    Crossing bars are counted once: the union area is W*y + H*x - x*y where x
    and y are the merged covered lengths across width and height.  A conflict
    is reported for each horizontal bar whose centreline sits within
    ``boundary_tolerance`` (as a height fraction) of a declared layer
    boundary.
    """
    w, h = layout.window_width_m, layout.window_height_m
    covered_y = _merged_strip_length(layout.horizontal, h)
    covered_x = _merged_strip_length(layout.vertical, w)
    area = w * covered_y + h * covered_x - covered_x * covered_y
    fraction = area / (w * h)

    conflicts = []
    for name, boundary in sorted((layer_boundaries or {}).items()):
        if not 0.0 <= boundary <= 1.0:
            raise DomainError(f"layer boundary {name!r} must be a fraction in [0, 1], got {boundary}")
        for i, bar in enumerate(layout.horizontal):
            distance = abs(bar.position - boundary)
            if distance <= boundary_tolerance:
                conflicts.append(
                    BoundaryConflict(
                        bar_index=i,
                        boundary=name,
                        boundary_fraction=boundary,
                        distance_fraction=distance,
                    )
                )
    return MullionReport(occluded_fraction=fraction, conflicts=tuple(conflicts))


@dataclass(frozen=True)
class ScheduleStep:
    timestamp: str
    occupied: bool
    deployed_fraction: float
    material: ShadeMaterial

    def __post_init__(self):
        if not 0.0 <= self.deployed_fraction <= 1.0:
            raise DomainError(
                f"deployed fraction must be in [0, 1], got {self.deployed_fraction} at {self.timestamp}"
            )


@dataclass(frozen=True)
class ShadeSchedule:
    """Shade state over time. Each step carries its own material so switching
    states (e.g. electrochromic glazing) stay expressible."""

    steps: tuple[ScheduleStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class SeriesPoint:
    timestamp: str
    occupied: bool
    beta: float
    v_clarity: float


@dataclass(frozen=True)
class TemporalClarity:
    """Clarity metrics over the occupied timesteps of a schedule."""

    fraction_above_min: float
    mean_v_clarity: float
    series: tuple[SeriesPoint, ...]
    occupied_steps: int


def temporal_clarity(
    schedule: ShadeSchedule,
    thresholds: ClarityThresholds = DEFAULT_CLARITY_THRESHOLDS,
) -> TemporalClarity:
    """Aggregate clarity over a shade schedule.

    Metrics cover occupied steps only; the exported series covers every step.

    Raises:
        DomainError: the schedule has no occupied steps to aggregate.
    """
    series = []
    occupied_betas = []
    occupied_scores = []
    for step in schedule.steps:
        beta = instantaneous_clarity(step.deployed_fraction, step.material)
        score = v_clarity(beta, thresholds)
        series.append(SeriesPoint(timestamp=step.timestamp, occupied=step.occupied, beta=beta, v_clarity=score))
        if step.occupied:
            occupied_betas.append(beta)
            occupied_scores.append(score)
    if not occupied_betas:
        raise DomainError("schedule has no occupied steps")
    above = sum(1 for b in occupied_betas if b >= thresholds.beta_min)
    return TemporalClarity(
        fraction_above_min=above / len(occupied_betas),
        mean_v_clarity=sum(occupied_scores) / len(occupied_scores),
        series=tuple(series),
        occupied_steps=len(occupied_betas),
    )
