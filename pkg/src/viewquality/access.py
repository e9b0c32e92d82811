"""How much view a window affords from a given position.

The size of the view is measured as the angle the window subtends at the eye:
horizontally between the two jambs, vertically between sill and head within
the vertical plane through the eye and the window centre.  The access score
rescales that angle between a content-dependent minimum and saturation angle.
Floor-plan operations classify every grid cell of a room by whether it has an
unobstructed sight line to a window.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geometry
from .content import Layer, SceneDescription
from .errors import ConfigurationRequiredError, DegenerateGeometryError, DomainError

DEFAULT_EYE_HEIGHT_M = 1.2  # seated occupant

_ORTHO_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WindowRect:
    """An upright rectangular window in a wall plane.

    origin is a point on the wall base line; the glazing spans ``width``
    metres along the unit axis ``u`` and from ``sill_height`` to
    ``head_height`` along the unit axis ``v``.  ``normal`` points outward.
    """

    origin: np.ndarray
    u: np.ndarray
    v: np.ndarray
    width: float
    sill_height: float
    head_height: float
    normal: np.ndarray

    def __post_init__(self):
        for name in ("origin", "u", "v", "normal"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not self.width > 0.0:
            raise DomainError(f"window width must be positive, got {self.width}")
        if not 0.0 <= self.sill_height < self.head_height:
            raise DomainError(
                f"need 0 <= sill < head, got sill={self.sill_height}, head={self.head_height}"
            )
        for name, vec in (("u", self.u), ("v", self.v), ("normal", self.normal)):
            if abs(np.linalg.norm(vec) - 1.0) > _ORTHO_TOL:
                raise DomainError(f"{name} must be a unit vector")
        for a, b in (("u", "v"), ("u", "normal"), ("v", "normal")):
            if abs(float(np.dot(getattr(self, a), getattr(self, b)))) > _ORTHO_TOL:
                raise DomainError(f"{a} and {b} must be orthogonal")

    @classmethod
    def on_wall(cls, start, end, sill_height: float, head_height: float) -> "WindowRect":
        """Window on a vertical wall from 2D point start to end.

        The outward normal is to the right of the start->end direction, so
        windows listed along a counter-clockwise room boundary face out.
        """
        sx, sy = float(start[0]), float(start[1])
        ex, ey = float(end[0]), float(end[1])
        length = math.hypot(ex - sx, ey - sy)
        if length <= 0.0:
            raise DomainError("wall segment has zero length")
        ux, uy = (ex - sx) / length, (ey - sy) / length
        return cls(
            origin=np.array([sx, sy, 0.0]),
            u=np.array([ux, uy, 0.0]),
            v=np.array([0.0, 0.0, 1.0]),
            width=length,
            sill_height=float(sill_height),
            head_height=float(head_height),
            normal=np.array([uy, -ux, 0.0]),
        )

    @property
    def center(self) -> np.ndarray:
        return self.origin + (self.width / 2.0) * self.u + ((self.sill_height + self.head_height) / 2.0) * self.v

    @property
    def corners(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Ring order: sill-start, sill-end, head-end, head-start."""
        o, u, v = self.origin, self.u, self.v
        a = o + self.sill_height * v
        b = o + self.width * u + self.sill_height * v
        c = o + self.width * u + self.head_height * v
        d = o + self.head_height * v
        return a, b, c, d

    @property
    def base_segment_2d(self) -> tuple[geometry.Point2, geometry.Point2]:
        p = (float(self.origin[0]), float(self.origin[1]))
        q = (float(self.origin[0] + self.width * self.u[0]), float(self.origin[1] + self.width * self.u[1]))
        return p, q

    @property
    def midpoint_2d(self) -> geometry.Point2:
        c = self.center
        return (float(c[0]), float(c[1]))


@dataclass(frozen=True)
class Observer:
    """A viewing position on the floor plan."""

    position: geometry.Point2
    eye_height_m: float = DEFAULT_EYE_HEIGHT_M

    def __post_init__(self):
        if not self.eye_height_m > 0.0:
            raise DomainError(f"eye height must be positive, got {self.eye_height_m}")

    @property
    def eye_point(self) -> np.ndarray:
        return np.array([self.position[0], self.position[1], self.eye_height_m], dtype=float)


@dataclass(frozen=True)
class ViewAngles:
    horizontal_deg: float
    vertical_deg: float
    solid_angle_sr: float | None = None

    @property
    def smaller_deg(self) -> float:
        return min(self.horizontal_deg, self.vertical_deg)

    def on_basis(self, basis: "AngleBasis") -> float:
        if basis is AngleBasis.HORIZONTAL:
            return self.horizontal_deg
        if basis is AngleBasis.VERTICAL:
            return self.vertical_deg
        return self.smaller_deg


class AngleBasis(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    SMALLER = "smaller"


class ContentClass(enum.Enum):
    """What kind of content the window shows, for threshold selection."""

    SKY_OR_GROUND_ONLY = "sky_or_ground_only"
    LANDSCAPE_NO_NATURE = "landscape_no_nature"
    LANDSCAPE_WITH_NATURE = "landscape_with_nature"
    LANDSCAPE_WITH_SKY_OR_GROUND = "landscape_with_sky_or_ground"


@dataclass(frozen=True)
class AccessThresholds:
    """Angles between which the access score ramps from 0.5 to 1.

    ``alpha_saturation_deg`` may be None when no saturation angle is
    established for the content class; scoring then requires an explicit
    override.
    """

    alpha_min_deg: float
    alpha_saturation_deg: float | None
    basis: AngleBasis

    def __post_init__(self):
        if not 0.0 < self.alpha_min_deg <= 180.0:
            raise DomainError(f"alpha_min must be in (0, 180], got {self.alpha_min_deg}")
        if self.alpha_saturation_deg is not None:
            if not self.alpha_min_deg < self.alpha_saturation_deg <= 180.0:
                raise DomainError(
                    f"need alpha_min < alpha_saturation <= 180, got "
                    f"{self.alpha_min_deg} and {self.alpha_saturation_deg}"
                )


_THRESHOLD_TABLE = {
    ContentClass.SKY_OR_GROUND_ONLY: (30.0, None, AngleBasis.VERTICAL),
    ContentClass.LANDSCAPE_NO_NATURE: (11.0, 90.0, AngleBasis.SMALLER),
    ContentClass.LANDSCAPE_WITH_NATURE: (9.0, 50.0, AngleBasis.SMALLER),
    ContentClass.LANDSCAPE_WITH_SKY_OR_GROUND: (14.0, 54.0, AngleBasis.HORIZONTAL),
}


def thresholds_for_content(content_class: ContentClass) -> AccessThresholds:
    """Published minimum/saturation angles for a content class.

    The sky-or-ground-only class has a minimum angle but no established
    saturation angle; its thresholds come back with saturation None and
    scoring raises until a saturation override is configured.
    """
    alpha_min, alpha_sat, basis = _THRESHOLD_TABLE[content_class]
    return AccessThresholds(alpha_min, alpha_sat, basis)


def content_class_for_scene(scene: SceneDescription) -> ContentClass:
    """Pick the threshold class a scene falls under.

    Landscape with any visible nature takes the nature thresholds even when
    sky or ground are also present; bare landscape plus another layer takes
    the combined-layer thresholds.
    """
    if Layer.LANDSCAPE not in scene.layers_present:
        return ContentClass.SKY_OR_GROUND_ONLY
    if scene.nature_fraction > 0.0:
        return ContentClass.LANDSCAPE_WITH_NATURE
    if Layer.SKY in scene.layers_present or Layer.GROUND in scene.layers_present:
        return ContentClass.LANDSCAPE_WITH_SKY_OR_GROUND
    return ContentClass.LANDSCAPE_NO_NATURE


def view_angles(observer: Observer, window: WindowRect) -> ViewAngles:
    """Angles the window subtends at the observer's eye.

    Raises:
        DegenerateGeometryError: the eye lies exactly in the window plane, or
            exactly on the vertical line through the window centre.
    """
    eye = observer.eye_point
    if abs(float(np.dot(eye - window.origin, window.normal))) <= geometry.EPS:
        raise DegenerateGeometryError("observer lies in the window plane")

    mid_h = (window.sill_height + window.head_height) / 2.0
    m0 = window.origin + mid_h * window.v
    m1 = m0 + window.width * window.u
    exy = (float(eye[0]), float(eye[1]))
    horizontal = geometry.angle_between_2d_deg(exy, (float(m0[0]), float(m0[1])), (float(m1[0]), float(m1[1])))

    center = window.center
    cdir_xy = np.array([center[0] - eye[0], center[1] - eye[1]])
    if float(np.hypot(cdir_xy[0], cdir_xy[1])) <= geometry.EPS:
        raise DegenerateGeometryError("observer lies on the vertical through the window centre")
    # vertical plane through eye and centre; intersect sill and head edges with it
    plane_n = np.array([cdir_xy[1], -cdir_xy[0], 0.0])
    plane_n /= np.linalg.norm(plane_n)
    du = float(np.dot(window.u, plane_n))
    pts = []
    for h in (window.sill_height, window.head_height):
        edge0 = window.origin + h * window.v
        if abs(du) <= geometry.EPS:
            lam = window.width / 2.0  # edge parallel to the sight plane
        else:
            lam = -float(np.dot(edge0 - eye, plane_n)) / du
            lam = min(window.width, max(0.0, lam))
        pts.append(edge0 + lam * window.u)
    s, h = pts[0] - eye, pts[1] - eye
    vertical = math.degrees(math.atan2(float(np.linalg.norm(np.cross(s, h))), float(np.dot(s, h))))

    solid = geometry.rectangle_solid_angle_sr(eye, window.corners)
    return ViewAngles(horizontal_deg=horizontal, vertical_deg=vertical, solid_angle_sr=solid)


def v_access(alpha_view_deg: float, thresholds: AccessThresholds) -> float:
    """Access score of a view angle: 0 below the minimum, 0.5 at it, ramping
    linearly to 1 at saturation."""
    if thresholds.alpha_saturation_deg is None:
        raise ConfigurationRequiredError(
            "no saturation angle is established for this content class; configure one explicitly"
        )
    if not (math.isfinite(alpha_view_deg) and alpha_view_deg >= 0.0):
        raise DomainError(f"view angle must be finite and >= 0, got {alpha_view_deg}")
    alpha_min = thresholds.alpha_min_deg
    alpha_sat = thresholds.alpha_saturation_deg
    if alpha_view_deg < alpha_min:
        return 0.0
    if alpha_view_deg == alpha_min:
        return 0.5
    if alpha_view_deg >= alpha_sat:
        return 1.0
    return 0.5 + 0.5 * (alpha_view_deg - alpha_min) / (alpha_sat - alpha_min)


# (upper bound exclusive except the last row; nature bumps marked rows by one)
_VIEW_FACTOR_BANDS = (
    (4.0, 1, 1),
    (9.0, 1, 2),
    (11.0, 2, 3),
    (15.0, 3, 3),
    (20.0, 3, 4),
    (40.0, 4, 4),
    (50.0, 4, 5),
    (90.0, 5, 5),
)


def view_factor(smaller_angle_deg: float, nature_in_view: bool = False) -> int:
    """Ordinal 1..5 rating of a view angle, with a one-step bump for nature
    in some bands."""
    if not 0.0 < smaller_angle_deg <= 90.0:
        raise DomainError(f"view factor is defined for angles in (0, 90], got {smaller_angle_deg}")
    for upper, plain, natured in _VIEW_FACTOR_BANDS:
        if smaller_angle_deg < upper or upper == 90.0:
            return natured if nature_in_view else plain
    raise AssertionError("unreachable")


@dataclass(frozen=True, eq=False)
class FloorPlan:
    """A room (or storey) in plan: boundary, obstructions and windows.

    Obstruction polygons are opaque at eye height.  Sight lines must stay
    inside the boundary, so non-convex room shapes self-occlude.
    """

    boundary: tuple[geometry.Point2, ...]
    windows: dict[str, WindowRect]
    obstructions: tuple[tuple[geometry.Point2, ...], ...] = ()
    grid_spacing_m: float = 0.5
    occupied_region: tuple[geometry.Point2, ...] | None = None
    eye_height_m: float = DEFAULT_EYE_HEIGHT_M

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple((float(x), float(y)) for x, y in self.boundary))
        object.__setattr__(
            self,
            "obstructions",
            tuple(tuple((float(x), float(y)) for x, y in poly) for poly in self.obstructions),
        )
        if self.occupied_region is not None:
            object.__setattr__(
                self, "occupied_region", tuple((float(x), float(y)) for x, y in self.occupied_region)
            )
        if len(self.boundary) < 3 or abs(geometry.polygon_area(self.boundary)) <= 0.0:
            raise DomainError("boundary must be a polygon with nonzero area")
        if not self.grid_spacing_m > 0.0:
            raise DomainError(f"grid spacing must be positive, got {self.grid_spacing_m}")
        if not self.eye_height_m > 0.0:
            raise DomainError(f"eye height must be positive, got {self.eye_height_m}")
        for i, poly in enumerate(self.obstructions):
            if len(poly) < 3:
                raise DomainError(f"obstruction {i} must have at least 3 vertices")
            for p in poly:
                if not geometry.point_in_polygon(p, self.boundary):
                    raise DomainError(f"obstruction {i} reaches outside the boundary")
        if not self.windows:
            raise DomainError("a floor plan needs at least one window")


def has_line_of_sight(point, window: WindowRect, obstructions, boundary=None) -> bool:
    """True iff the sight line from the plan point to the window midpoint
    crosses no obstruction interior (and stays inside the boundary, if given)."""
    p = (float(point[0]), float(point[1]))
    q = window.midpoint_2d
    for poly in obstructions:
        if geometry.segment_crosses_polygon_interior(p, q, poly):
            return False
    if boundary is not None and geometry.segment_leaves_polygon(p, q, boundary):
        return False
    return True


def _window_line_point(window: WindowRect, t: float) -> geometry.Point2:
    (x0, y0), (x1, y1) = window.base_segment_2d
    return (x0 + t * (x1 - x0), y0 + t * (y1 - y0))


def _candidate_ts(point, window: WindowRect, polys) -> list[float]:
    # shadow boundaries appear at vertex projections and window-line crossings
    (w0x, w0y), (w1x, w1y) = window.base_segment_2d
    dx, dy = w1x - w0x, w1y - w0y
    px, py = point
    ts = {0.0, 0.5, 1.0}
    for poly in polys:
        n = len(poly)
        for i in range(n):
            vx, vy = poly[i]
            rx, ry = vx - px, vy - py
            denom = rx * dy - ry * dx
            if abs(denom) > geometry.EPS:
                # P + s*(V-P) = W0 + t*D
                t = ((w0y - py) * rx - (w0x - px) * ry) / -denom
                s = ((w0x - px) * dy - (w0y - py) * dx) / denom
                if s > geometry.EPS and 0.0 < t < 1.0:
                    ts.add(t)
            for t in geometry._seg_seg_params((w0x, w0y), (w1x, w1y), poly[i], poly[(i + 1) % n]):
                if 0.0 < t < 1.0:
                    ts.add(t)
    return sorted(ts)


def visible_spans(point, window: WindowRect, obstructions, boundary=None) -> list[tuple[float, float]]:
    """Unoccluded stretches of the window, as parameter intervals along its width."""
    p = (float(point[0]), float(point[1]))
    polys = list(obstructions) + ([boundary] if boundary is not None else [])
    ts = _candidate_ts(p, window, polys)
    spans: list[tuple[float, float]] = []
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= geometry.EPS:
            continue
        probe = _window_line_point(window, 0.5 * (t0 + t1))
        clear = all(not geometry.segment_crosses_polygon_interior(p, probe, poly) for poly in obstructions)
        if clear and boundary is not None:
            clear = not geometry.segment_leaves_polygon(p, probe, boundary)
        if clear:
            if spans and abs(spans[-1][1] - t0) <= geometry.EPS:
                spans[-1] = (spans[-1][0], t1)
            else:
                spans.append((t0, t1))
    return spans


def _realized_angle(point, window, spans, basis: AngleBasis, vertical_deg: float) -> float:
    """Angle the visible stretch around the window midpoint subtends, on the basis."""
    mid_span = next((s for s in spans if s[0] <= 0.5 <= s[1]), None)
    if mid_span is None:
        return 0.0
    if basis is AngleBasis.VERTICAL:
        return vertical_deg
    horizontal = geometry.angle_between_2d_deg(
        point, _window_line_point(window, mid_span[0]), _window_line_point(window, mid_span[1])
    )
    if basis is AngleBasis.HORIZONTAL:
        return horizontal
    return min(horizontal, vertical_deg)


@dataclass(frozen=True)
class GridCell:
    x: float
    y: float
    sees_window: bool
    best_angle_deg: float
    qualified: bool


@dataclass(frozen=True)
class SpatialAssessment:
    """Per-cell visibility over a floor plan and the qualifying fraction."""

    fraction: float
    cells: tuple[GridCell, ...]
    grid_spacing_m: float
    qualifier: AccessThresholds | None = None

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def qualifying_count(self) -> int:
        if self.qualifier is None:
            return sum(1 for c in self.cells if c.sees_window)
        return sum(1 for c in self.cells if c.qualified)


def _grid_centers(plan: FloorPlan) -> list[geometry.Point2]:
    region = plan.occupied_region if plan.occupied_region is not None else plan.boundary
    xs = [p[0] for p in region]
    ys = [p[1] for p in region]
    s = plan.grid_spacing_m
    centers = []
    ny = int(math.ceil((max(ys) - min(ys)) / s))
    nx = int(math.ceil((max(xs) - min(xs)) / s))
    for j in range(ny):
        cy = min(ys) + (j + 0.5) * s
        for i in range(nx):
            cx = min(xs) + (i + 0.5) * s
            c = (cx, cy)
            if not geometry.point_in_polygon(c, region):
                continue
            if not geometry.point_in_polygon(c, plan.boundary):
                continue
            # cells buried in an obstruction footprint are not places to sit
            if any(geometry.point_strictly_in_polygon(c, poly) for poly in plan.obstructions):
                continue
            centers.append(c)
    return centers


def _assess_cell(plan: FloorPlan, qualifier: AccessThresholds | None, c: geometry.Point2) -> GridCell:
    basis = qualifier.basis if qualifier is not None else AngleBasis.HORIZONTAL
    best = 0.0
    sees = False
    for name in sorted(plan.windows):
        window = plan.windows[name]
        if not has_line_of_sight(c, window, plan.obstructions, plan.boundary):
            continue
        sees = True
        spans = visible_spans(c, window, plan.obstructions, plan.boundary)
        vertical = 0.0
        if basis in (AngleBasis.VERTICAL, AngleBasis.SMALLER):
            vertical = view_angles(Observer(c, plan.eye_height_m), window).vertical_deg
        best = max(best, _realized_angle(c, window, spans, basis, vertical))
    qualified = sees and (qualifier is None or best >= qualifier.alpha_min_deg)
    return GridCell(x=c[0], y=c[1], sees_window=sees, best_angle_deg=best, qualified=qualified)


def spatial_assessment(
    plan: FloorPlan,
    qualifier: AccessThresholds | None = None,
    workers: int = 1,
) -> SpatialAssessment:
    """Classify every grid cell of the plan by window visibility.

    The fraction counts cells with a sight line to at least one window; with a
    qualifier, the best visible window must also subtend the qualifier's
    minimum angle.  Cells are evaluated independently, so ``workers`` only
    changes wall time, never the result.
    """
    centers = _grid_centers(plan)
    if not centers:
        raise DomainError("the occupied region contains no grid cells")
    if workers <= 1:
        cells = [_assess_cell(plan, qualifier, c) for c in centers]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda c: _assess_cell(plan, qualifier, c), centers))
    count = sum(1 for cell in cells if (cell.qualified if qualifier is not None else cell.sees_window))
    return SpatialAssessment(
        fraction=count / len(cells),
        cells=tuple(cells),
        grid_spacing_m=plan.grid_spacing_m,
        qualifier=qualifier,
    )


def multi_direction_access(point, plan: FloorPlan, min_separation_deg: float = 90.0) -> bool:
    """True iff the point sees two windows in directions at least
    ``min_separation_deg`` apart."""
    p = (float(point[0]), float(point[1]))
    bearings = []
    for name in sorted(plan.windows):
        window = plan.windows[name]
        if has_line_of_sight(p, window, plan.obstructions, plan.boundary):
            bearings.append(geometry.bearing_deg(p, window.midpoint_2d))
    for i in range(len(bearings)):
        for j in range(i + 1, len(bearings)):
            if geometry.bearing_separation_deg(bearings[i], bearings[j]) >= min_separation_deg:
                return True
    return False
