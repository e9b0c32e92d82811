"""Project files: one self-contained JSON document per evaluation unit.

Parsing validates everything and reports every problem found in one go, each
with a dotted field locator.  Ratio-valued fields (optics, fractions) accept
either a number in [0, 1] or a percent string like "5%"; both normalize to
the same project, so writing a parsed project back out and re-reading it is
lossless.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field

from .access import AccessThresholds, AngleBasis, FloorPlan, Observer, WindowRect
from .clarity import (
    ClarityThresholds,
    DEFAULT_CLARITY_THRESHOLDS,
    MullionBar,
    MullionLayout,
    ScheduleStep,
    ShadeMaterial,
    ShadeSchedule,
)
from .content import Layer, Movement, SceneDescription
from .errors import DomainError, ProjectValidationError

SCHEMA_VERSION = 1

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")
_PERCENT_RE = re.compile(r"^\s*([-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)\s*%\s*$")


@dataclass(frozen=True)
class Project:
    """A parsed, fully validated project."""

    schema_version: int
    scenes: dict[str, SceneDescription]
    materials: dict[str, ShadeMaterial]
    plan: FloorPlan | None
    window_scene: dict[str, str]
    window_shade: dict[str, tuple[str, float]]
    observers: dict[str, Observer]
    mullions: dict[str, tuple[MullionLayout, dict[str, float], float]]
    schedules: dict[str, ShadeSchedule]
    access_override: AccessThresholds | None
    sky_or_ground_saturation_deg: float | None
    clarity_thresholds: ClarityThresholds
    clarity_thresholds_defaulted: bool
    weights: tuple[float, float, float]
    weights_defaulted: bool
    input_sha256: str
    canonical: dict = field(repr=False)


class _Collector:
    def __init__(self):
        self.problems: list[str] = []

    def add(self, locator: str, message: str):
        self.problems.append(f"{locator}: {message}")

    def raise_if_any(self):
        if self.problems:
            raise ProjectValidationError(sorted(self.problems))


def _ratio(value, locator: str, errs: _Collector) -> float | None:
    """A fraction in [0, 1], given as a number or a percent string."""
    if isinstance(value, str):
        m = _PERCENT_RE.match(value)
        if not m:
            errs.add(locator, f"expected a number in [0, 1] or a percent string, got {value!r}")
            return None
        value = float(m.group(1)) / 100.0
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        errs.add(locator, f"expected a number in [0, 1] or a percent string, got {value!r}")
        return None
    if not 0.0 <= value <= 1.0:
        errs.add(locator, f"ratio out of range [0, 1]: {value}")
        return None
    return float(value)


def _number(value, locator: str, errs: _Collector, minimum=None, positive=False) -> float | None:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        errs.add(locator, f"expected a finite number, got {value!r}")
        return None
    v = float(value)
    if positive and not v > 0.0:
        errs.add(locator, f"must be positive, got {v}")
        return None
    if minimum is not None and v < minimum:
        errs.add(locator, f"must be >= {minimum}, got {v}")
        return None
    return v


def _obj(value, locator: str, errs: _Collector) -> dict | None:
    if not isinstance(value, dict):
        errs.add(locator, f"expected an object, got {type(value).__name__}")
        return None
    return value


def _named_section(doc: dict, key: str, errs: _Collector) -> dict:
    section = doc.get(key)
    if section is None:
        return {}
    if not isinstance(section, dict):
        errs.add(key, f"expected an object of named entries, got {type(section).__name__}")
        return {}
    out = {}
    for name, body in section.items():
        if not _NAME_RE.match(name):
            errs.add(f"{key}.{name}", "names must start alphanumeric and use only letters, digits, '_', '.', '-'")
            continue
        out[name] = body
    return out


def _points(value, locator: str, errs: _Collector, minimum=3) -> list[tuple[float, float]] | None:
    if not isinstance(value, list) or len(value) < minimum:
        errs.add(locator, f"expected a list of at least {minimum} [x, y] points")
        return None
    pts = []
    for i, p in enumerate(value):
        if (
            not isinstance(p, list)
            or len(p) != 2
            or any(not isinstance(c, (int, float)) or isinstance(c, bool) or not math.isfinite(c) for c in p)
        ):
            errs.add(f"{locator}[{i}]", f"expected [x, y] with finite numbers, got {p!r}")
            return None
        pts.append((float(p[0]), float(p[1])))
    return pts


_MOVEMENT_VALUES = {m.value: m for m in Movement}
_LAYER_VALUES = {l.value: l for l in Layer}
_BASIS_VALUES = {b.value: b for b in AngleBasis}


def _parse_scene(name: str, body, errs: _Collector) -> SceneDescription | None:
    loc = f"scenes.{name}"
    body = _obj(body, loc, errs)
    if body is None:
        return None
    layers = set()
    raw_layers = body.get("layers", [])
    if not isinstance(raw_layers, list):
        errs.add(f"{loc}.layers", "expected a list of layer names")
        return None
    for i, l in enumerate(raw_layers):
        if l not in _LAYER_VALUES:
            errs.add(f"{loc}.layers[{i}]", f"unknown layer {l!r}; expected one of {sorted(_LAYER_VALUES)}")
            return None
        layers.add(_LAYER_VALUES[l])
    nature = _ratio(body.get("nature_fraction", 0.0), f"{loc}.nature_fraction", errs)
    distance = _number(body.get("content_distance_m", 0.0), f"{loc}.content_distance_m", errs, minimum=0.0)
    natural = body.get("landscape_is_predominantly_natural", False)
    if not isinstance(natural, bool):
        errs.add(f"{loc}.landscape_is_predominantly_natural", f"expected true or false, got {natural!r}")
        return None
    movement_raw = body.get("movement", "none")
    movement = _MOVEMENT_VALUES.get(movement_raw)
    if movement is None:
        errs.add(f"{loc}.movement", f"unknown value {movement_raw!r}; expected one of {sorted(_MOVEMENT_VALUES)}")
        return None
    if nature is None or distance is None:
        return None
    try:
        return SceneDescription(
            layers_present=frozenset(layers),
            nature_fraction=nature,
            content_distance_m=distance,
            landscape_is_predominantly_natural=natural,
            movement=movement,
        )
    except DomainError as e:
        errs.add(loc, str(e))
        return None


def _parse_material(name: str, body, errs: _Collector) -> ShadeMaterial | None:
    loc = f"materials.{name}"
    body = _obj(body, loc, errs)
    if body is None:
        return None
    if "of" not in body or "tv" not in body:
        errs.add(loc, "materials need 'of' (openness factor) and 'tv' (visible transmittance)")
        return None
    of = _ratio(body["of"], f"{loc}.of", errs)
    tv = _ratio(body["tv"], f"{loc}.tv", errs)
    label = body.get("name", "")
    if not isinstance(label, str):
        errs.add(f"{loc}.name", f"expected a string, got {label!r}")
        return None
    if of is None or tv is None:
        return None
    try:
        return ShadeMaterial(openness_factor=of, visible_transmittance=tv, name=label)
    except DomainError as e:
        errs.add(loc, str(e))
        return None


def _parse_window(name: str, body, materials, scenes, errs: _Collector):
    loc = f"floor_plan.windows.{name}"
    body = _obj(body, loc, errs)
    if body is None:
        return None
    wall = _points(body.get("wall"), f"{loc}.wall", errs, minimum=2)
    if wall is not None and len(wall) != 2:
        errs.add(f"{loc}.wall", f"expected exactly two [x, y] points, got {len(wall)}")
        wall = None
    sill = _number(body.get("sill_height_m"), f"{loc}.sill_height_m", errs, minimum=0.0)
    head = _number(body.get("head_height_m"), f"{loc}.head_height_m", errs, positive=True)
    scene_name = body.get("scene")
    if not isinstance(scene_name, str) or scene_name not in scenes:
        errs.add(f"{loc}.scene", f"must reference a declared scene, got {scene_name!r}")
        scene_name = None
    shade = None
    if "shade" in body:
        shade_body = _obj(body["shade"], f"{loc}.shade", errs)
        if shade_body is not None:
            material_id = shade_body.get("material")
            if not isinstance(material_id, str) or material_id not in materials:
                errs.add(f"{loc}.shade.material", f"must reference a declared material, got {material_id!r}")
                material_id = None
            deployed = _ratio(shade_body.get("deployed_fraction", 1.0), f"{loc}.shade.deployed_fraction", errs)
            if material_id is not None and deployed is not None:
                shade = (material_id, deployed)
    if wall is None or sill is None or head is None or scene_name is None:
        return None
    try:
        window = WindowRect.on_wall(wall[0], wall[1], sill, head)
    except DomainError as e:
        errs.add(loc, str(e))
        return None
    return window, scene_name, shade


def _parse_plan(doc: dict, materials, scenes, errs: _Collector):
    raw = doc.get("floor_plan")
    if raw is None:
        return None, {}, {}
    loc = "floor_plan"
    raw = _obj(raw, loc, errs)
    if raw is None:
        return None, {}, {}
    boundary = _points(raw.get("boundary"), f"{loc}.boundary", errs)
    obstructions = []
    raw_obs = raw.get("obstructions", [])
    if not isinstance(raw_obs, list):
        errs.add(f"{loc}.obstructions", "expected a list of polygons")
        raw_obs = []
    for i, poly in enumerate(raw_obs):
        pts = _points(poly, f"{loc}.obstructions[{i}]", errs)
        if pts is not None:
            obstructions.append(tuple(pts))
    occupied = None
    if raw.get("occupied_region") is not None:
        occupied = _points(raw["occupied_region"], f"{loc}.occupied_region", errs)
    spacing = _number(raw.get("grid_spacing_m", 0.5), f"{loc}.grid_spacing_m", errs, positive=True)
    eye = _number(raw.get("eye_height_m", 1.2), f"{loc}.eye_height_m", errs, positive=True)

    windows: dict[str, WindowRect] = {}
    window_scene: dict[str, str] = {}
    window_shade: dict[str, tuple[str, float]] = {}
    for name, body in _named_section(raw, "windows", errs).items():
        parsed = _parse_window(name, body, materials, scenes, errs)
        if parsed is not None:
            windows[name] = parsed[0]
            window_scene[name] = parsed[1]
            if parsed[2] is not None:
                window_shade[name] = parsed[2]
    if "windows" not in raw or not isinstance(raw.get("windows"), dict) or not raw["windows"]:
        errs.add(f"{loc}.windows", "a floor plan needs at least one window")

    if boundary is None or spacing is None or eye is None or not windows:
        return None, window_scene, window_shade
    try:
        plan = FloorPlan(
            boundary=tuple(boundary),
            windows=windows,
            obstructions=tuple(obstructions),
            grid_spacing_m=spacing,
            occupied_region=tuple(occupied) if occupied is not None else None,
            eye_height_m=eye,
        )
    except DomainError as e:
        errs.add(loc, str(e))
        return None, window_scene, window_shade
    return plan, window_scene, window_shade


def _parse_mullions(doc: dict, plan: FloorPlan | None, errs: _Collector):
    out: dict[str, tuple[MullionLayout, dict[str, float], float]] = {}
    for name, body in _named_section(doc, "mullions", errs).items():
        loc = f"mullions.{name}"
        body = _obj(body, loc, errs)
        if body is None:
            continue
        if plan is None or name not in plan.windows:
            errs.add(loc, f"must reference a declared window, got {name!r}")
            continue
        window = plan.windows[name]
        bars: dict[str, tuple[MullionBar, ...]] = {}
        ok = True
        for axis in ("horizontal", "vertical"):
            parsed_bars = []
            for i, bar in enumerate(body.get(axis, [])):
                bar_loc = f"{loc}.{axis}[{i}]"
                bar_body = _obj(bar, bar_loc, errs)
                if bar_body is None:
                    ok = False
                    continue
                pos = _ratio(bar_body.get("position"), f"{bar_loc}.position", errs)
                thick = _number(bar_body.get("thickness_m"), f"{bar_loc}.thickness_m", errs, minimum=0.0)
                if pos is None or thick is None:
                    ok = False
                    continue
                parsed_bars.append(MullionBar(position=pos, thickness_m=thick))
            bars[axis] = tuple(parsed_bars)
        boundaries: dict[str, float] = {}
        raw_bounds = body.get("layer_boundaries", {})
        if not isinstance(raw_bounds, dict):
            errs.add(f"{loc}.layer_boundaries", "expected an object of name -> height fraction")
            ok = False
            raw_bounds = {}
        for bname, bval in raw_bounds.items():
            frac = _ratio(bval, f"{loc}.layer_boundaries.{bname}", errs)
            if frac is None:
                ok = False
            else:
                boundaries[bname] = frac
        tolerance = _ratio(body.get("boundary_tolerance", 0.02), f"{loc}.boundary_tolerance", errs)
        if tolerance is None:
            ok = False
        if not ok:
            continue
        layout = MullionLayout(
            window_width_m=window.width,
            window_height_m=window.head_height - window.sill_height,
            horizontal=bars["horizontal"],
            vertical=bars["vertical"],
        )
        out[name] = (layout, boundaries, tolerance)
    return out


def _parse_schedules(doc: dict, materials, errs: _Collector) -> dict[str, ShadeSchedule]:
    out: dict[str, ShadeSchedule] = {}
    for name, body in _named_section(doc, "schedules", errs).items():
        loc = f"schedules.{name}"
        body = _obj(body, loc, errs)
        if body is None:
            continue
        default_material = body.get("material")
        if default_material is not None and default_material not in materials:
            errs.add(f"{loc}.material", f"must reference a declared material, got {default_material!r}")
            default_material = None
        raw_steps = body.get("steps")
        if not isinstance(raw_steps, list) or not raw_steps:
            errs.add(f"{loc}.steps", "expected a non-empty list of steps")
            continue
        steps = []
        ok = True
        for i, raw_step in enumerate(raw_steps):
            step_loc = f"{loc}.steps[{i}]"
            step = _obj(raw_step, step_loc, errs)
            if step is None:
                ok = False
                continue
            ts = step.get("timestamp")
            if not isinstance(ts, str) or not ts:
                errs.add(f"{step_loc}.timestamp", f"expected a non-empty string, got {ts!r}")
                ok = False
            occupied = step.get("occupied")
            if not isinstance(occupied, bool):
                errs.add(f"{step_loc}.occupied", f"expected true or false, got {occupied!r}")
                ok = False
            deployed = _ratio(step.get("deployed_fraction"), f"{step_loc}.deployed_fraction", errs)
            if deployed is None:
                ok = False
            material_id = step.get("material", default_material)
            if material_id is None or material_id not in materials:
                errs.add(f"{step_loc}.material", f"must reference a declared material, got {material_id!r}")
                ok = False
            if ok:
                steps.append(
                    ScheduleStep(
                        timestamp=ts,
                        occupied=occupied,
                        deployed_fraction=deployed,
                        material=materials[material_id],
                    )
                )
        if ok and steps:
            out[name] = ShadeSchedule(steps=tuple(steps))
    return out


def _parse_thresholds(doc: dict, errs: _Collector):
    raw = doc.get("thresholds", {})
    if not isinstance(raw, dict):
        errs.add("thresholds", f"expected an object, got {type(raw).__name__}")
        raw = {}
    access_override = None
    if "access" in raw:
        loc = "thresholds.access"
        body = _obj(raw["access"], loc, errs)
        if body is not None:
            amin = _number(body.get("alpha_min_deg"), f"{loc}.alpha_min_deg", errs, positive=True)
            asat = None
            if body.get("alpha_saturation_deg") is not None:
                asat = _number(body.get("alpha_saturation_deg"), f"{loc}.alpha_saturation_deg", errs, positive=True)
            basis_raw = body.get("basis", "smaller")
            basis = _BASIS_VALUES.get(basis_raw)
            if basis is None:
                errs.add(f"{loc}.basis", f"unknown basis {basis_raw!r}; expected one of {sorted(_BASIS_VALUES)}")
            if amin is not None and basis is not None:
                try:
                    access_override = AccessThresholds(amin, asat, basis)
                except DomainError as e:
                    errs.add(loc, str(e))
    sky_sat = None
    if raw.get("sky_or_ground_saturation_deg") is not None:
        sky_sat = _number(
            raw["sky_or_ground_saturation_deg"], "thresholds.sky_or_ground_saturation_deg", errs, positive=True
        )
    clarity = DEFAULT_CLARITY_THRESHOLDS
    defaulted = True
    if "clarity" in raw:
        loc = "thresholds.clarity"
        body = _obj(raw["clarity"], loc, errs)
        if body is not None:
            bmin = _number(body.get("beta_min", 0.5), f"{loc}.beta_min", errs, positive=True)
            bsat = _number(body.get("beta_saturation", 1.0), f"{loc}.beta_saturation", errs, positive=True)
            if bmin is not None and bsat is not None:
                try:
                    clarity = ClarityThresholds(beta_min=bmin, beta_saturation=bsat)
                    defaulted = False
                except DomainError as e:
                    errs.add(loc, str(e))
    return access_override, sky_sat, clarity, defaulted


def _parse_weights(doc: dict, errs: _Collector):
    raw = doc.get("weights")
    if raw is None:
        return (1.0, 1.0, 1.0), True
    body = _obj(raw, "weights", errs)
    if body is None:
        return (1.0, 1.0, 1.0), True
    ks = []
    for part in ("content", "access", "clarity"):
        k = _number(body.get(part), f"weights.{part}", errs, positive=True)
        ks.append(k)
    if any(k is None for k in ks):
        return (1.0, 1.0, 1.0), True
    product = ks[0] * ks[1] * ks[2]
    if abs(product - 1.0) > 1e-9:
        errs.add("weights", f"the three weights must multiply to 1 (within 1e-9), got product {product!r}")
        return (1.0, 1.0, 1.0), True
    return (ks[0], ks[1], ks[2]), False


def parse_project(source) -> Project:
    """Parse and validate a project document.

    Args:
        source: JSON text (str or bytes) or an already-decoded dict.

    Raises:
        ProjectValidationError: with every problem found, sorted by locator.
    """
    if isinstance(source, (str, bytes)):
        raw_bytes = source.encode("utf-8") if isinstance(source, str) else source
        try:
            doc = json.loads(raw_bytes)
        except json.JSONDecodeError as e:
            raise ProjectValidationError([f"json (line {e.lineno}, column {e.colno}): {e.msg}"]) from None
    else:
        doc = source
        raw_bytes = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    if not isinstance(doc, dict):
        raise ProjectValidationError(["document: expected a JSON object at the top level"])

    errs = _Collector()
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        errs.add("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")

    scenes: dict[str, SceneDescription] = {}
    for name, body in _named_section(doc, "scenes", errs).items():
        scene = _parse_scene(name, body, errs)
        if scene is not None:
            scenes[name] = scene

    materials: dict[str, ShadeMaterial] = {}
    for name, body in _named_section(doc, "materials", errs).items():
        material = _parse_material(name, body, errs)
        if material is not None:
            materials[name] = material

    plan, window_scene, window_shade = _parse_plan(doc, materials, scenes, errs)

    observers: dict[str, Observer] = {}
    for name, body in _named_section(doc, "observers", errs).items():
        loc = f"observers.{name}"
        body = _obj(body, loc, errs)
        if body is None:
            continue
        raw_pos = body.get("position") if isinstance(body.get("position"), list) else None
        if raw_pos is None or len(raw_pos) != 2 or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw_pos):
            errs.add(f"{loc}.position", f"expected [x, y], got {body.get('position')!r}")
            continue
        eye = _number(body.get("eye_height_m", 1.2), f"{loc}.eye_height_m", errs, positive=True)
        if eye is None:
            continue
        try:
            observers[name] = Observer(position=(float(raw_pos[0]), float(raw_pos[1])), eye_height_m=eye)
        except DomainError as e:
            errs.add(loc, str(e))

    mullions = _parse_mullions(doc, plan, errs)
    schedules = _parse_schedules(doc, materials, errs)
    access_override, sky_sat, clarity, clarity_defaulted = _parse_thresholds(doc, errs)
    weights, weights_defaulted = _parse_weights(doc, errs)

    if plan is not None and not observers:
        errs.add("observers", "a project with a floor plan needs at least one observer")
    known = {
        "schema_version", "scenes", "materials", "floor_plan", "observers",
        "mullions", "schedules", "thresholds", "weights",
    }
    for key in doc:
        if key not in known:
            errs.add(key, "unknown top-level section")

    errs.raise_if_any()

    project = Project(
        schema_version=SCHEMA_VERSION,
        scenes=scenes,
        materials=materials,
        plan=plan,
        window_scene=window_scene,
        window_shade=window_shade,
        observers=observers,
        mullions=mullions,
        schedules=schedules,
        access_override=access_override,
        sky_or_ground_saturation_deg=sky_sat,
        clarity_thresholds=clarity,
        clarity_thresholds_defaulted=clarity_defaulted,
        weights=weights,
        weights_defaulted=weights_defaulted,
        input_sha256=hashlib.sha256(raw_bytes).hexdigest(),
        canonical=to_jsonable_doc(doc),
    )
    return project


def to_jsonable_doc(doc: dict) -> dict:
    """The document with all ratio fields normalized to plain numbers."""

    def normalize_ratio(v):
        if isinstance(v, str):
            m = _PERCENT_RE.match(v)
            if m:
                return float(m.group(1)) / 100.0
        return v

    def walk(node, path):
        if isinstance(node, dict):
            out = {}
            for k, v in node.items():
                if k in ("nature_fraction", "of", "tv", "deployed_fraction", "position", "boundary_tolerance") and not isinstance(v, (dict, list)):
                    out[k] = normalize_ratio(v)
                elif k == "layer_boundaries" and isinstance(v, dict):
                    out[k] = {bk: normalize_ratio(bv) for bk, bv in v.items()}
                else:
                    out[k] = walk(v, path + (k,))
            return out
        if isinstance(node, list):
            return [walk(v, path) for v in node]
        return node

    return walk(doc, ())


def serialize_project(project: Project) -> str:
    """Canonical JSON text of a project; parsing it again gives an equal project."""
    return json.dumps(project.canonical, sort_keys=True, indent=2) + "\n"
