"""Project evaluation and deterministic reporting.

The same input bytes always produce the same report bytes: numbers are
serialized at fixed precision, every collection is iterated in sorted order,
and nothing in the output depends on wall time, machine, or worker count.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from . import __version__
from .access import (
    AccessThresholds,
    SpatialAssessment,
    ViewAngles,
    content_class_for_scene,
    spatial_assessment,
    thresholds_for_content,
    v_access,
    view_angles,
    view_factor,
)
from .clarity import (
    MullionReport,
    ScheduleStep,
    ShadeSchedule,
    TemporalClarity,
    instantaneous_clarity,
    mullion_obstruction,
    temporal_clarity,
    v_clarity,
)
from .compliance import (
    SPATIAL_CREDIT_TABLE,
    ComplianceResult,
    breeam_wwr_requirement,
    distance_rules,
    en_sll_content_level,
    leed_visual_elements,
    spatial_credit,
    well_view_check,
)
from .content import ContentScore, Layer, Movement, v_content
from .errors import ConfigurationRequiredError, DomainError
from .project import Project
from .quality import QualityLabel, QualityScore, label, view_quality_weighted


def f6(x: float) -> str:
    return f"{x:.6f}"


@dataclass(frozen=True)
class SceneRow:
    name: str
    score: ContentScore
    label: QualityLabel


@dataclass(frozen=True)
class PairRow:
    observer: str
    window: str
    scene: str
    angles: ViewAngles
    distance_m: float
    content_class: str
    thresholds: AccessThresholds
    alpha_deg: float
    v_content: float
    v_access: float
    shade_text: str
    beta: float
    v_clarity: float
    quality: QualityScore
    view_size_rating: int
    compliance: tuple[ComplianceResult, ...]


@dataclass(frozen=True)
class MullionRow:
    window: str
    report: MullionReport


@dataclass(frozen=True)
class ScheduleRow:
    name: str
    metrics: TemporalClarity


@dataclass(frozen=True)
class Report:
    tool_version: str
    input_sha256: str
    schema_version: int
    scenes: tuple[SceneRow, ...]
    pairs: tuple[PairRow, ...]
    mullions: tuple[MullionRow, ...]
    spatial: SpatialAssessment | None
    spatial_qualified: SpatialAssessment | None
    credits: tuple[ComplianceResult, ...]
    schedules: tuple[ScheduleRow, ...]
    warnings: tuple[str, ...]


def _point_segment_distance(p, a, b) -> float:
    px, py = p
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / L2))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _pair_thresholds(project: Project, content_class) -> tuple[AccessThresholds, list[str]]:
    notes: list[str] = []
    if project.access_override is not None:
        notes.append("access thresholds overridden by the project configuration")
        return project.access_override, notes
    thresholds = thresholds_for_content(content_class)
    if thresholds.alpha_saturation_deg is None and project.sky_or_ground_saturation_deg is not None:
        thresholds = AccessThresholds(
            thresholds.alpha_min_deg, project.sky_or_ground_saturation_deg, thresholds.basis
        )
        notes.append(
            "no published saturation angle for sky-or-ground-only views; using the configured "
            f"{f6(project.sky_or_ground_saturation_deg)} deg"
        )
    return thresholds, notes


def evaluate(project: Project, workers: int = 1) -> Report:
    """Score every scene, observer/window pair, floor plan and schedule in a
    project.

    Raises:
        ConfigurationRequiredError: a pair needs a threshold that has no
            published value and none was configured.
    """
    warnings: list[str] = []

    def warn(message: str):
        if message not in warnings:
            warnings.append(message)

    if project.clarity_thresholds_defaulted:
        warn(
            "clarity thresholds are provisional defaults "
            f"(floor {f6(project.clarity_thresholds.beta_min)}, "
            f"saturation {f6(project.clarity_thresholds.beta_saturation)}); "
            "set thresholds.clarity to override"
        )

    scene_rows = []
    for name in sorted(project.scenes):
        scene = project.scenes[name]
        if scene.movement is Movement.BOTH:
            warn(
                f"scene {name}: movement is both nearby and distant; scored like nearby-only "
                "(the distraction dominates)"
            )
        score = v_content(scene)
        scene_rows.append(SceneRow(name=name, score=score, label=label(score.value)))

    pair_rows = []
    if project.plan is not None:
        for obs_name in sorted(project.observers):
            observer = project.observers[obs_name]
            for win_name in sorted(project.plan.windows):
                window = project.plan.windows[win_name]
                scene_name = project.window_scene[win_name]
                scene = project.scenes[scene_name]
                angles = view_angles(observer, window)
                content_class = content_class_for_scene(scene)
                thresholds, notes = _pair_thresholds(project, content_class)
                for note in notes:
                    warn(note)
                alpha = angles.on_basis(thresholds.basis)
                try:
                    va = v_access(alpha, thresholds)
                except ConfigurationRequiredError as e:
                    raise ConfigurationRequiredError(
                        f"{obs_name} x {win_name}: {e}; set thresholds.sky_or_ground_saturation_deg"
                    ) from None
                if win_name in project.window_shade:
                    material_id, deployed = project.window_shade[win_name]
                    beta = instantaneous_clarity(deployed, project.materials[material_id])
                    shade_text = f"{material_id} deployed {f6(deployed)}"
                else:
                    beta = 1.0
                    shade_text = "no shade"
                vc = v_clarity(beta, project.clarity_thresholds)
                score = v_content(scene).value
                quality = view_quality_weighted(score, va, vc, project.weights)
                # the ordinal rating table tops out at 90 deg; wider views stay at the top band
                rating = view_factor(min(90.0, angles.smaller_deg), scene.nature_fraction > 0.0)
                distance = _point_segment_distance(
                    observer.position, *window.base_segment_2d
                )
                rows = [en_sll_content_level(scene, angles.horizontal_deg)]
                rows.append(leed_visual_elements(scene))
                rows.append(
                    well_view_check(
                        angles.vertical_deg,
                        Layer.GROUND in scene.layers_present or Layer.SKY in scene.layers_present,
                    )
                )
                rows.extend(distance_rules(distance, head_height_m=window.head_height))
                wwr = breeam_wwr_requirement(distance)
                rows.append(
                    ComplianceResult(
                        standard="BREEAM",
                        criterion="required window-to-wall ratio",
                        verdict=f"{wwr * 100:.0f}%",
                        citation=f"distance band for {f6(distance)} m from the window",
                    )
                )
                pair_rows.append(
                    PairRow(
                        observer=obs_name,
                        window=win_name,
                        scene=scene_name,
                        angles=angles,
                        distance_m=distance,
                        content_class=content_class.value,
                        thresholds=thresholds,
                        alpha_deg=alpha,
                        v_content=score,
                        v_access=va,
                        shade_text=shade_text,
                        beta=beta,
                        v_clarity=vc,
                        quality=quality,
                        view_size_rating=rating,
                        compliance=tuple(rows),
                    )
                )

    mullion_rows = []
    for win_name in sorted(project.mullions):
        layout, boundaries, tolerance = project.mullions[win_name]
        mr = mullion_obstruction(layout, boundaries, tolerance)
        for conflict in mr.conflicts:
            warn(
                f"window {win_name}: horizontal bar {conflict.bar_index} sits on the "
                f"{conflict.boundary!r} layer boundary "
                f"({f6(conflict.distance_fraction)} of height away, tolerance {f6(tolerance)})"
            )
        mullion_rows.append(MullionRow(window=win_name, report=mr))

    spatial = None
    spatial_qualified = None
    credit_rows: list[ComplianceResult] = []
    if project.plan is not None:
        spatial = spatial_assessment(project.plan, qualifier=None, workers=workers)
        if project.access_override is not None:
            spatial_qualified = spatial_assessment(
                project.plan, qualifier=project.access_override, workers=workers
            )
        for cert in sorted(SPATIAL_CREDIT_TABLE):
            credit_rows.append(spatial_credit(spatial.fraction, cert))

    schedule_rows = []
    for name in sorted(project.schedules):
        schedule_rows.append(
            ScheduleRow(name=name, metrics=temporal_clarity(project.schedules[name], project.clarity_thresholds))
        )

    return Report(
        tool_version=__version__,
        input_sha256=project.input_sha256,
        schema_version=project.schema_version,
        scenes=tuple(scene_rows),
        pairs=tuple(pair_rows),
        mullions=tuple(mullion_rows),
        spatial=spatial,
        spatial_qualified=spatial_qualified,
        credits=tuple(credit_rows),
        schedules=tuple(schedule_rows),
        warnings=tuple(warnings),
    )


def render_text(report: Report) -> str:
    """The human-readable report. Byte-stable for identical inputs."""
    out = io.StringIO()
    w = out.write
    w("view quality report\n")
    w("===================\n")
    w(f"tool version: {report.tool_version}\n")
    w(f"input sha256: {report.input_sha256}\n")
    w(f"schema version: {report.schema_version}\n")

    if report.scenes:
        w("\nscenes\n------\n")
        for row in report.scenes:
            b = row.score
            w(
                f"{row.name}: content {f6(b.value)} ({row.label.value}) "
                f"[sky {f6(b.sky)}, landscape {f6(b.landscape)}, ground {f6(b.ground)}, nature {f6(b.nature)}]\n"
            )

    if report.pairs:
        w("\nobserver x window\n-----------------\n")
        for p in report.pairs:
            w(f"{p.observer} x {p.window} [scene {p.scene}]\n")
            a = p.angles
            solid = f6(a.solid_angle_sr) if a.solid_angle_sr is not None else "-"
            w(
                f"  angles: horizontal {f6(a.horizontal_deg)} deg, vertical {f6(a.vertical_deg)} deg, "
                f"smaller {f6(a.smaller_deg)} deg, solid {solid} sr\n"
            )
            w(f"  distance to window: {f6(p.distance_m)} m\n")
            w(f"  content: {f6(p.v_content)} ({label(p.v_content).value})\n")
            sat = f6(p.thresholds.alpha_saturation_deg) if p.thresholds.alpha_saturation_deg is not None else "-"
            w(
                f"  access: class {p.content_class}, basis {p.thresholds.basis.value}, "
                f"angle {f6(p.alpha_deg)} deg, thresholds {f6(p.thresholds.alpha_min_deg)}/{sat} deg "
                f"-> {f6(p.v_access)} ({label(p.v_access).value})\n"
            )
            w(
                f"  clarity: {p.shade_text}, beta {f6(p.beta)} -> {f6(p.v_clarity)} "
                f"({label(p.v_clarity).value})\n"
            )
            q = p.quality
            w(
                f"  view quality: {f6(q.clamped_value)} ({q.label.value}) "
                f"[weights {f6(q.k_content)}/{f6(q.k_access)}/{f6(q.k_clarity)}]\n"
            )
            w(f"  view size rating: {p.view_size_rating} of 5\n")
            w("  compliance:\n")
            for r in p.compliance:
                w(f"    {r.standard} | {r.criterion} | {r.verdict} | {r.citation}\n")
                for adv in r.advisories:
                    w(f"      note: {adv}\n")

    if report.mullions:
        w("\nmullions\n--------\n")
        for m in report.mullions:
            w(f"{m.window}: occluded fraction {f6(m.report.occluded_fraction)}\n")
            for c in m.report.conflicts:
                w(
                    f"  conflict: horizontal bar {c.bar_index} on boundary {c.boundary!r} "
                    f"at {f6(c.boundary_fraction)} (off by {f6(c.distance_fraction)})\n"
                )

    if report.spatial is not None:
        s = report.spatial
        w("\nspatial assessment\n------------------\n")
        w(f"grid spacing: {f6(s.grid_spacing_m)} m, cells: {s.cell_count}\n")
        w(f"cells with a window in sight: {s.qualifying_count} (fraction {f6(s.fraction)})\n")
        if report.spatial_qualified is not None:
            q = report.spatial_qualified
            assert q.qualifier is not None
            w(
                f"qualified cells ({q.qualifier.basis.value} angle >= "
                f"{f6(q.qualifier.alpha_min_deg)} deg): {q.qualifying_count} "
                f"(fraction {f6(q.fraction)})\n"
            )
        if report.credits:
            w("credits for floor area with a view:\n")
            for r in report.credits:
                w(f"  {r.standard} | {r.criterion} | {r.verdict} | {r.citation}\n")

    if report.schedules:
        w("\nschedules\n---------\n")
        for row in report.schedules:
            m = row.metrics
            w(
                f"{row.name}: occupied steps {m.occupied_steps}, "
                f"fraction of occupied time at or above the clarity floor: {f6(m.fraction_above_min)}, "
                f"mean clarity score {f6(m.mean_v_clarity)}\n"
            )

    if report.warnings:
        w("\nwarnings\n--------\n")
        for message in report.warnings:
            w(f"- {message}\n")
    return out.getvalue()


def grid_csv(assessment: SpatialAssessment) -> str:
    """Grid cells as CSV, rows sorted by (y, x), coordinates at 3 decimals."""
    rows = sorted(assessment.cells, key=lambda c: (c.y, c.x))
    out = ["x,y,sees_window,best_angle_deg,qualified"]
    for c in rows:
        sees = "true" if c.sees_window else "false"
        qualified = "true" if c.qualified else "false"
        out.append(f"{c.x:.3f},{c.y:.3f},{sees},{f6(c.best_angle_deg)},{qualified}")
    return "\n".join(out) + "\n"


def compliance_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["standard", "criterion", "verdict", "citation"])
    for r in rows:
        writer.writerow([r.standard, r.criterion, r.verdict, r.citation])
    return buf.getvalue()


def series_csv(metrics: TemporalClarity) -> str:
    out = ["timestamp,beta,v_clarity"]
    for p in metrics.series:
        out.append(f"{p.timestamp},{f6(p.beta)},{f6(p.v_clarity)}")
    return "\n".join(out) + "\n"


def parse_schedule_csv(text: str, materials, default_material: str | None = None) -> ShadeSchedule:
    """Schedule from CSV with columns timestamp, occupied, deployed_fraction,
    material_id. material_id may be blank when a default material is given."""
    reader = csv.DictReader(io.StringIO(text))
    required = {"timestamp", "occupied", "deployed_fraction", "material_id"}
    if reader.fieldnames is None or not required <= set(reader.fieldnames):
        raise DomainError(f"schedule CSV needs columns {sorted(required)}, got {reader.fieldnames}")
    steps = []
    for i, row in enumerate(reader):
        occupied_raw = row["occupied"].strip().lower()
        if occupied_raw not in ("true", "false", "1", "0"):
            raise DomainError(f"row {i + 1}: occupied must be true/false/1/0, got {row['occupied']!r}")
        deployed_raw = row["deployed_fraction"].strip()
        if deployed_raw.endswith("%"):
            deployed = float(deployed_raw[:-1]) / 100.0
        else:
            deployed = float(deployed_raw)
        material_id = row["material_id"].strip() or default_material
        if material_id is None or material_id not in materials:
            raise DomainError(f"row {i + 1}: unknown material {row['material_id']!r}")
        steps.append(
            ScheduleStep(
                timestamp=row["timestamp"].strip(),
                occupied=occupied_raw in ("true", "1"),
                deployed_fraction=deployed,
                material=materials[material_id],
            )
        )
    if not steps:
        raise DomainError("schedule CSV has no rows")
    return ShadeSchedule(steps=tuple(steps))


def write_outputs(report: Report, directory) -> list[str]:
    """Write the machine-readable CSVs; returns the file names written."""
    import os

    os.makedirs(directory, exist_ok=True)
    written = []

    def emit(name: str, text: str):
        path = os.path.join(directory, name)
        with open(path, "w", newline="") as fh:
            fh.write(text)
        written.append(name)

    grid_source = report.spatial_qualified if report.spatial_qualified is not None else report.spatial
    if grid_source is not None:
        emit("grid.csv", grid_csv(grid_source))
    for p in report.pairs:
        emit(f"compliance_{p.observer}_{p.window}.csv", compliance_csv(p.compliance))
    if report.credits:
        emit("compliance_project.csv", compliance_csv(report.credits))
    for row in report.schedules:
        emit(f"series_{row.name}.csv", series_csv(row.metrics))
    return written
