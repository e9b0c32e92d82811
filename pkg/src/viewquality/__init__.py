"""Window view quality assessment.

Scores a view on three dimensions (content, access, clarity), combines them
into an overall quality index, checks the result against published standards,
and evaluates whole floor plans cell by cell.
"""

__version__ = "0.1.0"

from .access import (
    AccessThresholds,
    AngleBasis,
    ContentClass,
    FloorPlan,
    GridCell,
    Observer,
    SpatialAssessment,
    ViewAngles,
    WindowRect,
    content_class_for_scene,
    has_line_of_sight,
    multi_direction_access,
    spatial_assessment,
    thresholds_for_content,
    v_access,
    view_angles,
    view_factor,
    visible_spans,
)
from .clarity import (
    BoundaryConflict,
    ClarityThresholds,
    DEFAULT_CLARITY_THRESHOLDS,
    MullionBar,
    MullionLayout,
    MullionReport,
    ScheduleStep,
    SeriesPoint,
    ShadeMaterial,
    ShadeSchedule,
    TemporalClarity,
    instantaneous_clarity,
    mullion_obstruction,
    temporal_clarity,
    v_clarity,
    view_clarity_index,
)
from .compliance import (
    AtriumSpec,
    ComplianceResult,
    GREENERY_TAGS,
    SPATIAL_CREDIT_TABLE,
    alternative_access_check,
    breeam_wwr_requirement,
    distance_rules,
    en_sll_content_level,
    leed_visual_elements,
    spatial_credit,
    well_view_check,
)
from .content import (
    ContentScore,
    Layer,
    Movement,
    SceneDescription,
    layer_weight,
    v_content,
    wf_content_distance,
    wf_movement,
    wf_nature,
)
from .errors import (
    ConfigurationRequiredError,
    DegenerateGeometryError,
    DomainError,
    ProjectValidationError,
)
from .quality import QualityLabel, QualityScore, label, view_quality, view_quality_weighted

__all__ = [
    "__version__",
    "AccessThresholds", "AngleBasis", "ContentClass", "FloorPlan", "GridCell", "Observer",
    "SpatialAssessment", "ViewAngles", "WindowRect", "content_class_for_scene",
    "has_line_of_sight", "multi_direction_access", "spatial_assessment",
    "thresholds_for_content", "v_access", "view_angles", "view_factor", "visible_spans",
    "BoundaryConflict", "ClarityThresholds", "DEFAULT_CLARITY_THRESHOLDS", "MullionBar",
    "MullionLayout", "MullionReport", "ScheduleStep", "SeriesPoint", "ShadeMaterial",
    "ShadeSchedule", "TemporalClarity", "instantaneous_clarity", "mullion_obstruction",
    "temporal_clarity", "v_clarity", "view_clarity_index",
    "AtriumSpec", "ComplianceResult", "GREENERY_TAGS", "SPATIAL_CREDIT_TABLE",
    "alternative_access_check", "breeam_wwr_requirement", "distance_rules",
    "en_sll_content_level", "leed_visual_elements", "spatial_credit", "well_view_check",
    "ContentScore", "Layer", "Movement", "SceneDescription", "layer_weight", "v_content",
    "wf_content_distance", "wf_movement", "wf_nature",
    "ConfigurationRequiredError", "DegenerateGeometryError", "DomainError",
    "ProjectValidationError",
    "QualityLabel", "QualityScore", "label", "view_quality", "view_quality_weighted",
]
