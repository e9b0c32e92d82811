"""View-angle geometry, access thresholds and the ordinal size rating."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import axis_rectangle_solid_angle, horizontal_subtense_2d, mc_view_angles
from viewquality import (
    AccessThresholds,
    AngleBasis,
    ConfigurationRequiredError,
    ContentClass,
    DegenerateGeometryError,
    DomainError,
    Layer,
    Observer,
    SceneDescription,
    ViewAngles,
    WindowRect,
    content_class_for_scene,
    thresholds_for_content,
    v_access,
    view_angles,
    view_factor,
)


def test_on_wall_frame():
    w = WindowRect.on_wall((0.0, 0.0), (2.0, 0.0), 0.8, 2.1)
    assert np.allclose(w.u, [1.0, 0.0, 0.0])
    assert np.allclose(w.v, [0.0, 0.0, 1.0])
    # outward normal is to the right of start->end
    assert np.allclose(w.normal, [0.0, -1.0, 0.0])
    assert w.width == 2.0
    a, b, c, d = w.corners
    assert np.allclose(a, [0.0, 0.0, 0.8])
    assert np.allclose(b, [2.0, 0.0, 0.8])
    assert np.allclose(c, [2.0, 0.0, 2.1])
    assert np.allclose(d, [0.0, 0.0, 2.1])
    assert np.allclose(w.center, [1.0, 0.0, 1.45])


def test_window_validation():
    with pytest.raises(DomainError):
        WindowRect.on_wall((0.0, 0.0), (0.0, 0.0), 0.8, 2.1)
    with pytest.raises(DomainError):
        WindowRect.on_wall((0.0, 0.0), (2.0, 0.0), 2.1, 0.8)
    with pytest.raises(DomainError):
        WindowRect.on_wall((0.0, 0.0), (2.0, 0.0), -0.1, 2.1)
    with pytest.raises(DomainError):
        WindowRect(
            origin=np.zeros(3),
            u=np.array([1.0, 0.0, 0.0]),
            v=np.array([1.0, 0.0, 0.0]),  # not orthogonal to u
            width=1.0,
            sill_height=0.0,
            head_height=1.0,
            normal=np.array([0.0, 1.0, 0.0]),
        )


def test_symmetric_angles():
    # 2 m wide window, eye 1 m back on the centreline, sill 1.2 below the
    # eye and head 0.3 above it
    w = WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 0.0, 1.5)
    angles = view_angles(Observer((0.0, 1.0), eye_height_m=1.2), w)
    assert abs(angles.horizontal_deg - 90.0) <= 1e-9
    expected_v = math.degrees(math.atan(1.2) + math.atan(0.3))
    assert abs(angles.vertical_deg - expected_v) <= 1e-9
    assert abs(angles.vertical_deg - 66.89367314172843) <= 1e-9


def test_vertical_angle_window_above_eye():
    w = WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 1.5, 2.0)
    angles = view_angles(Observer((0.0, 1.0), eye_height_m=1.2), w)
    expected_v = math.degrees(math.atan(0.8) - math.atan(0.3))
    assert abs(angles.vertical_deg - expected_v) <= 1e-9


def test_horizontal_angle_matches_plan_oracle():
    w = WindowRect.on_wall((0.4, 0.0), (3.1, 0.0), 0.6, 2.3)
    for pos in [(1.0, 2.0), (-2.0, 0.5), (5.0, 4.0)]:
        angles = view_angles(Observer(pos), w)
        want = horizontal_subtense_2d(pos, (0.4, 0.0), (3.1, 0.0))
        assert abs(angles.horizontal_deg - want) <= 1e-9


def test_angles_match_monte_carlo():
    cases = [
        (WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 0.0, 1.5), (0.0, 1.0), 1.2),
        (WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 0.4, 1.9), (1.7, 2.3), 1.1),
        (WindowRect.on_wall((2.0, 1.0), (2.0, 4.0), 0.9, 2.4), (5.5, 0.5), 1.6),
    ]
    for window, pos, eye_h in cases:
        angles = view_angles(Observer(pos, eye_height_m=eye_h), window)
        mc_h, mc_v = mc_view_angles((pos[0], pos[1], eye_h), window)
        assert abs(angles.horizontal_deg - mc_h) <= 0.5
        assert abs(angles.vertical_deg - mc_v) <= 0.5


def test_rigid_transform_invariance():
    w = WindowRect.on_wall((-1.0, 0.0), (1.3, 0.0), 0.3, 1.8)
    pos = (0.4, 2.1)
    base = view_angles(Observer(pos, eye_height_m=1.2), w)

    theta = 0.7301  # radians, nothing special
    ct, st_ = math.cos(theta), math.sin(theta)
    tx, ty, dz = 11.4, -3.2, 5.0

    def move(p):
        return (ct * p[0] - st_ * p[1] + tx, st_ * p[0] + ct * p[1] + ty)

    w2 = WindowRect.on_wall(move((-1.0, 0.0)), move((1.3, 0.0)), 0.3 + dz, 1.8 + dz)
    moved = view_angles(Observer(move(pos), eye_height_m=1.2 + dz), w2)
    assert abs(moved.horizontal_deg - base.horizontal_deg) <= 1e-9
    assert abs(moved.vertical_deg - base.vertical_deg) <= 1e-9
    assert abs(moved.solid_angle_sr - base.solid_angle_sr) <= 1e-12


def test_solid_angle_on_axis():
    w = WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 0.5, 2.1)
    d = 1.7
    angles = view_angles(Observer((0.0, d), eye_height_m=1.3), w)
    want = axis_rectangle_solid_angle(1.0, 0.8, d)
    assert abs(angles.solid_angle_sr - want) <= 1e-12


def test_degenerate_eye_in_window_plane():
    w = WindowRect.on_wall((-1.0, 0.0), (1.0, 0.0), 0.0, 1.5)
    with pytest.raises(DegenerateGeometryError):
        view_angles(Observer((3.0, 0.0)), w)


def test_degenerate_eye_under_skylight_centre():
    w = WindowRect(
        origin=np.array([0.0, 0.0, 2.6]),
        u=np.array([1.0, 0.0, 0.0]),
        v=np.array([0.0, 1.0, 0.0]),
        width=1.0,
        sill_height=0.0,
        head_height=1.0,
        normal=np.array([0.0, 0.0, 1.0]),
    )
    with pytest.raises(DegenerateGeometryError):
        view_angles(Observer((0.5, 0.5), eye_height_m=1.2), w)


def test_view_angles_basis_selection():
    a = ViewAngles(horizontal_deg=40.0, vertical_deg=25.0, solid_angle_sr=0.1)
    assert a.smaller_deg == 25.0
    assert a.on_basis(AngleBasis.HORIZONTAL) == 40.0
    assert a.on_basis(AngleBasis.VERTICAL) == 25.0
    assert a.on_basis(AngleBasis.SMALLER) == 25.0


def test_threshold_table():
    t = thresholds_for_content(ContentClass.SKY_OR_GROUND_ONLY)
    assert (t.alpha_min_deg, t.alpha_saturation_deg, t.basis) == (30.0, None, AngleBasis.VERTICAL)
    t = thresholds_for_content(ContentClass.LANDSCAPE_NO_NATURE)
    assert (t.alpha_min_deg, t.alpha_saturation_deg, t.basis) == (11.0, 90.0, AngleBasis.SMALLER)
    t = thresholds_for_content(ContentClass.LANDSCAPE_WITH_NATURE)
    assert (t.alpha_min_deg, t.alpha_saturation_deg, t.basis) == (9.0, 50.0, AngleBasis.SMALLER)
    t = thresholds_for_content(ContentClass.LANDSCAPE_WITH_SKY_OR_GROUND)
    assert (t.alpha_min_deg, t.alpha_saturation_deg, t.basis) == (14.0, 54.0, AngleBasis.HORIZONTAL)


def test_threshold_validation():
    with pytest.raises(DomainError):
        AccessThresholds(0.0, 90.0, AngleBasis.SMALLER)
    with pytest.raises(DomainError):
        AccessThresholds(30.0, 20.0, AngleBasis.SMALLER)
    with pytest.raises(DomainError):
        AccessThresholds(30.0, 200.0, AngleBasis.SMALLER)


def _scene(layers, nature=0.0):
    return SceneDescription(
        layers_present=frozenset(layers),
        nature_fraction=nature,
        content_distance_m=10.0,
    )


def test_content_class_for_scene():
    assert content_class_for_scene(_scene({Layer.SKY})) is ContentClass.SKY_OR_GROUND_ONLY
    assert content_class_for_scene(_scene({Layer.GROUND})) is ContentClass.SKY_OR_GROUND_ONLY
    assert content_class_for_scene(_scene(set())) is ContentClass.SKY_OR_GROUND_ONLY
    assert content_class_for_scene(_scene({Layer.LANDSCAPE})) is ContentClass.LANDSCAPE_NO_NATURE
    assert (
        content_class_for_scene(_scene({Layer.LANDSCAPE}, nature=0.3))
        is ContentClass.LANDSCAPE_WITH_NATURE
    )
    # nature wins over the extra layer
    assert (
        content_class_for_scene(_scene({Layer.LANDSCAPE, Layer.SKY}, nature=0.3))
        is ContentClass.LANDSCAPE_WITH_NATURE
    )
    assert (
        content_class_for_scene(_scene({Layer.LANDSCAPE, Layer.SKY}))
        is ContentClass.LANDSCAPE_WITH_SKY_OR_GROUND
    )
    assert (
        content_class_for_scene(_scene({Layer.LANDSCAPE, Layer.GROUND}))
        is ContentClass.LANDSCAPE_WITH_SKY_OR_GROUND
    )


def test_v_access_knots():
    for alpha_min, alpha_sat in [(11.0, 90.0), (9.0, 50.0), (14.0, 54.0)]:
        t = AccessThresholds(alpha_min, alpha_sat, AngleBasis.SMALLER)
        assert v_access(alpha_min - 1e-6, t) == 0.0
        assert v_access(alpha_min, t) == 0.5
        assert v_access(alpha_sat, t) == 1.0
        assert v_access(alpha_sat + 30.0, t) == 1.0
        mid = (alpha_min + alpha_sat) / 2.0
        assert v_access(mid, t) == 0.75
    assert v_access(0.0, AccessThresholds(11.0, 90.0, AngleBasis.SMALLER)) == 0.0


def test_v_access_requires_saturation():
    t = thresholds_for_content(ContentClass.SKY_OR_GROUND_ONLY)
    with pytest.raises(ConfigurationRequiredError):
        v_access(45.0, t)
    # an explicit override makes the class scoreable
    override = AccessThresholds(30.0, 60.0, AngleBasis.VERTICAL)
    assert v_access(45.0, override) == 0.75


def test_v_access_rejects_bad_angles():
    t = AccessThresholds(11.0, 90.0, AngleBasis.SMALLER)
    with pytest.raises(DomainError):
        v_access(-1.0, t)
    with pytest.raises(DomainError):
        v_access(float("nan"), t)


def test_view_factor_bands():
    # (angle, plain, with nature)
    table = [
        (0.5, 1, 1),
        (1.0, 1, 1),
        (3.999, 1, 1),
        (4.0, 1, 2),
        (8.999, 1, 2),
        (9.0, 2, 3),
        (10.999, 2, 3),
        (11.0, 3, 3),
        (14.999, 3, 3),
        (15.0, 3, 4),
        (19.999, 3, 4),
        (20.0, 4, 4),
        (39.999, 4, 4),
        (40.0, 4, 5),
        (49.999, 4, 5),
        (50.0, 5, 5),
        (89.999, 5, 5),
        (90.0, 5, 5),
    ]
    for angle, plain, natured in table:
        assert view_factor(angle) == plain, angle
        assert view_factor(angle, nature_in_view=True) == natured, angle


def test_view_factor_domain():
    with pytest.raises(DomainError):
        view_factor(0.0)
    with pytest.raises(DomainError):
        view_factor(-5.0)
    with pytest.raises(DomainError):
        view_factor(90.001)


angle = st.floats(min_value=0.0, max_value=180.0, allow_nan=False)


@given(a1=angle, a2=angle)
@settings(max_examples=300)
def test_v_access_monotone(a1, a2):
    t = AccessThresholds(14.0, 54.0, AngleBasis.HORIZONTAL)
    lo, hi = sorted((a1, a2))
    assert v_access(lo, t) <= v_access(hi, t)


@given(a1=st.floats(min_value=0.001, max_value=90.0, allow_nan=False),
       a2=st.floats(min_value=0.001, max_value=90.0, allow_nan=False),
       nature=st.booleans())
@settings(max_examples=300)
def test_view_factor_monotone(a1, a2, nature):
    lo, hi = sorted((a1, a2))
    assert view_factor(lo, nature) <= view_factor(hi, nature)
    # nature never lowers the rating
    assert view_factor(lo) <= view_factor(lo, nature_in_view=True)
