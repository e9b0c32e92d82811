"""Rules-engine checks: every branch, with the citation text pinned."""

import pytest

from viewquality import (
    AtriumSpec,
    DomainError,
    GREENERY_TAGS,
    Layer,
    Movement,
    SceneDescription,
    SPATIAL_CREDIT_TABLE,
    alternative_access_check,
    breeam_wwr_requirement,
    distance_rules,
    en_sll_content_level,
    leed_visual_elements,
    spatial_credit,
    well_view_check,
)

ALL = frozenset({Layer.SKY, Layer.LANDSCAPE, Layer.GROUND})


def scene(layers, distance, nature=0.0, movement=Movement.NONE):
    return SceneDescription(
        layers_present=frozenset(layers),
        nature_fraction=nature,
        content_distance_m=distance,
        movement=movement,
    )


# ---------------------------------------------------------------------------
# graded European view levels


def test_en_high_level_at_boundary():
    r = en_sll_content_level(scene(ALL, 50.0), 54.0)
    assert r.standard == "EN 17037 / SLL LG10"
    assert r.criterion == "view content level"
    assert r.verdict == "High/Excellent"
    assert r.citation == "all layers; outside distance >= 50 m; horizontal sight angle >= 54 deg"
    assert r.advisories == (
        "expects environmental information: location, time, weather, nature, people",
    )


def test_en_medium_when_high_misses():
    # distance short of the top tier
    assert en_sll_content_level(scene(ALL, 49.99), 60.0).verdict == "Medium/Good"
    # angle short of the top tier
    assert en_sll_content_level(scene(ALL, 80.0), 53.99).verdict == "Medium/Good"
    # a missing layer rules the top tier out
    assert en_sll_content_level(scene({Layer.LANDSCAPE, Layer.SKY}, 80.0), 80.0).verdict == "Medium/Good"


def test_en_medium_level_at_boundary():
    r = en_sll_content_level(scene({Layer.LANDSCAPE, Layer.GROUND}, 20.0), 28.0)
    assert r.verdict == "Medium/Good"
    assert r.citation == (
        "landscape and one more layer; outside distance >= 20 m; horizontal sight angle >= 28 deg"
    )
    assert r.advisories == (
        "expects environmental information: location, time, weather",
        "expects one of: nature, people",
    )


def test_en_minimum_level():
    # landscape alone never reaches the middle tier
    r = en_sll_content_level(scene({Layer.LANDSCAPE}, 100.0), 80.0)
    assert r.verdict == "Minimum/Sufficient"
    assert r.citation == (
        "landscape layer; outside distance >= 6 m; horizontal sight angle >= 14 deg"
    )
    assert r.advisories == ("expects environmental information: location",)
    assert en_sll_content_level(scene({Layer.LANDSCAPE, Layer.GROUND}, 19.99, 0.2), 30.0).verdict == "Minimum/Sufficient"
    assert en_sll_content_level(scene({Layer.LANDSCAPE}, 6.0), 14.0).verdict == "Minimum/Sufficient"


def test_en_insufficient():
    expected_citation = "no tier reached: needs at least landscape layer, >= 6 m and >= 14 deg"
    # no landscape layer at all
    r = en_sll_content_level(scene({Layer.SKY, Layer.GROUND}, 100.0), 90.0)
    assert r.verdict == "Insufficient"
    assert r.citation == expected_citation
    assert r.advisories == ()
    # too close
    assert en_sll_content_level(scene({Layer.LANDSCAPE}, 5.99), 90.0).verdict == "Insufficient"
    # too narrow
    assert en_sll_content_level(scene({Layer.LANDSCAPE}, 10.0), 13.99).verdict == "Insufficient"


def test_en_deep_room_advisory():
    deep = en_sll_content_level(scene({Layer.LANDSCAPE}, 10.0), 20.0, room_depth_m=4.01)
    assert deep.advisories[-1] == (
        "rooms deeper than 4 m additionally expect an opening at least 1.0 m wide and 1.25 m high"
    )
    shallow = en_sll_content_level(scene({Layer.LANDSCAPE}, 10.0), 20.0, room_depth_m=4.0)
    assert all("deeper" not in a for a in shallow.advisories)


def test_en_rejects_negative_angle():
    with pytest.raises(DomainError):
        en_sll_content_level(scene({Layer.LANDSCAPE}, 10.0), -1.0)


# ---------------------------------------------------------------------------
# element counting


def test_leed_visual_elements_all_combinations():
    # toggle each element independently: (flora or sky, movement, far content)
    cases = []
    for flora_sky in (False, True):
        for moving in (False, True):
            for far in (False, True):
                layers = {Layer.SKY, Layer.LANDSCAPE} if flora_sky else {Layer.LANDSCAPE}
                s = scene(
                    layers,
                    distance=7.5 if far else 7.49,
                    movement=Movement.DISTANT_ONLY if moving else Movement.NONE,
                )
                cases.append((s, int(flora_sky) + int(moving) + int(far)))
    for s, count in cases:
        r = leed_visual_elements(s)
        assert r.standard == "LEED v4.1"
        assert r.criterion == "visual elements (2 of 3)"
        assert r.verdict == ("pass" if count >= 2 else "fail")
        assert r.citation.endswith(f"(present: {count} of 3)")


def test_leed_flora_counts_via_nature_fraction():
    # nature on the ground layer counts as flora even without sky
    s = scene({Layer.LANDSCAPE}, 3.0, nature=0.2)
    r = leed_visual_elements(s)
    assert "(present: 1 of 3)" in r.citation
    assert r.verdict == "fail"


def test_leed_any_movement_counts():
    s = scene({Layer.LANDSCAPE}, 7.5, movement=Movement.NEARBY_ONLY)
    assert leed_visual_elements(s).verdict == "pass"
    s = scene({Layer.LANDSCAPE}, 7.5, movement=Movement.BOTH)
    assert leed_visual_elements(s).verdict == "pass"


def test_well_view_check():
    ok = well_view_check(30.0, True)
    assert (ok.standard, ok.verdict) == ("WELL", "pass")
    assert ok.criterion == "vertical view angle with sky or ground"
    assert ok.citation == "vertical view angle >= 30 deg and direct line of sight to ground or sky"
    assert well_view_check(29.99, True).verdict == "fail"
    assert well_view_check(30.0, False).verdict == "fail"
    assert well_view_check(85.0, True).verdict == "pass"
    with pytest.raises(DomainError):
        well_view_check(-0.1, True)


# ---------------------------------------------------------------------------
# distance rules


def test_distance_rules_boundaries():
    by_standard = {r.standard: r for r in distance_rules(8.0)}
    assert len(by_standard) == 3
    assert by_standard["BREEAM"].verdict == "pass"
    assert by_standard["BREEAM"].citation == "within 8 m of a window"
    assert by_standard["WELL v2"].verdict == "pass"
    assert by_standard["DIN 5034"].verdict == "pass"

    by_standard = {r.standard: r for r in distance_rules(8.01)}
    assert by_standard["BREEAM"].verdict == "fail"
    assert by_standard["WELL v2"].verdict == "pass"
    assert by_standard["DIN 5034"].verdict == "pass"
    assert by_standard["WELL v2"].citation == "within 10 m of a window"

    by_standard = {r.standard: r for r in distance_rules(10.01)}
    assert by_standard["WELL v2"].verdict == "fail"
    assert by_standard["DIN 5034"].verdict == "fail"


def test_distance_rule_with_head_height():
    rows = distance_rules(8.0, head_height_m=2.7)
    assert len(rows) == 4
    leed = rows[-1]
    assert leed.standard == "LEED"
    assert leed.citation == "within 3 times the window head height (8.10 m here)"
    assert leed.verdict == "pass"
    assert distance_rules(8.2, head_height_m=2.7)[-1].verdict == "fail"


def test_distance_rules_validation():
    with pytest.raises(DomainError):
        distance_rules(-1.0)
    with pytest.raises(DomainError):
        distance_rules(5.0, head_height_m=0.0)


def test_breeam_wwr_bands():
    assert breeam_wwr_requirement(0.0) == 0.20
    assert breeam_wwr_requirement(7.99) == 0.20
    assert breeam_wwr_requirement(8.0) == 0.25
    assert breeam_wwr_requirement(10.99) == 0.25
    assert breeam_wwr_requirement(11.0) == 0.30
    assert breeam_wwr_requirement(14.0) == 0.30
    assert breeam_wwr_requirement(14.01) == 0.35
    assert breeam_wwr_requirement(100.0) == 0.35
    with pytest.raises(DomainError):
        breeam_wwr_requirement(-0.1)


# ---------------------------------------------------------------------------
# courtyard and atrium alternatives


def test_breeam_alternative():
    court = AtriumSpec(kind="courtyard", width_m=12.0, content_distance_m=10.0, visual_features=("trees",))
    r = alternative_access_check(court, "breeam")
    assert (r.standard, r.verdict) == ("BREEAM", "pass")
    assert r.citation == "court content at least 10 m away with greenery-type visual features"
    # too close
    near = AtriumSpec(kind="courtyard", width_m=12.0, content_distance_m=9.99, visual_features=("trees",))
    assert alternative_access_check(near, "breeam").verdict == "fail"
    # nothing green to look at
    bare = AtriumSpec(kind="courtyard", width_m=12.0, content_distance_m=15.0, visual_features=("sculpture",))
    assert alternative_access_check(bare, "breeam").verdict == "fail"
    # national variants and case take the same rule
    assert alternative_access_check(court, "BREEAM NOR").verdict == "pass"
    assert alternative_access_check(court, "breeam_nl").verdict == "pass"


def test_greenery_tags_recognised_case_insensitively():
    assert "green-wall" in GREENERY_TAGS
    court = AtriumSpec(kind="atrium", width_m=12.0, content_distance_m=10.0, visual_features=("Plants",))
    assert alternative_access_check(court, "breeam").verdict == "pass"


def test_green_star_alternative():
    ok = AtriumSpec(kind="atrium", width_m=8.0, depth_m=8.0)
    r = alternative_access_check(ok, "green-star")
    assert (r.standard, r.verdict) == ("Green Star", "pass")
    assert r.citation == "atrium at least 8 m wide and 8 m deep"
    assert alternative_access_check(AtriumSpec(kind="atrium", width_m=7.99, depth_m=9.0), "green-star").verdict == "fail"
    assert alternative_access_check(AtriumSpec(kind="atrium", width_m=9.0, depth_m=7.99), "green-star").verdict == "fail"
    # unknown depth cannot pass a depth requirement
    assert alternative_access_check(AtriumSpec(kind="atrium", width_m=9.0), "green-star").verdict == "fail"


def test_green_star_nz_alternative():
    r = alternative_access_check(AtriumSpec(kind="atrium", width_m=8.0), "green-star-nz")
    assert (r.standard, r.verdict) == ("Green Star NZ", "pass")
    assert r.citation == "atrium at least 8 m wide"
    assert alternative_access_check(AtriumSpec(kind="atrium", width_m=7.99), "green-star-nz").verdict == "fail"


def test_green_globes_alternative():
    yes = AtriumSpec(kind="atrium", width_m=5.0, exterior_view_from_all_primary_spaces=True)
    r = alternative_access_check(yes, "green-globes")
    assert (r.standard, r.verdict) == ("Green Globes", "pass")
    assert r.citation == "an exterior view from all regularly occupied primary spaces"
    no = AtriumSpec(kind="atrium", width_m=5.0)
    assert alternative_access_check(no, "green-globes").verdict == "fail"


def test_alternative_unknown_standard():
    with pytest.raises(DomainError):
        alternative_access_check(AtriumSpec(kind="atrium", width_m=5.0), "passivhaus")


def test_atrium_spec_validation():
    with pytest.raises(DomainError):
        AtriumSpec(kind="lightwell", width_m=5.0)
    with pytest.raises(DomainError):
        AtriumSpec(kind="atrium", width_m=0.0)
    with pytest.raises(DomainError):
        AtriumSpec(kind="atrium", width_m=5.0, depth_m=0.0)
    with pytest.raises(DomainError):
        AtriumSpec(kind="atrium", width_m=5.0, content_distance_m=-1.0)


# ---------------------------------------------------------------------------
# spatial credits


EXPECTED_CREDIT_TABLE = {
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


def test_credit_table_pinned():
    assert SPATIAL_CREDIT_TABLE == EXPECTED_CREDIT_TABLE


def test_spatial_credit_every_threshold():
    for cert, tiers in EXPECTED_CREDIT_TABLE.items():
        lowest = tiers[0][0]
        below = spatial_credit((lowest - 1.0) / 100.0, cert)
        assert below.verdict == "0", cert
        assert below.citation.startswith("below the lowest threshold ("), cert
        for threshold, credit in tiers:
            at = spatial_credit(threshold / 100.0, cert)
            assert at.verdict == str(credit), (cert, threshold)
            assert at.citation.startswith(f"reached {int(threshold)}% ("), (cert, threshold)
            just_under = spatial_credit((threshold - 0.5) / 100.0, cert)
            expected = max((c for t, c in tiers if threshold - 0.5 >= t), default=0)
            assert just_under.verdict == str(expected), (cert, threshold)
        top = spatial_credit(1.0, cert)
        assert top.verdict == str(tiers[-1][1]), cert


def test_spatial_credit_citation_format():
    r = spatial_credit(0.8, "berde")
    assert r.standard == "BERDE"
    assert r.criterion == "floor area with a view"
    assert r.verdict == "2"
    assert r.citation == "reached 75% (50% -> 1, 75% -> 2)"
    r = spatial_credit(0.2, "hqe")
    assert r.verdict == "0"
    assert r.citation == "below the lowest threshold (30% -> 1, 50% -> 2, 75% -> 3)"


def test_spatial_credit_name_normalisation():
    assert spatial_credit(0.8, "LEED v4.1").standard == "LEED v4.1"
    assert spatial_credit(0.8, "WELL_V2").standard == "WELL v2"
    assert spatial_credit(0.8, " igbc option 1 ").standard == "IGBC (option 1)"


def test_spatial_credit_validation():
    with pytest.raises(DomainError):
        spatial_credit(1.2, "berde")
    with pytest.raises(DomainError):
        spatial_credit(-0.1, "berde")
    with pytest.raises(DomainError):
        spatial_credit(0.5, "nabers")
