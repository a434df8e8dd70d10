"""Vector field indices, boundary splitting, genericity enforcement."""

import math

import numpy as np
import pytest

from lawcheck.fields import (
    GenericityError,
    InteriorSingularity,
    TangentialSingularity,
    VectorFieldSpec,
    boundary_decompose,
    check_interior_nonvanishing,
    index_at,
    index_tangential,
    total_indices,
)
from lawcheck.geometry import BoundaryPatch, RiemannianPatch, jet_cos, jet_sin


def sing2(field, name="s", center=(0, 0), radius=0.2):
    return InteriorSingularity(name=name, ambient=list(center),
                               exclusion_radius=2 * radius,
                               chart_params=["x", "y"], center=list(center),
                               radius=radius, chart_field=field)


def disk_patch():
    return RiemannianPatch(2, [(0, 1), (0, 2 * math.pi)],
                           lambda x: [[1, 0], [0, x[0] * x[0]]],
                           chart_map=lambda x: [x[0] * jet_cos(x[1]),
                                                x[0] * jet_sin(x[1])])


def disk_rim(patch=None):
    patch = patch or disk_patch()
    return BoundaryPatch(patch, [(0, 2 * math.pi)],
                         embed=lambda t: [1.0 + 0 * t[0], t[0]],
                         outward=lambda t, x: [1.0, 0.0])


CONSTANT_POLAR = lambda x: [jet_cos(x[1]), -1.0 * jet_sin(x[1]) / x[0]]


# -- interior indices -----------------------------------------------------------

def test_identity_field_has_index_one():
    assert index_at(sing2(lambda x: [x[0], x[1]])).value == 1


def test_antipodal_3d_has_index_minus_one():
    s = InteriorSingularity(name="a", ambient=[0, 0, 0], exclusion_radius=0.4,
                            chart_params=["x", "y", "z"], center=[0, 0, 0],
                            radius=0.2,
                            chart_field=lambda x: [-1.0 * x[0], -1.0 * x[1],
                                                   -1.0 * x[2]])
    assert index_at(s).value == -1


def test_doubled_angle_field_against_winding_oracle():
    field = lambda x: [x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]]
    res = index_at(sing2(field))
    # independent oracle: accumulate the angle of the field over the circle
    samples = 10_000
    total = 0.0
    prev = None
    for k in range(samples + 1):
        t = 2 * math.pi * k / samples
        x, y = 0.2 * math.cos(t), 0.2 * math.sin(t)
        ang = math.atan2(2 * x * y, x * x - y * y)
        if prev is not None:
            d = ang - prev
            while d > math.pi:
                d -= 2 * math.pi
            while d < -math.pi:
                d += 2 * math.pi
            total += d
        prev = ang
    oracle = round(total / (2 * math.pi))
    assert res.value == oracle == 2
    assert res.residual < 1e-6


def test_index_invariant_under_radius_halving_and_rescaling():
    field = lambda x: [x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]]
    s = sing2(field)
    full = index_at(s)
    half = index_at(s, radius=s.radius / 2)
    assert full.value == half.value
    scaled = sing2(lambda x: [7.0 * c for c in field(x)])
    assert index_at(scaled).value == full.value


def test_index_error_on_vanishing_field():
    vanishing = sing2(lambda x: [x[0] * 0.0, x[1] * 0.0])
    with pytest.raises(ValueError):
        index_at(vanishing)


def test_index_error_on_non_integer_residual():
    # oscillatory direction field with a deliberately under-resolved rule:
    # the degree estimate lands far from an integer and must be refused
    osc = sing2(lambda x: [(x[0] * 60.0).cos(), (x[1] * 60.0).sin()])
    with pytest.raises(GenericityError):
        index_at(osc, order=8)


def test_index_unsupported_dimension():
    s = InteriorSingularity(name="bad", ambient=[0], exclusion_radius=0.1,
                            chart_params=["x"], center=[0], radius=0.1,
                            chart_field=lambda x: [x[0]])
    with pytest.raises(ValueError):
        index_at(s)


# -- boundary decomposition -------------------------------------------------------

def test_disk_constant_field_split_and_indices():
    spec = VectorFieldSpec(
        components=CONSTANT_POLAR,
        tangential=[TangentialSingularity("west", 0, [math.pi], 0.1),
                    TangentialSingularity("east", 0, [0.0], 0.1)])
    rim = disk_rim()
    split = boundary_decompose(spec, rim, 0)
    assert [s.name for s in split.minus] == ["west"]
    assert [s.name for s in split.plus] == ["east"]
    west = index_tangential(spec, rim, split.minus[0])
    assert west.value == 1
    east = index_tangential(spec, rim, split.plus[0])
    assert east.value == -1
    sums = total_indices([], split, {"west": west, "east": east})
    assert sums == {"ind_v": 0, "ind_dminus": 1, "ind_dplus": -1}


def test_pure_normal_field_is_flagged_not_fatal():
    spec = VectorFieldSpec(components=lambda x: [x[0], 0.0 * x[0]])
    split = boundary_decompose(spec, disk_rim(), 0)
    assert split.minus == [] and split.plus == []
    assert any("degenerates in the outward region" in w for w in split.warnings)


def test_undeclared_inward_zero_aborts():
    # inward-pointing radial field: the projection vanishes identically while
    # the field points inward, which corrupts the inward index sum
    spec = VectorFieldSpec(components=lambda x: [-1.0 * x[0], 0.0 * x[0]])
    with pytest.raises(GenericityError):
        boundary_decompose(spec, disk_rim(), 0)


def test_rotational_field_is_generic():
    # tangent everywhere: the normal component vanishes but the projection
    # never does, so the law's data is intact
    spec = VectorFieldSpec(components=lambda x: [0.0 * x[0], 1.0 + 0.0 * x[0]])
    split = boundary_decompose(spec, disk_rim(), 0)
    assert split.warnings == []
    assert split.min_projection_norm > 0.9


def test_declared_singularity_with_nonzero_projection_rejected():
    spec = VectorFieldSpec(
        components=CONSTANT_POLAR,
        tangential=[TangentialSingularity("wrong", 0, [math.pi / 3], 0.1)])
    with pytest.raises(GenericityError):
        boundary_decompose(spec, disk_rim(), 0)


def test_field_vanishing_on_boundary_aborts():
    spec = VectorFieldSpec(components=lambda x: [x[0] - 1.0, 0.0 * x[0]])
    with pytest.raises(GenericityError):
        boundary_decompose(spec, disk_rim(), 0)


def test_tangential_two_point_rule_needs_nonvanishing_tests():
    spec = VectorFieldSpec(
        components=lambda x: [1.0 + 0.0 * x[0], 0.0 * x[0]],
        tangential=[TangentialSingularity("west", 0, [math.pi], 0.1)])
    with pytest.raises(GenericityError):
        index_tangential(spec, disk_rim(), spec.tangential[0])


# -- 3-dimensional boundary -------------------------------------------------------

def ball_setup():
    ball = RiemannianPatch(
        3, [(0, 1), (0, math.pi), (0, 2 * math.pi)],
        lambda x: [[1, 0, 0], [0, x[0] * x[0], 0],
                   [0, 0, x[0] * x[0] * jet_sin(x[1]) * jet_sin(x[1])]],
        chart_map=lambda x: [x[0] * jet_sin(x[1]) * jet_cos(x[2]),
                             x[0] * jet_sin(x[1]) * jet_sin(x[2]),
                             x[0] * jet_cos(x[1])])
    sph = BoundaryPatch(ball, [(0, math.pi), (-math.pi / 2, 3 * math.pi / 2)],
                        embed=lambda t: [1.0 + 0 * t[0], t[0], t[1]],
                        outward=lambda t, x: [1.0, 0.0, 0.0])
    const = lambda x: [jet_sin(x[1]) * jet_cos(x[2]),
                       jet_cos(x[1]) * jet_cos(x[2]) / x[0],
                       -1.0 * jet_sin(x[2]) / (x[0] * jet_sin(x[1]))]
    return ball, sph, const


def test_ball_constant_field_indices():
    _ball, sph, const = ball_setup()
    spec = VectorFieldSpec(
        components=const,
        tangential=[TangentialSingularity("back", 0, [math.pi / 2, math.pi], 0.15),
                    TangentialSingularity("front", 0, [math.pi / 2, 0.0], 0.15)])
    split = boundary_decompose(spec, sph, 0)
    assert [s.name for s in split.minus] == ["back"]
    back = index_tangential(spec, sph, split.minus[0], order=128)
    assert back.value == 1
    assert back.residual < 1e-3


def test_interior_sampling_catches_undeclared_zero():
    patch = disk_patch()
    # rotational field with no declared zero: |V|_g = r dips below the margin
    # near the center and must be reported
    spec = VectorFieldSpec(components=lambda x: [0.0 * x[0], 1.0 + 0 * x[0]],
                           margin=1e-2)
    with pytest.raises(GenericityError):
        check_interior_nonvanishing(patch, spec)


def test_interior_sampling_respects_exclusions():
    patch = disk_patch()
    spec = VectorFieldSpec(
        components=lambda x: [0.0 * x[0], 1.0 + 0 * x[0]], margin=1e-2,
        interior=[InteriorSingularity(
            name="center", ambient=[0, 0], exclusion_radius=0.3,
            chart_params=["x", "y"], center=[0, 0], radius=0.15,
            chart_field=lambda x: [-1.0 * x[1], x[0]])])
    check_interior_nonvanishing(patch, spec)


def test_default_index_radius_rule():
    from lawcheck.fields import default_index_radius

    # capped at 0.1 with nothing nearby
    assert default_index_radius([0, 0]) == pytest.approx(0.1)
    # half the distance to the nearest other singularity
    assert default_index_radius([0, 0], other_ambients=[[0.12, 0]]) == \
        pytest.approx(0.06)
    # boundary points compete too
    assert default_index_radius([0, 0], other_ambients=[[1, 0]],
                                boundary_points=[[0.0, 0.05]]) == \
        pytest.approx(0.025)
    with pytest.raises(GenericityError):
        default_index_radius([0, 0], other_ambients=[[0, 0]])


def test_scenario_radius_defaulting():
    from lawcheck.scenarios import load_catalog_raw, load_scenario

    cfg = load_catalog_raw("disk-radial")
    del cfg["interior_singularities"][0]["radius"]
    sc = load_scenario(cfg)
    # center of the unit disk: boundary at distance 1 does not bind the cap
    assert sc.field_spec.interior[0].radius == pytest.approx(0.1)
    assert index_at(sc.field_spec.interior[0]).value == 1
