import math

import pytest

import hilbertkit as hk


def test_disk_distance_is_log_cross_ratio():
    disk = hk.Domain.unit_ball(2)
    # chord (-1, 1) through 0 and 0.5: log((1 * 1.5) / (1 * 0.5))
    assert hk.distance(disk, [0.0, 0.0], [0.5, 0.0]) == pytest.approx(math.log(3.0), abs=1e-12)


def test_domain_json_round_trip():
    d = hk.Domain.from_json({"type": "ellipse", "center": [0.2, -0.1], "form": [[2, 0.3], [0.3, 1]]})
    back = hk.Domain.from_json(d.to_json())
    x, y = [0.1, 0.0], [0.3, -0.2]
    assert hk.distance(back, x, y) == pytest.approx(hk.distance(d, x, y), rel=1e-12)


def test_outside_point_raises():
    with pytest.raises(hk.HilbertError):
        hk.distance(hk.Domain.unit_ball(2), [0.0, 0.0], [2.0, 0.0])


def test_fit_recovers_rotation():
    c, s = math.cos(0.4), math.sin(0.4)
    pts = [[0.1, 0.2], [-0.3, 0.1], [0.25, -0.4], [0.0, 0.5], [-0.2, -0.2]]
    out = [[c * x - s * y, s * x + c * y] for x, y in pts]
    fitted, residual = hk.fit_projective_map(pts, out)
    assert residual < 1e-10
    truth = hk.ProjectiveMap([[c, -s, 0], [s, c, 0], [0, 0, 1]])
    assert fitted.distance_to(truth) < 1e-9
    assert hk.verify_isometry(fitted, hk.Domain.unit_ball(2), 50, 1) < 1e-9


def test_surface_group_enumeration_and_crossings():
    g = hk.SurfaceGroup.genus2_octagon()
    assert g.genus == 2
    assert len(hk.enumerate(g, 1)) == 4
    assert hk.intersection_count(g, "a1", "b1") == 1
    assert hk.is_simple(g, "a1")
    v = hk.is_filling(g, ["a1", "a2", "a1b1A1B1", "b1", "b2", "b1b2"])
    assert v["filling"] and v["euler"] == -2
