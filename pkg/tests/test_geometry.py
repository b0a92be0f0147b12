import json
import math

import numpy as np
import pytest

from sector_dirac.errors import InvalidArgument, InvalidGeometry
from sector_dirac.geometry import (
    PolygonClass,
    PolygonDomain,
    classify_polygon,
    corner_half_apertures,
    edge_boundary_matrix,
    load_polygon,
)
from sector_dirac.spinor import SIGMA0

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]
L_SHAPE = [[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]]


def test_square_is_self_adjoint():
    poly = PolygonDomain.from_vertices(SQUARE)
    np.testing.assert_allclose(corner_half_apertures(poly), math.pi / 4)
    c = classify_polygon(poly)
    assert c.kind is PolygonClass.SELF_ADJOINT and str(c) == "SelfAdjoint"


def test_l_shape_needs_one_parameter():
    poly = PolygonDomain.from_vertices(L_SHAPE)
    assert int(np.sum(poly.reflex)) == 1
    c = classify_polygon(poly)
    assert str(c) == "ExtensionsRequired(1)" and c.heuristic
    assert np.max(corner_half_apertures(poly)) == pytest.approx(0.75 * math.pi)


def test_interior_angles_sum():
    rng = np.random.default_rng(0)
    t = np.sort(rng.uniform(0, 2 * math.pi, 9))
    rad = rng.uniform(0.5, 1.5, 9)
    poly = PolygonDomain.from_vertices(np.stack([rad * np.cos(t), rad * np.sin(t)], 1))
    assert np.sum(poly.interior_angles) == pytest.approx(7 * math.pi)


def test_clockwise_input_is_reoriented():
    poly = PolygonDomain.from_vertices(SQUARE[::-1])
    assert np.all(poly.exterior_angles > 0)
    np.testing.assert_allclose(poly.outward_normals[0], [0, -1], atol=1e-15)


def test_closing_vertex_dropped():
    assert len(PolygonDomain.from_vertices(SQUARE + [[0, 0]]).vertices) == 4


@pytest.mark.parametrize("verts, word", [
    ([[0, 0], [1, 1], [1, 0], [0, 1]], "not simple"),
    ([[0, 0], [1, 0]], "at least 3"),
    ([[0, 0], [1, 0], [2, 0], [1, 1]], "collinear"),
    ([[0, 0], [0, 0], [1, 0], [0, 1]], "repeated"),
    ([[0, 0], [1, 0], [0, math.inf]], "finite"),
])
def test_invalid_polygons(verts, word):
    with pytest.raises(InvalidGeometry, match=word):
        PolygonDomain.from_vertices(verts)


def test_rotation_preserves_classification():
    poly = PolygonDomain.from_vertices(L_SHAPE)
    rot = poly.rotated(0.7)
    np.testing.assert_allclose(np.sort(rot.interior_angles), np.sort(poly.interior_angles))
    assert str(classify_polygon(rot)) == str(classify_polygon(poly))


def test_edge_boundary_matrix():
    poly = PolygonDomain.from_vertices(SQUARE)
    for i in range(4):
        b = edge_boundary_matrix(poly, i)
        np.testing.assert_allclose(b @ b, SIGMA0, atol=1e-15)
    with pytest.raises(InvalidArgument):
        edge_boundary_matrix(poly, 4)


def test_load_polygon(tmp_path):
    good = tmp_path / "l.json"
    good.write_text(json.dumps(L_SHAPE))
    assert len(load_polygon(good).vertices) == 6
    bad = tmp_path / "bad.json"
    bad.write_text("[[0, 0],\n [1, 0\n")
    with pytest.raises(InvalidGeometry, match=r"bad\.json:\d+:\d+"):
        load_polygon(bad)
    odd = tmp_path / "odd.json"
    odd.write_text('[[0, 0], [1, "x"], [0, 1]]')
    with pytest.raises(InvalidGeometry, match="element 1"):
        load_polygon(odd)
