"""Polygonal domains: corner apertures, edge boundary matrices and the
self-adjointness classification obtained by localising at each corner."""

from dataclasses import dataclass
import enum
import json
import math

import numpy as np

from .errors import InvalidGeometry, InvalidArgument
from .spinor import boundary_matrix

CONVEX_TOL = 1e-12
COLLINEAR_TOL = 1e-12


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _segments_intersect(p1, p2, q1, q2):
    """Closed-segment intersection test by orientation signs."""
    def orient(a, b, c):
        v = _cross(b - a, c - a)
        scale = max(np.linalg.norm(b - a) * np.linalg.norm(c - a), 1e-300)
        return 0 if abs(v) <= 1e-14 * scale else (1 if v > 0 else -1)

    def on_segment(a, b, c):
        return (min(a[0], b[0]) - 1e-14 <= c[0] <= max(a[0], b[0]) + 1e-14
                and min(a[1], b[1]) - 1e-14 <= c[1] <= max(a[1], b[1]) + 1e-14)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and on_segment(p1, p2, q1)) or (o2 == 0 and on_segment(p1, p2, q2))
            or (o3 == 0 and on_segment(q1, q2, p1)) or (o4 == 0 and on_segment(q1, q2, p2)))


@dataclass(frozen=True)
class PolygonDomain:
    """Simple polygon, stored counterclockwise.

    Construct with ``PolygonDomain.from_vertices`` to validate and orient.
    """

    vertices: np.ndarray

    @classmethod
    def from_vertices(cls, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidGeometry("vertices must be a list of [x, y] pairs")
        if v.shape[0] < 3:
            raise InvalidGeometry("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidGeometry("vertices must be finite")
        if np.allclose(v[0], v[-1]) and v.shape[0] > 3:
            v = v[:-1]
        cls(v)._check_simple()
        area2 = float(np.sum(_cross(v, np.roll(v, -1, axis=0))))
        if area2 == 0.0:
            raise InvalidGeometry("polygon has zero area")
        if area2 < 0:
            v = v[::-1].copy()
        poly = cls(v)
        poly._check_corners()
        return poly

    @property
    def edges(self):
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def _check_simple(self):
        v = self.vertices
        n = len(v)
        for i in range(n):
            if np.allclose(v[i], v[(i + 1) % n], rtol=0, atol=1e-14):
                raise InvalidGeometry(f"repeated vertex at index {i}")
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                    raise InvalidGeometry(f"edges {i} and {j} intersect: polygon not simple")

    def _check_corners(self):
        e_in = np.roll(self.edges, 1, axis=0)
        e_out = self.edges
        cr = _cross(e_in, e_out)
        scale = np.linalg.norm(e_in, axis=1) * np.linalg.norm(e_out, axis=1)
        bad = np.flatnonzero(np.abs(cr) <= COLLINEAR_TOL * scale)
        if bad.size:
            raise InvalidGeometry(f"collinear corner at vertex {int(bad[0])}")

    @property
    def exterior_angles(self):
        """Signed turning angle at each vertex (positive = left turn)."""
        e_in = np.roll(self.edges, 1, axis=0)
        e_out = self.edges
        return np.arctan2(_cross(e_in, e_out), np.sum(e_in * e_out, axis=1))

    @property
    def interior_angles(self):
        return math.pi - self.exterior_angles

    @property
    def reflex(self):
        return self.interior_angles > math.pi

    @property
    def outward_normals(self):
        e = self.edges
        n = np.stack([e[:, 1], -e[:, 0]], axis=1)
        return n / np.linalg.norm(n, axis=1)[:, None]

    def rotated(self, angle):
        c, s = math.cos(angle), math.sin(angle)
        return PolygonDomain.from_vertices(self.vertices @ np.array([[c, s], [-s, c]]))


def corner_half_apertures(poly):
    """Half of the interior angle at each vertex, in (0, π)."""
    return 0.5 * poly.interior_angles


class PolygonClass(enum.Enum):
    SELF_ADJOINT = "SelfAdjoint"
    EXTENSIONS_REQUIRED = "ExtensionsRequired"


@dataclass(frozen=True)
class PolygonClassification:
    """Classification with the number of corners needing a parameter.

    ``heuristic`` marks the count as the one-parameter-per-reflex-corner
    localisation rule rather than a proven statement.
    """

    kind: PolygonClass
    count: int = 0
    heuristic: bool = False

    def __str__(self):
        if self.kind is PolygonClass.SELF_ADJOINT:
            return "SelfAdjoint"
        return f"ExtensionsRequired({self.count})"


def classify_polygon(poly):
    """Self-adjoint iff every half-aperture is at most π/2 (up to 1e-12);
    otherwise one unit-circle parameter per reflex corner."""
    half = corner_half_apertures(poly)
    needing = int(np.sum(half > math.pi / 2 + CONVEX_TOL))
    if needing == 0:
        return PolygonClassification(PolygonClass.SELF_ADJOINT)
    return PolygonClassification(PolygonClass.EXTENSIONS_REQUIRED, needing, heuristic=True)


def edge_boundary_matrix(poly, edge_index):
    """Boundary matrix of the outward normal of edge ``edge_index``
    (from vertex i to vertex i + 1)."""
    n = len(poly.vertices)
    if not isinstance(edge_index, (int, np.integer)) or not (0 <= edge_index < n):
        raise InvalidArgument(f"edge index {edge_index} outside [0, {n})")
    nx, ny = poly.outward_normals[edge_index]
    return boundary_matrix((float(nx), float(ny)))


def load_polygon(path):
    """Read a JSON array of [x, y] pairs.

    Raises
    ------
    InvalidGeometry
        With the offending location for malformed content.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGeometry(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise InvalidGeometry(f"{path}: expected a JSON array of [x, y] pairs")
    for i, item in enumerate(data):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in item)):
            raise InvalidGeometry(f"{path}: element {i} is not an [x, y] pair of numbers")
    return PolygonDomain.from_vertices(data)
