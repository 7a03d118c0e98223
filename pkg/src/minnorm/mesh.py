"""Triangulated scattered-data domain: vertices, edges, and vertex stars.

A triangulation is ingested as points plus triangle index triples.  Edges are
always derived from the triangle sides, stored from lower to higher vertex
index, and each edge carries the projected length used as its parameter range.
Every vertex gets its incident edges listed in clockwise angular order; for
boundary vertices the list is the unique fan between the two boundary edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    CollinearDataError,
    DanglingVertexError,
    DegenerateTriangleError,
    DuplicateProjectionError,
    InvalidInputError,
    NotIncidentError,
    OverlappingTrianglesError,
    TieAngleError,
)

# Degeneracy tolerances are relative to the bounding-box diagonal so that the
# checks are invariant under uniform scaling of the input.
DISTINCT_REL_TOL = 1e-12
AREA_REL_TOL = 1e-12
TIE_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class ScatterPoint:
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class Edge:
    """Edge from vertex ``i`` to vertex ``j`` with ``i < j``; t runs 0..length."""

    i: int
    j: int
    length: float

    def other(self, vertex: int) -> int:
        if vertex == self.i:
            return self.j
        if vertex == self.j:
            return self.i
        raise NotIncidentError(f"vertex {vertex + 1} is not an endpoint of edge "
                               f"({self.i + 1},{self.j + 1})")


@dataclass(frozen=True)
class Triangulation:
    """Validated immutable triangulation; safe for concurrent reads."""

    points: tuple[ScatterPoint, ...]
    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[Edge, ...]
    stars: tuple[tuple[int, ...], ...]   # clockwise edge ids per vertex
    interior: tuple[bool, ...]           # cyclic star (True) or boundary fan
    edge_index: dict = field(repr=False)

    def degree(self, i: int) -> int:
        return len(self.stars[i])

    def edge_id(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        try:
            return self.edge_index[key]
        except KeyError:
            raise NotIncidentError(f"no edge between vertices {i + 1} and {j + 1}") from None


def _as_point(p) -> ScatterPoint:
    if isinstance(p, ScatterPoint):
        return p
    x, y, z = p
    return ScatterPoint(float(x), float(y), float(z))


def _cross(ox, oy, ax, ay, bx, by) -> float:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _triangles_overlap(ta, tb, eps: float) -> bool:
    """Separating-axis test on projected triangles; shared edges/vertices pass."""
    for poly, other in ((ta, tb), (tb, ta)):
        for k in range(3):
            px, py = poly[k]
            qx, qy = poly[(k + 1) % 3]
            if all(_cross(px, py, qx, qy, ox, oy) <= eps for ox, oy in other):
                return False
    return True


def build_triangulation(points: Sequence, triangles: Sequence) -> Triangulation:
    """Validate scattered data plus triangle list and derive edges and stars.

    Raises the specific mesh error for each defect: duplicate projections,
    collinear data, degenerate or overlapping triangles, points unused by all
    triangles, and tied edge directions at a vertex.
    """
    pts = [_as_point(p) for p in points]
    n = len(pts)
    if n < 3:
        raise InvalidInputError(f"need at least 3 points, got {n}")
    for idx, p in enumerate(pts):
        if not all(math.isfinite(v) for v in (p.x, p.y, p.z)):
            raise InvalidInputError(f"point {idx + 1} has non-finite coordinates")

    tris: list[tuple[int, int, int]] = []
    for t in triangles:
        t = tuple(int(v) for v in t)
        if len(t) != 3 or len(set(t)) != 3:
            raise InvalidInputError(f"triangle {t} must have three distinct vertices")
        if not all(0 <= v < n for v in t):
            raise InvalidInputError(f"triangle {t} has a vertex index out of range")
        tris.append(t)
    if not tris:
        raise InvalidInputError("triangulation has no triangles")

    xy = np.array([[p.x, p.y] for p in pts], dtype=float)
    span = xy.max(axis=0) - xy.min(axis=0)
    diag = float(math.hypot(span[0], span[1]))
    if diag == 0.0:
        raise DuplicateProjectionError("all points project to one location")

    dist_tol = DISTINCT_REL_TOL * diag
    for i in range(n):
        for j in range(i + 1, n):
            if math.hypot(xy[i, 0] - xy[j, 0], xy[i, 1] - xy[j, 1]) <= dist_tol:
                raise DuplicateProjectionError(
                    f"points {i + 1} and {j + 1} project to the same location")

    singular = np.linalg.svd(xy - xy.mean(axis=0), compute_uv=False)
    if singular[1] <= DISTINCT_REL_TOL * diag:
        raise CollinearDataError("projected points are collinear")

    area_tol = AREA_REL_TOL * diag * diag
    ccw: list[np.ndarray] = []
    for t in tris:
        a, b, c = (xy[v] for v in t)
        twice_area = _cross(a[0], a[1], b[0], b[1], c[0], c[1])
        if abs(twice_area) / 2.0 <= area_tol:
            raise DegenerateTriangleError(
                f"triangle ({t[0] + 1},{t[1] + 1},{t[2] + 1}) is degenerate")
        ccw.append(np.array([a, b, c]) if twice_area > 0 else np.array([a, c, b]))

    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if _triangles_overlap(ccw[i], ccw[j], area_tol):
                ti = tuple(v + 1 for v in tris[i])
                tj = tuple(v + 1 for v in tris[j])
                raise OverlappingTrianglesError(f"triangles {ti} and {tj} overlap")

    used = {v for t in tris for v in t}
    for i in range(n):
        if i not in used:
            raise DanglingVertexError(f"point {i + 1} is not used by any triangle")

    edge_keys = sorted({tuple(sorted((t[k], t[(k + 1) % 3]))) for t in tris for k in range(3)})
    edges = tuple(
        Edge(i, j, math.hypot(xy[j, 0] - xy[i, 0], xy[j, 1] - xy[i, 1]))
        for i, j in edge_keys
    )
    edge_index = {(e.i, e.j): eid for eid, e in enumerate(edges)}

    # Wedges covered by a triangle at each vertex, as unordered edge-id pairs.
    covered: list[set[frozenset]] = [set() for _ in range(n)]
    for t in tris:
        for k in range(3):
            v, a, b = t[k], t[(k + 1) % 3], t[(k + 2) % 3]
            covered[v].add(frozenset((edge_index[tuple(sorted((v, a)))],
                                      edge_index[tuple(sorted((v, b)))])))

    stars: list[tuple[int, ...]] = []
    interior: list[bool] = []
    for i in range(n):
        inc = [eid for eid, e in enumerate(edges) if i in (e.i, e.j)]
        withang = []
        for eid in inc:
            k = edges[eid].other(i)
            withang.append((math.atan2(xy[k, 1] - xy[i, 1], xy[k, 0] - xy[i, 0]), eid))
        withang.sort(key=lambda pair: (-pair[0], pair[1]))
        m = len(withang)
        order = [eid for _, eid in withang]
        angles = [ang for ang, _ in withang]
        gaps_uncovered = []
        for k in range(m):
            width = (angles[k] - angles[(k + 1) % m]) % (2.0 * math.pi)
            if width <= TIE_ANGLE_TOL or (2.0 * math.pi - width) <= TIE_ANGLE_TOL:
                raise TieAngleError(
                    f"two edges leave vertex {i + 1} in the same direction")
            pair = frozenset((order[k], order[(k + 1) % m]))
            if not (pair in covered[i] and width < math.pi):
                gaps_uncovered.append(k)
        if gaps_uncovered:
            # Boundary (or pinch) vertex: anchor the fan right after the gap.
            start = (gaps_uncovered[0] + 1) % m
            stars.append(tuple(order[start:] + order[:start]))
            interior.append(False)
        else:
            stars.append(tuple(order))
            interior.append(True)

    return Triangulation(
        points=tuple(pts),
        triangles=tuple(tris),
        edges=edges,
        stars=tuple(stars),
        interior=tuple(interior),
        edge_index=edge_index,
    )


def clockwise_star(tri: Triangulation, i: int, rotation: int = 0) -> tuple[int, ...]:
    """Incident edge ids at vertex ``i`` in clockwise order.

    ``rotation`` cyclically shifts the start edge; it is only meaningful for
    interior vertices, whose star has no distinguished anchor.
    """
    if not 0 <= i < len(tri.points):
        raise InvalidInputError(f"vertex index {i} out of range")
    star = tri.stars[i]
    rotation %= len(star) if star else 1
    if rotation == 0:
        return star
    if not tri.interior[i]:
        raise InvalidInputError(
            f"vertex {i + 1} is a boundary vertex; its fan order is fixed")
    return star[rotation:] + star[:rotation]


def edge_unit_vector(tri: Triangulation, i: int, edge_id: int) -> tuple[float, float]:
    """Unit plane vector from vertex ``i`` along the given incident edge."""
    e = tri.edges[edge_id]
    k = e.other(i)
    pi, pk = tri.points[i], tri.points[k]
    return ((pk.x - pi.x) / e.length, (pk.y - pi.y) / e.length)
