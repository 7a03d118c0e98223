"""Basic curve networks: hat profiles on three consecutive star edges.

A basic network at vertex ``i``, slot ``s``, takes the three consecutive edges
of the (rotated) clockwise star starting at position ``s`` and puts a linear
hat on each: weight ``lambda_r`` at the vertex, decaying to zero at the far
end.  The weights are the unique affine combination that annihilates the three
unit edge directions, i.e. the solution of

    [u1x u2x u3x; u1y u2y u3y; 1 1 1] @ lambda = (0, 0, 1).

The star rotation is chosen so the leading weight of every slot stays away
from zero, which keeps the construction usable for every slot of the vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    InvalidInputError,
    NoValidRotationError,
    OutOfRangeError,
    SingularDirectionsError,
)
from .mesh import Edge, Triangulation, clockwise_star, edge_unit_vector

LAMBDA1_TOL = 1e-10
LAMBDA_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class SupportEdge:
    """One edge of a basic network's support with its hat in canonical form."""

    edge: int
    length: float
    lam: float
    c: float   # hat(t) = c + d*t on the canonical edge parametrization
    d: float


@dataclass(frozen=True)
class BasisNetwork:
    vertex: int
    slot: int   # 1-based, 1 <= slot <= degree - 2
    support: tuple[SupportEdge, SupportEdge, SupportEdge]
    lambdas: tuple[float, float, float]
    d: float


class BasisSet:
    """All basic networks of a triangulation in (vertex, slot) order.

    Also carries the reverse map edge id -> hat contributions, which is what
    the integral assembly loops over.
    """

    def __init__(self, networks: Sequence[BasisNetwork], num_edges: int,
                 edge_lengths: Sequence[float]):
        self.networks = tuple(networks)
        self.num_edges = num_edges
        self.edge_lengths = tuple(edge_lengths)
        self._pos = {(b.vertex, b.slot): k for k, b in enumerate(self.networks)}
        contribs: list[list[tuple[int, float, float]]] = [[] for _ in range(num_edges)]
        for pos, b in enumerate(self.networks):
            for se in b.support:
                contribs[se.edge].append((pos, se.c, se.d))
        self.edge_contribs = tuple(tuple(c) for c in contribs)

    def __len__(self) -> int:
        return len(self.networks)

    def __iter__(self) -> Iterator[BasisNetwork]:
        return iter(self.networks)

    def index_of(self, vertex: int, slot: int) -> int:
        return self._pos[(vertex, slot)]

    def data_vector(self) -> np.ndarray:
        return np.array([b.d for b in self.networks], dtype=float)


def lambda_coefficients(u1, u2, u3) -> tuple[float, float, float]:
    """Weights summing to one whose combination of the three directions is zero."""
    mat = np.array([[u1[0], u2[0], u3[0]],
                    [u1[1], u2[1], u3[1]],
                    [1.0, 1.0, 1.0]])
    rhs = np.array([0.0, 0.0, 1.0])
    try:
        lam = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError:
        raise SingularDirectionsError(
            f"directions {u1}, {u2}, {u3} admit no unique affine combination") from None
    if float(np.max(np.abs(mat @ lam - rhs))) > LAMBDA_RESIDUAL_TOL:
        raise SingularDirectionsError(
            f"directions {u1}, {u2}, {u3} are too ill-conditioned")
    return (float(lam[0]), float(lam[1]), float(lam[2]))


def find_star_rotation(units: Sequence[tuple[float, float]], cyclic: bool = True) -> int:
    """Smallest cyclic rotation with a nonzero leading weight for every slot.

    For a fixed fan (``cyclic=False``) only rotation 0 is a candidate and it
    is merely verified.
    """
    m = len(units)
    if m < 3:
        raise InvalidInputError(f"need at least 3 directions, got {m}")
    for offset in range(m) if cyclic else (0,):
        rotated = list(units[offset:]) + list(units[:offset])
        if all(
            abs(lambda_coefficients(rotated[s - 1], rotated[s], rotated[s + 1])[0])
            > LAMBDA1_TOL
            for s in range(1, m - 1)
        ):
            return offset
    raise NoValidRotationError(
        "no rotation keeps the leading weight of every slot nonzero"
        if cyclic else "boundary fan yields a zero leading weight")


def choose_star_rotation(tri: Triangulation, i: int) -> int:
    """Rotation offset applied to the clockwise star of vertex ``i``."""
    if tri.degree(i) < 3:
        raise InvalidInputError(f"vertex {i + 1} has degree < 3; no basic network")
    units = [edge_unit_vector(tri, i, eid) for eid in tri.stars[i]]
    try:
        return find_star_rotation(units, cyclic=tri.interior[i])
    except NoValidRotationError as exc:
        raise NoValidRotationError(f"vertex {i + 1}: {exc}") from None


def _hat_on_edge(vertex: int, lam: float, e: Edge) -> tuple[float, float]:
    # Hat peaks with value lam at the basis vertex and is 0 at the far end,
    # expressed on the canonical (low index -> high index) parametrization.
    if vertex == e.i:
        return lam, -lam / e.length
    return 0.0, lam / e.length


def _data_value(vertex, lambdas, support, tri: Triangulation) -> float:
    zi = tri.points[vertex].z
    total = 0.0
    for lam, se in zip(lambdas, support):
        k = tri.edges[se.edge].other(vertex)
        total += lam * (tri.points[k].z - zi) / se.length
    return total


def d_value(b: BasisNetwork, tri: Triangulation) -> float:
    """Weighted divided difference of the heights over the support of ``b``."""
    return _data_value(b.vertex, b.lambdas, b.support, tri)


def enumerate_basis(tri: Triangulation, rotation_offsets: dict | None = None) -> BasisSet:
    """Build every basic network, ordered by vertex then slot.

    ``rotation_offsets`` overrides the star rotation per vertex (interior
    vertices only); each override is validated like a found rotation.
    """
    networks: list[BasisNetwork] = []
    for i in range(len(tri.points)):
        m = tri.degree(i)
        if m < 3:
            continue
        if rotation_offsets is not None and i in rotation_offsets:
            offset = rotation_offsets[i] % m
            units = [edge_unit_vector(tri, i, eid) for eid in tri.stars[i]]
            rotated = units[offset:] + units[:offset]
            for s in range(1, m - 1):
                lam1 = lambda_coefficients(rotated[s - 1], rotated[s], rotated[s + 1])[0]
                if abs(lam1) <= LAMBDA1_TOL:
                    raise NoValidRotationError(
                        f"vertex {i + 1}: rotation {offset} makes the leading "
                        f"weight of slot {s} vanish")
        else:
            offset = choose_star_rotation(tri, i)
        star = clockwise_star(tri, i, offset)
        units = [edge_unit_vector(tri, i, eid) for eid in star]
        for s in range(1, m - 1):
            lambdas = lambda_coefficients(units[s - 1], units[s], units[s + 1])
            support = []
            for r in range(3):
                e = tri.edges[star[s - 1 + r]]
                c, d = _hat_on_edge(i, lambdas[r], e)
                support.append(SupportEdge(star[s - 1 + r], e.length, lambdas[r], c, d))
            support = tuple(support)
            networks.append(BasisNetwork(i, s, support, lambdas,
                                         _data_value(i, lambdas, support, tri)))
    return BasisSet(networks, len(tri.edges), [e.length for e in tri.edges])


def evaluate_on_edge(b: BasisNetwork, tri: Triangulation, edge_id: int, t: float) -> float:
    """Value of the basic network at parameter ``t`` of the canonical edge."""
    length = tri.edges[edge_id].length
    if not 0.0 <= t <= length:
        raise OutOfRangeError(f"t={t} outside [0, {length}]")
    for se in b.support:
        if se.edge == edge_id:
            return se.c + se.d * t
    return 0.0
