"""End-to-end behavior on randomized triangulations beyond the built-ins."""

import numpy as np
import pytest
from scipy.spatial import Delaunay

from minnorm.basis import enumerate_basis
from minnorm.errors import InvalidInputError
from minnorm.mesh import build_triangulation
from minnorm.network import (
    evaluate,
    lp_norm,
    reconstruct,
    verify_characterization,
    verify_smoothness,
)
from minnorm.solver import SolverConfig, solve


def random_mesh(rng, n):
    """Delaunay triangulation of n random points with random heights."""
    for _ in range(50):
        xy = rng.uniform(-1.0, 1.0, size=(n, 2))
        z = rng.uniform(-1.0, 1.0, size=n)
        tris = Delaunay(xy).simplices
        try:
            return build_triangulation(
                [(x, y, h) for (x, y), h in zip(xy, z)],
                [tuple(int(v) for v in t) for t in tris])
        except InvalidInputError:
            continue   # sliver triangle below tolerance; redraw
    raise AssertionError("could not draw a valid random mesh")


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("p", [1.5, 3.0])
def test_random_meshes_solve_and_verify(seed, p):
    rng = np.random.default_rng(seed)
    tri = random_mesh(rng, int(rng.integers(5, 11)))
    basis = enumerate_basis(tri)
    d = basis.data_vector()
    alpha, report = solve(basis, d, SolverConfig(p=p))
    assert report.converged
    net = reconstruct(alpha, basis, tri, report.q, p=p)
    tol = 1e-10 * max(1.0, float(np.max(np.abs(d))))
    assert verify_characterization(net, basis, d) <= tol
    assert verify_smoothness(net) <= 1e-7
    for curve in net.curves:
        e = tri.edges[curve.edge]
        assert evaluate(net, curve.edge, 0.0) == tri.points[e.i].z
        assert evaluate(net, curve.edge, e.length) == tri.points[e.j].z
    assert lp_norm(net) == pytest.approx(report.norm, rel=1e-12)


def test_higher_degree_interior_vertex():
    # Hexagon fan: interior vertex of degree 6, five slots.
    rng = np.random.default_rng(77)
    pts = [(0.0, 0.0, rng.uniform(-1, 1))]
    for k in range(6):
        a = 2 * np.pi * k / 6 + 0.2
        pts.append((np.cos(a), np.sin(a), rng.uniform(-1, 1)))
    tris = [(0, 1 + k, 1 + (k + 1) % 6) for k in range(6)]
    tri = build_triangulation(pts, tris)
    assert tri.degree(0) == 6 and tri.interior[0]
    basis = enumerate_basis(tri)
    assert sum(1 for b in basis.networks if b.vertex == 0) == 4
    alpha, report = solve(basis, basis.data_vector(), SolverConfig(p=4.0))
    net = reconstruct(alpha, basis, tri, report.q, p=4.0)
    assert verify_smoothness(net) <= 1e-8
