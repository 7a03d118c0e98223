import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from minnorm.basis import (
    choose_star_rotation,
    d_value,
    enumerate_basis,
    evaluate_on_edge,
    find_star_rotation,
    lambda_coefficients,
)
from minnorm.errors import (
    NoValidRotationError,
    OutOfRangeError,
    SingularDirectionsError,
)
from minnorm.fixtures import pyramid, seven_point
from minnorm.mesh import build_triangulation, edge_unit_vector
from minnorm.solver import assemble_gram

from conftest import planar_variant

S2 = math.sqrt(2.0)
S3 = math.sqrt(3.0)


def test_lambda_symmetric_120():
    u = [(math.cos(a), math.sin(a)) for a in (0.0, 2 * math.pi / 3, -2 * math.pi / 3)]
    lam = lambda_coefficients(*u)
    assert lam == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-14)


def test_lambda_right_angle_diagonal():
    lam = lambda_coefficients((1, 0), (0, 1), (-S2 / 2, -S2 / 2))
    assert lam[0] == pytest.approx(1 - S2 / 2, abs=1e-14)
    assert lam[1] == pytest.approx(1 - S2 / 2, abs=1e-14)
    assert lam[2] == pytest.approx(S2 - 1, abs=1e-14)


def test_lambda_antiparallel_pair_zeroes_leading_weight():
    lam = lambda_coefficients((1, 0), (0, 1), (0, -1))
    assert lam == pytest.approx((0.0, 0.5, 0.5), abs=1e-14)


def test_lambda_singular_directions():
    with pytest.raises(SingularDirectionsError):
        lambda_coefficients((1, 0), (1, 0), (0, 1))


@given(st.lists(st.floats(0.01, 2 * math.pi - 0.01), min_size=3, max_size=3,
                unique_by=lambda a: round(a, 3)))
def test_lambda_defining_constraints(angles):
    units = [(math.cos(a), math.sin(a)) for a in sorted(angles)]
    try:
        lam = lambda_coefficients(*units)
    except SingularDirectionsError:
        return
    assert sum(lam) == pytest.approx(1.0, abs=1e-12)
    combo = np.array([[u[0], u[1]] for u in units]).T @ np.array(lam)
    assert np.max(np.abs(combo)) <= 1e-11


def test_find_star_rotation_synthetic_degree4():
    a, b, c = (0.0, 1.0), (1.0, 0.0), (-1 / S2, 1 / S2)
    units = [a, b, (-b[0], -b[1]), c]
    # offset 0 has the antiparallel pair (b, -b) in slot 1.
    lam0 = lambda_coefficients(units[0], units[1], units[2])
    assert abs(lam0[0]) <= 1e-12
    assert find_star_rotation(units, cyclic=True) == 1


def test_find_star_rotation_no_valid():
    units = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
    with pytest.raises(NoValidRotationError):
        find_star_rotation(units, cyclic=True)


def test_find_star_rotation_boundary_is_verification_only():
    assert find_star_rotation([(1, 0), (0, 1), (-1, 1)], cyclic=False) == 0
    with pytest.raises(NoValidRotationError):
        # slot 1 pair antiparallel and the fan may not rotate
        find_star_rotation([(1, 1), (1, 0), (-1, 0)], cyclic=False)


def test_choose_star_rotation_pyramid(pyramid_tri):
    for i in range(4):
        assert choose_star_rotation(pyramid_tri, i) == 0


def test_basis_counts(pyramid_basis, seven_basis, square_basis):
    assert len(pyramid_basis) == 4
    assert len(seven_basis) == 14
    assert len(square_basis) == 6
    tri = build_triangulation([(0, 0, 0), (1, 0, 1), (0, 1, 2)], [(0, 1, 2)])
    assert len(enumerate_basis(tri)) == 0


def test_basis_ordering_and_index(seven_basis):
    order = [(b.vertex, b.slot) for b in seven_basis.networks]
    assert order == sorted(order)
    for pos, b in enumerate(seven_basis.networks):
        assert seven_basis.index_of(b.vertex, b.slot) == pos
    # slots count is degree - 2 per vertex
    per_vertex = {}
    for b in seven_basis.networks:
        per_vertex.setdefault(b.vertex, []).append(b.slot)
    assert {v: len(s) for v, s in per_vertex.items()} == \
        {1: 2, 2: 2, 3: 2, 5: 3, 6: 3, 0: 1, 4: 1}


def test_d_value_apex(pyramid_tri, pyramid_basis):
    b = pyramid_basis.networks[pyramid_basis.index_of(3, 1)]
    assert b.lambdas == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-14)
    assert b.d == pytest.approx(S3 / 2, abs=1e-13)
    assert d_value(b, pyramid_tri) == pytest.approx(S3 / 2, abs=1e-13)


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_d_vanishes_on_planes(gx, gy, c):
    for fix in (pyramid(), seven_point()):
        tri = planar_variant(fix, gx, gy, c)
        basis = enumerate_basis(tri)
        assert np.max(np.abs(basis.data_vector())) <= 1e-12


def test_d_zero_for_constant_heights():
    fix = seven_point()
    points = [(p["x"], p["y"], 7.25) for p in fix["points"]]
    tri = build_triangulation(points, [[v - 1 for v in t] for t in fix["triangles"]])
    assert np.max(np.abs(enumerate_basis(tri).data_vector())) == 0.0


def test_evaluate_on_edge_hat_profile(pyramid_tri, pyramid_basis):
    b = pyramid_basis.networks[pyramid_basis.index_of(0, 1)]   # V1, canonical start
    for lam, se in zip(b.lambdas, b.support):
        e = pyramid_tri.edges[se.edge]
        assert e.i == 0   # V1 is the low endpoint of each support edge
        assert evaluate_on_edge(b, pyramid_tri, se.edge, 0.0) == pytest.approx(lam, abs=1e-14)
        assert evaluate_on_edge(b, pyramid_tri, se.edge, e.length) == pytest.approx(0.0, abs=1e-14)
        assert evaluate_on_edge(b, pyramid_tri, se.edge, e.length / 2) == \
            pytest.approx(lam / 2, abs=1e-14)


def test_evaluate_on_edge_apex_orientation(pyramid_tri, pyramid_basis):
    # V4 is the high endpoint of its support edges: the hat rises with t.
    b = pyramid_basis.networks[pyramid_basis.index_of(3, 1)]
    for lam, se in zip(b.lambdas, b.support):
        e = pyramid_tri.edges[se.edge]
        assert e.j == 3
        assert evaluate_on_edge(b, pyramid_tri, se.edge, e.length) == pytest.approx(lam, abs=1e-14)
        assert evaluate_on_edge(b, pyramid_tri, se.edge, 0.0) == 0.0


def test_evaluate_on_edge_off_support_and_range(pyramid_tri, pyramid_basis):
    b = pyramid_basis.networks[pyramid_basis.index_of(3, 1)]
    off = pyramid_tri.edge_id(0, 1)
    assert evaluate_on_edge(b, pyramid_tri, off, 0.5) == 0.0
    with pytest.raises(OutOfRangeError):
        evaluate_on_edge(b, pyramid_tri, b.support[0].edge, 2.0)


def test_evaluate_on_edge_is_linear(seven_tri, seven_basis):
    b = seven_basis.networks[0]
    se = b.support[1]
    t1, t2 = 0.2 * se.length, 0.7 * se.length
    mid = 0.5 * (t1 + t2)
    v1 = evaluate_on_edge(b, seven_tri, se.edge, t1)
    v2 = evaluate_on_edge(b, seven_tri, se.edge, t2)
    vm = evaluate_on_edge(b, seven_tri, se.edge, mid)
    assert v1 + v2 == pytest.approx(2 * vm, abs=1e-14)


def test_defining_constraints_on_all_fixtures(pyramid_tri, pyramid_basis,
                                              seven_tri, seven_basis,
                                              square_tri, square_basis):
    for tri, basis in ((pyramid_tri, pyramid_basis), (seven_tri, seven_basis),
                       (square_tri, square_basis)):
        for b in basis.networks:
            assert sum(b.lambdas) == pytest.approx(1.0, abs=1e-12)
            combo = np.zeros(2)
            for lam, se in zip(b.lambdas, b.support):
                combo += lam * np.array(edge_unit_vector(tri, b.vertex, se.edge))
            assert np.max(np.abs(combo)) <= 1e-12
            assert len({se.edge for se in b.support}) == 3
            assert abs(b.lambdas[0]) > 1e-10


def test_gram_is_positive_definite(pyramid_basis, seven_basis, square_basis):
    for basis in (pyramid_basis, seven_basis, square_basis):
        gram = assemble_gram(basis)
        assert np.allclose(gram, gram.T)
        assert np.min(np.linalg.eigvalsh(gram)) > 0.0


def test_rotation_override(square_tri):
    base = enumerate_basis(square_tri)
    rotated = enumerate_basis(square_tri, rotation_offsets={4: 1})
    pos = base.index_of(4, 1)
    assert base.networks[pos].support != rotated.networks[pos].support
    for b in rotated.networks:
        assert abs(b.lambdas[0]) > 1e-10


def test_square_center_weights(square_basis):
    # At right-angle spacing the middle direction drops out.
    b = square_basis.networks[square_basis.index_of(4, 1)]
    assert sorted(b.lambdas) == pytest.approx([0.0, 0.5, 0.5], abs=1e-14)
