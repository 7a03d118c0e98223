"""Closed-form reconstruction and verification of the optimal curve network.

On every edge the optimal second derivative is the signed power (q-1) of the
accumulated linear form w.  Integrating twice and fixing the two interpolation
conditions gives, with G2(t) = t*S_0(t) - S_1(t) (Cauchy's repeated integral
written through the signed moments S_k over [0, t]):

    f(t) = z_start + c1*t + G2(t),    c1 = (z_end - z_start - G2(L)) / L.

Curves are stored by their coefficients only; evaluation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSet
from .calculus import (
    EdgeLinearForm,
    abs_moment_integral,
    edge_forms,
    moment_integral,
    residual_entries,
)
from .errors import InvalidInputError, OutOfRangeError
from .mesh import Triangulation, edge_unit_vector


@dataclass(frozen=True)
class EdgeCurve:
    edge: int
    w: EdgeLinearForm
    z_start: float
    z_end: float
    c1: float


@dataclass(frozen=True)
class SolutionNetwork:
    p: float
    q: float
    alpha: tuple[float, ...]
    curves: tuple[EdgeCurve, ...]
    tri: Triangulation


def accumulate_edge_forms(alpha, basis: BasisSet, tri: Triangulation) -> list[EdgeLinearForm]:
    """Linear form of sum(alpha * B) on every edge, zero off all supports."""
    forms = edge_forms(alpha, basis)
    return [EdgeLinearForm(eid, float(forms[eid, 0]), float(forms[eid, 1]))
            for eid in range(len(tri.edges))]


def reconstruct(alpha, basis: BasisSet, tri: Triangulation, q: float,
                p: float | None = None) -> SolutionNetwork:
    """Curve network with second derivative (sum alpha B)^(q-1)_pm, interpolating z."""
    if p is None:
        p = q / (q - 1.0)
    forms = accumulate_edge_forms(alpha, basis, tri)
    r = q - 1.0
    curves = []
    for eid, e in enumerate(tri.edges):
        w = forms[eid]
        zi, zj = tri.points[e.i].z, tri.points[e.j].z
        g2 = (e.length * moment_integral(w.a, w.b, r, 0, e.length)
              - moment_integral(w.a, w.b, r, 1, e.length))
        curves.append(EdgeCurve(eid, w, zi, zj, (zj - zi - g2) / e.length))
    return SolutionNetwork(float(p), float(q), tuple(float(a) for a in np.asarray(alpha)),
                           tuple(curves), tri)


def _check_t(t: float, length: float) -> None:
    if not 0.0 <= t <= length:
        raise OutOfRangeError(f"t={t} outside [0, {length}]")


def evaluate(net: SolutionNetwork, edge_id: int, t: float) -> float:
    """Height of the curve at parameter ``t`` of the canonical edge."""
    curve = net.curves[edge_id]
    length = net.tri.edges[edge_id].length
    _check_t(t, length)
    if t == 0.0:
        return curve.z_start
    if t == length:
        return curve.z_end
    r = net.q - 1.0
    g2 = (t * moment_integral(curve.w.a, curve.w.b, r, 0, t)
          - moment_integral(curve.w.a, curve.w.b, r, 1, t))
    return curve.z_start + curve.c1 * t + g2


def derivative(net: SolutionNetwork, edge_id: int, t: float) -> float:
    """First derivative along the canonical edge parametrization."""
    curve = net.curves[edge_id]
    _check_t(t, net.tri.edges[edge_id].length)
    return curve.c1 + moment_integral(curve.w.a, curve.w.b, net.q - 1.0, 0, t)


def lp_norm(net: SolutionNetwork) -> float:
    """L_p norm of the second derivative; |f''|^p = |w|^q by conjugacy."""
    total = sum(
        abs_moment_integral(c.w.a, c.w.b, net.q, 0, net.tri.edges[c.edge].length)
        for c in net.curves
    )
    return total ** (1.0 / net.p)


def verify_characterization(net: SolutionNetwork, basis: BasisSet, d) -> float:
    """Max absolute defect of <F'', B_kl> = d_kl over all basic networks."""
    defect = residual_entries(np.asarray(net.alpha), basis, net.q) - np.asarray(d, dtype=float)
    return float(np.max(np.abs(defect))) if len(defect) else 0.0


def _tangent(net: SolutionNetwork, vertex: int, edge_id: int) -> np.ndarray:
    e = net.tri.edges[edge_id]
    ux, uy = edge_unit_vector(net.tri, vertex, edge_id)
    curve = net.curves[edge_id]
    if vertex == e.i:
        slope = curve.c1
    else:
        # Outgoing parametrization from the far vertex flips the sign.
        slope = -(curve.c1 + moment_integral(curve.w.a, curve.w.b, net.q - 1.0,
                                             0, e.length))
    return np.array([ux, uy, slope])


def verify_smoothness(net: SolutionNetwork, tri: Triangulation | None = None) -> float:
    """Worst normalized triple product of consecutive tangents over all vertices.

    Zero means every vertex of degree >= 3 has a common tangent plane.
    """
    tri = net.tri if tri is None else tri
    worst = 0.0
    for i in range(len(tri.points)):
        star = tri.stars[i]
        m = len(star)
        if m < 3:
            continue
        tangents = [_tangent(net, i, eid) for eid in star]
        count = m if tri.interior[i] else m - 2
        for k in range(count):
            t1 = tangents[k % m]
            t2 = tangents[(k + 1) % m]
            t3 = tangents[(k + 2) % m]
            det = float(np.linalg.det(np.array([t1, t2, t3])))
            scale = (float(np.linalg.norm(t1)) * float(np.linalg.norm(t2))
                     * float(np.linalg.norm(t3)))
            worst = max(worst, abs(det) / scale)
    return worst


def sample(net: SolutionNetwork, samples_per_edge: int) -> list[tuple[int, np.ndarray]]:
    """Uniform samples of every edge curve as 3D points, endpoints exact."""
    if samples_per_edge < 2:
        raise InvalidInputError("need at least 2 samples per edge")
    out = []
    for curve in net.curves:
        e = net.tri.edges[curve.edge]
        pi, pj = net.tri.points[e.i], net.tri.points[e.j]
        pts = np.empty((samples_per_edge, 3))
        for k in range(samples_per_edge):
            t = e.length * k / (samples_per_edge - 1)
            if k == samples_per_edge - 1:
                t = e.length
            frac = t / e.length
            pts[k] = ((1.0 - frac) * pi.x + frac * pj.x,
                      (1.0 - frac) * pi.y + frac * pj.y,
                      evaluate(net, curve.edge, t))
        out.append((curve.edge, pts))
    return out
