"""Closed-form integrals of signed powers of linear forms against t^k.

Everything the residual, the Newton matrix, the curve reconstruction, and the
norm evaluation need reduces to the two moment integrals

    S_k = integral_0^T (a + b t)^r_pm t^k dt      (signed power)
    A_k = integral_0^T |a + b t|^r   t^k dt       (absolute power)

with k <= 2 and r > -1.  With (u)^s_pm := |u|^s sign(u) the primitives

    d/du |u|^s   = s (u)^(s-1)_pm
    d/du (u)^s_pm = s |u|^(s-1)

make both integrals exact after substituting u = a + b t and expanding
t^k = ((u - a)/b)^k.  That expansion cancels catastrophically when |bT| is
small against |a|, so in that regime (no sign change possible) the integrand
is expanded instead as a binomial series in bT/a, truncated at machine
precision.  Both branches are exact up to round-off; numerical quadrature is
never used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisSet
from .errors import ExponentRangeError, InvalidInputError

# Switch to the series branch when |bT| <= SERIES_CUTOFF * |a|.  Above the
# cutoff the antiderivative path loses at most (1/cutoff)^(k+1) ~ 8x precision.
SERIES_CUTOFF = 0.5

# Relative floor below which an edge's linear form counts as identically zero
# for the r = q-2 < 0 regularization of the Newton matrix.
REG_REL_FLOOR = 1e-12


@dataclass(frozen=True)
class EdgeLinearForm:
    """w(t) = a + b*t on one canonical edge."""

    edge: int
    a: float
    b: float


def signed_power(x: float, r: float) -> float:
    """|x|^r * sign(x), with the convention that it is 0 at x = 0."""
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** r, x)


def _series_moment(a: float, b: float, r: float, k: int, T: float) -> float:
    # integral_0^T |a + b t|^r t^k dt with no root in [0, T]:
    # T^(k+1) |a|^r * sum_m binom(r, m) x^m / (k + m + 1),  x = bT/a, |x| <= 1/2.
    x = b * T / a
    term = 1.0
    total = 1.0 / (k + 1)
    for m in range(200):
        term *= (r - m) / (m + 1) * x
        contrib = term / (k + m + 2)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            break
    return abs(a) ** r * T ** (k + 1) * total


def _primitive_diff(u0: float, u1: float, r: float, j: int, signed: bool) -> float:
    # Antiderivative difference of (u)^r_pm u^j (signed) or |u|^r u^j (absolute).
    s = r + j + 1.0
    abs_antiderivative = (j % 2 == 0) if signed else (j % 2 == 1)
    if abs_antiderivative:
        return (abs(u1) ** s - abs(u0) ** s) / s
    return (signed_power(u1, s) - signed_power(u0, s)) / s


def _moment(a: float, b: float, r: float, k: int, T: float, signed: bool) -> float:
    if r <= -1.0:
        raise ExponentRangeError(f"exponent r={r} not integrable (need r > -1)")
    if k not in (0, 1, 2):
        raise InvalidInputError(f"moment degree k={k} unsupported (need 0, 1 or 2)")
    if T < 0.0:
        raise InvalidInputError(f"interval length T={T} must be nonnegative")
    if T == 0.0:
        return 0.0
    if b == 0.0:
        if a == 0.0:
            # Identically-zero form: 0 under the signed-power convention;
            # |0|^0 = 1 keeps the r = 0 (Gram) case exact; r < 0 diverges.
            if r == 0.0:
                return 0.0 if signed else T ** (k + 1) / (k + 1)
            return 0.0 if (signed or r > 0.0) else math.inf
        base = signed_power(a, r) if signed else abs(a) ** r
        return base * T ** (k + 1) / (k + 1)
    if abs(b * T) <= SERIES_CUTOFF * abs(a):
        value = _series_moment(a, b, r, k, T)
        return math.copysign(value, a) if signed else value
    total = 0.0
    for j in range(k + 1):
        total += (math.comb(k, j) * (-a) ** (k - j)
                  * _primitive_diff(a, a + b * T, r, j, signed))
    return total / b ** (k + 1)


def moment_integral(a: float, b: float, r: float, k: int, T: float) -> float:
    """integral_0^T (a + b t)^r_pm t^k dt, exact up to round-off."""
    return _moment(a, b, r, k, T, signed=True)


def abs_moment_integral(a: float, b: float, r: float, k: int, T: float) -> float:
    """integral_0^T |a + b t|^r t^k dt, exact up to round-off."""
    return _moment(a, b, r, k, T, signed=False)


# -- assembly over a basis set ----------------------------------------------

def edge_forms(alpha, basis: BasisSet) -> np.ndarray:
    """Per-edge (a, b) of the linear combination sum_k alpha_k B_k."""
    alpha = np.asarray(alpha, dtype=float)
    forms = np.zeros((basis.num_edges, 2))
    for eid, contribs in enumerate(basis.edge_contribs):
        for pos, c, d in contribs:
            forms[eid, 0] += alpha[pos] * c
            forms[eid, 1] += alpha[pos] * d
    return forms


def residual_entry(alpha, basis: BasisSet, kl: int, q: float) -> float:
    """integral over all edges of (sum alpha B)^(q-1)_pm times basis network kl."""
    forms = edge_forms(alpha, basis)
    r = q - 1.0
    total = 0.0
    for se in sorted(basis.networks[kl].support, key=lambda s: s.edge):
        a, b = forms[se.edge]
        total += (se.c * moment_integral(a, b, r, 0, se.length)
                  + se.d * moment_integral(a, b, r, 1, se.length))
    return total


def residual_entries(alpha, basis: BasisSet, q: float) -> np.ndarray:
    """All residual integrals at once; one moment evaluation per edge."""
    forms = edge_forms(alpha, basis)
    r = q - 1.0
    out = np.zeros(len(basis))
    for eid, contribs in enumerate(basis.edge_contribs):
        if not contribs:
            continue
        a, b = forms[eid]
        length = basis.edge_lengths[eid]
        m0 = moment_integral(a, b, r, 0, length)
        m1 = moment_integral(a, b, r, 1, length)
        for pos, c, d in contribs:
            out[pos] += c * m0 + d * m1
    return out


def _abs_moments_regularized(a: float, b: float, q: float, length: float):
    """A_0, A_1, A_2 at exponent q-2, with a floor where the form vanishes.

    For q < 2 the exponent is negative and an (almost) identically zero form
    would blow up; such edges contribute as if |w| were pinned at the floor.
    The residual path never uses this floor.
    """
    r = q - 2.0
    if q < 2.0:
        floor = REG_REL_FLOOR * (1.0 + abs(a) + abs(b) * length)
        if max(abs(a), abs(a + b * length)) < floor:
            scale = floor ** r
            return (scale * length,
                    scale * length ** 2 / 2.0,
                    scale * length ** 3 / 3.0)
    return (abs_moment_integral(a, b, r, 0, length),
            abs_moment_integral(a, b, r, 1, length),
            abs_moment_integral(a, b, r, 2, length))


def hessian_entry(alpha, basis: BasisSet, is_: int, kl: int, q: float) -> float:
    """(q-1) * integral |sum alpha B|^(q-2) B_is B_kl; symmetric in (is, kl)."""
    forms = edge_forms(alpha, basis)
    sup1 = {se.edge: se for se in basis.networks[is_].support}
    sup2 = {se.edge: se for se in basis.networks[kl].support}
    total = 0.0
    for eid in sorted(set(sup1) & set(sup2)):
        a, b = forms[eid]
        a0, a1, a2 = _abs_moments_regularized(a, b, q, basis.edge_lengths[eid])
        s1, s2 = sup1[eid], sup2[eid]
        total += (s1.c * s2.c * a0 + (s1.c * s2.d + s1.d * s2.c) * a1
                  + s1.d * s2.d * a2)
    return (q - 1.0) * total


def hessian_matrix(alpha, basis: BasisSet, q: float) -> np.ndarray:
    """Full matrix of hessian entries, assembled edge by edge."""
    forms = edge_forms(alpha, basis)
    n = len(basis)
    h = np.zeros((n, n))
    for eid, contribs in enumerate(basis.edge_contribs):
        if not contribs:
            continue
        a, b = forms[eid]
        a0, a1, a2 = _abs_moments_regularized(a, b, q, basis.edge_lengths[eid])
        for idx, (p1, c1, d1) in enumerate(contribs):
            for p2, c2, d2 in contribs[idx:]:
                v = c1 * c2 * a0 + (c1 * d2 + d1 * c2) * a1 + d1 * d2 * a2
                h[p1, p2] += v
                if p1 != p2:
                    h[p2, p1] += v
    return (q - 1.0) * h


def q_energy(alpha, basis: BasisSet, q: float) -> float:
    """sum over edges of integral |w_e|^q dt for w = sum alpha B."""
    forms = edge_forms(alpha, basis)
    return sum(
        abs_moment_integral(forms[eid, 0], forms[eid, 1], q, 0, basis.edge_lengths[eid])
        for eid in range(basis.num_edges)
    )


def dual_objective(alpha, basis: BasisSet, q: float, d) -> float:
    """Convex objective whose gradient entries are residual_entry(.) - d."""
    alpha = np.asarray(alpha, dtype=float)
    return q_energy(alpha, basis, q) / q - float(alpha @ np.asarray(d, dtype=float))
