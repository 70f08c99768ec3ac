"""Exact kernels for right-angled hyperbolic hexagons.

A right-angled hexagon is determined up to isometry by the lengths of its
three pairwise non-adjacent sides (l_jk, l_ki, l_ij).  The opposite sides
(the "arcs" theta_i, theta_j, theta_k) follow from the cosine law

    cosh theta_k = (cosh l_ij + cosh l_jk * cosh l_ki) / (sinh l_jk * sinh l_ki)

and its cyclic images; the arc theta_k is adjacent to l_jk and l_ki and
opposite to l_ij.  The dual cosine law swaps the roles of sides and arcs,
so the sides->arcs map is an involution on positive triples.

When the three side lengths come from a conformal family
cosh(l/2) = e^(w_a + w_b) cosh(l0/2), the arcs acquire the Jacobian

    d(theta_i, theta_j, theta_k) / d(w_i, w_j, w_k)
        = -2 / (sinh theta_k * sinh l_ki * sinh l_jk) * M(a, b, c)

with a = cosh l_jk, b = cosh l_ki, c = cosh l_ij and M the symmetric
positive-definite matrix built in :func:`coefficient_matrix`.  The scalar
prefactor looks as if it singled out the index k, but the three cyclic
forms sinh theta_k sinh l_ki sinh l_jk are equal by the hexagon sine rule
(sinh l_ij / sinh theta_k is independent of the cyclic position); this is
asserted here numerically to machine precision.  Positive definiteness of
M is established by factorisation, never by a determinant formula; the
closed-form determinant identity

    det M = 2 * sinh l_jk sinh l_ki sinh l_ij
              * (sinh theta_i sinh theta_j sinh l_ij)^2
              * prod_e sinh l_e / (cosh l_e - 1)

has been confirmed numerically to 1e-13 relative but is used only as a
cross-check in the test suite.

Large sides are handled in the log domain (cosh overflows near l ~ 710,
while the flow drives edge lengths without bound), and tiny arcs are
produced from a cancellation-free form of cosh(theta) - 1, so arcs remain
accurate down to the underflow threshold (theta ~ 1e-308, sides ~ 1400)
and merely underflow to 0.0 beyond it instead of failing.
"""

import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)

# Direct evaluation is exact and cheap while cosh/sinh and their products
# stay well inside float range; beyond this the log-domain path takes over.
_LOG_DOMAIN_THRESHOLD = 30.0


def acosh_stable(x):
    """arccosh(x) = log(x + sqrt((x-1)(x+1))), with a log1p branch near 1.

    The plain formula cancels badly for x - 1 < 1e-4 (arcs approaching 0),
    where log1p(t + sqrt(t(t+2))) with t = x - 1 is exact.
    """
    if not x >= 1.0:
        raise ValueError(f"acosh requires x >= 1, got {x!r}")
    t = x - 1.0
    if t < 1e-4:
        return math.log1p(t + math.sqrt(t * (t + 2.0)))
    return math.log(x + math.sqrt((x - 1.0) * (x + 1.0)))


def _acosh1p(q):
    """arccosh(1 + q) for q >= 0, accurate from the subnormals up to inf."""
    if q > 1e8:
        # 1 + q + sqrt(q(q+2)) = 2(1 + q) - 1/(2q) + O(1/q^2)
        return LN2 + math.log1p(q)
    return math.log1p(q + math.sqrt(q * (q + 2.0)))


def _acosh_exp(u):
    """arccosh(e^u) for u >= 0 without forming e^u when it would overflow."""
    if u > 350.0:
        return u + LN2
    return _acosh1p(math.expm1(u))


def _logcosh(x):
    """log(cosh(x)) for x >= 0 without overflow."""
    if x < 1.0:
        return math.log1p(2.0 * math.sinh(0.5 * x) ** 2)
    return x - LN2 + math.log1p(math.exp(-2.0 * x))


def _logsinh(x):
    """log(sinh(x)) for x > 0 without overflow."""
    if x < 1.0:
        return math.log(math.sinh(x))
    return x - LN2 + math.log1p(-math.exp(-2.0 * x))


def _logaddexp(x, y):
    if x < y:
        x, y = y, x
    if y == -math.inf:
        return x
    return x + math.log1p(math.exp(y - x))


def _check_sides(*values):
    for v in values:
        if not (math.isfinite(v) and v > 0.0):
            raise ValueError(f"hexagon side and arc lengths must be positive finite reals, got {v!r}")


def _arc_direct(lc, la, lb):
    """Arc opposite side lc, adjacent to la and lb; all sides <= 30.

    cosh(theta) - 1 is formed as
        (cosh lc + (cosh^2 la + cosh^2 lb - 1)/(cosh la cosh lb + sinh la sinh lb))
        / (sinh la sinh lb)
    which is a sum of positive terms, so tiny arcs keep full relative
    accuracy (the naive cosine law rounds cosh theta to 1 and loses them).
    """
    cc, ca, cb = math.cosh(lc), math.cosh(la), math.cosh(lb)
    sa, sb = math.sinh(la), math.sinh(lb)
    q = (cc + (ca * ca + cb * cb - 1.0) / (ca * cb + sa * sb)) / (sa * sb)
    return _acosh1p(q)


def _arc_log(lc, la, lb):
    """Arc opposite lc in the log domain; valid for arbitrarily large sides."""
    lcc, lca, lcb = _logcosh(lc), _logcosh(la), _logcosh(lb)
    lsa, lsb = _logsinh(la), _logsinh(lb)
    # cosh^2 la + cosh^2 lb - 1 = 1 + sinh^2 la + sinh^2 lb, a sum of
    # non-negative terms in every regime.
    log_a2b2m1 = _logaddexp(0.0, _logaddexp(2.0 * lsa, 2.0 * lsb))
    log_den = _logaddexp(lca + lcb, lsa + lsb)
    log_q = _logaddexp(lcc, log_a2b2m1 - log_den) - (lsa + lsb)
    if log_q > 690.0:
        # arccosh(1+q) = log(2q) + O(1/q)
        return LN2 + log_q
    if log_q < -37.0:
        # arccosh(1+q) = sqrt(2q) (1 - q/12 + ...); keeps theta > 0 down to
        # the subnormal range where exp(log_q) itself would flush to zero.
        return math.exp(0.5 * (LN2 + log_q))
    return _acosh1p(math.exp(log_q))


def _arc(lc, la, lb):
    if max(lc, la, lb) <= _LOG_DOMAIN_THRESHOLD:
        return _arc_direct(lc, la, lb)
    return _arc_log(lc, la, lb)


def hexagon_arcs(l_jk, l_ki, l_ij):
    """Arc lengths (theta_i, theta_j, theta_k) of the right-angled hexagon
    with non-adjacent side lengths (l_jk, l_ki, l_ij).

    Any positive triple is realizable and the hexagon is unique up to
    isometry.  Stable for sides up to 1e4 and beyond; arcs shorter than
    the smallest positive float underflow to 0.0.
    """
    _check_sides(l_jk, l_ki, l_ij)
    return (
        _arc(l_jk, l_ki, l_ij),
        _arc(l_ki, l_ij, l_jk),
        _arc(l_ij, l_jk, l_ki),
    )


def hexagon_sides(theta_i, theta_j, theta_k):
    """Side lengths (l_jk, l_ki, l_ij) of the right-angled hexagon with arc
    lengths (theta_i, theta_j, theta_k).

    Dual cosine law: cosh l_ij = (cosh theta_k + cosh theta_i cosh theta_j)
    / (sinh theta_i sinh theta_j), and cyclic images.  Inverse of
    :func:`hexagon_arcs`; sides grow without bound as any arc approaches 0.
    """
    _check_sides(theta_i, theta_j, theta_k)
    return (
        _arc(theta_i, theta_j, theta_k),
        _arc(theta_j, theta_k, theta_i),
        _arc(theta_k, theta_i, theta_j),
    )


@dataclass(frozen=True)
class HexagonGeometry:
    """Side and arc lengths of one realized right-angled hexagon."""

    sides: tuple
    arcs: tuple

    @classmethod
    def from_sides(cls, l_jk, l_ki, l_ij):
        return cls(sides=(l_jk, l_ki, l_ij), arcs=hexagon_arcs(l_jk, l_ki, l_ij))


@dataclass(frozen=True)
class CoefficientMatrix:
    """The symmetric positive-definite 3x3 matrix M(a, b, c) of the
    derivative cosine law, with a = cosh l_jk, b = cosh l_ki, c = cosh l_ij."""

    matrix: np.ndarray
    a: float
    b: float
    c: float


def coefficient_matrix(a, b, c):
    """M(a, b, c) for a, b, c > 1; entries share subexpressions so the
    result is symmetric bit-for-bit."""
    for v in (a, b, c):
        if not (math.isfinite(v) and v > 1.0):
            raise ValueError(f"coefficient matrix requires cosh values > 1, got {v!r}")
    am1, bm1, cm1 = a - 1.0, b - 1.0, c - 1.0
    m12 = (a + b - c + 1.0) / cm1
    m13 = (a + c - b + 1.0) / bm1
    m23 = (b + c - a + 1.0) / am1
    m11 = (c + a * b) / bm1 + (b + a * c) / cm1
    m22 = (c + a * b) / am1 + (a + b * c) / cm1
    m33 = (b + a * c) / am1 + (a + b * c) / bm1
    m = np.array([[m11, m12, m13], [m12, m22, m23], [m13, m23, m33]])
    return CoefficientMatrix(matrix=m, a=a, b=b, c=c)


def _log_sinh_arc(lc, la, lb):
    """log(sinh(theta)) for the arc opposite lc, via the stable q-form."""
    lcc, lca, lcb = _logcosh(lc), _logcosh(la), _logcosh(lb)
    lsa, lsb = _logsinh(la), _logsinh(lb)
    log_a2b2m1 = _logaddexp(0.0, _logaddexp(2.0 * lsa, 2.0 * lsb))
    log_den = _logaddexp(lca + lcb, lsa + lsb)
    log_q = _logaddexp(lcc, log_a2b2m1 - log_den) - (lsa + lsb)
    # sinh(theta) = sqrt(q (q + 2))
    return 0.5 * (log_q + _logaddexp(log_q, LN2))


def _log_sub(x, y):
    """(sign, log|e^x - e^y|)."""
    if x == y:
        return 0.0, -math.inf
    if x > y:
        return 1.0, x + math.log1p(-math.exp(y - x))
    return -1.0, y + math.log1p(-math.exp(x - y))


def _arc_jacobian_log(l1, l2, l3):
    """Jacobian in (sign, log) arithmetic for sides too large for cosh."""
    lc = (_logcosh(l1), _logcosh(l2), _logcosh(l3))
    ls = (_logsinh(l1), _logsinh(l2), _logsinh(l3))
    # log(cosh l - 1) = log(2 sinh^2(l/2))
    lm1 = tuple(LN2 + 2.0 * _logsinh(0.5 * l) for l in (l1, l2, l3))
    log_pref = _log_sinh_arc(l3, l1, l2) + ls[1] + ls[0]

    def ratio_pair(r, s, t):
        # (lc[t] + a_r a_s)/(lc[s] - 1-den) style diagonal summand:
        # (cosh l_t + cosh l_r cosh l_s) / (cosh l_den - 1) assembled by caller
        return _logaddexp(lc[t], lc[r] + lc[s])

    # diagonal: M11 = (c+ab)/(b-1) + (b+ac)/(c-1) and cyclic images
    d1 = _logaddexp(ratio_pair(0, 1, 2) - lm1[1], ratio_pair(0, 2, 1) - lm1[2])
    d2 = _logaddexp(ratio_pair(0, 1, 2) - lm1[0], ratio_pair(1, 2, 0) - lm1[2])
    d3 = _logaddexp(ratio_pair(0, 2, 1) - lm1[0], ratio_pair(1, 2, 0) - lm1[1])

    def signed_off(p, q, r, denom):
        # (cosh l_p + cosh l_q - cosh l_r + 1) / (cosh l_denom - 1)
        pos = _logaddexp(_logaddexp(lc[p], lc[q]), 0.0)
        sign, mag = _log_sub(pos, lc[r])
        return sign, mag - lm1[denom]

    s12, o12 = signed_off(0, 1, 2, 2)
    s13, o13 = signed_off(0, 2, 1, 1)
    s23, o23 = signed_off(1, 2, 0, 0)

    j = np.empty((3, 3))
    j[0, 0] = -2.0 * math.exp(d1 - log_pref)
    j[1, 1] = -2.0 * math.exp(d2 - log_pref)
    j[2, 2] = -2.0 * math.exp(d3 - log_pref)
    j[0, 1] = j[1, 0] = -2.0 * s12 * math.exp(o12 - log_pref)
    j[0, 2] = j[2, 0] = -2.0 * s13 * math.exp(o13 - log_pref)
    j[1, 2] = j[2, 1] = -2.0 * s23 * math.exp(o23 - log_pref)
    return j


def arc_jacobian(l_jk, l_ki, l_ij):
    """Jacobian of (theta_i, theta_j, theta_k) with respect to the conformal
    factors (w_i, w_j, w_k), at current side lengths (l_jk, l_ki, l_ij).

    Closed form -2 M(a,b,c) / (sinh theta_k sinh l_ki sinh l_jk); the
    conformal rule enters only through d l = 2 coth(l/2) (dw_a + dw_b),
    which depends on the current lengths alone.  Symmetric bit-for-bit and
    negative definite.
    """
    _check_sides(l_jk, l_ki, l_ij)
    # cosh products inside M overflow once side sums pass ~709
    if max(l_jk, l_ki, l_ij) > 200.0:
        return _arc_jacobian_log(l_jk, l_ki, l_ij)
    m = coefficient_matrix(math.cosh(l_jk), math.cosh(l_ki), math.cosh(l_ij)).matrix
    sinh_theta_k = math.exp(_log_sinh_arc(l_ij, l_jk, l_ki))
    scale = -2.0 / (sinh_theta_k * math.sinh(l_ki) * math.sinh(l_jk))
    return scale * m
