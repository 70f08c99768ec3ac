"""Conformal change of metric and the boundary-length map.

A conformal factor assigns one real w_i to each boundary component and
rescales every edge through

    cosh(l_ij / 2) = e^(w_i + w_j) cosh(l0_ij / 2),

a self-edge picking up e^(2 w_i).  The factor is admissible when every
rescaled length stays positive, i.e. w_i + w_j > -ln cosh(l0_ij / 2) for
every edge; these strict half-space conditions cut out an open convex
polytope containing w = 0.

Throughout, a factor is a length-n array with position i-1 holding the
value for boundary component i, and the boundary-length map returns the
array B with B_i the total length of component i (the sum of its hexagon
arcs).  B is the gradient of the concave total energy in :mod:`.energy`,
and its Jacobian H below is the (symmetric, negative-definite) Hessian.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .hexagon import HexagonGeometry, _acosh_exp, _logcosh, arc_jacobian, hexagon_arcs


class DomainCheck(NamedTuple):
    ok: bool
    margin: float


def edge_length(l0, w_a, w_b):
    """Rescaled length 2 arccosh(e^(w_a + w_b) cosh(l0/2)) of one edge.

    Raises DomainError when the factor drops the argument to 1 or below
    (the strict inequality defining the admissible domain fails).
    """
    if not (math.isfinite(l0) and l0 > 0.0):
        raise ValueError(f"base length must be positive, got {l0!r}")
    u = w_a + w_b + _logcosh(0.5 * l0)
    if u <= 0.0:
        raise DomainError(
            f"w_a + w_b = {w_a + w_b!r} at or below the admissibility "
            f"threshold {-_logcosh(0.5 * l0)!r} for base length {l0!r}"
        )
    return 2.0 * _acosh_exp(u)


def _edge_slack(tri, l0, w):
    """Per-edge slack u_e = w_a + w_b + ln cosh(l0_e/2); admissible iff all > 0."""
    return {
        e.edge_id: w[e.b_i - 1] + w[e.b_j - 1] + _logcosh(0.5 * l0[e.edge_id])
        for e in tri.edges
    }


def in_domain(tri, l0, w):
    """Admissibility flag and margin min_e (w_a + w_b + ln cosh(l0_e/2)).

    The test is strict, matching the open domain; solvers that need a
    safety cushion keep their own.
    """
    w = np.asarray(w, dtype=float)
    margin = float(min(_edge_slack(tri, l0, w).values()))
    return DomainCheck(ok=margin > 0.0, margin=margin)


def face_sides(tri, l0, w, face):
    """Rescaled lengths of a face's slot edges, in slot order."""
    return tuple(
        edge_length(l0[eid], w[tri.edge(eid).b_i - 1], w[tri.edge(eid).b_j - 1])
        for eid in face.opposite_edges
    )


def face_hexagon(tri, l0, w, face):
    """Realized hexagon of one face under the rescaled metric; the arc in
    slot t lies on the component of corner t."""
    return HexagonGeometry.from_sides(*face_sides(tri, l0, w, face))


def boundary_lengths(tri, l0, w):
    """The boundary-length map: B_i = sum of the arcs on component i over
    all incident face corners."""
    w = np.asarray(w, dtype=float)
    B = np.zeros(tri.n_boundaries)
    for face in tri.faces:
        arcs = hexagon_arcs(*face_sides(tri, l0, w, face))
        for t in range(3):
            B[face.corners[t] - 1] += arcs[t]
    return B


def boundary_jacobian(tri, l0, w):
    """H = dB/dw, assembled densely from the per-face arc Jacobians.

    A face contributes its 3x3 block through the corner -> component map;
    repeated corners (self-edges) accumulate per slot.  H is symmetric and
    negative definite on the admissible domain.
    """
    w = np.asarray(w, dtype=float)
    n = tri.n_boundaries
    H = np.zeros((n, n))
    for face in tri.faces:
        block = arc_jacobian(*face_sides(tri, l0, w, face))
        idx = [c - 1 for c in face.corners]
        for r in range(3):
            for s in range(3):
                H[idx[r], idx[s]] += block[r, s]
    return H
