"""The concave energy behind the boundary-length map: path independence,
the gradient identity, and the concavity that drives both solvers."""

import math

import numpy as np

from hexflow import (
    boundary_lengths,
    face_energy,
    parse_surface,
    segment_energy,
    total_energy,
)

PANTS = f"""
surface pants
boundaries 3
edge 1 2 3 {2 * math.acosh(2.0)!r}
edge 2 3 1 {2 * math.acosh(2.0)!r}
edge 3 1 2 {2 * math.acosh(2.0)!r}
face 1 1 2 3 1 2 3
face 2 1 2 3 1 2 3
"""
tri, l0 = parse_surface(PANTS)
l0_sides = (l0[1], l0[2], l0[3])

# The energy of one face is the line integral of the arc 1-form
# theta_i dw_i + theta_j dw_j + theta_k dw_k from the base point 0.  The
# form is closed (the arc Jacobian is symmetric), so the path of
# integration does not matter.
print("== path independence ==")
w = (0.1, 0.2, 0.3)
straight = face_energy(l0_sides, w)
via = (0.05, 0.15, 0.1)
detour = segment_energy(l0_sides, (0, 0, 0), via) + segment_energy(l0_sides, via, w)
print(f"straight segment : {straight:.15f}")
print(f"two-leg polyline : {detour:.15f}")
print(f"difference       : {abs(straight - detour):.2e}\n")

# The gradient of the total energy is exactly the boundary-length map.
print("== gradient identity ==")
w = np.array([0.15, -0.05, 0.3])
h = 1e-6
grad = np.array([
    (total_energy(tri, l0, w + dv) - total_energy(tri, l0, w - dv)) / (2 * h)
    for dv in h * np.eye(3)
])
print("finite-difference gradient :", grad)
print("boundary lengths           :", boundary_lengths(tri, l0, w), "\n")

# Strict concavity: the midpoint value always beats the chord.
print("== concavity probe ==")
rng = np.random.default_rng(0)
worst = math.inf
for _ in range(200):
    w1 = rng.uniform(-0.1, 0.8, 3)
    w2 = rng.uniform(-0.1, 0.8, 3)
    gap = total_energy(tri, l0, 0.5 * (w1 + w2)) - 0.5 * (
        total_energy(tri, l0, w1) + total_energy(tri, l0, w2)
    )
    worst = min(worst, gap)
print(f"smallest midpoint-minus-chord gap over 200 pairs: {worst:.3e} (> 0)\n")

# Along the diagonal the landscape rises to a finite supremum as all
# boundary lengths decay: the energy of the cusped limit.
print("== energy along the diagonal w = (s, s, s) ==")
for s in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
    value = total_energy(tri, l0, np.full(3, s))
    b = boundary_lengths(tri, l0, np.full(3, s))[0]
    print(f"s = {s:3.1f}   energy = {value:10.6f}   B_i = {b:.3e}")
