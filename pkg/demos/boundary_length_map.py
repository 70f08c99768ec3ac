"""The boundary-length map: from a triangulated surface and per-boundary
conformal factors to the lengths of its boundary components."""

import math

import numpy as np

from hexflow import (
    boundary_jacobian,
    boundary_lengths,
    cusp_report,
    euler_characteristic,
    in_domain,
    parse_surface,
    validate,
)

# The pair of pants (three-holed sphere) decomposes into two right-angled
# hexagons glued along three seams.  With every seam of length 2 arccosh 2,
# both hexagons are equilateral with cosh(side) = 7.
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
print("== the surface ==")
report = validate(tri, l0)
print(f"valid: {report.ok}, boundaries: {tri.n_boundaries}, "
      f"edges: {len(tri.edges)}, faces: {len(tri.faces)}, "
      f"Euler characteristic: {euler_characteristic(tri)}\n")

# At w = 0 the map returns the boundary lengths of the base metric.  Each
# component collects one arc of arccosh(7/6) from each hexagon.
print("== boundary lengths at w = 0 ==")
w0 = np.zeros(3)
print("B(0)        =", boundary_lengths(tri, l0, w0))
print("2*acosh(7/6) =", 2 * math.acosh(7.0 / 6.0), "\n")

# Factors are admissible while every rescaled edge keeps positive length:
# w_a + w_b > -ln cosh(l0/2) per edge.  The margin is the smallest slack.
print("== admissible domain ==")
for w in (w0, np.array([0.5, -0.2, 0.1]), np.array([-0.4, -0.4, 0.5])):
    check = in_domain(tri, l0, w)
    print(f"w = {w}  ->  ok = {check.ok}, margin = {check.margin:+.6f}")
print()

# Increasing one factor shrinks that component's length and stretches the
# incident edges; in the limit the component pinches to a cusp.
print("== pushing one component toward a cusp ==")
for s in (0.0, 1.0, 2.0, 4.0, 8.0):
    w = np.array([s, 0.0, 0.0])
    B = boundary_lengths(tri, l0, w)
    print(f"w_1 = {s:3.0f}  ->  B_1 = {B[0]:.6e}, B_2 = B_3 = {B[1]:.6f}")
print()

# The Jacobian H = dB/dw is symmetric negative definite - boundary lengths
# are the gradient of a strictly concave energy.
print("== Jacobian of the map ==")
w = np.array([0.2, -0.1, 0.3])
H = boundary_jacobian(tri, l0, w)
print("H =")
print(H)
print("symmetric:", bool(np.array_equal(H, H.T)))
print("eigenvalues:", np.linalg.eigvalsh(H), "\n")

print("== geometry report at w = (1, 1, 1) ==")
rep = cusp_report(tri, l0, np.ones(3))
print(f"max boundary length {rep.max_boundary:.6f}")
print(f"edge lengths within  [{rep.min_edge:.6f}, {rep.max_edge:.6f}]")
print(f"largest arc          {rep.max_arc:.6f}")
