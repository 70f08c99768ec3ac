"""Damped Newton solver for prescribed boundary lengths.

For every strictly positive target vector there is exactly one admissible
conformal factor whose boundary lengths match it: the target is the
gradient of the strictly concave objective

    G(w) = total_energy(w) - <target, w>,

so solving B(w) = target means maximizing G.  The iteration solves
H(w) d = target - B(w) with the (negative-definite) boundary Jacobian H,
then backtracks until the trial point is safely admissible and, while the
residual is still large, until the energy merit satisfies an Armijo
increase.  Once the residual enters the quadratic basin (below 1e-3) the
Armijo test is dropped: true energy increments there fall below the
quadrature tolerance, so testing them would only compare noise, while the
undamped Newton step is reliable.
"""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
import scipy.linalg

from .conformal import boundary_jacobian, boundary_lengths, _edge_slack
from .energy import DEFAULT_QUADRATURE, QuadratureSpec, total_energy
from .errors import ConvergenceError


@dataclass(frozen=True)
class SolveOptions:
    """Newton controls: residual tolerance (inf-norm on B(w) - target),
    iteration cap, backtracking factor, smallest step scale tried, strict
    interior cushion (on e^(w_a+w_b) cosh(l0/2) - 1), Armijo parameter,
    and the quadrature used for the energy merit."""

    grad_tol: float = 1e-10
    max_iter: int = 100
    backtrack: float = 0.5
    min_step: float = 1e-9
    margin: float = 1e-12
    armijo: float = 1e-4
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE

    def __post_init__(self):
        if not self.grad_tol > 0.0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol!r}")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError(f"backtrack factor must lie in (0, 1), got {self.backtrack!r}")
        if self.margin < 0.0:
            raise ValueError(f"margin must be >= 0, got {self.margin!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")


@dataclass
class SolveResult:
    factors: np.ndarray
    iterations: int
    residual: float
    objective_trace: List[float] = field(default_factory=list)
    residual_trace: List[float] = field(default_factory=list)
    converged: bool = True


def _interior_slack(tri, l0, w):
    """min_e (e^(w_a + w_b) cosh(l0_e/2) - 1); positive inside the domain."""
    return min(math.expm1(u) for u in _edge_slack(tri, l0, w).values())


def solve_prescribed(tri, l0, target, opts=None, start=None):
    """Find the unique admissible factor w with boundary lengths equal to
    ``target`` (componentwise positive).

    Starts from w = 0 (always admissible) unless ``start`` overrides it.
    Raises ConvergenceError with ``partial`` set when the iteration cap is
    reached; extreme targets (for example near zero, which push w towards
    infinity) exist in principle but may exhaust the cap.
    """
    opts = opts or SolveOptions()
    target = np.asarray(target, dtype=float)
    if target.shape != (tri.n_boundaries,):
        raise ValueError(
            f"target must have one entry per boundary component "
            f"({tri.n_boundaries}), got shape {target.shape}"
        )
    if not np.all(np.isfinite(target) & (target > 0.0)):
        raise ValueError("target must be strictly positive")

    w = np.zeros(tri.n_boundaries) if start is None else np.asarray(start, dtype=float).copy()
    B = boundary_lengths(tri, l0, w)
    objective = [total_energy(tri, l0, w, opts.quadrature) - float(target @ w)]
    residuals = [float(np.max(np.abs(B - target)))]

    for iteration in range(opts.max_iter):
        residual = residuals[-1]
        if residual <= opts.grad_tol:
            return SolveResult(
                factors=w,
                iterations=iteration,
                residual=residual,
                objective_trace=objective,
                residual_trace=residuals,
                converged=True,
            )

        H = boundary_jacobian(tri, l0, w)
        grad = B - target  # gradient of G
        try:
            # H step = target - B, via the positive-definite factor of -H.
            cho = scipy.linalg.cho_factor(-H)
            step = scipy.linalg.cho_solve(cho, grad)
        except scipy.linalg.LinAlgError:
            # Near the domain boundary H can degenerate numerically; fall
            # back to plain gradient ascent with a conservative length.
            step = grad / float(np.max(np.abs(H)))

        slope = float(grad @ step)
        use_armijo = residual >= 1e-3
        alpha = 1.0
        accepted = False
        while alpha >= opts.min_step:
            trial = w + alpha * step
            if _interior_slack(tri, l0, trial) > opts.margin:
                if not use_armijo:
                    accepted = True
                    break
                g_trial = total_energy(tri, l0, trial, opts.quadrature) - float(target @ trial)
                if g_trial >= objective[-1] + opts.armijo * alpha * slope:
                    accepted = True
                    break
            alpha *= opts.backtrack
        if not accepted:
            raise ConvergenceError(
                f"line search failed at iteration {iteration} (residual {residual:.3e})",
                partial=SolveResult(
                    factors=w,
                    iterations=iteration,
                    residual=residual,
                    objective_trace=objective,
                    residual_trace=residuals,
                    converged=False,
                ),
            )

        w = w + alpha * step
        B = boundary_lengths(tri, l0, w)
        objective.append(total_energy(tri, l0, w, opts.quadrature) - float(target @ w))
        residuals.append(float(np.max(np.abs(B - target))))

    residual = residuals[-1]
    if residual <= opts.grad_tol:
        return SolveResult(
            factors=w,
            iterations=opts.max_iter,
            residual=residual,
            objective_trace=objective,
            residual_trace=residuals,
            converged=True,
        )
    raise ConvergenceError(
        f"no convergence in {opts.max_iter} iterations (residual {residual:.3e})",
        partial=SolveResult(
            factors=w,
            iterations=opts.max_iter,
            residual=residual,
            objective_trace=objective,
            residual_trace=residuals,
            converged=False,
        ),
    )
