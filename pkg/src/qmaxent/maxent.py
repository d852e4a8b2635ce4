"""Maximum-entropy estimation of density operators.

Given expectation-value constraints tr(rho A_j) = t_j, the entropy
maximizer has the canonical form

    rho(lam) = exp(-sum_k lam_k A_k) / Z(lam),   Z = tr exp(-sum_k lam_k A_k),

and the multipliers are the unique minimizer of the smooth convex dual

    value(lam) = log Z(lam) + sum_j lam_j t_j,

whose gradient is t_j - <A_j>_{rho(lam)}.  ``solve_maxent`` minimizes the
dual with a quasi-Newton (BFGS) iteration and Armijo backtracking,
starting from lam = 0 (the uniform state); the gradient is exact even for
non-commuting observables, so no second-derivative machinery is needed.

``solve_prior_tilt`` handles the single-constraint update of an arbitrary
prior rho0 via the symmetric exponential tilt

    rho(lam) = exp(-lam A / 2) rho0 exp(-lam A / 2) / tr(exp(-lam A) rho0),

which is Hermitian and positive semidefinite for every input.  (The
asymmetric product rho0 exp(-lam A) / Z agrees with it only when rho0 and
A commute; this module always uses the symmetric form and makes no
optimality claim for it in the non-commuting case.)  In A's eigenbasis the
constraint reduces to a classical tilted mean that is strictly decreasing
in lam, so the multiplier is found by a safeguarded Newton iteration with
a bisection fallback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DependentConstraints,
    DimMismatch,
    Infeasible,
    InputValidationError,
    MaxIterExceeded,
    Overflow,
)
from .operators import (
    DensityOperator,
    HermitianOperator,
    eig_hermitian,
    expectation,
    hermitian_part,
)
from .entropy import von_neumann_entropy

__all__ = [
    "ConstraintSet",
    "MaxEntSolution",
    "partition_function",
    "gibbs_state",
    "dual_objective",
    "solve_maxent",
    "entropy_sensitivity",
    "solve_prior_tilt",
    "classical_gibbs_oracle",
]

SPECTRAL_RADIUS_LIMIT = 700.0
MULTIPLIER_CAP = 1e4
GRAM_CONDITION_LIMIT = 1e12
ARMIJO_SLOPE = 1e-4
ARMIJO_SHRINK = 0.5
SUPPORT_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """Observables A_1..A_m with target expectation values t_1..t_m.

    Construction checks that all observables share one dimension, that each
    target lies inside the spectral range of its observable (a necessary
    feasibility condition), and that the traceless parts of the observables
    are numerically independent (Gram condition number at most 1e12);
    dependent constraints would make the multipliers non-unique and are
    rejected rather than regularized.  ``dim`` may be given explicitly,
    which is required when there are no observables at all.
    """

    observables: tuple[HermitianOperator, ...]
    targets: np.ndarray
    dim: int | None = None

    def __post_init__(self) -> None:
        observables = tuple(self.observables)
        targets = np.atleast_1d(np.asarray(self.targets, dtype=np.float64)).copy()
        if targets.ndim != 1 or len(observables) != targets.size:
            raise DimMismatch(
                f"{len(observables)} observables but {targets.size} targets"
            )
        if targets.size and not np.isfinite(targets).all():
            raise InputValidationError("targets must be finite")
        dim = self.dim
        for a in observables:
            if dim is None:
                dim = a.dim
            elif a.dim != dim:
                raise DimMismatch(f"observable dims differ: {a.dim} != {dim}")
        if dim is None:
            raise DimMismatch("dimension required when no observables are given")
        for a, t in zip(observables, targets):
            w = np.linalg.eigvalsh(a.entries)
            if not (w[0] <= t <= w[-1]):
                raise Infeasible(
                    f"target {float(t)!r} outside the spectral range "
                    f"[{float(w[0])!r}, {float(w[-1])!r}]"
                )
        if observables:
            self._check_independent(observables, dim)
        targets.setflags(write=False)
        object.__setattr__(self, "observables", observables)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "dim", int(dim))

    @staticmethod
    def _check_independent(observables: tuple[HermitianOperator, ...], dim: int) -> None:
        traceless = [
            a.entries - (np.trace(a.entries).real / dim) * np.eye(dim)
            for a in observables
        ]
        gram = np.array(
            [[np.trace(x @ y).real for y in traceless] for x in traceless]
        )
        s = np.linalg.eigvalsh(gram)
        if s[0] <= 0.0 or s[-1] / s[0] > GRAM_CONDITION_LIMIT:
            raise DependentConstraints(
                "constraint observables are linearly dependent "
                "(Gram condition number above 1e12); multipliers would not be unique"
            )

    @property
    def m(self) -> int:
        return len(self.observables)


@dataclass(frozen=True, eq=False)
class MaxEntSolution:
    """Solved multipliers and the resulting canonical state.

    ``lambda0`` is log Z at the solution, ``s_max`` the entropy of the
    estimate, and ``residual`` the largest absolute constraint violation.
    """

    multipliers: np.ndarray
    lambda0: float
    estimate: DensityOperator
    achieved: np.ndarray
    s_max: float
    iterations: int
    residual: float


def _stacked_entries(observables) -> np.ndarray:
    return np.stack([a.entries for a in observables])


def _validated_pair(multipliers, observables) -> tuple[np.ndarray, np.ndarray]:
    lam = np.atleast_1d(np.asarray(multipliers, dtype=np.float64))
    if lam.ndim != 1 or lam.size != len(observables):
        raise DimMismatch(
            f"{lam.size} multipliers but {len(observables)} observables"
        )
    if lam.size == 0:
        raise DimMismatch("at least one observable is required")
    if not np.isfinite(lam).all():
        raise InputValidationError("multipliers must be finite")
    dim = observables[0].dim
    for a in observables[1:]:
        if a.dim != dim:
            raise DimMismatch(f"observable dims differ: {a.dim} != {dim}")
    return lam, _stacked_entries(observables)


def _eig_aggregate(lam: np.ndarray, stacked: np.ndarray):
    aggregate = np.tensordot(lam, stacked, axes=1)
    try:
        return np.linalg.eigh(aggregate)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc


def _softmax_state(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """exp(-W)/tr(exp(-W)) from the eigensystem of W, stable under shifts."""
    u = -w
    q = np.exp(u - u.max())
    q /= q.sum()
    return hermitian_part((v * q) @ v.conj().T)


def _guard_radius(w: np.ndarray) -> None:
    radius = float(np.abs(w).max())
    if radius > SPECTRAL_RADIUS_LIMIT:
        raise Overflow(
            f"spectral radius {radius:.6g} of the multiplier aggregate exceeds "
            f"the exponent guard {SPECTRAL_RADIUS_LIMIT:.0f}"
        )


def partition_function(multipliers, observables) -> float:
    """Z = tr exp(-sum_k lam_k A_k)."""
    lam, stacked = _validated_pair(multipliers, observables)
    w = np.linalg.eigvalsh(np.tensordot(lam, stacked, axes=1))
    _guard_radius(w)
    return float(np.exp(-w).sum())


def gibbs_state(multipliers, observables) -> DensityOperator:
    """The canonical state exp(-sum_k lam_k A_k) / Z with strictly positive spectrum."""
    lam, stacked = _validated_pair(multipliers, observables)
    w, v = _eig_aggregate(lam, stacked)
    _guard_radius(w)
    return DensityOperator(_softmax_state(w, v))


def _dual_point(lam: np.ndarray, stacked: np.ndarray, targets: np.ndarray):
    """Dual value, gradient, canonical state, and aggregate spectrum at ``lam``."""
    w, v = _eig_aggregate(lam, stacked)
    u = -w
    shift = u.max()
    z = np.exp(u - shift).sum()
    value = float(shift + np.log(z) + lam @ targets)
    state = _softmax_state(w, v)
    achieved = np.einsum("ij,kji->k", state, stacked).real
    return value, targets - achieved, state, w


def dual_objective(multipliers, constraints: ConstraintSet):
    """Convex dual value log Z + lam . t and its exact gradient t_j - <A_j>.

    The gradient vanishes exactly at the maximum-entropy multipliers.
    """
    if constraints.m == 0:
        lam = np.atleast_1d(np.asarray(multipliers, dtype=np.float64))
        if lam.size != 0:
            raise DimMismatch(f"{lam.size} multipliers but 0 observables")
        return float(np.log(constraints.dim)), np.zeros(0)
    lam, stacked = _validated_pair(multipliers, constraints.observables)
    value, gradient, _, w = _dual_point(lam, stacked, constraints.targets)
    _guard_radius(w)
    return value, gradient


def _strict_interior_check(constraints: ConstraintSet) -> None:
    for a, t in zip(constraints.observables, constraints.targets):
        w = np.linalg.eigvalsh(a.entries)
        if not (w[0] < t < w[-1]):
            raise Infeasible(
                f"target {float(t)!r} on the boundary of the spectral range "
                f"[{float(w[0])!r}, {float(w[-1])!r}]; the multiplier would diverge"
            )


def solve_maxent(
    constraints: ConstraintSet, *, tol: float = 1e-10, max_iter: int = 500
) -> MaxEntSolution:
    """Solve for the entropy-maximizing state subject to the constraints.

    Minimizes the convex dual by BFGS with Armijo backtracking (shrink 0.5,
    slope 1e-4) from lam = 0.  Convergence means the largest constraint
    violation is at most ``tol``.  Targets on or outside the boundary of
    the achievable set are reported as Infeasible, either up front (target
    on the spectral boundary) or when the multiplier norm passes 1e4 with a
    non-vanishing gradient (jointly unreachable targets).
    """
    if not (np.isfinite(tol) and tol > 0.0):
        raise InputValidationError(f"tol must be positive and finite, got {tol!r}")
    if max_iter < 1:
        raise InputValidationError(f"max_iter must be at least 1, got {max_iter!r}")
    n = constraints.dim
    if constraints.m == 0:
        uniform = DensityOperator(np.eye(n) / n)
        log_n = float(np.log(n))
        return MaxEntSolution(
            multipliers=np.zeros(0),
            lambda0=log_n,
            estimate=uniform,
            achieved=np.zeros(0),
            s_max=log_n,
            iterations=0,
            residual=0.0,
        )
    _strict_interior_check(constraints)
    stacked = _stacked_entries(constraints.observables)
    targets = constraints.targets

    lam = np.zeros(constraints.m)
    hinv = np.eye(constraints.m)
    value, gradient, _, _ = _dual_point(lam, stacked, targets)
    iterations = 0
    converged = abs(gradient).max() <= tol
    while not converged:
        if iterations >= max_iter:
            raise MaxIterExceeded(
                f"no convergence after {max_iter} iterations "
                f"(residual {abs(gradient).max():.3e})"
            )
        if abs(lam).max() > MULTIPLIER_CAP:
            raise Infeasible(
                "multiplier norm exceeded 1e4 with a non-vanishing gradient; "
                "the targets lie on or outside the achievable set"
            )
        direction = -hinv @ gradient
        slope = float(gradient @ direction)
        if slope >= 0.0:
            hinv = np.eye(constraints.m)
            direction = -gradient
            slope = -float(gradient @ gradient)
        # small cushion absorbs ties at the resolution of the dual value
        cushion = 1e-14 * max(1.0, abs(value))
        t = 1.0
        while True:
            trial = lam + t * direction
            trial_value, trial_gradient, _, _ = _dual_point(trial, stacked, targets)
            if trial_value <= value + ARMIJO_SLOPE * t * slope + cushion:
                break
            t *= ARMIJO_SHRINK
            if t < 1e-20:
                raise MaxIterExceeded(
                    "line search stalled before reaching the requested tolerance"
                )
        step = trial - lam
        change = trial_gradient - gradient
        curvature = float(step @ change)
        if curvature > 1e-14 * np.linalg.norm(step) * np.linalg.norm(change):
            rho = 1.0 / curvature
            outer = np.outer(step, change)
            hinv = (np.eye(constraints.m) - rho * outer) @ hinv @ (
                np.eye(constraints.m) - rho * outer.T
            ) + rho * np.outer(step, step)
        lam, value, gradient = trial, trial_value, trial_gradient
        iterations += 1
        converged = abs(gradient).max() <= tol

    w, v = _eig_aggregate(lam, stacked)
    lambda0 = float(np.logaddexp.reduce(-w))
    estimate = DensityOperator(_softmax_state(w, v))
    achieved = np.array([expectation(estimate, a) for a in constraints.observables])
    residual = float(abs(achieved - targets).max())
    lam = lam.copy()
    lam.setflags(write=False)
    achieved.setflags(write=False)
    return MaxEntSolution(
        multipliers=lam,
        lambda0=lambda0,
        estimate=estimate,
        achieved=achieved,
        s_max=von_neumann_entropy(estimate),
        iterations=iterations,
        residual=residual,
    )


def entropy_sensitivity(
    constraints: ConstraintSet,
    step: float = 1e-4,
    *,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> np.ndarray:
    """Central finite differences of the maximal entropy in each target.

    At the optimum the partial derivative of the achieved maximal entropy
    with respect to target j equals the solved multiplier lam_j, so this is
    a solver consistency check.  Solver errors at the perturbed targets
    propagate unchanged.
    """
    if not (np.isfinite(step) and step > 0.0):
        raise InputValidationError(f"step must be positive and finite, got {step!r}")
    out = np.zeros(constraints.m)
    for j in range(constraints.m):
        values = []
        for sign in (1.0, -1.0):
            shifted = constraints.targets.copy()
            shifted[j] += sign * step
            shifted_set = ConstraintSet(constraints.observables, shifted, dim=constraints.dim)
            values.append(solve_maxent(shifted_set, tol=tol, max_iter=max_iter).s_max)
        out[j] = (values[0] - values[1]) / (2.0 * step)
    return out


def _tilted_mean_var(lam: float, a: np.ndarray, d: np.ndarray) -> tuple[float, float]:
    """Mean and variance of the spectrum ``a`` under weights d_i exp(-lam a_i)."""
    u = -lam * a
    q = d * np.exp(u - u.max())
    q /= q.sum()
    mean = float(q @ a)
    var = float(q @ (a - mean) ** 2)
    return mean, var


def _symmetric_tilt(
    prior: DensityOperator, a: np.ndarray, v: np.ndarray, lam: float
) -> DensityOperator:
    """exp(-lam A/2) rho0 exp(-lam A/2), normalized; A given by its eigensystem."""
    expo = -0.5 * lam * a
    half = (v * np.exp(expo - expo.max())) @ v.conj().T
    out = half @ prior.entries @ half
    trace = float(np.trace(out).real)
    if not np.isfinite(trace) or trace <= 0.0:
        raise Overflow("tilt exponent too large: normalization underflowed")
    return DensityOperator(hermitian_part(out) / trace)


def solve_prior_tilt(
    prior: DensityOperator,
    observable: HermitianOperator,
    target: float,
    *,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> tuple[float, DensityOperator]:
    """Tilt a prior state until one expectation value hits its target.

    Returns (lam, state) with state the symmetric exponential tilt of the
    prior and |tr(state A) - target| <= tol.  In A's eigenbasis the mean is
    a classical tilted average with derivative minus a variance, hence
    strictly decreasing; the root is unique and found by safeguarded Newton
    with bisection fallback on a bracketing interval.  Feasible targets lie
    strictly between the smallest and largest eigenvalue of A that carries
    prior weight.
    """
    if prior.dim != observable.dim:
        raise DimMismatch(f"prior dim {prior.dim} != observable dim {observable.dim}")
    if not np.isfinite(target):
        raise InputValidationError("target must be finite")
    if not (np.isfinite(tol) and tol > 0.0):
        raise InputValidationError(f"tol must be positive and finite, got {tol!r}")
    dec = eig_hermitian(observable)
    diag = np.einsum(
        "ij,jk,ki->i", dec.eigenvectors.conj().T, prior.entries, dec.eigenvectors
    ).real
    d = np.maximum(diag, 0.0)
    support = d > SUPPORT_FLOOR
    a_s = dec.eigenvalues[support]
    d_s = d[support]
    lo, hi = float(a_s.min()), float(a_s.max())
    if hi - lo <= SUPPORT_FLOOR * max(1.0, abs(hi)):
        # observable is constant on the prior's support: the mean never moves
        if abs(target - lo) <= tol:
            return 0.0, prior
        raise Infeasible(
            f"observable is constant ({lo!r}) on the prior's support; "
            f"target {target!r} unreachable"
        )
    if not (lo < target < hi):
        raise Infeasible(
            f"target {target!r} outside the open achievable interval ({lo!r}, {hi!r})"
        )

    mean0, _ = _tilted_mean_var(0.0, a_s, d_s)
    if abs(mean0 - target) <= tol:
        return 0.0, prior

    # mean is strictly decreasing in lam, so bracket on the matching side
    if mean0 > target:
        xlo, xhi = 0.0, 1.0
        while _tilted_mean_var(xhi, a_s, d_s)[0] > target:
            xlo = xhi
            xhi *= 2.0
            if xhi > 1e6:
                raise Infeasible(f"target {target!r} numerically at the boundary")
    else:
        xlo, xhi = -1.0, 0.0
        while _tilted_mean_var(xlo, a_s, d_s)[0] < target:
            xhi = xlo
            xlo *= 2.0
            if xlo < -1e6:
                raise Infeasible(f"target {target!r} numerically at the boundary")

    x = 0.5 * (xlo + xhi)
    for _ in range(max_iter):
        mean, var = _tilted_mean_var(x, a_s, d_s)
        fx = mean - target
        if abs(fx) <= tol:
            return float(x), _symmetric_tilt(prior, dec.eigenvalues, dec.eigenvectors, x)
        if fx > 0.0:
            xlo = x
        else:
            xhi = x
        if var > 0.0:
            candidate = x + fx / var
        else:
            candidate = 0.5 * (xlo + xhi)
        if not (xlo < candidate < xhi):
            candidate = 0.5 * (xlo + xhi)
        x = candidate
    raise MaxIterExceeded(f"no convergence after {max_iter} Newton iterations")


def classical_gibbs_oracle(
    weights,
    values,
    targets,
    *,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> np.ndarray:
    """Classical tilted distribution p_i proportional to w_i exp(-sum_k lam_k v_ki).

    Solves the scalar analogue of the operator problem by a damped Newton
    iteration on the classical dual (the Hessian is the covariance of the
    value vectors, available in closed form).  Deliberately shares no code
    with the operator path so it can serve as an independent cross-check
    on commuting instances.
    """
    w = np.atleast_1d(np.asarray(weights, dtype=np.float64))
    if w.ndim != 1 or w.size == 0 or not np.isfinite(w).all():
        raise InputValidationError("weights must be a nonempty finite vector")
    if w.min() < -1e-12:
        raise InputValidationError(
            f"weights must be nonnegative, smallest is {float(w.min())!r}"
        )
    w = np.maximum(w, 0.0)
    if abs(w.sum() - 1.0) > 1e-10:
        raise InputValidationError(f"weights must sum to 1, got {float(w.sum())!r}")
    vals = np.atleast_2d(np.asarray(values, dtype=np.float64))
    t = np.atleast_1d(np.asarray(targets, dtype=np.float64))
    m = t.size
    if vals.shape != (m, w.size) and not (m == 0 and vals.size == 0):
        raise DimMismatch(
            f"values shape {vals.shape} incompatible with {m} targets over {w.size} points"
        )
    if m == 0:
        return w.copy()
    if not np.isfinite(vals).all() or not np.isfinite(t).all():
        raise InputValidationError("values and targets must be finite")

    support = w > 0.0
    ws = w[support]
    vs = vals[:, support]
    for k in range(m):
        lo, hi = float(vs[k].min()), float(vs[k].max())
        if not (lo < t[k] < hi):
            raise Infeasible(
                f"target {float(t[k])!r} outside the open achievable interval "
                f"({lo!r}, {hi!r})"
            )

    log_ws = np.log(ws)

    def point(lam):
        u = log_ws - lam @ vs
        q = np.exp(u - u.max())
        z = q.sum()
        p = q / z
        value = float(u.max() + np.log(z) + lam @ t)
        mean = vs @ p
        centered = vs - mean[:, None]
        hess = (centered * p) @ centered.T
        return value, t - mean, hess, p

    lam = np.zeros(m)
    value, gradient, hess, p = point(lam)
    for _ in range(max_iter):
        if abs(gradient).max() <= tol:
            out = np.zeros(w.size)
            out[support] = p
            return out
        if abs(lam).max() > MULTIPLIER_CAP:
            raise Infeasible(
                "multiplier norm exceeded 1e4 with a non-vanishing gradient; "
                "the targets are jointly unreachable"
            )
        jitter = 1e-14 * max(1.0, float(np.trace(hess)))
        direction = np.linalg.solve(hess + jitter * np.eye(m), -gradient)
        slope = float(gradient @ direction)
        if slope >= 0.0:
            direction = -gradient
            slope = -float(gradient @ gradient)
        cushion = 1e-14 * max(1.0, abs(value))
        step = 1.0
        while True:
            trial = lam + step * direction
            trial_value, trial_gradient, trial_hess, trial_p = point(trial)
            if trial_value <= value + ARMIJO_SLOPE * step * slope + cushion:
                break
            step *= ARMIJO_SHRINK
            if step < 1e-20:
                raise MaxIterExceeded("line search stalled")
        lam, value, gradient, hess, p = trial, trial_value, trial_gradient, trial_hess, trial_p
    raise MaxIterExceeded(f"no convergence after {max_iter} Newton iterations")
