"""The entropic flow driven by a single observable.

Moving a state so that the expectation of an observable A changes as fast
as possible means moving orthogonally to the level surfaces of the
recentered observable.  That path solves

    d rho / d lam = -R_rho(A - <A> 1),

whose solution through rho0 has the closed symmetric-exponential form

    rho(lam) = exp(-lam A / 2) rho0 exp(-lam A / 2) / tr(exp(-lam A) rho0).

This module provides the vector field, a fixed-step classical 4th-order
integrator (the closed form serves as its exact oracle, so the integrator
deliberately stays simple: no adaptivity, no trace renormalization), the
closed form itself, and root-finding along the closed form to hit a target
expectation value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DimMismatch,
    Infeasible,
    InputValidationError,
    MaxIterExceeded,
    Overflow,
    PositivityLoss,
    StepInvalid,
)
from .geometry import raise_form, zero_mean_form
from .operators import (
    DensityOperator,
    HermitianOperator,
    eig_hermitian,
    expectation,
    hermitian_part,
)

__all__ = [
    "FlowSample",
    "FlowTrajectory",
    "flow_field",
    "integrate_flow",
    "closed_form_flow",
    "flow_to_constraint",
]

POSITIVITY_LOSS_TOL = 1e-8
EXPONENT_LIMIT = 700.0
SUPPORT_FLOOR = 1e-14
MAX_STORED_SAMPLES = 1000


@dataclass(frozen=True, eq=False)
class FlowSample:
    """One trajectory point: parameter value, state, and mean of the observable."""

    lam: float
    state: DensityOperator
    mean: float


@dataclass(frozen=True, eq=False)
class FlowTrajectory:
    """Ordered samples of an integrated flow, at most ~1001 of them."""

    observable: HermitianOperator
    samples: tuple[FlowSample, ...]
    step: float

    def __post_init__(self) -> None:
        lams = [s.lam for s in self.samples]
        if not lams:
            raise InputValidationError("a trajectory needs at least one sample")
        diffs = np.diff(lams)
        if diffs.size and not (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
            raise InputValidationError("sample parameters must be strictly monotone")


def flow_field(state: DensityOperator, observable: HermitianOperator) -> HermitianOperator:
    """The tangent direction -R_rho(A - <A> 1); traceless, hence a valid velocity."""
    delta = zero_mean_form(state, observable)
    pushed = raise_form(state, delta)
    return HermitianOperator(-pushed.entries)


def integrate_flow(
    start: DensityOperator,
    observable: HermitianOperator,
    lambda_end: float,
    step: float = 1e-3,
) -> FlowTrajectory:
    """Integrate the flow from ``start`` over [0, lambda_end] with fixed steps.

    Classical 4th-order Runge-Kutta.  A negative ``lambda_end`` integrates
    the same equation in the opposite parameter direction.  The trace is
    never renormalized, so trace drift measures integrator error; an
    intermediate eigenvalue below -1e-8 raises PositivityLoss, which
    signals a step too coarse for the problem.  Roughly every
    ceil(n_steps/1000)-th step is recorded, plus the endpoint.
    """
    if start.dim != observable.dim:
        raise DimMismatch(f"state dim {start.dim} != observable dim {observable.dim}")
    if not (np.isfinite(step) and step > 0.0):
        raise StepInvalid(f"step must be positive and finite, got {step!r}")
    if not np.isfinite(lambda_end):
        raise StepInvalid(f"lambda_end must be finite, got {lambda_end!r}")

    a = observable.entries
    eye = np.eye(start.dim)

    def rhs(m: np.ndarray) -> np.ndarray:
        mean = np.einsum("ij,ji->", m, a).real
        delta = a - mean * eye
        return -0.5 * (m @ delta + delta @ m)

    length = abs(float(lambda_end))
    sign = 1.0 if lambda_end >= 0.0 else -1.0
    ratio = length / step
    n_steps = int(round(ratio)) if abs(ratio - round(ratio)) < 1e-9 else int(np.ceil(ratio))
    record_every = max(1, int(np.ceil(n_steps / MAX_STORED_SAMPLES)))

    y = np.array(start.entries, dtype=np.complex128)
    samples = [FlowSample(0.0, start, expectation(start, observable))]
    for k in range(1, n_steps + 1):
        lam_prev = sign * min((k - 1) * step, length)
        lam_k = sign * min(k * step, length)
        h = lam_k - lam_prev
        k1 = rhs(y)
        k2 = rhs(y + (h / 2.0) * k1)
        k3 = rhs(y + (h / 2.0) * k2)
        k4 = rhs(y + h * k3)
        y = hermitian_part(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        smallest = float(np.linalg.eigvalsh(y)[0])
        if smallest < -POSITIVITY_LOSS_TOL:
            raise PositivityLoss(
                f"eigenvalue {smallest:.3e} at lambda {lam_k:.6g}; reduce the step"
            )
        if k == n_steps or k % record_every == 0:
            state = DensityOperator(y)
            samples.append(FlowSample(float(lam_k), state, expectation(state, observable)))
    return FlowTrajectory(observable=observable, samples=tuple(samples), step=float(step))


def closed_form_flow(
    start: DensityOperator, observable: HermitianOperator, lam: float
) -> DensityOperator:
    """The exact flow state exp(-lam A/2) rho0 exp(-lam A/2), normalized.

    lam = 0 returns ``start`` unchanged.  The exponent guard rejects
    |lam| * spectral_radius(A) > 700.
    """
    if start.dim != observable.dim:
        raise DimMismatch(f"state dim {start.dim} != observable dim {observable.dim}")
    if not np.isfinite(lam):
        raise InputValidationError(f"lam must be finite, got {lam!r}")
    if lam == 0.0:
        return start
    dec = eig_hermitian(observable)
    radius = float(np.abs(dec.eigenvalues).max())
    if abs(lam) * radius > EXPONENT_LIMIT:
        raise Overflow(
            f"|lam| * spectral_radius = {abs(lam) * radius:.6g} exceeds the "
            f"exponent guard {EXPONENT_LIMIT:.0f}"
        )
    expo = -0.5 * lam * dec.eigenvalues
    half = (dec.eigenvectors * np.exp(expo - expo.max())) @ dec.eigenvectors.conj().T
    out = half @ start.entries @ half
    trace = float(np.trace(out).real)
    if not np.isfinite(trace) or trace <= 0.0:
        raise Overflow("tilt exponent too large: normalization underflowed")
    return DensityOperator(hermitian_part(out) / trace)


def flow_to_constraint(
    start: DensityOperator,
    observable: HermitianOperator,
    target: float,
    *,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> tuple[float, DensityOperator]:
    """Follow the closed-form flow until <A> reaches ``target``.

    Returns (lam, state) with |tr(state A) - target| <= tol.  The mean is
    strictly decreasing along the flow, so the crossing parameter is
    bracketed by doubling and then isolated with Brent's method on the
    matrix-valued closed form.  This is an independent route to the same
    state as the variational single-constraint tilt.
    """
    if start.dim != observable.dim:
        raise DimMismatch(f"state dim {start.dim} != observable dim {observable.dim}")
    if not np.isfinite(target):
        raise InputValidationError("target must be finite")
    if not (np.isfinite(tol) and tol > 0.0):
        raise InputValidationError(f"tol must be positive and finite, got {tol!r}")
    dec = eig_hermitian(observable)
    diag = np.einsum(
        "ij,jk,ki->i", dec.eigenvectors.conj().T, start.entries, dec.eigenvectors
    ).real
    d = np.maximum(diag, 0.0)
    support = d > SUPPORT_FLOOR
    a_s = dec.eigenvalues[support]
    lo, hi = float(a_s.min()), float(a_s.max())
    if hi - lo <= SUPPORT_FLOOR * max(1.0, abs(hi)):
        if abs(target - lo) <= tol:
            return 0.0, start
        raise Infeasible(
            f"observable is constant ({lo!r}) on the state's support; "
            f"target {target!r} unreachable"
        )
    if not (lo < target < hi):
        raise Infeasible(
            f"target {target!r} outside the open achievable interval ({lo!r}, {hi!r})"
        )

    def offset(lam: float) -> float:
        return expectation(closed_form_flow(start, observable, lam), observable) - target

    f0 = offset(0.0)
    if abs(f0) <= tol:
        return 0.0, start

    radius = float(np.abs(dec.eigenvalues).max())
    cap = (EXPONENT_LIMIT - 50.0) / radius
    if f0 > 0.0:
        left, right = 0.0, 1.0
        while right <= cap and offset(right) > 0.0:
            left = right
            right *= 2.0
        if right > cap:
            raise Infeasible(f"target {target!r} numerically at the boundary")
    else:
        left, right = -1.0, 0.0
        while left >= -cap and offset(left) < 0.0:
            right = left
            left *= 2.0
        if left < -cap:
            raise Infeasible(f"target {target!r} numerically at the boundary")

    root, info = brentq(
        offset,
        left,
        right,
        xtol=1e-15,
        rtol=4.0 * np.finfo(float).eps,
        maxiter=max_iter,
        full_output=True,
        disp=False,
    )
    state = closed_form_flow(start, observable, float(root))
    if not info.converged or abs(expectation(state, observable) - target) > tol:
        raise MaxIterExceeded(
            f"root finding did not reach tolerance {tol!r} in {max_iter} iterations"
        )
    return float(root), state
