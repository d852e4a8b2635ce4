"""Von Neumann entropy and a logarithmic relative entropy.

The relative entropy here is signed so that it is nonpositive and equal to
zero exactly when both states coincide: S(rho || sigma) = -tr[rho (log rho
- log sigma)].  That is the negative of the conventional quantum
Kullback-Leibler divergence, so "maximize this quantity" means "minimize
the conventional divergence".  Results are in nats.
"""

from __future__ import annotations

import numpy as np

from .errors import DimMismatch, SupportViolation
from .operators import LOG_EIGENVALUE_FLOOR, DensityOperator

__all__ = ["von_neumann_entropy", "relative_entropy"]

SUPPORT_TOL = 1e-12


def _entropy_of_spectrum(p: np.ndarray) -> float:
    """-sum p log p with 0 log 0 = 0 over a numerically clamped spectrum."""
    q = p[p > LOG_EIGENVALUE_FLOOR]
    s = float(-(q * np.log(q)).sum())
    # eigenvalues a hair above 1 can push the sum a hair below zero
    return max(s, 0.0)


def von_neumann_entropy(state: DensityOperator) -> float:
    """-tr(rho log rho) in nats; 0 for pure states, log(dim) for the uniform state."""
    return _entropy_of_spectrum(np.linalg.eigvalsh(state.entries))


def relative_entropy(state: DensityOperator, prior: DensityOperator) -> float:
    """-tr[rho (log rho - log sigma)] in nats (nonpositive, maximized at rho = sigma).

    Raises SupportViolation if ``state`` puts more than ``SUPPORT_TOL`` of
    weight on the kernel of ``prior``, where the value would be -infinity.
    """
    if state.dim != prior.dim:
        raise DimMismatch(f"state dim {state.dim} != prior dim {prior.dim}")
    q, v = np.linalg.eigh(prior.entries)
    overlaps = np.real(np.einsum("ij,jk,ki->i", v.conj().T, state.entries, v))
    kernel = q <= LOG_EIGENVALUE_FLOOR
    kernel_weight = float(overlaps[kernel].sum())
    if kernel_weight > SUPPORT_TOL:
        raise SupportViolation(
            f"state has weight {kernel_weight:.3e} outside the prior's support"
        )
    support = ~kernel
    cross = float((np.log(q[support]) * overlaps[support]).sum())
    return _entropy_of_spectrum(np.linalg.eigvalsh(state.entries)) + cross
