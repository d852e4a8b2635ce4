"""JSON document schemas for operators and problems.

Operators travel as split real/imaginary matrices so any JSON tool can
read them.  Serialization uses Python's shortest round-trip float
representation, so serialize/parse reproduces every operator bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputValidationError
from .operators import DensityOperator, HermitianOperator

__all__ = [
    "MODES",
    "DOCUMENT_HERMITICITY_TOL",
    "Problem",
    "operator_to_document",
    "operator_from_document",
    "density_from_document",
    "problem_from_document",
]

MODES = ("maxent", "prior_tilt", "flow", "metric", "entropy")
DOCUMENT_HERMITICITY_TOL = 1e-9
MAX_DOCUMENT_DIM = 1024


def operator_to_document(op: HermitianOperator, label: str | None = None) -> dict:
    doc = {
        "dim": op.dim,
        "re": op.entries.real.tolist(),
        "im": op.entries.imag.tolist(),
    }
    if label is not None:
        doc["label"] = str(label)
    return doc


def _real_matrix(raw, dim: int, name: str) -> np.ndarray:
    try:
        m = np.asarray(raw, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputValidationError(f"'{name}' is not a numeric matrix: {exc}") from exc
    if m.shape != (dim, dim):
        raise InputValidationError(f"'{name}' must have shape ({dim}, {dim}), got {m.shape}")
    if not np.isfinite(m).all():
        raise InputValidationError(f"'{name}' contains non-finite entries")
    return m


def _operator_entries(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise InputValidationError("operator document must be a JSON object")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise InputValidationError("'dim' must be an integer")
    if not 1 <= dim <= MAX_DOCUMENT_DIM:
        raise InputValidationError(f"'dim' must be in [1, {MAX_DOCUMENT_DIM}], got {dim}")
    if "re" not in doc or "im" not in doc:
        raise InputValidationError("operator document needs 're' and 'im' matrices")
    re = _real_matrix(doc["re"], dim, "re")
    im = _real_matrix(doc["im"], dim, "im")
    sym_dev = float(np.abs(re - re.T).max())
    if sym_dev > DOCUMENT_HERMITICITY_TOL:
        raise InputValidationError(
            f"'re' deviates from symmetry by {sym_dev:.3e} "
            f"(tolerance {DOCUMENT_HERMITICITY_TOL:.0e})"
        )
    anti_dev = float(np.abs(im + im.T).max())
    if anti_dev > DOCUMENT_HERMITICITY_TOL:
        raise InputValidationError(
            f"'im' deviates from antisymmetry by {anti_dev:.3e} "
            f"(tolerance {DOCUMENT_HERMITICITY_TOL:.0e})"
        )
    return (re + re.T) / 2.0 + 1j * (im - im.T) / 2.0


def operator_from_document(doc) -> HermitianOperator:
    """Parse and validate an operator document."""
    return HermitianOperator(_operator_entries(doc))


def density_from_document(doc) -> DensityOperator:
    """Parse an operator document that must describe a density operator."""
    return DensityOperator(_operator_entries(doc))


@dataclass(frozen=True, eq=False)
class Problem:
    mode: str
    observables: tuple[HermitianOperator, ...]
    targets: tuple[float, ...]
    prior: DensityOperator | None


def problem_from_document(doc) -> Problem:
    """Parse a problem document and enforce the per-mode shape rules."""
    if not isinstance(doc, dict):
        raise InputValidationError("problem document must be a JSON object")
    mode = doc.get("mode")
    if mode not in MODES:
        raise InputValidationError(f"'mode' must be one of {MODES}, got {mode!r}")
    raw_observables = doc.get("observables", [])
    if not isinstance(raw_observables, list):
        raise InputValidationError("'observables' must be a list")
    observables = tuple(operator_from_document(o) for o in raw_observables)
    raw_targets = doc.get("targets", [])
    if not isinstance(raw_targets, list):
        raise InputValidationError("'targets' must be a list")
    targets = []
    for t in raw_targets:
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not np.isfinite(t):
            raise InputValidationError(f"targets must be finite numbers, got {t!r}")
        targets.append(float(t))
    prior = density_from_document(doc["prior"]) if doc.get("prior") is not None else None

    if mode == "maxent":
        if len(observables) != len(targets):
            raise InputValidationError(
                f"maxent mode needs matching lengths: {len(observables)} observables, "
                f"{len(targets)} targets"
            )
    elif mode == "prior_tilt":
        if len(observables) != 1 or len(targets) != 1 or prior is None:
            raise InputValidationError(
                "prior_tilt mode needs exactly one observable, one target, and a prior"
            )
    elif mode == "flow":
        if len(observables) != 1 or prior is None:
            raise InputValidationError("flow mode needs exactly one observable and a prior")
    elif mode == "metric":
        if len(observables) != 2 or prior is None:
            raise InputValidationError(
                "metric mode needs exactly two observables and a prior (base state)"
            )
    else:  # entropy
        if prior is None:
            raise InputValidationError("entropy mode needs a prior (the state)")
    return Problem(mode=mode, observables=observables, targets=tuple(targets), prior=prior)
