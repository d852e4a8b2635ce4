from __future__ import annotations

import json

import numpy as np
import pytest

from qmaxent import InputValidationError, NotPositive, TraceNotOne, make_density
from qmaxent.documents import (
    density_from_document,
    operator_from_document,
    operator_to_document,
    problem_from_document,
)

from helpers import SIGMA_X, rand_density, rand_hermitian


def test_round_trip_is_bit_exact(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        op = rand_hermitian(rng, n)
        doc = json.loads(json.dumps(operator_to_document(op)))
        back = operator_from_document(doc)
        assert np.array_equal(back.entries, op.entries)


def test_density_round_trip_is_bit_exact(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        rho = rand_density(rng, n)
        doc = json.loads(json.dumps(operator_to_document(rho)))
        back = density_from_document(doc)
        assert np.array_equal(back.entries, rho.entries)


def test_label_preserved():
    doc = operator_to_document(make_density(np.eye(2) / 2), label="uniform")
    assert doc["label"] == "uniform"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("re"),
        lambda d: d.pop("im"),
        lambda d: d.update(dim="two"),
        lambda d: d.update(dim=3),
        lambda d: d.update(re=[[0.0, 1.0], [0.5, 0.0]]),
        lambda d: d.update(im=[[0.0, 1.0], [1.0, 0.0]]),
        lambda d: d.update(re=[[float("nan"), 0.0], [0.0, 0.0]]),
    ],
)
def test_invalid_operator_documents(mutate):
    doc = operator_to_document(make_density(np.eye(2) / 2))
    mutate(doc)
    with pytest.raises(InputValidationError):
        operator_from_document(doc)


def test_density_document_checks_state_invariants():
    doc = operator_to_document(make_density(np.eye(2) / 2))
    doc["re"] = [[1.0, 0.0], [0.0, 1.0]]
    with pytest.raises(TraceNotOne):
        density_from_document(doc)
    doc["re"] = [[1.2, 0.0], [0.0, -0.2]]
    with pytest.raises(NotPositive):
        density_from_document(doc)


def test_loose_document_hermiticity_is_symmetrized():
    # document tolerance (1e-9) is looser than the operator tolerance
    # (1e-12); parsing must symmetrize so validation cannot trip downstream
    doc = {
        "dim": 2,
        "re": [[0.0, 1.0 + 1e-10], [1.0, 0.0]],
        "im": [[0.0, 0.0], [0.0, 0.0]],
    }
    op = operator_from_document(doc)
    assert np.abs(op.entries - op.entries.conj().T).max() == 0.0


class TestProblemDocument:
    def problem(self, mode="maxent", n_obs=1, n_targets=1, prior=True):
        doc = {
            "mode": mode,
            "observables": [
                operator_to_document(make_density(np.eye(2) / 2)) for _ in range(n_obs)
            ],
            "targets": [0.1] * n_targets,
        }
        if prior:
            doc["prior"] = operator_to_document(make_density(np.eye(2) / 2))
        return doc

    def test_valid_modes(self):
        assert problem_from_document(self.problem()).mode == "maxent"
        assert problem_from_document(
            self.problem(mode="prior_tilt")
        ).prior is not None
        assert problem_from_document(self.problem(mode="flow", n_targets=0)).mode == "flow"
        assert problem_from_document(
            self.problem(mode="metric", n_obs=2, n_targets=0)
        ).mode == "metric"
        assert problem_from_document(
            self.problem(mode="entropy", n_obs=0, n_targets=0)
        ).mode == "entropy"

    def test_unknown_mode(self):
        with pytest.raises(InputValidationError):
            problem_from_document(self.problem(mode="estimate"))

    def test_maxent_length_mismatch(self):
        with pytest.raises(InputValidationError):
            problem_from_document(self.problem(n_obs=2, n_targets=1))

    def test_prior_tilt_requires_one_observable_and_prior(self):
        with pytest.raises(InputValidationError):
            problem_from_document(self.problem(mode="prior_tilt", n_obs=2, n_targets=2))
        with pytest.raises(InputValidationError):
            problem_from_document(self.problem(mode="prior_tilt", prior=False))

    def test_flow_requires_prior(self):
        with pytest.raises(InputValidationError):
            problem_from_document(self.problem(mode="flow", n_targets=0, prior=False))

    def test_non_finite_target(self):
        doc = self.problem()
        doc["targets"] = [float("inf")]
        with pytest.raises(InputValidationError):
            problem_from_document(doc)

    def test_boolean_target_rejected(self):
        doc = self.problem()
        doc["targets"] = [True]
        with pytest.raises(InputValidationError):
            problem_from_document(doc)

    def test_pauli_observable_accepted(self):
        doc = self.problem()
        doc["observables"] = [
            {
                "dim": 2,
                "re": SIGMA_X.real.tolist(),
                "im": SIGMA_X.imag.tolist(),
            }
        ]
        parsed = problem_from_document(doc)
        assert np.array_equal(parsed.observables[0].entries, SIGMA_X)
