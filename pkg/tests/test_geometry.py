from __future__ import annotations

import numpy as np
import pytest

from qmaxent import (
    DimMismatch,
    NotTraceless,
    OneForm,
    SingularBase,
    TangentDecomposition,
    TangentVector,
    assemble_tangent,
    line_element,
    lower_vector,
    make_density,
    make_hermitian,
    metric_forms,
    metric_vectors,
    pair,
    raise_form,
    zero_mean_form,
)

from helpers import SIGMA_X, SIGMA_Z, rand_density, rand_hermitian

SX = make_hermitian(SIGMA_X)
SZ = make_hermitian(SIGMA_Z)
UNIFORM = make_density(np.eye(2) / 2)
DIAG82 = make_density(np.diag([0.8, 0.2]))


class TestTypes:
    def test_tangent_vector_must_be_traceless(self):
        with pytest.raises(NotTraceless):
            TangentVector(at=UNIFORM, value=make_hermitian(np.eye(2)))
        TangentVector(at=UNIFORM, value=SZ)

    def test_decomposition_shifts_must_balance(self):
        with pytest.raises(NotTraceless):
            TangentDecomposition(dp=[0.1, 0.0], dtheta=0.0, h=SX)
        TangentDecomposition(dp=[0.1, -0.1], dtheta=0.0, h=SX)

    def test_decomposition_dim_check(self):
        with pytest.raises(DimMismatch):
            TangentDecomposition(dp=[0.1, -0.1, 0.0], dtheta=0.0, h=SX)


class TestPair:
    def test_identity_form(self, rng):
        rho = rand_density(rng, 4)
        assert pair(OneForm(make_hermitian(np.eye(4))), rho) == pytest.approx(1.0, abs=1e-14)

    def test_as_expectation(self):
        assert pair(OneForm(SZ), DIAG82) == pytest.approx(0.6, abs=1e-15)

    def test_zero_mean_case(self):
        assert pair(OneForm(SX), UNIFORM) == 0.0


class TestRaiseLower:
    def test_raise_uniform_halves(self):
        out = raise_form(UNIFORM, OneForm(SX))
        assert np.allclose(out.entries, SIGMA_X / 2)

    def test_raise_off_diagonal_average(self):
        out = raise_form(DIAG82, OneForm(SX))
        assert np.allclose(out.entries, np.array([[0.0, 0.5], [0.5, 0.0]]))

    def test_raise_linearity_zero(self):
        out = raise_form(DIAG82, OneForm(make_hermitian(np.zeros((2, 2)))))
        assert np.all(out.entries == 0.0)

    def test_lower_uniform_doubles(self):
        out = lower_vector(UNIFORM, SX)
        assert np.allclose(out.value.entries, 2.0 * SIGMA_X)

    def test_lower_off_diagonal_denominator(self):
        out = lower_vector(DIAG82, SX)
        assert np.allclose(out.value.entries, 2.0 * SIGMA_X, atol=1e-13)

    def test_lower_rejects_pure_state(self):
        with pytest.raises(SingularBase):
            lower_vector(make_density(np.diag([1.0, 0.0])), SX)

    def test_inversion_random(self, rng):
        for _ in range(500):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n, min_eig=0.02)
            vec = rand_hermitian(rng, n)
            assert (
                np.abs(raise_form(rho, lower_vector(rho, vec)).entries - vec.entries).max()
                <= 1e-10
            )
            form = OneForm(rand_hermitian(rng, n))
            back = lower_vector(rho, raise_form(rho, form))
            assert np.abs(back.value.entries - form.value.entries).max() <= 1e-10


class TestMetric:
    def test_forms_examples(self):
        assert metric_forms(UNIFORM, OneForm(SX), OneForm(SX)) == pytest.approx(1.0, abs=1e-14)
        one = OneForm(make_hermitian(np.eye(2)))
        assert metric_forms(DIAG82, one, one) == pytest.approx(1.0, abs=1e-14)
        assert metric_forms(UNIFORM, OneForm(SX), OneForm(SZ)) == pytest.approx(0.0, abs=1e-14)

    def test_vectors_example(self):
        assert metric_vectors(UNIFORM, SX, SX) == pytest.approx(4.0, abs=1e-12)
        zero = make_hermitian(np.zeros((2, 2)))
        assert metric_vectors(UNIFORM, zero, SX) == 0.0

    def test_duality(self):
        raised = raise_form(UNIFORM, OneForm(SX))
        assert metric_vectors(UNIFORM, raised, raised) == pytest.approx(
            metric_forms(UNIFORM, OneForm(SX), OneForm(SX)), abs=1e-12
        )

    def test_forms_equals_trace_against_raised(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n)
            a, b = OneForm(rand_hermitian(rng, n)), OneForm(rand_hermitian(rng, n))
            direct = metric_forms(rho, a, b)
            via_raise = np.trace(a.value.entries @ raise_form(rho, b).entries).real
            assert abs(direct - via_raise) <= 1e-12

    def test_symmetry_and_bilinearity(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n)
            a, b, c = (rand_hermitian(rng, n) for _ in range(3))
            alpha, beta = rng.normal(), rng.normal()
            assert abs(
                metric_forms(rho, OneForm(a), OneForm(b))
                - metric_forms(rho, OneForm(b), OneForm(a))
            ) <= 1e-12
            combo = make_hermitian(alpha * a.entries + beta * c.entries)
            lhs = metric_forms(rho, OneForm(combo), OneForm(b))
            rhs = alpha * metric_forms(rho, OneForm(a), OneForm(b)) + beta * metric_forms(
                rho, OneForm(c), OneForm(b)
            )
            assert abs(lhs - rhs) <= 1e-12

    def test_vector_metric_positive_definite(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n, min_eig=0.02)
            vec = rand_hermitian(rng, n)
            if np.linalg.norm(vec.entries, "fro") < 1e-8:
                continue
            assert metric_vectors(rho, vec, vec) > 1e-14

    def test_dual_consistency_random(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n, min_eig=0.02)
            a, b = OneForm(rand_hermitian(rng, n)), OneForm(rand_hermitian(rng, n))
            lhs = metric_vectors(rho, raise_form(rho, a), raise_form(rho, b))
            rhs = metric_forms(rho, a, b)
            assert abs(lhs - rhs) <= 1e-10


class TestLineElement:
    def test_classical_term(self):
        d = TangentDecomposition(dp=[0.01, -0.01], dtheta=0.0, h=SX)
        assert line_element(UNIFORM, d) == pytest.approx(4e-4, abs=1e-16)

    def test_rotation_term(self):
        eps = 1e-3
        d = TangentDecomposition(dp=[0.0, 0.0], dtheta=eps, h=SX)
        assert line_element(DIAG82, d) == pytest.approx(1.44 * eps**2, rel=1e-12)

    def test_degenerate_spectrum_kills_rotation(self, rng):
        d = TangentDecomposition(dp=[0.0, 0.0], dtheta=rng.normal(), h=rand_hermitian(rng, 2))
        assert line_element(UNIFORM, d) == pytest.approx(0.0, abs=1e-15)

    def test_matches_metric_on_assembled_direction(self, rng):
        for _ in range(500):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n, min_eig=0.02)
            dp = rng.normal(size=n)
            dp -= dp.mean()
            d = TangentDecomposition(dp=dp, dtheta=rng.normal(), h=rand_hermitian(rng, n))
            direction = assemble_tangent(rho, d)
            assert abs(np.trace(direction.entries)) <= 1e-12
            assert abs(line_element(rho, d) - metric_vectors(rho, direction, direction)) <= 1e-10


class TestZeroMeanForm:
    def test_already_centered(self):
        out = zero_mean_form(UNIFORM, SZ)
        assert np.allclose(out.value.entries, SIGMA_Z)

    def test_subtracts_mean(self):
        out = zero_mean_form(DIAG82, SZ)
        assert np.allclose(out.value.entries, SIGMA_Z - 0.6 * np.eye(2))

    def test_identity_becomes_zero(self, rng):
        rho = rand_density(rng, 3)
        out = zero_mean_form(rho, make_hermitian(np.eye(3)))
        assert np.abs(out.value.entries).max() <= 1e-15

    def test_pairing_vanishes_random(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            rho = rand_density(rng, n)
            form = zero_mean_form(rho, rand_hermitian(rng, n))
            assert abs(pair(form, rho)) <= 1e-12


def test_orthogonality_of_raised_zero_mean_form(rng):
    from helpers import zero_pairing_tangent

    for _ in range(100):
        n = int(rng.integers(2, 9))
        rho = rand_density(rng, n, min_eig=0.02)
        obs = rand_hermitian(rng, n)
        delta = zero_mean_form(rho, obs)
        tangent = zero_pairing_tangent(rng, n, delta.value.entries)
        value = metric_vectors(rho, raise_form(rho, delta), tangent)
        assert abs(value) <= 1e-10
