"""The entropic flow: integrate it, compare with the closed form, navigate.

The flow moves a state orthogonally (in the statistical metric) through
the surfaces of constant <A>, which is the steepest way to change that
expectation value.  Its closed form is a symmetric exponential tilt, so
the fixed-step integrator can be checked against an exact answer, and
navigation to a target expectation lands on the same state as the
variational prior tilt.
"""

import numpy as np

from qmaxent import (
    closed_form_flow,
    expectation,
    flow_field,
    flow_to_constraint,
    integrate_flow,
    make_density,
    make_hermitian,
    solve_prior_tilt,
    trace_distance,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
sz = make_hermitian(Z)
uniform = make_density(np.eye(2) / 2)

print("== the flow field ==")
print("at I/2, A = sigma_z:        ", np.round(flow_field(uniform, sz).entries.real, 12).diagonal())
rho = make_density(np.diag([0.8, 0.2]))
print("at diag(0.8, 0.2), A = sigma_z:", np.round(flow_field(rho, sz).entries.real, 12).diagonal())
print("(traceless: both entries cancel)")

print("\n== integrate from the uniform state to lambda = 1 ==")
trajectory = integrate_flow(uniform, sz, 1.0, step=1e-3)
final = trajectory.samples[-1]
exact = closed_form_flow(uniform, sz, 1.0)
print("final state  :", np.round(np.diag(final.state.entries).real, 8))
print("closed form  :", np.round(np.diag(exact.entries).real, 8))
print("final <sigma_z>:", final.mean, "(= -tanh 1 =", -np.tanh(1.0), ")")
print("trace distance to closed form:", trace_distance(final.state, exact))
print("samples stored:", len(trajectory.samples))

print("\n== fourth-order convergence ==")
rng = np.random.default_rng(5)
g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
a = make_hermitian((g + g.conj().T) / 2)
w = np.linalg.eigvalsh(a.entries)
a = make_hermitian(a.entries * (4.0 / np.abs(w).max()))
p = rng.random(4)
p = 0.7 * p / p.sum() + 0.3 / 4
rho0 = make_density(np.diag(p))
exact = closed_form_flow(rho0, a, 1.0)
print("step        error vs closed form")
previous = None
for step in (4e-3, 2e-3, 1e-3, 5e-4):
    err = trace_distance(integrate_flow(rho0, a, 1.0, step).samples[-1].state, exact)
    ratio = "" if previous is None else f"   ({previous / err:5.1f}x better)"
    print(f"{step:.0e}    {err:.3e}{ratio}")
    previous = err

print("\n== navigate to a target expectation ==")
prior = make_density((np.eye(2) + 0.5 * X) / 2)
lam_flow, state_flow = flow_to_constraint(prior, sz, 0.6)
lam_tilt, state_tilt = solve_prior_tilt(prior, sz, 0.6)
print("flow route : lambda =", lam_flow)
print("tilt route : lambda =", lam_tilt)
print("state:\n", np.round(state_flow.entries.real, 10))
print("routes agree to trace distance", trace_distance(state_flow, state_tilt))
print("achieved <sigma_z>:", expectation(state_flow, sz))
