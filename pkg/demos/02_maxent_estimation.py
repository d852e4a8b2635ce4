"""Estimating a density operator from expectation values.

Feeds the solver a qubit problem with two non-commuting constraints,
checks it against the closed-form answer, inspects the dual, confirms the
multiplier/entropy duality, and shows what happens for unreachable targets
and for commuting (classical) problems.
"""

import numpy as np

from qmaxent import (
    ConstraintSet,
    Infeasible,
    classical_gibbs_oracle,
    dual_objective,
    entropy_sensitivity,
    gibbs_state,
    make_hermitian,
    partition_function,
    solve_maxent,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
sx, sz = make_hermitian(X), make_hermitian(Z)

print("== canonical states ==")
print("Z(0)        =", partition_function([0.0], [sz]))
print("Z(ln 2)     =", partition_function([np.log(2.0)], [sz]))
print("gibbs(-ln2) =", np.round(gibbs_state([-np.log(2.0)], [sz]).entries.real, 12).diagonal())

print("\n== qubit estimation: <sigma_x> = 0.3, <sigma_z> = 0.4 ==")
constraints = ConstraintSet((sx, sz), [0.3, 0.4])
solution = solve_maxent(constraints)
print("multipliers :", solution.multipliers)
b = np.arctanh(0.5)
print("closed form :", np.array([-b * 0.6, -b * 0.8]), "(Bloch relation r = tanh|b| b_hat)")
print("estimate    :\n", np.round(solution.estimate.entries.real, 10))
print("iterations  :", solution.iterations, " residual:", solution.residual)
print("S_max       :", solution.s_max)
print("log Z + lam.t:", solution.lambda0 + float(solution.multipliers @ constraints.targets))

print("\n== the dual is flat exactly at the solution ==")
for lam in ([0.0, 0.0], list(solution.multipliers)):
    value, gradient = dual_objective(lam, constraints)
    print(f"lam = {np.round(lam, 4)}  value = {value:.6f}  gradient = {np.round(gradient, 10)}")

print("\n== multipliers are entropy sensitivities ==")
print("finite differences:", entropy_sensitivity(constraints))
print("solved multipliers:", solution.multipliers)

print("\n== unreachable targets fail loudly ==")
try:
    solve_maxent(ConstraintSet((sz,), [1.0]))
except Infeasible as exc:
    print("boundary target:", exc)
try:
    solve_maxent(ConstraintSet((sx, sz), [0.9, 0.9]))
except Infeasible as exc:
    print("jointly unreachable:", exc)

print("\n== commuting constraints reduce to a classical problem ==")
values = np.array([[1.0, 0.0, -1.0], [1.0, -1.0, 0.0]])
observables = tuple(make_hermitian(np.diag(v)) for v in values)
targets = [0.25, 0.1]
solution = solve_maxent(ConstraintSet(observables, targets), tol=1e-13, max_iter=2000)
classical = classical_gibbs_oracle(np.full(3, 1.0 / 3.0), values, targets, tol=1e-13)
print("quantum diagonal :", np.round(np.diag(solution.estimate.entries).real, 12))
print("classical oracle :", np.round(classical, 12))
off = solution.estimate.entries - np.diag(np.diag(solution.estimate.entries))
print("max off-diagonal :", np.abs(off).max())
