"""Numeric complex-gradient checks, narrated.

Run with ``python3 demos/wirtinger_gradients.py``. Functions of a complex
vector that are not holomorphic (every real-valued loss, for instance)
still have well-defined formal derivatives with respect to z and conj(z).
The package estimates both from central finite differences; this script
compares the estimates against closed forms for the inner-product building
blocks, a full function battery, and the squared-error loss whose conjugate
gradient drives the kernel LMS update.
"""

import numpy as np

from ckaf.wirtinger import (
    analytic_squared_error_gradients,
    check_inner_product_gradients,
    check_steepest_ascent,
    check_taylor_first_order,
    numeric_wirtinger_gradient,
    squared_error_loss,
    standard_battery,
)

rng = np.random.default_rng(7)

print("=== Derivatives of simple functions at z = 1+1i ===")
z0 = np.array([1.0 + 1.0j])
for name, func in (
    ("z            ", lambda v: complex(v[0])),
    ("conj(z)      ", lambda v: complex(np.conj(v[0]))),
    ("z conj(z)    ", lambda v: complex(v[0] * np.conj(v[0]))),
    ("z conj(z)^2  ", lambda v: complex(v[0] * np.conj(v[0]) ** 2)),
):
    g = numeric_wirtinger_gradient(func, z0)
    print(f"{name} d/dz = {g.r_derivative[0]:+.6f}   d/dconj(z) = {g.conj_r_derivative[0]:+.6f}")
print("Holomorphic functions have vanishing conj(z)-derivative; conj(z) has")
print("vanishing z-derivative; mixed terms have both.")

print()
print("=== Inner-product gradient identities ===")
worst = 0.0
for _ in range(10):
    w = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    probe = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    worst = max(worst, check_inner_product_gradients(w, probe))
print(f"max deviation over 10 random instances in C^5: {worst:.3e}")

print()
print("=== First-order expansion on the function battery ===")
for case in standard_battery(3, rng=rng):
    z = 0.5 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
    h = 1e-4 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
    residual = check_taylor_first_order(case.func, z, h)
    print(f"  {case.name:<22} ({case.kind:<15}) residual {residual:.3e}")

print()
print("=== Squared-error loss: the gradient behind the filter update ===")
phi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
d = complex(rng.standard_normal() + 1j * rng.standard_normal())
w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
error, r_grad, conj_grad = analytic_squared_error_gradients(phi, d, w)
numeric = numeric_wirtinger_gradient(squared_error_loss(phi, d), w)
gap = np.max(np.abs(numeric.conj_r_derivative - conj_grad))
print(f"error e = {error:.4f}")
print(f"analytic conj gradient -conj(e) phi, first entry: {conj_grad[0]:+.6f}")
print(f"numeric estimate,                   first entry: {numeric.conj_r_derivative[0]:+.6f}")
print(f"max absolute gap across entries: {gap:.3e}")

print()
print("=== Steepest ascent ===")
ok = check_steepest_ascent(squared_error_loss(phi, d), w, rng=rng)
print(f"conjugate-gradient direction beats 200 random directions: {ok}")
print("Stepping along the conjugate gradient increases the loss fastest,")
print("which is exactly why the filter update subtracts it.")
