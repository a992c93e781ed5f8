# Short-time expansion coefficients for the two-qubit example.
#
# T_A = 15, T_B = 10, omega = 100, gamma = 10 (k = hbar = 1). Starting from a
# state without correlated coherence the first-order terms vanish, so the
# ratio (beta_B - beta_A) dE / dC is set by f2 / (g2 - g2r).

from qtransport import (
    build_two_qubit_system,
    coefficients,
    initial_acceleration,
    product_scenario,
    ratio,
    zero_cc_scenario,
)

system = build_two_qubit_system()
states = {
    "product": product_scenario(),
    "zero-CC p=0.5": zero_cc_scenario(p=0.5),
    "zero-CC p=0": zero_cc_scenario(p=0.0),
}

print(f"{'state':>14} {'f1':>8} {'g1':>8} {'g2r':>8} {'f2':>9} {'g2':>9}  ratio")
for name, rho in states.items():
    c = coefficients(rho, system)
    r = ratio(c)
    g2 = "inf" if c.g2_divergent else f"{c.g2:.5f}"
    value = f"{r.value:.4f}" if r.is_finite else r.status.value
    print(f"{name:>14} {c.f1:8.1e} {c.g1:8.1e} {c.g2r:8.1e} {c.f2:9.5f} {g2:>9}  {value} [{r.scenario.value}]")

# The coherence gain starts quadratically, dC = I_s dt^2 / 2, with I_s the
# skew information of the initial state; initial_acceleration returns I_s / 2.
print("\ninitial acceleration (product):", round(initial_acceleration(states["product"], system), 5))
print("initial acceleration (p = 0)  :", initial_acceleration(states["zero-CC p=0"], system))
