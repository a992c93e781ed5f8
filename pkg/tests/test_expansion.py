import math

import numpy as np
import pytest

from qtransport.dynamics import propagator, state_at
from qtransport.expansion import (
    ExpansionCoefficients,
    RatioStatus,
    Scenario,
    classify_scenario,
    coefficients,
    initial_acceleration,
    ratio,
)
from qtransport.linalg import hermitian_eig, matrix_log_psd, partial_trace
from qtransport.measures import DIVERGENT, mutual_information, relative_entropy, skew_information
from qtransport.scenarios import (
    ModelParams,
    build_two_qubit_system,
    exchange_coupling,
    local_hamiltonian,
    product_scenario,
    zero_cc_scenario,
)
from qtransport.states import BipartiteSystem, thermal_state

from conftest import random_hermitian


def coherence_of(rho, system):
    w1 = np.linalg.eigvalsh(system.dephase(rho))
    w2 = np.linalg.eigvalsh(rho)
    ent = lambda w: -np.sum(w[w > 0] * np.log(w[w > 0]))
    return ent(w1) - ent(w2)


def richardson_derivative(fun, t, h=1e-4):
    d = lambda s: (fun(t + s) - fun(t - s)) / (2 * s)
    return (4 * d(h / 2) - d(h)) / 3


def richardson_second(fun, t, h=1e-3):
    d = lambda s: (fun(t + s) - 2 * fun(t) + fun(t - s)) / s**2
    return (4 * d(h / 2) - d(h)) / 3


def exchange_system(rng):
    wa, wb = rng.uniform(10, 200, size=2)
    gamma = rng.uniform(0.1, 0.3) * min(wa, wb)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    hi = exchange_coupling(gamma)
    hi[1, 2] *= phase
    hi[2, 1] *= np.conj(phase)
    return BipartiteSystem.from_hamiltonians(local_hamiltonian(wa), local_hamiltonian(wb), hi)


def test_reference_product_coefficients(system):
    c = coefficients(product_scenario(), system)
    assert abs(c.f1) <= 1e-9 and abs(c.g1) <= 1e-9 and abs(c.g2r) <= 1e-9
    assert c.f2 == pytest.approx(0.102, abs=1e-3)
    assert c.g2 == pytest.approx(0.102, abs=1e-3)
    assert not c.g2_divergent


def test_reference_zero_cc_coefficients(system):
    c = coefficients(zero_cc_scenario(p=0.5), system)
    assert c.f2 == pytest.approx(0.102, abs=1e-3)
    assert c.g2 == pytest.approx(0.123, abs=1e-3)


def test_reference_coefficients_closed_form(system):
    # only the |01>,|10> exchange element moves population at t = 0:
    # f2, g2 = (gamma/2)^2 (l01 - l10) (ln l01 - ln l10) with the relevant logs
    a0 = 1 / (1 + math.exp(-100 / 15))
    b0 = 1 / (1 + math.exp(-100 / 10))
    a1, b1 = 1 - a0, 1 - b0
    f2 = 25 * (a0 * b1 - a1 * b0) * (math.log(a0 * b1) - math.log(a1 * b0))
    l01, l10 = 0.5 * b1, b0 + 0.5 * b1 - a0
    g2 = 25 * (l01 - l10) * (math.log(l01) - math.log(l10))
    c = coefficients(zero_cc_scenario(p=0.5), system)
    assert c.f2 == pytest.approx(f2, rel=1e-10)
    assert c.g2 == pytest.approx(g2, rel=1e-10)


def test_commuting_case_all_zero():
    s = build_two_qubit_system(ModelParams(gamma=0.0))
    c = coefficients(product_scenario(), s)
    for v in (c.f1, c.f2, c.g1, c.g2, c.g2r):
        assert abs(v) < 1e-12
    assert ratio(c).status is RatioStatus.INDETERMINATE
    assert ratio(c).scenario is Scenario.UNCLASSIFIED


def test_singular_zero_cc_divergent(system):
    c = coefficients(zero_cc_scenario(p=0.0), system)
    assert c.g2_divergent and math.isinf(c.g2)
    assert math.isfinite(c.f2)
    r = ratio(c)
    assert r.status is RatioStatus.DIVERGENT_TO_ZERO
    assert r.scenario is Scenario.INTER_CONVERSION


def test_ratio_examples(system):
    r = ratio(coefficients(product_scenario(), system))
    assert r.order_used == 2 and r.value == pytest.approx(1.0, abs=1e-9)
    assert r.scenario is Scenario.COHERENCE_MANDATED
    r = ratio(coefficients(zero_cc_scenario(p=0.5), system))
    assert r.order_used == 2
    assert r.value == pytest.approx(0.8318290105, abs=1e-9)
    assert r.scenario is Scenario.MIXED


def test_ratio_branches():
    c = lambda **kw: ExpansionCoefficients(**{"f1": 0, "f2": 0, "g1": 0, "g2": 0, "g2r": 0, **kw})
    r = ratio(c(f1=0.3, g1=0.6))
    assert (r.order_used, r.value, r.status) == (1, 0.5, RatioStatus.OK)
    r = ratio(c(f1=0.3))
    assert r.status is RatioStatus.DIVERGENT_TO_INFINITY and r.order_used == 1
    assert r.scenario is Scenario.CLASSICALLY_MANDATED
    r = ratio(c(g1=0.3))
    assert r.value == 0 and r.scenario is Scenario.INTER_CONVERSION
    r = ratio(c(f2=0.2, g2=0.3, g2r=0.1))
    assert r.order_used == 2 and r.value == pytest.approx(1.0)
    r = ratio(c(f2=0.2, g2=0.1, g2r=0.1))
    assert r.status is RatioStatus.DIVERGENT_TO_INFINITY and r.order_used == 2
    assert ratio(c(f1=1e-12, g1=1e-12)).status is RatioStatus.INDETERMINATE


def test_classify_scenario():
    assert classify_scenario(1.0005, RatioStatus.OK) is Scenario.COHERENCE_MANDATED
    assert classify_scenario(0.829, RatioStatus.OK) is Scenario.MIXED
    assert classify_scenario(0.0, RatioStatus.DIVERGENT_TO_ZERO) is Scenario.INTER_CONVERSION
    assert classify_scenario(5e-4, RatioStatus.OK) is Scenario.INTER_CONVERSION
    assert classify_scenario(math.inf, RatioStatus.DIVERGENT_TO_INFINITY) is Scenario.CLASSICALLY_MANDATED
    assert classify_scenario(math.nan, RatioStatus.INDETERMINATE) is Scenario.UNCLASSIFIED
    assert classify_scenario(1.01, RatioStatus.OK, scenario_tol=0.05) is Scenario.COHERENCE_MANDATED


def test_theorem_premises_random(rng):
    for _ in range(30):
        s = exchange_system(rng)
        rho = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        c = coefficients(rho, s)
        assert abs(c.f1) <= 1e-9 and abs(c.g1) <= 1e-9 and abs(c.g2r) <= 1e-9
        assert c.g2 > 0


def test_initial_acceleration(system, rng):
    assert initial_acceleration(product_scenario(), system) == pytest.approx(0.102, abs=1e-3)
    assert initial_acceleration(zero_cc_scenario(p=0.0), system) is DIVERGENT
    s0 = build_two_qubit_system(ModelParams(gamma=0.0))
    assert initial_acceleration(product_scenario(), s0) == 0
    for _ in range(10):
        s = exchange_system(rng)
        rho = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        acc = initial_acceleration(rho, s)
        assert acc == pytest.approx(skew_information(s.h_total, rho) / 2, abs=1e-12)
        assert acc == pytest.approx(coefficients(rho, s).g2, abs=1e-9)


def test_initial_acceleration_rejects_coherent_state(system):
    rho = state_at(system, product_scenario(), 0.1)
    with pytest.raises(ValueError, match="zero correlated coherence"):
        initial_acceleration(rho, system)


def test_singular_marginal_rejected(system):
    with pytest.raises(ValueError, match="singular"):
        coefficients(np.diag([1.0, 0, 0, 0]).astype(complex), system)


@pytest.mark.parametrize("name,p", [("product", None), ("p05", 0.5), ("p0", 0.0)])
@pytest.mark.parametrize("t", [0.05, 0.21, 0.37])
def test_first_order_matches_derivatives(system, name, p, t):
    rho0 = product_scenario() if p is None else zero_cc_scenario(p=p)
    dec = hermitian_eig(system.h_total)
    at = lambda s: state_at(system, rho0, s, dec)
    c = coefficients(at(t), system)
    # f1 = dI/dt (S_AB is constant); also the derivative of the frozen-log transport functional
    d_mi = richardson_derivative(lambda s: mutual_information(at(s), (2, 2)), t)
    assert c.f1 == pytest.approx(d_mi, rel=1e-6)
    rho_t = at(t)
    log_a, _ = matrix_log_psd(partial_trace(rho_t, (2, 2), "A"))
    log_b, _ = matrix_log_psd(partial_trace(rho_t, (2, 2), "B"))
    frozen = np.kron(log_a, np.eye(2)) + np.kron(np.eye(2), log_b)
    d_frozen = richardson_derivative(lambda s: -np.trace(at(s) @ frozen).real, t)
    assert c.f1 == pytest.approx(d_frozen, rel=1e-6)
    # g1 = dC/dt, g2 - g2r = C''/2
    d_c = richardson_derivative(lambda s: coherence_of(at(s), system), t)
    assert c.g1 == pytest.approx(d_c, rel=1e-5)
    dd_c = richardson_second(lambda s: coherence_of(at(s), system), t)
    assert c.g2 - c.g2r == pytest.approx(dd_c / 2, rel=1e-5)


def test_f1_matches_energy_derivative_at_thermal_marginals(system, params):
    # with thermal marginals at the initial temperatures f1 = (beta_B - beta_A) dE_B/dt
    rho0 = product_scenario()
    dec = hermitian_eig(system.h_total)
    e_b = lambda s: np.trace(state_at(system, rho0, s, dec) @ system.h_b_full).real
    d = richardson_derivative(e_b, 0.0)
    c = coefficients(rho0, system)
    assert abs(c.f1 - (params.beta_b - params.beta_a) * d) < 1e-9
    dd = richardson_second(e_b, 0.0)
    assert c.f2 == pytest.approx((params.beta_b - params.beta_a) * dd / 2, rel=1e-5)


def test_g2r_is_relative_entropy_rate(system):
    rho0 = product_scenario()
    dec = hermitian_eig(system.h_total)
    rho = state_at(system, rho0, 0.1, dec)
    c = coefficients(rho, system)
    assert c.g2r > 0
    pinched = system.dephase(rho)
    prev = None
    for k in range(4):
        dt = 1e-3 / 2**k
        nxt = system.dephase(state_at(system, rho0, 0.1 + dt, dec))
        resid = abs(relative_entropy(nxt, pinched) - c.g2r * dt**2) / dt**2
        if prev is not None:
            assert resid / prev <= 0.6
        prev = resid


def test_generic_dimensions(rng):
    # qutrit x qubit, random weak interaction: first-order coefficients match derivatives
    ha = np.diag([0.0, 1.3, 2.9])
    hb = np.diag([0.0, 1.7])
    s = BipartiteSystem.from_hamiltonians(ha, hb, random_hermitian(rng, 6, 0.05))
    rho0 = np.kron(thermal_state(ha, 0.8), thermal_state(hb, 1.4))
    dec = hermitian_eig(s.h_total)
    at = lambda t: state_at(s, rho0, t, dec)
    c = coefficients(at(0.7), s)
    assert c.g1 == pytest.approx(richardson_derivative(lambda t: coherence_of(at(t), s), 0.7), rel=1e-5)
    assert c.f1 == pytest.approx(
        richardson_derivative(lambda t: mutual_information(at(t), (3, 2)), 0.7), rel=1e-5
    )
