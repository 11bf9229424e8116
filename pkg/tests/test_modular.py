import math

import numpy as np
import pytest

from fnorms import (MeasureDomain, ModularComponent, SemimodularFamily,
                    StepFunction, axiom_probe, capped, d_condition_check,
                    exp_minus_one, left_continuity_probe, monotonicity_probe,
                    power, rho_sequence_condition, s_composed, scaling_lemma_probe,
                    simple_space, superadditivity_probe, uniform_weight)

U = MeasureDomain.unit()
W2 = MeasureDomain.window(2.0)
W4 = MeasureDomain.window(4.0)


def identity_comp(phi, dom=U):
    return ModularComponent(phi, uniform_weight(dom), "identity")


def fam(*phis, s=1.0, dom=U):
    return SemimodularFamily(s, tuple(identity_comp(p, dom) for p in phis))


def chi(dom, a, b, v=1.0):
    return StepFunction.indicator(dom, a, b, v)


# ---- evaluation ---------------------------------------------------------------


def test_identity_component_examples():
    c = identity_comp(power(2))
    assert c.evaluate(chi(U, 0, 1)) == 1.0
    assert c.evaluate(chi(U, 0, 1, 2.0)) == 4.0


def test_cesaro_component_power1_unit():
    sp = simple_space("l1", power(1), operator="cesaro")
    c = sp.family.components[0]
    # C(chi[0,1)) = 1 on (0, 1), so the weighted integral is 1
    assert c.evaluate(chi(U, 0, 1)) == pytest.approx(1.0, abs=1e-12)


def test_cesaro_component_with_tail_oracle():
    sp = simple_space("l1", power(2), operator="cesaro", domain=W2)
    c = sp.family.components[0]
    # int_0^1 phi(1) + int_1^2 phi(1/t) dt = 1 + [-1/t]_1^2 = 1.5
    assert c.evaluate(chi(W2, 0, 1)) == pytest.approx(1.5, abs=1e-12)


def test_maximal_component_matches_cesaro_for_nonincreasing_input():
    ces = simple_space("l1", power(2), operator="cesaro", domain=W2).family.components[0]
    mx = simple_space("l1", power(2), operator="maximal_rearrangement",
                      domain=W2).family.components[0]
    x = chi(W2, 0, 1, 2.0)  # already nonincreasing and nonnegative
    assert mx.evaluate(x) == pytest.approx(ces.evaluate(x), abs=1e-12)


def test_identity_by_quadrature_oracle_consistency():
    # force an identity integrand through the quadrature path: the cesaro
    # evaluator on a constant-curve input reduces to the same integral
    from fnorms.quadrature import integrate_adaptive
    phi = power(2)
    x = chi(U, 0, 1, 0.0) + chi(U, 0, 1, 3.0)
    exact = identity_comp(phi).evaluate(x)
    quad = integrate_adaptive(lambda ts: np.asarray(phi(x(ts)), dtype=float), 0.0, 1.0)
    assert quad == pytest.approx(exact, abs=1e-9)


def test_eval_max_examples():
    family = fam(power(2), power(4))
    x = chi(U, 0, 1, 2.0)
    assert family.eval_max(x) == 16.0
    assert family.eval_max(StepFunction.zero(U)) == 0.0
    capped_fam = fam(capped(1.0, 2.0))
    assert math.isinf(capped_fam.eval_max(x))


def test_infinity_propagates_through_operator_path():
    sp = simple_space("l1", capped(1.0, 2.0), operator="cesaro")
    assert math.isinf(sp.family.components[0].evaluate(chi(U, 0, 1, 3.0)))


def test_weight_validation():
    with pytest.raises(ValueError):
        ModularComponent(power(2), chi(U, 0, 1, -1.0), "identity")
    with pytest.raises(ValueError):
        # operator components need w > 0 on the whole window
        ModularComponent(power(2), chi(U, 0, 0.5, 1.0), "cesaro")
    with pytest.raises(ValueError):
        ModularComponent(power(2), uniform_weight(U), "fourier")


# ---- probes ----------------------------------------------------------------------


def test_axiom_probe_convex_family():
    assert axiom_probe(fam(power(2)), trials=60, seed=3).passed


def test_axiom_probe_s_half_family():
    family = fam(s_composed(power(2), 0.5), s=0.5)
    assert axiom_probe(family, trials=60, seed=3).passed


def test_axiom_probe_negative_control():
    # sqrt-modular is 1/2-convex but NOT convex: declaring s = 1 must fail
    wrong = fam(s_composed(power(1), 0.5), s=1.0)
    rep = axiom_probe(wrong, trials=200, seed=3)
    assert not rep.passed and rep.witness["axiom"] == "s-convexity"


def test_scaling_lemma_probe_and_trivial_cases():
    family = fam(power(2))
    assert scaling_lemma_probe(family, trials=100, seed=1).passed
    x = chi(U, 0, 1)
    assert family.eval_max(x, lam=2.0) == 4.0 >= 2.0 * family.eval_max(x)
    assert family.eval_max(x, lam=1.0) == family.eval_max(x)
    shalf = fam(s_composed(power(2), 0.5), s=0.5)
    assert shalf.eval_max(x, lam=4.0) >= 2.0 * shalf.eval_max(x) - 1e-12


def test_superadditivity_probe_and_disjoint_exactness():
    family = fam(power(2))
    assert superadditivity_probe(family, trials=100, seed=2).passed
    x, y = chi(W2, 0, 1), chi(W2, 1, 2)
    comp = identity_comp(power(2), W2)
    assert comp.evaluate(x + y) == comp.evaluate(x) + comp.evaluate(y) == 2.0
    ces = simple_space("l1", power(2), operator="cesaro").family
    assert superadditivity_probe(ces, trials=40, seed=2).passed


def test_monotonicity_probe():
    assert monotonicity_probe(fam(power(2)), trials=100, seed=4).passed
    ces = simple_space("l1", power(1.5), operator="cesaro").family
    assert monotonicity_probe(ces, trials=30, seed=4).passed


def test_left_continuity_probe_cases():
    family = fam(power(2))
    rep = left_continuity_probe(family, chi(U, 0, 1), 1.0)
    # gap decays at the O(2^-j) schedule rate: ~2 * 2^-20 at the last step
    assert rep.passed and rep.records[-1] <= 4.0 * 2.0 ** -20
    capped_fam = fam(capped(1.0, 2.0))
    rep = left_continuity_probe(capped_fam, chi(U, 0, 1), 1.0)
    assert rep.passed  # finite side limit equals the value 1
    rep = left_continuity_probe(capped_fam, chi(U, 0, 1), 1.5)
    assert rep.passed and "right-discontinuity" in rep.witness["note"]
    assert rep.witness["left_values_finite"]


def test_d_condition_oracles():
    ces = simple_space("l1", power(1), operator="cesaro").family.components[0]
    rep = d_condition_check(ces, [(0.0, 1.0)])
    assert rep.records[0]["inner"] == pytest.approx(1.0, abs=1e-12)  # integrand == 1

    ces2 = simple_space("l1", power(2), operator="cesaro", domain=W4).family.components[0]
    rep = d_condition_check(ces2, [(1.0, 2.0), (2.0, 4.0)])
    # analytic antiderivative of ((t-a)/t)^2 is t - 2a ln t - a^2/t
    assert rep.records[0]["inner"] == pytest.approx(1.5 - 2.0 * math.log(2.0), abs=1e-9)
    assert rep.records[1]["inner"] == pytest.approx(3.0 - 4.0 * math.log(2.0), abs=1e-9)
    # truncated outer integral of phi((b-a)/t) from b to horizon
    assert rep.records[0]["outer_truncated"] == pytest.approx(
        1.0 / 2.0 - 1.0 / 4.0, abs=1e-9)
    with pytest.raises(ValueError):
        d_condition_check(ces, [(1.0, 1.0)])


def test_rho_sequence_condition_cases():
    family = fam(power(2))
    holds = rho_sequence_condition(
        family, [chi(U, 0, 1, 1.0 / m) for m in range(1, 21)])
    assert holds.passed and holds.witness is None

    expfam = fam(exp_minus_one())
    ladder = [chi(U, 0, math.exp(-m), float(m)) for m in range(1, 21)]
    vac = rho_sequence_condition(expfam, ladder)
    assert vac.passed and "vacuous" in vac.witness["note"]

    zeros = rho_sequence_condition(family, [StepFunction.zero(U)] * 10)
    assert zeros.passed


def test_rho_sequence_condition_detects_doubling_failure():
    # rho(x_m) = 2^-m -> 0 while rho(2 x_m) ~ (e^2/2)^m blows up
    expfam = fam(exp_minus_one())
    ladder = [chi(U, 0, 2.0 ** -m / math.expm1(2.0 * m), 2.0 * m) for m in range(3, 23)]
    rep = rho_sequence_condition(expfam, ladder)
    assert not rep.passed


def test_family_validation_and_json():
    with pytest.raises(ValueError):
        SemimodularFamily(0.0, (identity_comp(power(2)),))
    with pytest.raises(ValueError):
        SemimodularFamily(1.0, ())
    with pytest.raises(ValueError):
        SemimodularFamily(1.0, (identity_comp(power(2), U), identity_comp(power(2), W2)))
    family = SemimodularFamily(0.5, (identity_comp(s_composed(power(2), 0.5)),
                                     identity_comp(power(1))))
    assert SemimodularFamily.from_json(family.to_json()) == family
    assert family.n == 3
