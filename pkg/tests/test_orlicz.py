import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnorms import capped, exp_minus_one, flat_power, power, s_composed
from fnorms.orlicz import OrliczFunction


# ---- evaluation -------------------------------------------------------------


def test_eval_examples():
    assert power(2)(3.0) == 9.0
    assert flat_power(1.0, 1.0)(0.5) == 0.0
    assert math.isinf(capped(1.0, 2.0)(2.0))
    assert exp_minus_one()(1.0) == pytest.approx(math.e - 1.0)
    assert s_composed(power(2), 0.5)(4.0) == pytest.approx(4.0)  # (4^0.5)^2


def test_eval_is_even_and_vectorized():
    phi = flat_power(0.5, 2.0)
    u = np.array([-2.0, -0.25, 0.0, 0.25, 2.0])
    out = phi(u)
    assert out[0] == out[4] and out[1] == out[3] == out[2] == 0.0


def test_params_examples():
    assert power(3).params() == (0.0, math.inf)
    assert flat_power(1.0, 2.0).params() == (1.0, math.inf)
    assert capped(2.0, 1.0).params() == (0.0, 2.0)
    # composition: zero set of g(u^s) is [0, a_g^(1/s)]
    assert s_composed(flat_power(0.25, 2.0), 0.5).params()[0] == pytest.approx(0.0625)


# ---- Young conjugation ---------------------------------------------------------


def test_young_conjugate_power_closed_form():
    psi = power(2)
    assert psi.young_conjugate(2.0) == pytest.approx(1.0, abs=1e-12)
    assert psi.young_conjugate(4.0) == pytest.approx(4.0, abs=1e-12)
    assert psi.young_conjugate(0.0) == 0.0
    # power(1): indicator of [-1, 1]
    assert power(1).young_conjugate(0.5) == 0.0
    assert math.isinf(power(1).young_conjugate(2.0))


def test_young_conjugate_numeric_vs_analytic():
    # exp_minus_one: conj(u) = u ln u - u + 1 for u >= 1, else 0
    phi = exp_minus_one()
    for u in (0.5, 1.0, 2.0, 7.5):
        expect = u * math.log(u) - u + 1.0 if u >= 1.0 else 0.0
        assert phi.young_conjugate(u) == pytest.approx(expect, abs=1e-8)
    # flat_power(a, p): conj(u) = a u + (p-1) (u/p)^(p/(p-1))
    fp = flat_power(1.5, 2.0)
    for u in (0.25, 1.0, 3.0):
        expect = 1.5 * u + (u / 2.0) ** 2
        assert fp.young_conjugate(u) == pytest.approx(expect, rel=1e-8)
    # capped(b, p): sup over (0, b]; for large u the boundary wins: u b - b^p
    cp = capped(1.0, 2.0)
    assert cp.young_conjugate(10.0) == pytest.approx(9.0, rel=1e-8)


def test_young_conjugate_rejects_nonconvex():
    with pytest.raises(ValueError):
        s_composed(power(2), 0.5).young_conjugate(1.0)


@settings(max_examples=200)
@given(u=st.floats(0.0, 50.0), v=st.floats(0.0, 50.0))
def test_fenchel_young_inequality(u, v):
    phi = power(2)
    assert u * v <= phi(v) + phi.young_conjugate(u) + 1e-9


# ---- doubling probe -------------------------------------------------------------


def test_delta2_power_constant_ratio():
    for p in (1.0, 2.0, 3.0):
        rep = power(p).delta2_probe()
        assert rep.holds and rep.K == pytest.approx(2.0 ** p, rel=1e-12)
        assert rep.agrees_with_declared


def test_delta2_exp_fails():
    rep = exp_minus_one().delta2_probe(u_max=50.0, K_cap=1e6)
    assert not rep.holds and rep.fails_at is not None
    assert rep.agrees_with_declared


def test_delta2_flat_fails_just_above_half_zero_point():
    rep = flat_power(1.0, 1.0).delta2_probe()
    assert not rep.holds
    assert 0.5 < rep.fails_at <= 1.0


def test_delta2_capped_fails():
    assert not capped(1.0, 2.0).delta2_probe().holds


def test_delta2_s_composed_inherits():
    rep = s_composed(power(2), 0.5).delta2_probe()
    assert rep.holds and rep.declared


# ---- structural probes ------------------------------------------------------------


@settings(max_examples=200)
@given(u=st.floats(0.0, 20.0), v=st.floats(0.0, 20.0), theta=st.floats(0.0, 1.0))
def test_convexity_of_convex_tags(u, v, theta):
    for phi in (power(1.7), flat_power(0.5, 2.0), exp_minus_one()):
        lhs = phi(theta * u + (1.0 - theta) * v)
        rhs = theta * phi(u) + (1.0 - theta) * phi(v)
        assert lhs <= rhs + 1e-12 * max(1.0, rhs)


@settings(max_examples=100)
@given(lam=st.floats(0.1, 4.0), mu=st.floats(0.1, 4.0), u=st.floats(0.0, 8.0))
def test_s_composed_scaling_consistency(lam, mu, u):
    phi = s_composed(power(2), 0.5)
    one_step = phi((lam * mu) * u)
    two_step = phi.base(((lam * mu) ** phi.s) * (u ** phi.s))
    assert one_step == pytest.approx(two_step, rel=1e-14, abs=1e-14)


def test_growth_ratio_evidence_monotone_for_superlinear():
    assert power(2).growth_ratio_evidence()["monotone_growth"]
    assert exp_minus_one().growth_ratio_evidence(u_hi=500.0)["monotone_growth"]


def test_json_round_trip():
    for phi in (power(2.5), flat_power(1.0, 2.0), capped(2.0, 1.5),
                exp_minus_one(), s_composed(power(3), 0.5)):
        assert OrliczFunction.from_json(phi.to_json()) == phi


def test_constructor_validation():
    with pytest.raises(ValueError):
        power(0.5)
    with pytest.raises(ValueError):
        flat_power(-1.0, 2.0)
    with pytest.raises(ValueError):
        s_composed(power(2), 1.5)
    with pytest.raises(ValueError):
        s_composed(s_composed(power(2), 0.5), 0.5)
