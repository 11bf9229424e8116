import json
import math

import numpy as np
import pytest
from hypothesis import given, settings

from fnorms import MeasureDomain, StepFunction, random_step_function
from fnorms.stepfun import DomainMismatchError

from conftest import dyadic_steps

U = MeasureDomain.unit()
W3 = MeasureDomain.window(3.0)


def chi(a, b, v=1.0, dom=W3):
    return StepFunction.indicator(dom, a, b, v)


# ---- lattice --------------------------------------------------------------


def test_add_disjoint_supports():
    got = chi(0, 1, 2.0) + chi(1, 3, 1.0)
    assert got.pieces() == [(0.0, 1.0, 2.0), (1.0, 3.0, 1.0)]


def test_abs_of_negative():
    assert abs(chi(0, 2, -3.0)).pieces() == [(0.0, 2.0, 3.0)]


def test_pointwise_min():
    got = chi(0, 2, 2.0).minimum(chi(1, 3, 1.0))
    assert got.pieces() == [(0.0, 1.0, 0.0), (1.0, 2.0, 1.0)]


def test_domain_mismatch_rejected():
    with pytest.raises(DomainMismatchError):
        chi(0, 1, 1.0, dom=U) + chi(0, 1, 1.0)


def test_canonicalization_is_representation_independent():
    a = StepFunction.make(W3, (0.0, 1.0, 2.0), (1.0, 1.0))
    b = StepFunction.make(W3, (0.0, 2.0), (1.0,))
    assert a == b
    # zero tail dropped
    c = StepFunction.make(W3, (0.0, 1.0, 2.0), (1.0, 0.0))
    assert c.pieces() == [(0.0, 1.0, 1.0)]


@settings(max_examples=60)
@given(x=dyadic_steps(), y=dyadic_steps())
def test_lattice_commutes_with_canonicalization(x, y):
    # building the sum from split pieces of x must give the identical result
    refined_breaks = sorted(set(x.breakpoints) | {0.5})
    mids = [(a + b) / 2 for a, b in zip(refined_breaks, refined_breaks[1:])]
    x_refined = StepFunction.make(x.domain, refined_breaks, [x(m) for m in mids])
    assert x_refined == x
    assert (x_refined + y) == (x + y)


# ---- integration / distribution -------------------------------------------


def test_integrate_examples():
    assert (chi(0, 1, 2.0) + chi(1, 3, 1.0)).integrate() == 4.0
    assert StepFunction.zero(W3).integrate() == 0.0
    assert StepFunction.indicator(U, 0.0, 0.5, 0.5).integrate() == 0.25


def test_distribution_examples():
    x = chi(0, 1, 2.0) + chi(1, 3, 1.0)
    assert x.distribution(1.5) == 1.0
    assert x.distribution(0.5) == 3.0
    assert x.distribution(2.0) == 0.0  # strict superlevel


# ---- rearrangement ----------------------------------------------------------


def test_rearrangement_sorts_two_pieces():
    x = chi(0, 1, 1.0) + chi(1, 2, 3.0)
    assert x.decreasing_rearrangement().pieces() == [(0.0, 1.0, 3.0), (1.0, 2.0, 1.0)]


def test_rearrangement_fixes_nonincreasing_input():
    x = chi(0, 1, 3.0) + chi(1, 2, 1.0)
    assert x.decreasing_rearrangement() == x


def test_rearrangement_abs_and_gap_removal():
    x = chi(0, 1, -2.0) + chi(2, 3, 1.0)
    assert x.decreasing_rearrangement().pieces() == [(0.0, 1.0, 2.0), (1.0, 2.0, 1.0)]


@settings(max_examples=100)
@given(x=dyadic_steps())
def test_rearrangement_preserves_distribution_exactly(x):
    r = x.decreasing_rearrangement()
    assert x.equimeasurable(r)
    assert abs(x).integrate() == r.integrate()
    # the rearrangement is nonincreasing
    vals = r.values
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_equimeasurable_examples():
    assert chi(0, 1).equimeasurable(chi(2, 3))
    assert not chi(0, 1).equimeasurable(chi(0, 1, 2.0))


# ---- curves -----------------------------------------------------------------


def test_cesaro_examples():
    x = StepFunction.indicator(U, 0.0, 1.0)
    c = x.cesaro()
    assert c(0.5) == 1.0
    assert c(2.0) == 0.5
    y = chi(0, 1, 2.0) + chi(1, 3, 1.0)
    assert y.cesaro()(3.0) == pytest.approx(4.0 / 3.0, abs=1e-15)


def test_maximal_examples():
    x = StepFunction.indicator(U, 0.0, 1.0)
    m = x.maximal()
    assert m(2.0) == 0.5
    assert m(0.5) == 1.0
    z = chi(0, 1, 3.0) + chi(1, 2, 1.0)
    # exact piecewise integration: (3*1 + 1*1) / 2
    assert z.maximal()(2.0) == pytest.approx(2.0, abs=1e-15)


def test_curve_continuity_at_joints():
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = random_step_function(rng, W3, nonneg=False)
        c = x.cesaro()
        for t in c.breakpoints[1:]:
            left = c(t)  # piece (prev, t]
            right = c(t + 1e-12)
            assert right == pytest.approx(left, rel=1e-9, abs=1e-9)


def test_maximal_dominates_rearrangement_and_is_nonincreasing(rng):
    for _ in range(30):
        x = random_step_function(rng, W3, nonneg=False)
        m = x.maximal()
        r = x.decreasing_rearrangement()
        ts = np.geomspace(1e-4, 3.0, 1000)
        mv = m(ts)
        rv = r(ts)
        assert np.all(mv >= rv - 1e-12)
        assert np.all(np.diff(mv) <= 1e-12)


def test_cesaro_subadditive_across_inputs(rng):
    ts = np.geomspace(1e-3, 3.0, 200)
    for _ in range(20):
        x = random_step_function(rng, W3, nonneg=False)
        y = random_step_function(rng, W3, nonneg=False)
        lhs = (x + y).cesaro()(ts)
        rhs = abs(x).cesaro()(ts) + abs(y).cesaro()(ts)
        assert np.all(lhs <= rhs + 1e-12)


def test_curve_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        chi(0, 1).cesaro()(0.0)


# ---- serialization -----------------------------------------------------------


def test_json_round_trip():
    x = chi(0, 1, 2.0) + chi(1, 3, -1.0)
    back = StepFunction.from_json(json.loads(json.dumps(x.to_json())))
    assert back == x


def test_from_pieces_fills_gaps_and_validates():
    x = StepFunction.from_pieces(W3, [[0.5, 1.0, 2.0], [2.0, 3.0, 1.0]])
    assert x(0.25) == 0.0 and x(0.75) == 2.0 and x(1.5) == 0.0 and x(2.5) == 1.0
    with pytest.raises(ValueError):
        StepFunction.from_pieces(W3, [[0, 2, 1], [1, 3, 1]])  # overlap
    with pytest.raises(ValueError):
        StepFunction.from_pieces(W3, [[0, 4, 1]])  # beyond horizon


def test_restrict_and_support():
    x = chi(0, 2, 2.0)
    assert x.restrict(0.5, 1.5).pieces() == [(0.0, 0.5, 0.0), (0.5, 1.5, 2.0)]
    assert x.support_measure() == 2.0
    assert x.support_end() == 2.0


def test_scale_and_zero():
    x = chi(0, 1, 2.0)
    assert x.scale(0.0).is_zero
    assert x.scale(-1.5).pieces() == [(0.0, 1.0, -3.0)]
    assert StepFunction.zero(W3).decreasing_rearrangement().is_zero
