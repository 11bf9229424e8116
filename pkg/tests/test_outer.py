import math

import numpy as np
import pytest

from fnorms import (OuterNorm, a_norm, crucial_probe, dual_norm,
                    equivalence_constants, l1, lp, max_norm,
                    monotonicity_modulus, monotonicity_profile, weighted_lp)
from fnorms.outer import dual_of, uniformly_monotone_probe


# ---- evaluation -------------------------------------------------------------


def test_eval_examples():
    assert l1(2)((1.0, 0.5)) == 1.5
    assert max_norm(3)((1.0, 2.0, 0.5)) == 2.0
    assert a_norm(3)((1.0, 2.0, 0.5)) == 3.0
    assert lp(2, 2.0)((3.0, 4.0)) == 5.0
    assert weighted_lp(2, 1.0, (2.0, 0.5))((1.0, 2.0)) == 3.0


def test_min_basis_value():
    assert l1(3).min_basis_value() == 1.0
    assert weighted_lp(2, 1.0, (2.0, 0.5)).min_basis_value() == 0.5
    assert a_norm(3).min_basis_value() == 1.0


def test_dimension_checks():
    with pytest.raises(ValueError):
        l1(2)((1.0, 2.0, 3.0))
    with pytest.raises(ValueError):
        OuterNorm("lp", 2, p=1.0)
    with pytest.raises(ValueError):
        weighted_lp(2, 2.0, (1.0, -1.0))


# ---- modulus of monotonicity -----------------------------------------------------


def test_modulus_l1_equals_eps():
    # on the orthant l1 satisfies f(v-u) = f(v) - f(u), so delta(eps) = eps;
    # the analytic uniform-scaling cap makes the estimate exact
    for eps in (0.1, 0.5, 0.9):
        assert monotonicity_modulus(l1(2), eps) == pytest.approx(eps, abs=1.0 / 63.0)
        assert monotonicity_modulus(l1(2), eps) <= eps


def test_modulus_max_is_zero():
    assert monotonicity_modulus(max_norm(2), 0.5) == 0.0
    assert monotonicity_modulus(a_norm(3), 0.5) == 0.0


def test_modulus_at_zero_is_zero():
    for f in (l1(2), max_norm(2), lp(2, 2.0)):
        assert monotonicity_modulus(f, 0.0) == 0.0


def test_modulus_l2_near_closed_form():
    # delta_{l2}(eps) = 1 - sqrt(1 - eps^2), attained at coordinate-masked pairs
    for eps in (0.3, 0.5, 0.7):
        exact = 1.0 - math.sqrt(1.0 - eps ** 2)
        got = monotonicity_modulus(lp(2, 2.0), eps)
        assert got == pytest.approx(exact, abs=5e-3)
        assert got <= eps


def test_modulus_monotone_in_eps_and_capped():
    grid = (0.0, 0.25, 0.5, 0.75, 1.0)
    for f in (l1(2), lp(2, 2.0), max_norm(2), weighted_lp(2, 2.0, (1.0, 3.0)), a_norm(2)):
        prof = monotonicity_profile(f)
        vals = [prof.value(e) for e in grid]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
        assert all(v <= e for v, e in zip(vals, grid))


def test_uniformly_monotone_predicate_matches_catalog():
    assert uniformly_monotone_probe(l1(2))
    assert uniformly_monotone_probe(lp(2, 1.5))
    assert uniformly_monotone_probe(weighted_lp(2, 2.0, (1.0, 2.0)))
    assert not uniformly_monotone_probe(max_norm(2))
    assert not uniformly_monotone_probe(a_norm(3))


# ---- duals --------------------------------------------------------------------


def test_dual_closed_forms():
    assert dual_norm(l1(2), (1.0, 1.0)) == 1.0       # dual of l1 is max
    assert dual_norm(max_norm(2), (1.0, 1.0)) == 2.0  # dual of max is l1
    assert dual_norm(lp(2, 2.0), (3.0, 4.0)) == 5.0   # l2 self-dual


def test_dual_weighted_p1_is_weighted_max():
    f = weighted_lp(2, 1.0, (2.0, 0.5))
    assert dual_norm(f, (2.0, 1.0)) == pytest.approx(2.0)  # max(2/2, 1/0.5)


def test_dual_involution_on_closed_form_tags(rng):
    for f in (l1(3), max_norm(3), lp(2, 1.5), weighted_lp(2, 2.0, (1.0, 3.0))):
        ff = dual_of(dual_of(f))
        pts = rng.uniform(-2.0, 2.0, size=(1000, f.n))
        assert np.allclose(ff.eval_rows(pts), f.eval_rows(pts), atol=1e-12)


def test_dual_a_norm_bruteforce_vs_block_decomposition(rng):
    # A = |x1| + max(rest) decomposes over blocks, so A*(y) = max(|y1|, sum rest)
    f = a_norm(3)
    for _ in range(15):
        y = rng.uniform(0.0, 3.0, size=3)
        expect = max(y[0], y[1] + y[2])
        assert dual_norm(f, y) == pytest.approx(expect, rel=1e-5, abs=1e-5)


# ---- equivalence constants -----------------------------------------------------


def test_equivalence_corner_exact_pairs():
    m, M = equivalence_constants(max_norm(2), l1(2))
    assert (m, M) == (1.0, 2.0)
    m, M = equivalence_constants(l1(2), lp(2, 2.0))
    assert m == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12) and M == 1.0
    m, M = equivalence_constants(max_norm(2), a_norm(2))
    assert (m, M) == (1.0, 2.0)


def test_equivalence_identity_and_reciprocity():
    f = lp(2, 1.5)
    assert equivalence_constants(f, f) == (1.0, 1.0)
    m_fg, M_fg = equivalence_constants(max_norm(2), l1(2))
    m_gf, M_gf = equivalence_constants(l1(2), max_norm(2))
    assert m_fg == pytest.approx(1.0 / M_gf, abs=1e-9)
    assert M_fg == pytest.approx(1.0 / m_gf, abs=1e-9)


def test_equivalence_bounds_hold_on_samples(rng):
    f, g = lp(2, 1.5), weighted_lp(2, 2.0, (1.0, 2.0))
    m, M = equivalence_constants(f, g)
    pts = rng.uniform(0.0, 1.0, size=(500, 2)) + 1e-9
    rf, rg = f.eval_rows(pts), g.eval_rows(pts)
    assert np.all(m * rf <= rg + 1e-12) and np.all(rg <= M * rf + 1e-12)


# ---- crucial / strictness probes -------------------------------------------------


def test_crucial_probe_all_tags_satisfy_slice_monotonicity():
    for f in (l1(2), max_norm(2), lp(2, 2.0), weighted_lp(2, 1.0, (2.0, 0.5)), a_norm(3)):
        rep = crucial_probe(f, trials=300, seed=1)
        assert rep.crucial_ok


def test_crucial_probe_strictness_split():
    assert crucial_probe(l1(2), trials=300, seed=1).strict_ok
    rep = crucial_probe(max_norm(2), trials=300, seed=1)
    assert not rep.strict_ok and rep.strict_witness is not None
    u, v = rep.strict_witness
    assert max_norm(2)(u) >= max_norm(2)(v) - 1e-15
    rep = crucial_probe(a_norm(3), trials=300, seed=1)
    assert not rep.strict_ok


def test_json_round_trip():
    for f in (l1(2), max_norm(4), lp(2, 2.5), weighted_lp(3, 1.0, (1, 2, 3)), a_norm(3)):
        assert OuterNorm.from_json(f.to_json()) == f
