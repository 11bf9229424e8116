import numpy as np
import pytest
from hypothesis import strategies as st

from fnorms import MeasureDomain, StepFunction

DENOM = 1024  # dyadic lattice: piece arithmetic is exact in floating point


@st.composite
def dyadic_steps(draw, horizon=1.0, max_pieces=5, signed=True, vmax=64):
    k = draw(st.integers(1, max_pieces))
    cuts = draw(st.lists(st.integers(1, int(horizon * DENOM)),
                         min_size=k, max_size=k, unique=True))
    lo = -vmax if signed else 0
    vals = draw(st.lists(st.integers(lo, vmax), min_size=k, max_size=k))
    domain = MeasureDomain.unit() if horizon == 1.0 else MeasureDomain.window(horizon)
    breaks = [0.0] + sorted(c / DENOM for c in cuts)
    return StepFunction.make(domain, breaks, [v / 16.0 for v in vals])


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture
def unit():
    return MeasureDomain.unit()
