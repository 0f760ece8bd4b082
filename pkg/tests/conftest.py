"""Shared fixtures and hypothesis strategies."""

import pytest
from hypothesis import strategies as st

from epigames import MaskCosts


@pytest.fixture
def base_costs():
    """Cheap cloth mask, pricey respirator, a week of lost wages if infected."""
    return MaskCosts(c_out=1.0, c_in=10.0, c_use=100.0, c_infection=1000.0)


@st.composite
def mask_costs_with_gaps(draw):
    """Valid mask costs whose orderings hold with comfortable margins.

    Gaps of at least 0.01 keep every strict comparison far away from the
    1e-9 solver tolerance, so equilibrium sets stay unique.
    """
    c_out = draw(st.floats(0.01, 20))
    c_in = c_out + draw(st.floats(0.01, 50))
    c_infection = c_in + draw(st.floats(0.5, 2000))
    c_use = draw(st.floats(0.001, c_infection - 0.5))
    return MaskCosts(c_out, c_in, c_use, c_infection)


def probabilities():
    return st.floats(0.0, 1.0)
