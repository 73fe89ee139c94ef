import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nls8.model import Coefficients, Grid, ValidationError
from nls8.verify import (CHECKS, SCHEMA, Campaign, active_terms, cubic_nls_residual,
                         relative_difference, reduction_suite, run_campaign)

GRID = Grid(-40, 40, 401, -5, 5, 21)


def test_zero_potential_campaign_passes(ones):
    r = run_campaign(Campaign("zero", None, ones, GRID, CHECKS))
    assert r.overall, r.to_json()


def test_flagship_campaign(fig1, ones):
    r = run_campaign(Campaign("figure1", fig1, ones, GRID,
                              ("pde", "conservation", "closed-form-consistency", "shape")))
    assert r.overall, r.to_json()
    doc = json.loads(r.to_json())
    assert doc["schema"] == SCHEMA and doc["overall"] is True
    assert {"name", "sup_norm", "l2_norm", "tolerance", "pass"} <= set(doc["per_check"][0])


def test_two_soliton_campaign(fig4, ones):
    r = run_campaign(Campaign("figure4", fig4, ones, GRID,
                              ("pde", "conservation", "closed-form-consistency")))
    assert r.overall, r.to_json()


def test_errors_are_captured_per_check(fig4, ones):
    # the two-soliton has no shape check and decays too slowly for L = 40
    r = run_campaign(Campaign("figure4", fig4, ones, GRID, ("shape", "scattering", "pde")))
    assert not r.overall
    assert r.entry("shape").error.startswith("ValidationError")
    assert r.entry("scattering").error.startswith("InsufficientDecayError")
    assert r.entry("pde").passed


def test_deterministic_reports(fig1, ones):
    c = Campaign("figure1", fig1, ones, GRID, ("closed-form-consistency", "conservation"))
    assert run_campaign(c).to_json() == run_campaign(c).to_json()


def test_campaign_validation(fig1, ones):
    with pytest.raises(ValidationError):
        Campaign("x", fig1, ones, GRID, ("nope",))
    with pytest.raises(ValidationError):
        Campaign("x", fig1, ones, GRID, ("pde",), {"pde": 0.0})
    with pytest.raises(ValidationError):
        Campaign("x", fig1, ones, GRID, ("pde",), {"bogus": 1.0})


@settings(max_examples=10, deadline=None)
@given(st.floats(1e-16, 1e-2), st.floats(1.0, 1e6))
def test_loosening_never_flips_pass(tol, factor):
    from nls8.model import make_dataset
    d = make_dataset((0.3 + 0.2j, 1.0, 1.0))
    A = Coefficients.all_ones()
    g = Grid(-20, 20, 41, -1, 1, 3)
    tight = run_campaign(Campaign("c", d, A, g, ("closed-form-consistency",),
                                  {"closed-form-consistency": tol}))
    loose = run_campaign(Campaign("c", d, A, g, ("closed-form-consistency",),
                                  {"closed-form-consistency": tol * factor}))
    assert loose.overall or not tight.overall


def test_relative_difference():
    assert np.all(relative_difference(np.array([0.0, 2.0]), np.array([0.0, 1.0])) == [0.0, 1.0])


@pytest.mark.parametrize("case", ["i", "ii", "iii", "iv"])
def test_reductions_pass(case):
    r = reduction_suite(case)
    assert r.overall, r.to_json()
    names = [e.name for e in r.entries]
    assert "structure" in names and ("nls-agreement" in names) == (case == "i")


def test_reduction_patterns():
    from nls8.verify import REDUCTIONS
    assert active_terms(REDUCTIONS["i"]) == {2}
    assert REDUCTIONS["ii"].A2 == 0.5 and active_terms(REDUCTIONS["ii"]) == {2, 3}
    assert active_terms(REDUCTIONS["iii"]) == {2, 3, 4}
    assert active_terms(REDUCTIONS["iv"]) == {2, 3, 4, 5}
    with pytest.raises(ValidationError):
        reduction_suite("v")


def test_cubic_nls_residual_plane_wave():
    t = np.linspace(0, 1, 5)
    q = 0.5 * np.exp(2j * 0.25 * t)
    qt = 2j * 0.25 * q
    assert np.allclose(cubic_nls_residual(qt, q, 0 * q, 1.0), 0, atol=1e-15)
