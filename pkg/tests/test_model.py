import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nls8.model import (Coefficients, ComplexField, Grid, ResidualReport,
                        SpectralPoint, ValidationError, make_dataset, validate_dataset)

finite = st.floats(-5, 5, allow_nan=False)
upper = st.floats(0.01, 3, allow_nan=False)


def test_coefficients_reject_non_finite():
    with pytest.raises(ValidationError):
        Coefficients(A2=math.nan)
    with pytest.raises(ValidationError):
        Coefficients(A3=math.inf)


def test_coefficients_indexing_and_mapping():
    A = Coefficients.from_mapping({"A2": 0.5, "A7": 2})
    assert A[2] == 0.5 and A[7] == 2.0 and A[8] == 0.0
    with pytest.raises(KeyError):
        A[9]
    with pytest.raises(ValidationError):
        Coefficients.from_mapping({"A9": 1})
    assert A.replace(A2=1.0).A2 == 1.0


@pytest.mark.parametrize("im", [0.0, -0.1])
def test_spectral_point_must_be_in_upper_half_plane(im):
    with pytest.raises(ValidationError):
        SpectralPoint(0.3, im)


def test_dataset_rejections():
    with pytest.raises(ValidationError):
        make_dataset((0.3 + 0.2j, 0, 0))
    with pytest.raises(ValidationError):
        make_dataset((0.3 + 0.2j, 1, 1), (0.3 + 0.2j, 2, 1))
    with pytest.raises(ValidationError):
        make_dataset((0.3, 1, 1))
    with pytest.raises(ValidationError):
        validate_dataset([])


@given(st.lists(st.tuples(finite, upper), min_size=1, max_size=4, unique=True))
def test_validation_is_idempotent(points):
    d = validate_dataset([(complex(a, b), 1.0, 0.5j) for a, b in points])
    assert validate_dataset(d) == d
    assert d.N == len(points)


def test_min_denominator_bound(fig4):
    # |zeta_j - conj(zeta_k)| >= 2 min b
    assert fig4.min_denominator() >= 2 * 0.1 - 1e-15


def test_xi_is_log_modulus():
    d = make_dataset((0.1 + 1j, 2.0 - 1j, 1), (0.5j, 0, 1))
    assert d.xis[0] == pytest.approx(math.log(math.sqrt(5)))
    assert d.xis[1] == -math.inf


def test_grid_invariants():
    g = Grid(-1, 1, 21, 0, 1, 11)
    assert g.hx == pytest.approx(0.1) and g.ht == pytest.approx(0.1)
    X, T = g.mesh()
    assert X.shape == T.shape == (21, 11)
    assert np.all(X[:, 0] == g.x) and np.all(T[0] == g.t)
    for bad in [(1, -1, 5), (0, 1, 1), (0, 1, 5, 1, 0, 3), (0, 1, 5, 0, 1, 1)]:
        with pytest.raises(ValidationError):
            Grid(*bad)
    g2 = Grid.from_spacing(-20, 20, 0.1, -2, 2, 0.1)
    assert g2.shape == (401, 41)


def test_complex_field_checks():
    g = Grid(0, 1, 3, 0, 1, 2)
    f = ComplexField(g, np.zeros((3, 2)))
    assert f.arity == "scalar"
    assert ComplexField(g, np.zeros((3, 2, 2, 2))).arity == "matrix"
    with pytest.raises(ValueError):
        f.values[0, 0] = 1
    with pytest.raises(ValidationError):
        ComplexField(g, np.zeros((2, 3)))
    with pytest.raises(ValidationError):
        ComplexField(g, np.full((3, 2), np.nan))


def test_residual_report_norms():
    r = ResidualReport.from_values(np.array([3.0, -4.0j]), 4.0, weight=0.25)
    assert r.sup_norm == 4.0 and r.l2_norm == pytest.approx(2.5)
    assert r.passed and r.verdict == "pass"
    assert not r.with_tolerance(3.9).passed
    assert r.as_dict()["pass"] is True


@given(st.floats(1e-12, 1e3), st.floats(1.0, 100.0))
def test_loosening_tolerance_never_fails(tol, factor):
    r = ResidualReport.from_values(np.array([1e-6, 2e-3]), tol)
    if r.passed:
        assert r.with_tolerance(tol * factor).passed
