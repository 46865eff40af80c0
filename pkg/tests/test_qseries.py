import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import odd_part_partitions, partial_log_product
from ctm_entropy import (
    DomainError,
    ModelPoint,
    Nome,
    SeriesError,
    Truncation,
    TruncationError,
    log_qpochhammer,
    partition_theta,
    qpochhammer,
    qproduct_series,
    theta,
)
from ctm_entropy.qseries import evaluate_series, log_theta

# ln prod_{n<200} (1 - 0.5^(n+1)), 40-digit mpmath product; tail < 1e-60
LOG_QP_HALF_HALF = -1.242062094812414945797845


def test_nome_consistency():
    n = Nome(0.3)
    assert n.x == pytest.approx(math.exp(-0.3), rel=1e-16)
    assert Nome.from_x(n.x).epsilon == pytest.approx(0.3, rel=1e-15)
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            Nome(bad)
    with pytest.raises(DomainError):
        Nome.from_x(1.0)


def test_truncation_validation(monkeypatch):
    with pytest.raises(ValueError):
        Truncation(abs_tol=0.0)
    with pytest.raises(ValueError):
        Truncation(max_terms=0)
    monkeypatch.setenv("CTM_ENTROPY_ABS_TOL", "1e-9")
    assert Truncation.from_env().abs_tol == 1e-9
    assert Truncation.from_env(abs_tol=1e-11).abs_tol == 1e-11


def test_zero_z_is_empty_product():
    assert log_qpochhammer(0.0, 0.5) == 0.0
    assert qpochhammer(0.0, 0.9) == 1.0


def test_half_half_against_partial_product(tight):
    assert log_qpochhammer(0.5, 0.5, tight) == pytest.approx(LOG_QP_HALF_HALF, abs=2e-15)
    assert log_qpochhammer(0.5, 0.5) == pytest.approx(LOG_QP_HALF_HALF, abs=1e-13)
    assert partial_log_product(0.5, 0.5, 200) == pytest.approx(LOG_QP_HALF_HALF, abs=1e-14)
    assert qpochhammer(0.5, 0.5) == pytest.approx(math.exp(log_qpochhammer(0.5, 0.5)), rel=1e-15)


def test_id2_at_half_m2():
    x = 0.5
    lhs = log_qpochhammer(x**2, x**2)
    rhs = log_qpochhammer(x**2, x**4) + log_qpochhammer(x**4, x**4)
    assert lhs == pytest.approx(rhs, abs=1e-13)


def test_kappa1_closed_form_reciprocal():
    x = 0.6
    point = ModelPoint(1, 0, Nome.from_x(x))
    assert 1.0 / qpochhammer(x**2, x**4) == pytest.approx(partition_theta(point), rel=1e-12)


@pytest.mark.parametrize("z, w", [(1.0, 0.5), (1.5, 0.5), (-0.1, 0.5), (0.5, 0.0), (0.5, 1.0)])
def test_domain_errors(z, w):
    with pytest.raises(DomainError):
        log_qpochhammer(z, w)


def test_truncation_failure():
    with pytest.raises(TruncationError):
        log_qpochhammer(0.5, 0.999, Truncation(max_terms=10))


def test_theta_symmetry_and_boundary():
    assert theta(0.4, 0.5) == pytest.approx(theta(0.4, 0.8), rel=1e-13)
    with pytest.raises(DomainError):
        theta(0.5, 0.5)
    with pytest.raises(DomainError):
        theta(0.5, 1.2)


def test_theta_quotient_matches_kappa1_closed_form():
    x = 0.5
    quotient = log_theta(x**6, x**2) - log_theta(x**4, x**2)
    assert quotient == pytest.approx(-log_qpochhammer(x**2, x**4), abs=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 0.99), st.floats(0.01, 0.98), st.floats(1e-12, 1e-6))
def test_tail_bound_is_honest(z, w, tol):
    coarse = qpochhammer(z, w, Truncation(abs_tol=tol))
    fine = qpochhammer(z, w, Truncation(abs_tol=tol / 100))
    assert abs(coarse - fine) < tol


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("x", [0.3, 0.6, 0.9])
def test_id2_identity(m, x):
    trunc = Truncation()
    lhs = log_qpochhammer(x**2, x**2, trunc)
    rhs = math.fsum(log_qpochhammer(x ** (2 * j), x ** (2 * m), trunc) for j in range(1, m + 1))
    assert abs(lhs - rhs) < 10 * trunc.abs_tol


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_theta_symmetry_property(w, r):
    # pick z in (w, 1) so that both z and w/z lie in (w, 1)
    z = w + r * (1 - w)
    if not (w < z < 1 and w / z < 1):
        return
    assert abs(log_theta(w, z) - log_theta(w, w / z)) < 10 * Truncation().abs_tol


def test_series_odd_parts():
    coeffs = qproduct_series([(2, 4, -1)], 12)
    assert coeffs[::2] == [1, 1, 1, 2, 2, 3, 4]
    assert coeffs[::2] == [odd_part_partitions(m) for m in range(7)]
    assert all(c == 0 for c in coeffs[1::2])


def test_series_empty_product():
    assert qproduct_series([], 5) == [1, 0, 0, 0, 0, 0]


def test_series_id2_cancels():
    factors = [(2, 2, 1), (2, 4, -1), (4, 4, -1)]
    assert qproduct_series(factors, 40) == [1] + [0] * 40


def test_series_half_powers():
    # two half powers of the same symbol make a whole one
    paired = qproduct_series([(2, 4, "-1/2"), (2, 4, "-1/2")], 20)
    assert paired == qproduct_series([(2, 4, -1)], 20)
    with pytest.raises(SeriesError):
        qproduct_series([(2, 4, "-1/2")], 10)
    with pytest.raises(SeriesError):
        qproduct_series([(2, 4, "1/3")], 10)


def test_series_negative_coefficients_flagged():
    euler = qproduct_series([(1, 1, 1)], 10)
    # pentagonal number theorem
    assert euler == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0]
    with pytest.raises(SeriesError):
        qproduct_series([(1, 1, 1)], 10, nonnegative=True)


def test_series_evaluates_to_product():
    x = 0.3
    coeffs = qproduct_series([(1, 2, -1), (3, 5, 1)], 120)
    direct = math.exp(log_qpochhammer(x**3, x**5) - log_qpochhammer(x, x**2))
    assert evaluate_series(coeffs, x) == pytest.approx(direct, rel=1e-13)
