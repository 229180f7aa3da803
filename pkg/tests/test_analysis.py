import math

import mpmath
import numpy as np
import pytest

from dlbf import (
    InvalidParamsError,
    ModelParams,
    cell_probabilities,
    deletability_curve,
    deletability_probability,
    fpr_dlbf,
    fpr_sbf,
    model_point,
)

# reference values from 50-digit mpmath evaluation of the closed forms
P0_216_5_22 = 0.6002303677435467
P1_216_5_22 = 0.30709460675251227
PC_216_5_22 = 0.09267502550394103
PD_240_24_5_22 = 0.93249921446901575
FPR_DLBF_240_24_5_22 = 0.010210546873621178
FPR_SBF_240_5_22 = 0.0067736539686337575


def _mp_cells(m_prime, k, n):
    with mpmath.workdps(50):
        q = 1 - mpmath.mpf(1) / m_prime
        kn = k * n
        p0 = q**kn
        p1 = kn * (1 - q) * q ** (kn - 1) if kn else mpmath.mpf(0)
        return p0, p1, 1 - p0 - p1


def test_cells_empty_filter():
    assert cell_probabilities(216, 5, 0) == (1.0, 0.0, 0.0)


@pytest.mark.parametrize("m_prime", [1, 2, 216, 10_000])
def test_cells_single_event(m_prime):
    p0, p1, pc = cell_probabilities(m_prime, 1, 1)
    assert p0 == pytest.approx(1 - 1 / m_prime, abs=1e-15)
    assert p1 == pytest.approx(1 / m_prime, abs=1e-15)
    assert pc == pytest.approx(0, abs=1e-15)


def test_cells_paper_configuration():
    p0, p1, pc = cell_probabilities(216, 5, 22)
    assert p0 == pytest.approx(P0_216_5_22, rel=1e-12)
    assert p1 == pytest.approx(P1_216_5_22, rel=1e-12)
    assert pc == pytest.approx(PC_216_5_22, rel=1e-10)


@pytest.mark.parametrize("m_prime, k, n", [(1, 3, 4), (7, 2, 3), (216, 5, 22), (1000, 8, 400), (50, 3, 10_000)])
def test_cells_match_high_precision(m_prime, k, n):
    got = cell_probabilities(m_prime, k, n)
    want = _mp_cells(m_prime, k, n)
    for g, w in zip(got, want):
        assert g == pytest.approx(float(w), abs=1e-12)
    assert math.fsum(got) == pytest.approx(1.0, abs=1e-12)


def test_cells_domain_error():
    with pytest.raises(InvalidParamsError):
        cell_probabilities(0, 5, 1)


def test_cells_extreme_counts_no_underflow_error():
    p0, p1, pc = cell_probabilities(100, 10, 10**6)
    assert p0 == 0.0 and p1 == 0.0 and pc == 1.0


@pytest.mark.parametrize("m_prime, k, n", [(216, 5, 22), (28, 3, 3), (100, 4, 30), (500, 2, 300), (64, 8, 4)])
def test_cells_balls_into_bins_monte_carlo(m_prime, k, n):
    """Throw k*n balls into m' bins 10**6 times; watch the occupancy of bin 0."""
    rng = np.random.default_rng(m_prime * 7919 + k * 31 + n)
    reps, chunk = 10**6, 50_000
    counts = np.empty(reps, dtype=np.int64)
    for start in range(0, reps, chunk):
        balls = rng.integers(0, m_prime, size=(chunk, k * n))
        counts[start:start + chunk] = (balls == 0).sum(axis=1)
    got = cell_probabilities(m_prime, k, n)
    observed = [(counts == 0).mean(), (counts == 1).mean(), (counts >= 2).mean()]
    for p, o in zip(got, observed):
        se = math.sqrt(max(p * (1 - p), 1e-12) / reps)
        assert abs(o - p) <= 3 * se


@pytest.mark.parametrize("m, k, n", [(240, 5, 22), (512, 4, 50), (1024, 7, 100), (2000, 5, 200), (64, 2, 5)])
def test_fpr_sbf_balls_into_bins_monte_carlo(m, k, n):
    rng = np.random.default_rng(m + 17 * k + n)
    reps, chunk = 10**6, 20_000
    hits = 0
    rows = np.arange(chunk)[:, None]
    for _ in range(reps // chunk):
        occupied = np.zeros((chunk, m), dtype=bool)
        occupied[rows, rng.integers(0, m, size=(chunk, k * n))] = True
        probe = rng.integers(0, m, size=(chunk, k))
        hits += int(occupied[rows, probe].all(axis=1).sum())
    p = fpr_sbf(m, k, n)
    assert abs(hits / reps - p) <= 3 * math.sqrt(p * (1 - p) / reps)


def test_deletability_point():
    assert deletability_probability(ModelParams(240, 24, 5, 22)) == pytest.approx(PD_240_24_5_22, rel=1e-10)


def test_deletability_empty_and_saturated():
    assert deletability_probability(ModelParams(240, 24, 5, 0)) == 1.0
    assert deletability_probability(ModelParams(240, 24, 5, 5000)) < 1e-12


def test_deletability_requires_regions():
    with pytest.raises(InvalidParamsError):
        deletability_probability(ModelParams(240, 0, 5, 22))


@pytest.mark.parametrize("m, r, k", [(240, 24, 5), (240, 12, 5), (240, 120, 5), (512, 32, 3), (64, 8, 8)])
def test_deletability_non_increasing_in_n(m, r, k):
    values = [deletability_probability(ModelParams(m, r, k, n)) for n in range(0, 200)]
    assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("n", [1, 5, 15, 22, 30, 48, 80])
def test_deletability_non_decreasing_in_r(n):
    m, k = 240, 5
    values = [deletability_probability(ModelParams(m, r, k, n)) for r in range(k, m // 2 + 1, k)]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def test_fpr_values():
    assert fpr_dlbf(ModelParams(240, 24, 5, 22)) == pytest.approx(FPR_DLBF_240_24_5_22, rel=1e-12)
    assert fpr_sbf(240, 5, 22) == pytest.approx(FPR_SBF_240_5_22, rel=1e-12)
    assert fpr_dlbf(ModelParams(240, 24, 5, 0)) == 0.0
    assert fpr_sbf(240, 5, 0) == 0.0


def test_fpr_domain_errors():
    with pytest.raises(InvalidParamsError):
        fpr_sbf(0, 5, 1)
    with pytest.raises(InvalidParamsError):
        ModelParams(24, 24, 5, 1)


@pytest.mark.parametrize("m", [16, 64, 240, 1000])
@pytest.mark.parametrize("k", [1, 3, 5, 8])
def test_fpr_dlbf_reduces_to_sbf_without_regions(m, k):
    for n in (0, 1, 7, 40, 300):
        assert fpr_dlbf(ModelParams(m, 0, k, n)) == fpr_sbf(m, k, n)


def test_fpr_ordering_and_monotonicity():
    m, k = 240, 5
    for n in range(1, 101):
        base = fpr_sbf(m, k, n)
        assert base > fpr_sbf(m, k, n - 1)
        for r in (1, 12, 24, 60, 120):
            assert fpr_dlbf(ModelParams(m, r, k, n)) >= base


def test_model_point_row():
    point = model_point(ModelParams(240, 24, 5, 22))
    assert point.density == pytest.approx(240 / 22)
    assert point.p0 + point.p1 + point.p_c == pytest.approx(1.0, abs=1e-12)
    assert model_point(ModelParams(240, 24, 5, 0)).density is None


def test_curve_shape_and_order():
    points = deletability_curve(240, [10, 20], 5, [8, 16, 24])
    assert len(points) == 6
    assert [(p.params.r, p.params.n) for p in points] == [
        (24, 30), (24, 15), (24, 10), (12, 30), (12, 15), (12, 10)
    ]


def test_curve_anchor_ratio_20_density_16():
    (point,) = deletability_curve(240, [20], 5, [16])
    assert point.p_d >= 0.90


def test_curve_non_decreasing_in_density():
    points = deletability_curve(240, [2, 4, 10, 20, 40], 5, list(range(2, 33)))
    for ratio_start in range(0, len(points), 31):
        pd = [p.p_d for p in points[ratio_start:ratio_start + 31]]
        assert all(b >= a for a, b in zip(pd, pd[1:]))


def test_curve_rejects_empty():
    with pytest.raises(InvalidParamsError):
        deletability_curve(240, [], 5, [8])
    with pytest.raises(InvalidParamsError):
        deletability_curve(240, [10], 5, [])
