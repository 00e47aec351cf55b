import math

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import t as scipy_t

from sharpedist import (
    GAUSSIAN,
    STUDENT,
    DistributionSpec,
    RandomStream,
    ValidationError,
    density,
    sample_returns,
    theoretical_sharpe,
)

MU = 1.45e-4
SIGMA = 1.73e-2
NU = 3.0


# --- DistributionSpec validation -------------------------------------------

def test_valid_specs_construct():
    DistributionSpec(GAUSSIAN, 0.0, 1.0)
    DistributionSpec(STUDENT, MU, SIGMA, nu=NU)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="lognormal", mu=0.0, sigma=1.0),
        dict(family=GAUSSIAN, mu=0.0, sigma=0.0),
        dict(family=GAUSSIAN, mu=0.0, sigma=-1.0),
        dict(family=GAUSSIAN, mu=0.0, sigma=math.nan),
        dict(family=GAUSSIAN, mu=0.0, sigma=math.inf),
        dict(family=GAUSSIAN, mu=math.nan, sigma=1.0),
        dict(family=GAUSSIAN, mu=0.0, sigma=1.0, nu=3.0),
        dict(family=STUDENT, mu=0.0, sigma=1.0),
        dict(family=STUDENT, mu=0.0, sigma=1.0, nu=2.0),
        dict(family=STUDENT, mu=0.0, sigma=1.0, nu=1.5),
        dict(family=STUDENT, mu=0.0, sigma=1.0, nu=math.nan),
    ],
)
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(ValidationError):
        DistributionSpec(**kwargs)


def test_scale_normalizes_student_variance():
    spec = DistributionSpec(STUDENT, 0.0, 2.0, nu=3.0)
    assert spec.scale == pytest.approx(2.0 * math.sqrt(1.0 / 3.0), rel=1e-15)
    assert DistributionSpec(GAUSSIAN, 0.0, 2.0).scale == 2.0


# --- sample_returns ---------------------------------------------------------

def test_zero_length_rejected():
    spec = DistributionSpec(GAUSSIAN, 0.0, 1.0)
    with pytest.raises(ValidationError):
        sample_returns(spec, 0, RandomStream(1))


def test_degenerate_scale_collapses_to_mu():
    spec = DistributionSpec(GAUSSIAN, 5.0, 1e-12)
    series = sample_returns(spec, 4, RandomStream(1))
    assert len(series) == 4
    assert np.abs(series.values - 5.0).max() < 1e-9


def test_reference_student_config_produces_full_window():
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=NU)
    series = sample_returns(spec, 252, RandomStream(0))
    assert len(series) == 252
    assert np.isfinite(series.values).all()


def test_student_scale_factor_via_quartiles():
    # the sample std does not concentrate at nu=3 (infinite fourth moment),
    # but quantiles do, so the variance-normalizing factor sqrt((nu-2)/nu)
    # is checked through the interquartile range instead
    spec = DistributionSpec(STUDENT, 0.0, 1.0, nu=3.0)
    values = sample_returns(spec, 1_000_000, RandomStream(20240816)).values
    iqr = float(np.quantile(values, 0.75) - np.quantile(values, 0.25))
    expected = 2.0 * math.sqrt(1.0 / 3.0) * float(scipy_t.ppf(0.75, 3.0))
    assert abs(iqr - expected) <= 0.01 * expected


def test_student_unit_variance_where_fourth_moment_exists():
    spec = DistributionSpec(STUDENT, 0.0, 1.0, nu=8.0)
    values = sample_returns(spec, 1_000_000, RandomStream(20240816)).values
    assert 0.99 <= float(np.std(values)) <= 1.01


@pytest.mark.parametrize("family,nu", [(GAUSSIAN, None), (STUDENT, 3.0)])
def test_million_draw_moments_match_spec(family, nu):
    spec = DistributionSpec(family, MU, SIGMA, nu=nu)
    n = 1_000_000
    values = sample_returns(spec, n, RandomStream(77)).values
    # mean estimator has standard error sigma / sqrt(n) for both families
    assert abs(values.mean() - MU) <= 3.0 * SIGMA / math.sqrt(n)
    if family == GAUSSIAN:
        sd_se = SIGMA / math.sqrt(2.0 * n)
        assert abs(values.std() - SIGMA) <= 3.0 * sd_se
    else:
        iqr = float(np.quantile(values, 0.75) - np.quantile(values, 0.25))
        expected = 2.0 * SIGMA * math.sqrt(1.0 / 3.0) * float(scipy_t.ppf(0.75, 3.0))
        assert abs(iqr - expected) <= 0.01 * expected


def test_sampling_is_deterministic_per_stream():
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=NU)
    a = sample_returns(spec, 100, RandomStream(3, (5,)))
    b = sample_returns(spec, 100, RandomStream(3, (5,)))
    c = sample_returns(spec, 100, RandomStream(3, (6,)))
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_student_draws_match_direct_construction():
    # independent reconstruction of the exact generation recipe
    stream = RandomStream(15, (2,))
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=3.0)
    got = sample_returns(spec, 50, stream).values
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(15, spawn_key=(2,))))
    expected = MU + SIGMA * math.sqrt(1.0 / 3.0) * rng.standard_t(3.0, 50)
    assert np.array_equal(got, expected)


# --- density ----------------------------------------------------------------

def test_standard_normal_mode():
    spec = DistributionSpec(GAUSSIAN, 0.0, 1.0)
    assert float(density(spec, 0.0)) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-12)


def test_unit_student_mode_is_two_over_pi():
    spec = DistributionSpec(STUDENT, 0.0, 1.0, nu=3.0)
    assert float(density(spec, 0.0)) == pytest.approx(2.0 / math.pi, rel=1e-12)


def _explicit_t3_density(x: float, scale: float) -> float:
    # location-scale t(3) density written out with gamma functions
    u = x / scale
    c = math.gamma(2.0) / (math.sqrt(3.0 * math.pi) * math.gamma(1.5))
    return c * (1.0 + u * u / 3.0) ** -2.0 / scale


def test_student_density_matches_explicit_formula():
    spec = DistributionSpec(STUDENT, 0.0, 1.0, nu=3.0)
    for x in np.linspace(-6.0, 6.0, 25):
        expected = _explicit_t3_density(float(x), spec.scale)
        assert float(density(spec, float(x))) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("family,nu", [(GAUSSIAN, None), (STUDENT, 3.0)])
def test_density_integrates_to_one(family, nu):
    spec = DistributionSpec(family, MU, SIGMA, nu=nu)
    total, _ = integrate.quad(
        lambda x: float(density(spec, x)),
        MU - 200.0 * SIGMA, MU + 200.0 * SIGMA,
        points=[MU], limit=200,
    )
    assert 0.995 <= total <= 1.0001


def test_density_nonnegative_on_wide_grid():
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=NU)
    x = np.linspace(MU - 200.0 * SIGMA, MU + 200.0 * SIGMA, 2001)
    assert (np.asarray(density(spec, x)) >= 0.0).all()


def test_student_tail_exponent():
    # density * |x|^(nu+1) settles to a positive constant in the far tail
    spec = DistributionSpec(STUDENT, 0.0, 1.0, nu=3.0)
    xs = np.array([50.0, 80.0, 120.0, 200.0])
    ratios = np.asarray(density(spec, xs)) * xs ** 4.0
    assert (ratios > 0).all()
    assert ratios.max() / ratios.min() < 1.005
    # and the same holds on the negative side
    neg = np.asarray(density(spec, -xs)) * xs ** 4.0
    assert np.allclose(neg, ratios, rtol=1e-12)


def test_huge_nu_student_converges_to_gaussian():
    student = DistributionSpec(STUDENT, MU, SIGMA, nu=1e6)
    gauss = DistributionSpec(GAUSSIAN, MU, SIGMA)
    x = np.linspace(MU - 5.0 * SIGMA, MU + 5.0 * SIGMA, 501)
    diff = np.abs(np.asarray(density(student, x)) - np.asarray(density(gauss, x)))
    assert diff.max() < 1e-4


# --- theoretical_sharpe -----------------------------------------------------

def test_reference_parameters_give_point_13():
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=NU)
    value = theoretical_sharpe(spec, 252)
    assert value == pytest.approx(math.sqrt(252) * MU / SIGMA, rel=1e-15)
    assert round(value, 2) == 0.13


def test_zero_mean_gives_zero():
    assert theoretical_sharpe(DistributionSpec(GAUSSIAN, 0.0, 0.5), 100) == 0.0


def test_algebraic_identity_mu_equals_sigma_over_sqrt_T():
    for T in (4, 252, 1000):
        sigma = 0.37
        spec = DistributionSpec(GAUSSIAN, sigma / math.sqrt(T), sigma)
        assert theoretical_sharpe(spec, T) == pytest.approx(1.0, rel=1e-12)


def test_theoretical_sharpe_validates_T():
    with pytest.raises(ValidationError):
        theoretical_sharpe(DistributionSpec(GAUSSIAN, 0.0, 1.0), 0)
