import io
import math

import numpy as np
import pytest
from scipy import stats as scipy_stats

import sharpedist.montecarlo as mc
from sharpedist import (
    GAUSSIAN,
    STUDENT,
    DataError,
    DistributionSpec,
    Histogram,
    JointSampleSet,
    ReturnSeries,
    ValidationError,
    exceedance_fraction,
    histogram,
    lo_standard_error,
    pearson_correlation,
    read_samples_csv,
    read_samples_json,
    simulate_joint,
    tail_association,
    theoretical_sharpe,
    write_samples_csv,
    write_samples_json,
)

MU = 1.45e-4
SIGMA = 1.73e-2


def _manual_set(m, s, sharpe, growth, t, provenance=None):
    return JointSampleSet(
        m=np.asarray(m, dtype=float),
        s=np.asarray(s, dtype=float),
        sharpe=np.asarray(sharpe, dtype=float),
        growth=np.asarray(growth, dtype=float),
        t=np.asarray(t, dtype=np.int64),
        provenance=provenance or {"kind": "test"},
    )


# --- simulate_joint ---------------------------------------------------------

def test_single_window_matches_hand_computation():
    spec = DistributionSpec(GAUSSIAN, MU, SIGMA)
    result = simulate_joint(spec, 2, 1, seed=123)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(123, spawn_key=(0,))))
    a, b = MU + SIGMA * rng.standard_normal(2)
    m = (a + b) / 2.0
    s = math.sqrt(((a - m) ** 2 + (b - m) ** 2) / 2.0)
    assert result.N == 1
    assert float(result.m[0]) == pytest.approx(m, rel=1e-14)
    assert float(result.s[0]) == pytest.approx(s, rel=1e-12)
    assert float(result.sharpe[0]) == pytest.approx(math.sqrt(2.0) * m / s, rel=1e-12)
    assert float(result.growth[0]) == pytest.approx(math.exp(2.0 * m), rel=1e-14)
    assert result.uniform_t == 2
    assert result.provenance["seed"] == 123


def test_gaussian_mean_sharpe_tracks_asymptotic_theory(gaussian_set, gaussian_spec):
    s_bar = theoretical_sharpe(gaussian_spec, 252)
    band = 3.0 * lo_standard_error(s_bar) / math.sqrt(gaussian_set.N)
    assert abs(float(np.mean(gaussian_set.sharpe)) - s_bar) < band


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(T=252, N=0, seed=1),
        dict(T=1, N=5, seed=1),
        dict(T=252, N=5, seed=1, workers=0),
        dict(T=252, N=5, seed=-1),
    ],
)
def test_simulate_validation(kwargs):
    spec = DistributionSpec(GAUSSIAN, MU, SIGMA)
    with pytest.raises(ValidationError):
        simulate_joint(spec, **kwargs)


def test_degenerate_window_aborts_with_window_index(monkeypatch):
    def constant_series(spec, T, stream):
        return ReturnSeries(values=np.zeros(T))

    monkeypatch.setattr(mc, "sample_returns", constant_series)
    spec = DistributionSpec(GAUSSIAN, MU, SIGMA)
    with pytest.raises(RuntimeError, match="window 0"):
        simulate_joint(spec, 5, 3, seed=1)


def test_worker_count_never_changes_results():
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=3.0)
    runs = [simulate_joint(spec, 50, 200, seed=9, workers=w) for w in (1, 2, 5)]
    for other in runs[1:]:
        assert np.array_equal(runs[0].m, other.m)
        assert np.array_equal(runs[0].s, other.s)
        assert np.array_equal(runs[0].sharpe, other.sharpe)
        assert np.array_equal(runs[0].growth, other.growth)


def test_sample_list_view():
    spec = DistributionSpec(GAUSSIAN, MU, SIGMA)
    result = simulate_joint(spec, 10, 4, seed=2)
    samples = result.samples
    assert len(samples) == 4
    assert samples[2].m == float(result.m[2])
    assert samples[2].T == 10


# --- JointSampleSet validation ----------------------------------------------

def test_sample_set_rejects_bad_columns():
    with pytest.raises(ValidationError):
        _manual_set([0.1], [0.2], [0.3], [1.0], [252, 252])
    with pytest.raises(ValidationError):
        _manual_set([0.1], [0.2], [math.inf], [1.0], [252])
    with pytest.raises(ValidationError):
        _manual_set([0.1], [0.2], [0.3], [1.0], [0])


# --- exceedance_fraction ----------------------------------------------------

def test_exceedance_at_minus_infinity_is_one(student_set):
    assert exceedance_fraction(student_set, -math.inf) == 1.0


def test_exceedance_is_monotone_non_increasing(student_set):
    thresholds = np.linspace(-3.0, 3.0, 25)
    fractions = [exceedance_fraction(student_set, t) for t in thresholds]
    assert all(a >= b for a, b in zip(fractions, fractions[1:]))


def test_exceedance_uses_closed_bound():
    sample = _manual_set([0.1, 0.2], [0.1, 0.1], [1.0, 2.0], [1.0, 1.0], [252, 252])
    assert exceedance_fraction(sample, 2.0) == 0.5
    assert exceedance_fraction(sample, 1.0) == 1.0


def test_exceedance_empty_set_rejected():
    empty = _manual_set([], [], [], [], [])
    with pytest.raises(ValidationError):
        exceedance_fraction(empty, 1.0)


def test_gaussian_exceedance_matches_normal_cdf_oracle(gaussian_set, gaussian_spec):
    s_bar = theoretical_sharpe(gaussian_spec, 252)
    expected = 1.0 - scipy_stats.norm.cdf((1.0 - s_bar) / lo_standard_error(s_bar))
    assert exceedance_fraction(gaussian_set, 1.0) == pytest.approx(expected, abs=0.01)


def test_student_exceedance_near_one_fifth(student_set):
    assert exceedance_fraction(student_set, 1.0) == pytest.approx(0.20, abs=0.02)


# --- pearson_correlation ----------------------------------------------------

def test_correlation_of_identical_and_negated_lists():
    xs = [0.3, 1.7, -2.2, 0.9]
    assert pearson_correlation(xs, xs) == pytest.approx(1.0, rel=1e-12)
    assert pearson_correlation(xs, [-v for v in xs]) == pytest.approx(-1.0, rel=1e-12)


def test_correlation_hand_computed_example():
    # x centered (-1, 0, 1), y centered (-1, 1, 0): cov 1, variances 2 and 2
    assert pearson_correlation([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, rel=1e-12)


def test_correlation_validation():
    with pytest.raises(ValidationError):
        pearson_correlation([1.0, 2.0], [1.0])
    with pytest.raises(ValidationError):
        pearson_correlation([1.0], [1.0])
    with pytest.raises(ValidationError):
        pearson_correlation([1.0, 1.0], [1.0, 2.0])


def test_gaussian_m_s_independence(gaussian_set):
    # sample mean and sample deviation are independent for normal draws
    assert abs(pearson_correlation(gaussian_set.m, gaussian_set.s)) < 0.02


def test_student_abs_m_s_association(student_set):
    assert pearson_correlation(np.abs(student_set.m), student_set.s) > 0.1


# --- histogram --------------------------------------------------------------

def test_histogram_left_closed_bins():
    hist = histogram([0.0, 1.0], bins=2, range=(0.0, 2.0))
    assert hist.counts.tolist() == [1, 1]
    assert hist.total == 2


def test_histogram_single_bin():
    hist = histogram([0.5] * 10, bins=1, range=(0.0, 1.0))
    assert hist.counts.tolist() == [10]


def test_histogram_clips_out_of_range_into_end_bins():
    hist = histogram([-5.0, 0.5, 5.0], bins=2, range=(0.0, 2.0))
    assert hist.counts.tolist() == [2, 1]
    assert hist.total == 3


def test_histogram_default_range_spans_data():
    hist = histogram([0.0, 1.0, 2.0], bins=2)
    assert hist.edges.tolist() == [0.0, 1.0, 2.0]
    # 1.0 goes to the second bin (left-closed), 2.0 stays in the closed last bin
    assert hist.counts.tolist() == [1, 2]


def test_histogram_identical_values_pad_range():
    hist = histogram([3.0, 3.0], bins=4)
    assert hist.total == 2
    assert hist.counts.sum() == 2


def test_histogram_validation():
    with pytest.raises(ValidationError):
        histogram([], bins=2)
    with pytest.raises(ValidationError):
        histogram([1.0], bins=0)
    with pytest.raises(ValidationError):
        histogram([1.0], bins=2, range=(1.0, 1.0))
    with pytest.raises(ValidationError):
        histogram([math.nan], bins=2)


def test_histogram_type_invariants():
    with pytest.raises(ValidationError):
        Histogram(edges=np.array([0.0, 1.0]), counts=np.array([1, 2]), total=3)
    with pytest.raises(ValidationError):
        Histogram(edges=np.array([0.0, 0.0]), counts=np.array([1]), total=1)
    with pytest.raises(ValidationError):
        Histogram(edges=np.array([0.0, 1.0]), counts=np.array([-1]), total=-1)
    with pytest.raises(ValidationError):
        Histogram(edges=np.array([0.0, 1.0]), counts=np.array([2]), total=3)


def test_histogram_total_counts_everything(student_set):
    hist = histogram(student_set.sharpe, bins=100, range=(-4.0, 4.0))
    assert hist.total == student_set.N
    assert int(hist.counts.sum()) == student_set.N
    assert (hist.counts >= 0).all()


# --- tail_association -------------------------------------------------------

def test_tail_association_on_constructed_proportional_set():
    rng = np.random.default_rng(4)
    m = rng.standard_normal(500) * 1e-3
    m[np.abs(m) < 1e-6] = 1e-6
    t = np.full(500, 252, dtype=np.int64)
    s = np.sqrt(252.0) * np.abs(m)
    sharpe = np.sqrt(252.0) * m / s
    growth = np.exp(m * 252.0)
    sample = _manual_set(m, s, sharpe, growth, t)
    assert tail_association(sample, 0.05) == 1.0


def test_tail_association_quantile_validation(student_set):
    for q in (0.0, -0.1, 0.6, 1.0):
        with pytest.raises(ValidationError):
            tail_association(student_set, q)


def test_student_tail_association_is_order_one(student_set):
    assert 0.5 <= tail_association(student_set, 1e-3) <= 1.5


def test_gaussian_tail_association_matches_order_statistics_oracle(gaussian_set):
    # top-quantile |m| values sit near the two-sided normal tail points, so
    # the median ratio is close to 1 / z(1 - q/4), with s anchored at sigma
    q = 1e-3
    got = tail_association(gaussian_set, q)
    oracle = 1.0 / float(scipy_stats.norm.ppf(1.0 - q / 4.0))
    assert got == pytest.approx(oracle, rel=0.10)
    assert got < 0.5  # clearly outside the heavy-tail order-1 band


# --- serialization ----------------------------------------------------------

def _roundtrip(sample_set, writer, reader):
    buf = io.StringIO()
    writer(sample_set, buf)
    buf.seek(0)
    return reader(buf)


@pytest.mark.parametrize(
    "writer,reader",
    [(write_samples_csv, read_samples_csv), (write_samples_json, read_samples_json)],
)
def test_sample_roundtrip_uniform_t(writer, reader):
    spec = DistributionSpec(STUDENT, MU, SIGMA, nu=3.0)
    original = simulate_joint(spec, 30, 25, seed=17)
    restored = _roundtrip(original, writer, reader)
    assert np.array_equal(original.m, restored.m)
    assert np.array_equal(original.s, restored.s)
    assert np.array_equal(original.sharpe, restored.sharpe)
    assert np.array_equal(original.growth, restored.growth)
    assert np.array_equal(original.t, restored.t)
    assert restored.provenance == original.provenance


@pytest.mark.parametrize(
    "writer,reader",
    [(write_samples_csv, read_samples_csv), (write_samples_json, read_samples_json)],
)
def test_sample_roundtrip_varying_t(writer, reader):
    original = _manual_set(
        [0.1, -0.2, 0.05], [0.3, 0.4, 0.2], [0.5, -1.0, 0.4],
        [1.1, 0.9, 1.0], [250, 252, 199],
        provenance={"kind": "dataset", "label": "x", "policy": "calendar_year", "T": None},
    )
    restored = _roundtrip(original, writer, reader)
    assert np.array_equal(original.t, restored.t)
    assert np.array_equal(original.m, restored.m)


def test_csv_includes_t_column_only_when_needed():
    uniform = _manual_set([0.1], [0.2], [0.3], [1.0], [252], provenance={"T": 252})
    buf = io.StringIO()
    write_samples_csv(uniform, buf)
    assert "index,m,s,sharpe,growth\n" in buf.getvalue()
    varying = _manual_set([0.1, 0.2], [0.2, 0.3], [0.3, 0.1], [1.0, 1.0], [10, 20])
    buf = io.StringIO()
    write_samples_csv(varying, buf)
    assert "index,m,s,sharpe,growth,t\n" in buf.getvalue()


def test_readers_reject_malformed_input():
    with pytest.raises(DataError):
        read_samples_csv(io.StringIO("index,m\n"))
    with pytest.raises(DataError):
        read_samples_json(io.StringIO("{}"))
    with pytest.raises(DataError):
        read_samples_json(io.StringIO("not json"))
    # uniform-t file whose provenance lost the window length
    broken = (
        "# sharpedist.samples/1\n"
        '# provenance: {"kind":"test"}\n'
        "index,m,s,sharpe,growth\n"
        "0,0.1,0.2,0.3,1.0\n"
    )
    with pytest.raises(DataError):
        read_samples_csv(io.StringIO(broken))
    # declared n disagreeing with the columns
    bad_n = (
        '{"schema":"sharpedist.samples/1","provenance":{"T":5},"n":2,'
        '"columns":["m","s","sharpe","growth"],'
        '"data":{"m":[0.1],"s":[0.2],"sharpe":[0.3],"growth":[1.0]}}'
    )
    with pytest.raises(DataError):
        read_samples_json(io.StringIO(bad_n))
