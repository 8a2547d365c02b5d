import math

import numpy as np
import pytest
from scipy import special

from coopnoma.fading import RngStream, awgn, gamma_sample, nakagami_gain, stream_id_for
from coopnoma.noma_analysis import FadingParam

N = 10**6


def draws(shape, scale, n=N, seed=11, stream=0):
    return gamma_sample(shape, scale, RngStream(seed, stream), size=n)


def test_exponential_case():
    x = draws(1.0, 3.0)
    assert x.var() / x.mean() ** 2 == pytest.approx(1.0, abs=0.02)
    assert x.mean() == pytest.approx(3.0, abs=3 * 3.0 / math.sqrt(N))


def test_mean_for_integer_shape():
    x = draws(2.0, 5.0)
    sigma = math.sqrt(2.0) * 5.0
    assert abs(x.mean() - 10.0) <= 3 * sigma / math.sqrt(N)


def test_boosted_shape_moments():
    m, scale = 0.5, 2.0
    x = draws(m, scale)
    assert abs(x.mean() - m * scale) <= 3 * math.sqrt(m) * scale / math.sqrt(N)
    z = (x - x.mean()) / x.std()
    skew = np.mean(z**3)
    assert skew == pytest.approx(2 / math.sqrt(m), rel=0.05)


@pytest.mark.parametrize("m", [0.5, 1.0, 2.7])
def test_kolmogorov_smirnov(m):
    n = 10**5
    scale = 1.7
    x = np.sort(draws(m, scale, n, seed=5))
    cdf = special.gammainc(m, x / scale)
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - cdf), np.max(cdf - (i - 1) / n))
    assert d < 1.628 / math.sqrt(n)  # 1% critical value


def test_gamma_domain():
    with pytest.raises(ValueError):
        gamma_sample(0.49, 1.0, RngStream(1))
    with pytest.raises(ValueError):
        gamma_sample(1.0, 0.0, RngStream(1))
    with pytest.raises(TypeError):
        gamma_sample(1.0, 1.0, 42)


def test_scalar_draw():
    assert isinstance(gamma_sample(2.0, 1.0, RngStream(3)), float)
    assert isinstance(nakagami_gain(FadingParam(2.0), RngStream(3)), float)
    assert isinstance(awgn(RngStream(3)), float)


def test_nakagami_power_mean():
    fading = FadingParam(1.5, 4.0)
    g = nakagami_gain(fading, RngStream(8), N)
    power = g**2
    assert abs(power.mean() - 4.0) <= 3 * power.std() / math.sqrt(N)
    assert np.all(g >= 0)


def test_nakagami_concentrates_for_large_m():
    g = nakagami_gain(FadingParam(50.0, 2.0), RngStream(9), N)
    assert g.mean() == pytest.approx(math.sqrt(2.0), rel=0.01)
    assert g.std() / g.mean() <= 1.05 / math.sqrt(4 * 50)


def test_replay_is_deterministic():
    stream = RngStream(123, 7)
    a = nakagami_gain(FadingParam(0.8), stream, 1000)
    b = nakagami_gain(FadingParam(0.8), stream, 1000)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(awgn(stream, 50), awgn(stream, 50))


def test_awgn_moments():
    x = awgn(RngStream(4), N)
    assert abs(x.mean()) <= 3 / math.sqrt(N)
    assert x.var() == pytest.approx(1.0, abs=0.01)


def test_streams_are_uncorrelated():
    n = 10**5
    a = awgn(RngStream(77, 0), n)
    b = awgn(RngStream(77, 1), n)
    c = awgn(RngStream(78, 0), n)
    assert abs(np.corrcoef(a, b)[0, 1]) <= 0.01
    assert abs(np.corrcoef(a, c)[0, 1]) <= 0.01


def test_stream_validation():
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(0, 1 << 64)


def test_stream_id_is_stable():
    assert stream_id_for(100.0, 100.0, 3) == stream_id_for(100.0, 100.0, 3)
    assert stream_id_for(100.0, 100.0, 3) != stream_id_for(100.0, 100.0, 4)
    assert stream_id_for(1.0) != stream_id_for(1)
    assert 0 <= stream_id_for(2.5) < 1 << 64
