import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aebbench.fmcw import (SPEED_OF_LIGHT, FmcwWaveform, PointTarget, beat_from_range,
                           doppler_from_speed, estimate_range_doppler, range_doppler_map,
                           range_from_beat, range_resolution, sweep_slope, synthesize_beat)

W = FmcwWaveform()


def test_waveform_defaults_meet_requirements():
    assert W.carrier_frequency == 77e9
    assert W.max_range >= 100.0
    assert W.max_speed >= 230 / 3.6
    # sample rate covers the beat frequency of a 100 m target
    assert W.sample_rate >= 2 * beat_from_range(100.0, sweep_slope(W))


@pytest.mark.parametrize("kwargs", [
    dict(bandwidth=0.0), dict(sweep_time=-1e-6), dict(samples_per_sweep=100),
    dict(num_sweeps=0), dict(carrier_frequency=0.0),
])
def test_waveform_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        FmcwWaveform(**kwargs)


def test_sweep_slope_examples():
    assert sweep_slope(FmcwWaveform(bandwidth=150e6, sweep_time=7.33e-6)) == pytest.approx(
        2.0464e13, rel=1e-4)
    assert sweep_slope(FmcwWaveform(bandwidth=150e6, sweep_time=150e-6)) == pytest.approx(
        1.0e12, rel=1e-12)


@given(st.floats(1e6, 4e9), st.floats(1e-6, 1e-3))
def test_slope_times_sweep_time_is_bandwidth(bw, tc):
    w = FmcwWaveform(bandwidth=bw, sweep_time=tc)
    assert sweep_slope(w) * tc == pytest.approx(bw, rel=1e-12)


def test_range_from_beat_examples():
    assert range_from_beat(0.0, 2.0464e13) == 0.0
    assert range_from_beat(6.8255e6, 2.0464e13) == pytest.approx(50.0, abs=0.01)
    with pytest.raises(ValueError):
        range_from_beat(-1.0, 2.0464e13)


@given(st.floats(0.0, 50e6))
def test_beat_range_round_trip(f):
    slope = sweep_slope(W)
    assert beat_from_range(range_from_beat(f, slope), slope) == pytest.approx(f, rel=1e-9, abs=1e-9)


def test_range_resolution_examples():
    assert range_resolution(FmcwWaveform(bandwidth=150e6)) == pytest.approx(0.99931, abs=1e-5)
    assert range_resolution(FmcwWaveform(bandwidth=150e6)) < 1.0
    assert range_resolution(FmcwWaveform(bandwidth=300e6)) == pytest.approx(0.4997, abs=1e-4)
    assert range_resolution(FmcwWaveform(bandwidth=300e6)) == pytest.approx(
        range_resolution(FmcwWaveform(bandwidth=150e6)) / 2, rel=1e-12)


def test_doppler_examples():
    assert doppler_from_speed(0.0, 77e9) == 0.0
    assert doppler_from_speed(63.89, 77e9) == pytest.approx(32.82e3, rel=1e-3)
    assert doppler_from_speed(30.0, 77e9) == pytest.approx(15.41e3, rel=1e-3)
    assert doppler_from_speed(-30.0, 77e9) == -doppler_from_speed(30.0, 77e9)


def test_empty_noiseless_cube_is_zero():
    cube = synthesize_beat(W, [], noise_std=0.0)
    assert cube.shape == (W.num_sweeps, W.samples_per_sweep)
    assert not cube.any()
    assert estimate_range_doppler(cube, W) == []


def _dtft_mag(x, k, n):
    # direct DFT sum, independent of numpy's FFT
    return abs(sum(x[i] * cmath.exp(-2j * math.pi * k * i / n) for i in range(n)))


def test_single_target_tone_peaks_at_nearest_bin():
    r = 37.3
    cube = synthesize_beat(W, [PointTarget(r, 0.0)])
    sweep = cube[0]
    n = W.samples_per_sweep
    mags = [_dtft_mag(sweep, k, n) for k in range(n)]
    f_b = beat_from_range(r, sweep_slope(W))
    expected_bin = round(f_b / (W.sample_rate / n))
    assert int(np.argmax(mags)) == expected_bin
    # pure tone: every sweep has the same magnitude spectrum
    assert np.allclose(np.abs(np.fft.fft(cube, axis=1)), np.abs(np.fft.fft(cube[0])))


def test_synthesis_is_deterministic_per_seed():
    tgts = [PointTarget(20.0, 5.0)]
    a = synthesize_beat(W, tgts, noise_std=0.3, seed=11)
    b = synthesize_beat(W, tgts, noise_std=0.3, seed=11)
    c = synthesize_beat(W, tgts, noise_std=0.3, seed=12)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_synthesis_rejects_out_of_bounds_targets():
    with pytest.raises(ValueError):
        synthesize_beat(W, [PointTarget(W.max_range + 1.0, 0.0)])
    with pytest.raises(ValueError):
        synthesize_beat(W, [PointTarget(10.0, W.max_speed + 1.0)])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 100), st.floats(-63.9, 63.9), st.floats(0.1, 2.0)),
                min_size=1, max_size=3),
       st.lists(st.tuples(st.floats(0, 100), st.floats(-63.9, 63.9), st.floats(0.1, 2.0)),
                min_size=1, max_size=3))
def test_synthesis_is_linear(a, b):
    ta = [PointTarget(*x) for x in a]
    tb = [PointTarget(*x) for x in b]
    both = synthesize_beat(W, ta + tb)
    parts = synthesize_beat(W, ta) + synthesize_beat(W, tb)
    assert np.allclose(both, parts, rtol=1e-12, atol=1e-12 * np.abs(parts).max())


def test_fft_round_trip_identity():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((64, 256)) + 1j * rng.standard_normal((64, 256))
    assert np.allclose(np.fft.ifft2(np.fft.fft2(x)), x, rtol=1e-9, atol=1e-12)


def test_estimate_single_target_example():
    cube = synthesize_beat(W, [PointTarget(50.0, 20.0)])
    (est,) = estimate_range_doppler(cube, W)
    assert abs(est.range - 50.0) <= range_resolution(W) / 2
    assert abs(est.radial_speed - 20.0) <= W.speed_resolution / 2


def test_two_targets_two_metres_apart_give_two_range_peaks():
    cube = synthesize_beat(W, [PointTarget(50.0, 20.0), PointTarget(52.0, 20.0)])
    est = estimate_range_doppler(cube, W)
    assert len(est) == 2
    ranges = sorted(e.range for e in est)
    assert ranges[0] == pytest.approx(50.0, abs=0.5)
    assert ranges[1] == pytest.approx(52.0, abs=0.5)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 100.0), st.floats(-63.9, 63.9))
def test_round_trip_within_half_bin(r, v):
    (est,) = estimate_range_doppler(synthesize_beat(W, [PointTarget(r, v)]), W)
    assert abs(est.range - r) <= SPEED_OF_LIGHT / (4 * W.bandwidth) + 1e-9
    assert abs(est.radial_speed - v) <= W.speed_resolution / 2 + 1e-9


def test_noisy_target_still_detected():
    cube = synthesize_beat(W, [PointTarget(42.0, -10.0)], noise_std=1.0, seed=5)
    est = estimate_range_doppler(cube, W)
    assert est, "target lost in noise"
    assert est[0].range == pytest.approx(42.0, abs=0.5)
    assert est[0].radial_speed == pytest.approx(-10.0, abs=W.speed_resolution / 2)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        estimate_range_doppler(np.zeros((32, 256), complex), W)
    with pytest.raises(ValueError):
        range_doppler_map(np.zeros((64, 128), complex), W)


def test_range_doppler_map_layout():
    rd = range_doppler_map(synthesize_beat(W, [PointTarget(30.0, 0.0)]), W)
    assert rd.shape == (W.num_sweeps, W.samples_per_sweep // 2)
    row, col = np.unravel_index(np.argmax(rd), rd.shape)
    assert row == W.num_sweeps // 2  # zero Doppler centred
    assert col == round(30.0 / range_resolution(W))
