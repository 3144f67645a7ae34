"""Signal-level FMCW radar: beat-signal synthesis and range-Doppler estimation.

The dechirped (beat) signal is synthesized directly as a sum of complex
tones, one per point target, instead of simulating RF mixing. A 2-D FFT
over the fast-time (samples) and slow-time (sweeps) axes then recovers
range and radial speed.

Speed convention: positive radial speed means the target is closing.
"""

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class FmcwWaveform:
    carrier_frequency: float = 77e9
    bandwidth: float = 150e6
    sweep_time: float = 7.33e-6
    num_sweeps: int = 64
    samples_per_sweep: int = 256

    def __post_init__(self):
        if self.carrier_frequency <= 0:
            raise ValueError("carrier_frequency must be positive")
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.sweep_time <= 0:
            raise ValueError("sweep_time must be positive")
        for name in ("num_sweeps", "samples_per_sweep"):
            n = getattr(self, name)
            if n < 1 or n & (n - 1):
                raise ValueError(f"{name} must be a positive power of two, got {n}")

    @property
    def sample_rate(self) -> float:
        return self.samples_per_sweep / self.sweep_time

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def max_range(self) -> float:
        """Unambiguous range: beat frequency at the Nyquist limit fs/2."""
        return range_from_beat(self.sample_rate / 2.0, sweep_slope(self))

    @property
    def max_speed(self) -> float:
        """Unambiguous radial speed, +/- a quarter wavelength per sweep."""
        return self.wavelength / (4.0 * self.sweep_time)

    @property
    def speed_resolution(self) -> float:
        """Width of one Doppler bin in m/s."""
        return self.wavelength / (2.0 * self.num_sweeps * self.sweep_time)

    @property
    def range_bin_width(self) -> float:
        """Width of one range bin in m (equal to the range resolution)."""
        return range_resolution(self)


@dataclass(frozen=True)
class PointTarget:
    range: float
    radial_speed: float = 0.0
    reflect_amplitude: float = 1.0

    def __post_init__(self):
        if self.range < 0:
            raise ValueError("target range must be non-negative")


@dataclass(frozen=True)
class RangeDopplerEstimate:
    range: float
    radial_speed: float
    peak_magnitude: float


def sweep_slope(w: FmcwWaveform) -> float:
    """Chirp slope in Hz/s."""
    return w.bandwidth / w.sweep_time


def range_from_beat(f_b: float, slope: float) -> float:
    if f_b < 0:
        raise ValueError(f"beat frequency must be non-negative, got {f_b}")
    if slope <= 0:
        raise ValueError("slope must be positive")
    return SPEED_OF_LIGHT * f_b / (2.0 * slope)


def beat_from_range(r: float, slope: float) -> float:
    if r < 0:
        raise ValueError(f"range must be non-negative, got {r}")
    return 2.0 * slope * r / SPEED_OF_LIGHT


def range_resolution(w: FmcwWaveform) -> float:
    return SPEED_OF_LIGHT / (2.0 * w.bandwidth)


def doppler_from_speed(v: float, carrier: float) -> float:
    if carrier <= 0:
        raise ValueError("carrier frequency must be positive")
    return 2.0 * v * carrier / SPEED_OF_LIGHT


def speed_from_doppler(f_d: float, carrier: float) -> float:
    if carrier <= 0:
        raise ValueError("carrier frequency must be positive")
    return f_d * SPEED_OF_LIGHT / (2.0 * carrier)


def synthesize_beat(w: FmcwWaveform, targets, noise_std: float = 0.0,
                    seed: int = 0) -> np.ndarray:
    """Dechirped beat cube of shape (num_sweeps, samples_per_sweep).

    Each target adds a tone at slope*2R/c in fast time, rotating by
    2*pi*f_d*sweep_time from one sweep to the next. The tone's initial
    phase is the two-way carrier phase 4*pi*R/lambda.
    """
    if noise_std < 0:
        raise ValueError("noise_std must be non-negative")
    slope = sweep_slope(w)
    t_fast = np.arange(w.samples_per_sweep) / w.sample_rate
    t_slow = np.arange(w.num_sweeps) * w.sweep_time
    cube = np.zeros((w.num_sweeps, w.samples_per_sweep), dtype=complex)
    for tgt in targets:
        if tgt.range > w.max_range:
            raise ValueError(
                f"target range {tgt.range} m beyond unambiguous range {w.max_range:.2f} m")
        if abs(tgt.radial_speed) > w.max_speed:
            raise ValueError(
                f"target speed {tgt.radial_speed} m/s beyond unambiguous speed "
                f"{w.max_speed:.2f} m/s")
        f_b = beat_from_range(tgt.range, slope)
        f_d = doppler_from_speed(tgt.radial_speed, w.carrier_frequency)
        phase0 = 4.0 * np.pi * tgt.range / w.wavelength
        fast = np.exp(2j * np.pi * f_b * t_fast)
        slow = np.exp(1j * (2.0 * np.pi * f_d * t_slow + phase0))
        cube += tgt.reflect_amplitude * np.outer(slow, fast)
    if noise_std > 0:
        rng = np.random.default_rng(seed)
        scale = noise_std / np.sqrt(2.0)
        cube += scale * (rng.standard_normal(cube.shape)
                         + 1j * rng.standard_normal(cube.shape))
    return cube


def range_doppler_map(cube: np.ndarray, w: FmcwWaveform) -> np.ndarray:
    """Magnitude map, rows = Doppler bins (zero speed centred), cols = range bins.

    Only the physical half of the range spectrum, bins 0 .. N/2 - 1, is kept.
    """
    _check_cube(cube, w)
    spec = np.fft.fftshift(np.fft.fft2(cube), axes=0)
    return np.abs(spec[:, : w.samples_per_sweep // 2])


def estimate_range_doppler(cube: np.ndarray, w: FmcwWaveform,
                           threshold_factor: float = 8.0):
    """Detect peaks in the range-Doppler map, strongest first.

    A cell is a peak when it exceeds threshold_factor times the median
    magnitude and is a local maximum of its 3x3 neighbourhood (circular
    on both axes, matching DFT periodicity).
    """
    _check_cube(cube, w)
    mag = np.abs(np.fft.fftshift(np.fft.fft2(cube), axes=0))
    peak = mag.max()
    if peak == 0.0:
        return []
    # floor guards against round-off ripple when the median is ~0
    threshold = max(threshold_factor * np.median(mag), 1e-9 * peak)
    is_peak = mag > threshold
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            # neighbour[i, j] = mag[i - dr, j - dc]
            neighbour = np.roll(mag, (dr, dc), axis=(0, 1))
            # ties go to the cell scanned first
            if (dr, dc) < (0, 0):
                is_peak &= mag >= neighbour
            else:
                is_peak &= mag > neighbour
    half = w.samples_per_sweep // 2
    is_peak[:, half:] = False

    rows, cols = np.nonzero(is_peak)
    order = np.argsort(-mag[rows, cols], kind="stable")
    slope = sweep_slope(w)
    bin_hz = w.sample_rate / w.samples_per_sweep
    doppler_bin_hz = 1.0 / (w.num_sweeps * w.sweep_time)
    out = []
    for i in order:
        r, c = rows[i], cols[i]
        f_d = (r - w.num_sweeps // 2) * doppler_bin_hz
        out.append(RangeDopplerEstimate(
            range=range_from_beat(float(c) * bin_hz, slope),
            radial_speed=speed_from_doppler(float(f_d), w.carrier_frequency),
            peak_magnitude=float(mag[r, c]),
        ))
    return out


def _check_cube(cube, w):
    expected = (w.num_sweeps, w.samples_per_sweep)
    if np.shape(cube) != expected:
        raise ValueError(f"cube shape {np.shape(cube)} does not match waveform {expected}")
