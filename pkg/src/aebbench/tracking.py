"""Dual-radar fusion tracker.

Constant-velocity Kalman filter per track in the ego frame (origin at the
ego footprint centre, x forward), global-nearest-neighbour association on
Mahalanobis distance, M-of-N confirmation and Most-Important-Object
selection. State vector is [x, vx, y, vy].
"""

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .scenario import LANE_HALFWIDTH, VEHICLE_LENGTH

H = np.array([[1.0, 0.0, 0.0, 0.0],
              [0.0, 0.0, 1.0, 0.0]])

GATE_CHI2_2DOF_99 = 9.21

# smallest measurement variance the filter accepts (1 mm, 1 mm/s); keeps
# noise-free sensors usable without a singular innovation covariance
MEASUREMENT_VARIANCE_FLOOR = 1e-6


class FilterDivergence(ArithmeticError):
    """Innovation covariance lost positive definiteness."""


@dataclass(frozen=True)
class TrackerParams:
    process_noise_intensity: float = 2.5
    gate_threshold: float = GATE_CHI2_2DOF_99
    confirm_hits: int = 3
    confirm_window: int = 4
    delete_misses: int = 5
    birth_velocity_std: float = 15.0
    ego_lane_halfwidth: float = LANE_HALFWIDTH
    front_offset: float = 0.5 * VEHICLE_LENGTH

    def __post_init__(self):
        if self.process_noise_intensity < 0:
            raise ValueError("process_noise_intensity must be non-negative")
        if self.gate_threshold <= 0:
            raise ValueError("gate_threshold must be positive")
        if not 1 <= self.confirm_hits <= self.confirm_window:
            raise ValueError("need 1 <= confirm_hits <= confirm_window")
        if self.delete_misses < 1:
            raise ValueError("delete_misses must be at least 1")
        if self.birth_velocity_std <= 0 or self.ego_lane_halfwidth <= 0:
            raise ValueError("birth_velocity_std and ego_lane_halfwidth must be positive")


@dataclass(frozen=True)
class Track:
    track_id: int
    state: np.ndarray
    covariance: np.ndarray
    hits: int = 0
    misses: int = 0
    confirmed: bool = False
    last_update: float = 0.0
    history: Tuple[bool, ...] = ()
    # (vx estimate, variance) pairs from this tick's range-rate measurements
    range_rate_vx: Tuple[Tuple[float, float], ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class MioReport:
    track_id: Optional[int] = None
    relative_distance: float = math.inf
    relative_velocity: float = 0.0

    @property
    def present(self) -> bool:
        return self.track_id is not None


def _symmetrize(p):
    return 0.5 * (p + p.T)


def transition(dt: float) -> np.ndarray:
    f1 = np.array([[1.0, dt], [0.0, 1.0]])
    f = np.zeros((4, 4))
    f[:2, :2] = f1
    f[2:, 2:] = f1
    return f


def process_noise(dt: float, q: float) -> np.ndarray:
    """Continuous white-acceleration noise of intensity q (m^2/s^3) per axis."""
    q1 = q * np.array([[dt ** 3 / 3.0, dt ** 2 / 2.0], [dt ** 2 / 2.0, dt]])
    out = np.zeros((4, 4))
    out[:2, :2] = q1
    out[2:, 2:] = q1
    return out


def predict(t: Track, dt: float, process_noise_intensity: float,
            ego_accel: float = 0.0) -> Track:
    """Propagate a track by dt.

    ``ego_accel`` is the ego's longitudinal acceleration over the interval;
    the ego frame is non-inertial, so it enters relative motion with the
    opposite sign.
    """
    if dt < 0:
        raise ValueError("dt must be non-negative")
    if dt == 0:
        return t
    f = transition(dt)
    x = f @ t.state
    x[0] -= 0.5 * ego_accel * dt * dt
    x[1] -= ego_accel * dt
    p = _symmetrize(f @ t.covariance @ f.T + process_noise(dt, process_noise_intensity))
    return replace(t, state=x, covariance=p, range_rate_vx=())


def detection_to_cartesian(d, config):
    """Ego-frame position and first-order covariance of a polar detection."""
    mx, my = config.mount_position
    theta = d.azimuth + config.mount_yaw
    c, s = math.cos(theta), math.sin(theta)
    z = np.array([mx + d.range * c, my + d.range * s])
    jac = np.array([[c, -d.range * s], [s, d.range * c]])
    r = _symmetrize(jac @ d.noise_covariance[:2, :2] @ jac.T)
    w, v = np.linalg.eigh(r)
    if w.min() < MEASUREMENT_VARIANCE_FLOOR:
        r = _symmetrize(v @ np.diag(np.maximum(w, MEASUREMENT_VARIANCE_FLOOR)) @ v.T)
    return z, r


def innovation(t: Track, z, r):
    nu = z - H @ t.state
    s = _symmetrize(H @ t.covariance @ H.T + r)
    return nu, s


def mahalanobis_sq(t: Track, z, r) -> float:
    nu, s = innovation(t, z, r)
    try:
        chol = np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        raise FilterDivergence(f"track {t.track_id}: innovation covariance not SPD") from exc
    w = np.linalg.solve(chol, nu)
    return float(w @ w)


def update_cartesian(t: Track, z, r, timestamp: Optional[float] = None) -> Track:
    """Kalman update with a Cartesian position measurement (Joseph form)."""
    nu, s = innovation(t, z, r)
    try:
        chol = np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        raise FilterDivergence(f"track {t.track_id}: innovation covariance not SPD") from exc
    # K = P H^T S^-1 via the Cholesky factor
    pht = t.covariance @ H.T
    k = np.linalg.solve(chol.T, np.linalg.solve(chol, pht.T)).T
    x = t.state + k @ nu
    ikh = np.eye(4) - k @ H
    p = _symmetrize(ikh @ t.covariance @ ikh.T + k @ r @ k.T)
    return replace(t, state=x, covariance=p,
                   last_update=t.last_update if timestamp is None else timestamp)


def update(t: Track, d, config) -> Track:
    """Fuse one radar detection into a track.

    The filter consumes position only. The detection's range rate is turned
    into a longitudinal-velocity pseudo-measurement kept alongside the track
    for MIO reporting.
    """
    z, r = detection_to_cartesian(d, config)
    out = update_cartesian(t, z, r, d.timestamp)
    mx, my = config.mount_position
    dx, dy = out.state[0] - mx, out.state[2] - my
    los = math.atan2(dy, dx)
    c = math.cos(los)
    if c > 0.5:
        vx = (d.range_rate - math.sin(los) * out.state[3]) / c
        var = max(d.noise_covariance[2, 2], MEASUREMENT_VARIANCE_FLOOR) / (c * c)
        out = replace(out, range_rate_vx=t.range_rate_vx + ((vx, var),))
    return out


def birth(track_id: int, z, r, timestamp: float, velocity_std: float) -> Track:
    """Tentative track at a measured position with zero velocity prior."""
    x = np.array([z[0], 0.0, z[1], 0.0])
    p = np.zeros((4, 4))
    p[np.ix_([0, 2], [0, 2])] = r
    p[1, 1] = p[3, 3] = velocity_std ** 2
    return Track(track_id, x, p, last_update=timestamp)


def associate(tracks: Sequence[Track], measurements, gate_threshold: float):
    """Global-nearest-neighbour assignment.

    ``measurements`` is a sequence of (z, R) Cartesian pairs. Returns
    (pairs, unassigned track indices, unassigned measurement indices);
    pairs are (track index, measurement index) with squared Mahalanobis
    distance within the gate. The number of gated pairs is maximised first,
    then their total distance is minimised.
    """
    n, m = len(tracks), len(measurements)
    if n == 0 or m == 0:
        return [], list(range(n)), list(range(m))
    cost = np.empty((n, m))
    for i, t in enumerate(tracks):
        for j, (z, r) in enumerate(measurements):
            cost[i, j] = mahalanobis_sq(t, z, r)
    allowed = cost <= gate_threshold
    big = 1.0 + gate_threshold * min(n, m) * 2.0
    rows, cols = linear_sum_assignment(np.where(allowed, cost, big))
    pairs = [(int(i), int(j)) for i, j in zip(rows, cols) if allowed[i, j]]
    used_t = {i for i, _ in pairs}
    used_m = {j for _, j in pairs}
    return (pairs, [i for i in range(n) if i not in used_t],
            [j for j in range(m) if j not in used_m])


def track_lifecycle(tracks: Sequence[Track], hit_ids, params: TrackerParams) -> List[Track]:
    """Book-keep one tick of hits and misses, confirm and delete tracks."""
    out = []
    for t in tracks:
        hit = t.track_id in hit_ids
        history = (t.history + (hit,))[-params.confirm_window:]
        misses = 0 if hit else t.misses + 1
        if misses >= params.delete_misses:
            continue
        confirmed = t.confirmed or sum(history) >= params.confirm_hits
        out.append(replace(t, history=history, hits=t.hits + int(hit),
                           misses=misses, confirmed=confirmed))
    return out


def refined_velocity(t: Track) -> float:
    """Filter vx fused with this tick's range-rate pseudo-measurements."""
    vx, var = float(t.state[1]), float(t.covariance[1, 1])
    if not t.range_rate_vx:
        return vx
    info = 1.0 / var if var > 0 else math.inf
    if math.isinf(info):
        return vx
    num = vx * info
    for v, w in t.range_rate_vx:
        num += v / w
        info += 1.0 / w
    return num / info


def select_mio(tracks: Sequence[Track], ego_lane_halfwidth: float = LANE_HALFWIDTH,
               front_offset: float = 0.5 * VEHICLE_LENGTH) -> MioReport:
    """Nearest confirmed track ahead of the ego inside its lane."""
    best = None
    for t in tracks:
        x, y = t.state[0], t.state[2]
        if not t.confirmed or x <= 0 or abs(y) > ego_lane_halfwidth:
            continue
        if best is None or x < best.state[0]:
            best = t
    if best is None:
        return MioReport()
    return MioReport(best.track_id, max(0.0, float(best.state[0]) - front_offset),
                     refined_velocity(best))


class Tracker:
    """Per-run multi-target tracker fed scan by scan."""

    def __init__(self, params: TrackerParams = TrackerParams()):
        self.params = params
        self.tracks: List[Track] = []
        self._next_id = 1

    def step(self, t: float, dt: float, scans, ego_accel: float = 0.0) -> List[Track]:
        """Advance one tick.

        ``scans`` is an ordered sequence of (RadarConfig, detections). Scans are
        fused sequentially; detections left unassigned by a scan spawn tracks
        that later scans in the same tick can already update.
        """
        p = self.params
        tracks = [predict(tr, dt, p.process_noise_intensity, ego_accel) for tr in self.tracks]
        hit_ids = set()
        for config, detections in scans:
            meas = [detection_to_cartesian(d, config) for d in detections]
            pairs, _, unassigned = associate(tracks, meas, p.gate_threshold)
            for i, j in pairs:
                tracks[i] = update(tracks[i], detections[j], config)
                hit_ids.add(tracks[i].track_id)
            for j in unassigned:
                z, r = meas[j]
                tracks.append(birth(self._next_id, z, r, t, p.birth_velocity_std))
                hit_ids.add(self._next_id)
                self._next_id += 1
        self.tracks = track_lifecycle(tracks, hit_ids, p)
        return self.tracks

    def mio(self) -> MioReport:
        return select_mio(self.tracks, self.params.ego_lane_halfwidth, self.params.front_offset)

    @property
    def confirmed(self) -> List[Track]:
        return [t for t in self.tracks if t.confirmed]
