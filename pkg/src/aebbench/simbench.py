"""Closed-loop AEB test bench.

One tick: advance ground truth, scan with every radar, fuse, pick the MIO,
run the controller and latch its deceleration command for the next step.
Everything runs at a single rate, so a run is a pure function of
(scenario, sensors, parameters, seed).
"""

import csv
import math
from dataclasses import astuple, dataclass, field, fields, replace
from typing import List, Optional, Sequence

import numpy as np

from . import controller as ctl
from .radar import RadarConfig, default_sensor_suite, sense
from .scenario import (CollisionReport, ScenarioSpec, check_collision, initial_state,
                       scheduled_acceleration, step_actor)
from .tracking import Tracker, TrackerParams

DEFAULT_DT = 0.05


class ConfigError(ValueError):
    """Inconsistent bench configuration, detected before the first tick."""


@dataclass(frozen=True)
class SimLogRow:
    t: float
    ego_speed: float
    ego_accel: float
    ttc: float
    t_fcw: float
    t_pb1: float
    t_pb2: float
    t_fb: float
    aeb_state: str
    fcw_active: int
    headway: float
    mio_present: int
    num_detections_radar1: int
    num_detections_radar2: int
    num_confirmed_tracks: int


CSV_COLUMNS = tuple(f.name for f in fields(SimLogRow))


@dataclass
class RunResult:
    scenario: str
    seed: int
    aeb_enabled: bool
    log: List[SimLogRow]
    collision: CollisionReport
    # per-tick MIO range estimate (nan without MIO); not part of the CSV
    mio_distance: List[float] = field(default_factory=list, repr=False)

    @property
    def states(self) -> List[str]:
        return [row.aeb_state for row in self.log]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.log], dtype=float)


@dataclass(frozen=True)
class MitigationSummary:
    scenario: str
    seed: int
    avoided: bool
    impact_speed_with_aeb: float
    impact_speed_without_aeb: float
    speed_reduction: float
    speed_reduction_pct: float


def with_rate(sensors: Sequence[RadarConfig], controller_params: ctl.ControllerParams, dt: float):
    """Copies of sensors and controller parameters retimed to a common tick."""
    return ([replace(s, update_period=dt) for s in sensors],
            replace(controller_params, sample_time=dt))


def _validate(spec, sensors, cp, dt, duration):
    if dt <= 0:
        raise ConfigError("dt must be positive")
    if duration <= 0:
        raise ConfigError("duration must be positive")
    ticks = duration / dt
    if abs(ticks - round(ticks)) > 1e-6:
        raise ConfigError(f"duration {duration} s is not a whole number of {dt} s ticks")
    if not sensors:
        raise ConfigError("at least one radar is required")
    ids = [s.sensor_id for s in sensors]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"duplicate sensor ids {ids}")
    for s in sensors:
        if not math.isclose(s.update_period, dt, rel_tol=1e-9):
            raise ConfigError(f"radar {s.sensor_id} update_period {s.update_period} != dt {dt}")
    if not math.isclose(cp.sample_time, dt, rel_tol=1e-9):
        raise ConfigError(f"controller sample_time {cp.sample_time} != dt {dt}")
    if not spec.actors:
        raise ConfigError(f"scenario {spec.name!r} has no actors")
    return int(round(ticks))


def run(spec: ScenarioSpec, sensors: Optional[Sequence[RadarConfig]] = None,
        tracker_params: Optional[TrackerParams] = None,
        controller_params: Optional[ctl.ControllerParams] = None,
        seed: int = 0, aeb_enabled: bool = True, dt: float = DEFAULT_DT,
        duration: Optional[float] = None) -> RunResult:
    """Simulate one scenario; stops at the first collision."""
    sensors = list(default_sensor_suite() if sensors is None else sensors)
    tracker_params = tracker_params or TrackerParams()
    cp = controller_params or ctl.ControllerParams()
    duration = spec.duration if duration is None else duration
    n_ticks = _validate(spec, sensors, cp, dt, duration)

    streams = {s.sensor_id: np.random.default_rng([seed, s.sensor_id]) for s in sensors}
    ego, others = initial_state(spec)
    tracker = Tracker(tracker_params)
    state = ctl.AebState.DEFAULT
    ego_accel = 0.0
    log, mio_distance = [], []
    min_headway = math.inf
    collided_at = impact = None

    for k in range(n_ticks):
        t = k * dt
        if k > 0:
            t_prev = (k - 1) * dt
            ego = step_actor(replace(ego, acceleration=ego_accel), dt)
            others = [step_actor(replace(o, acceleration=scheduled_acceleration(a, t_prev)), dt)
                      for o, a in zip(others, spec.actors)]
        contact = check_collision(ego, others, tracker_params.ego_lane_halfwidth)
        min_headway = min(min_headway, contact.headway)

        scans = [(s, sense(s, ego, others, t, streams[s.sensor_id])) for s in sensors]
        tracker.step(t, dt if k > 0 else 0.0, scans, ego_accel)
        mio = tracker.mio()
        if aeb_enabled:
            out = ctl.step(state, mio, ego.speed, cp)
        else:
            out = ctl.ControllerOutput(ctl.AebState.DEFAULT, False, 0.0, ctl.ttc(mio),
                                       ctl.thresholds(ego.speed, cp))
        state = out.state
        ego_accel = -out.commanded_deceleration if ego.speed > 0 else 0.0

        th = out.thresholds
        counts = [len(d) for _, d in scans] + [0, 0]
        log.append(SimLogRow(
            t=t, ego_speed=ego.speed, ego_accel=ego_accel,
            ttc=math.inf if out.ttc is None else out.ttc,
            t_fcw=th.t_fcw, t_pb1=th.t_pb1, t_pb2=th.t_pb2, t_fb=th.t_fb,
            aeb_state=out.state.label, fcw_active=int(out.fcw_active),
            headway=contact.headway, mio_present=int(mio.present),
            num_detections_radar1=counts[0], num_detections_radar2=counts[1],
            num_confirmed_tracks=len(tracker.confirmed),
        ))
        mio_distance.append(mio.relative_distance if mio.present else math.nan)
        if contact.collided:
            collided_at, impact = t, contact.impact_speed
            break

    if collided_at is not None:
        report = CollisionReport(True, collided_at, impact, 0.0)
    else:
        report = CollisionReport(False, None, None, min_headway)
    return RunResult(spec.name, seed, aeb_enabled, log, report, mio_distance)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return f"{v:.6f}"


def emit_csv(r: RunResult, path) -> None:
    """Write the run log: header of SimLogRow field names, one row per tick."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in r.log:
            writer.writerow([_fmt(v) for v in astuple(row)])


def read_csv(path) -> List[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def compare_runs(with_aeb: RunResult, without_aeb: RunResult) -> MitigationSummary:
    """Impact-speed mitigation of the first run relative to the second."""
    if with_aeb.scenario != without_aeb.scenario or with_aeb.seed != without_aeb.seed:
        raise ValueError("runs must share scenario and seed")
    v_with = with_aeb.collision.impact_speed if with_aeb.collision.collided else 0.0
    v_without = without_aeb.collision.impact_speed if without_aeb.collision.collided else 0.0
    reduction = v_without - v_with
    pct = 100.0 * reduction / v_without if v_without > 0 else 0.0
    return MitigationSummary(with_aeb.scenario, with_aeb.seed,
                             not with_aeb.collision.collided,
                             v_with, v_without, reduction, pct)
