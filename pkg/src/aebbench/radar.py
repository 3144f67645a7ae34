"""Detection-level radar model: noisy polar measurements of actors in a sensor's wedge."""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .scenario import ActorKind, ActorState, VEHICLE_LENGTH


@dataclass(frozen=True)
class RadarConfig:
    sensor_id: int
    mount_position: Tuple[float, float] = (0.5 * VEHICLE_LENGTH, 0.0)
    mount_yaw: float = 0.0
    field_of_view: float = math.radians(90.0)
    max_range: float = 60.0
    range_noise_std: float = 0.25
    azimuth_noise_std: float = math.radians(0.5)
    range_rate_noise_std: float = 0.25
    detection_probability: float = 0.95
    update_period: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "mount_position", tuple(float(v) for v in self.mount_position))
        if not 0.0 < self.field_of_view <= math.pi:
            raise ValueError("field_of_view must lie in (0, pi]")
        if self.max_range <= 0:
            raise ValueError("max_range must be positive")
        if min(self.range_noise_std, self.azimuth_noise_std, self.range_rate_noise_std) < 0:
            raise ValueError("noise standard deviations must be non-negative")
        if not 0.0 < self.detection_probability <= 1.0:
            raise ValueError("detection_probability must lie in (0, 1]")
        if self.update_period <= 0:
            raise ValueError("update_period must be positive")

    @property
    def noise_covariance(self) -> np.ndarray:
        return np.diag([self.range_noise_std ** 2, self.azimuth_noise_std ** 2,
                        self.range_rate_noise_std ** 2])


@dataclass(frozen=True)
class Detection:
    sensor_id: int
    timestamp: float
    range: float
    azimuth: float
    range_rate: float
    noise_covariance: np.ndarray


def default_sensor_suite() -> List[RadarConfig]:
    """77 GHz long-range radar and 24 GHz wide-beam mid-range radar, both on the front bumper."""
    return [
        RadarConfig(sensor_id=1, field_of_view=math.radians(20.0), max_range=100.0),
        RadarConfig(sensor_id=2, field_of_view=math.radians(90.0), max_range=60.0),
    ]


def sensor_pose(config: RadarConfig, ego: ActorState):
    """World-frame (x, y, boresight yaw) of the sensor."""
    c, s = math.cos(ego.yaw), math.sin(ego.yaw)
    mx, my = config.mount_position
    return ego.x + c * mx - s * my, ego.y + s * mx + c * my, ego.yaw + config.mount_yaw


def reference_point(actor: ActorState, sensor_xy) -> Tuple[float, float]:
    """Point at which an actor is detected.

    Vehicles: the point of the face nearest the sensor (rear face for a lead
    vehicle), clamped laterally to the body. Pedestrians: the centre.
    """
    if actor.kind is ActorKind.PEDESTRIAN:
        return actor.x, actor.y
    x0, x1, y0, y1 = actor.extents()
    sx, sy = sensor_xy
    return min(max(sx, x0), x1), min(max(sy, y0), y1)


def polar(config: RadarConfig, ego: ActorState, actor: ActorState):
    """Noise-free (range, azimuth, range_rate) of an actor in the sensor frame."""
    sx, sy, syaw = sensor_pose(config, ego)
    px, py = reference_point(actor, (sx, sy))
    dx, dy = px - sx, py - sy
    rng = math.hypot(dx, dy)
    az = _wrap(math.atan2(dy, dx) - syaw)
    dvx, dvy = actor.vx - ego.vx, actor.vy - ego.vy
    rate = (dx * dvx + dy * dvy) / rng if rng > 0 else 0.0
    return rng, az, rate


def in_coverage(config: RadarConfig, rng: float, az: float) -> bool:
    return 0.0 <= rng <= config.max_range and abs(az) <= 0.5 * config.field_of_view


def sense(config: RadarConfig, ego: ActorState, actors, t: float,
          rng: np.random.Generator) -> List[Detection]:
    """One scan: at most one noisy detection per covered actor.

    The generator is drawn in a fixed pattern (one uniform plus three
    normals per covered actor) so the stream stays aligned across runs.
    Detections pushed outside the wedge or disk by noise are dropped.
    """
    phase = t / config.update_period
    if abs(phase - round(phase)) > 1e-6:
        raise ValueError(f"t = {t} is not on the {config.update_period} s update grid")
    cov = config.noise_covariance
    stds = np.sqrt(np.diag(cov))
    out = []
    for actor in actors:
        r, az, rate = polar(config, ego, actor)
        if not in_coverage(config, r, az):
            continue
        u = rng.random()
        noise = rng.standard_normal(3) * stds
        if u >= config.detection_probability:
            continue
        r_m, az_m, rate_m = r + noise[0], _wrap(az + noise[1]), rate + noise[2]
        if not in_coverage(config, r_m, az_m):
            continue
        out.append(Detection(config.sensor_id, t, float(r_m), float(az_m), float(rate_m), cov))
    return out


def _wrap(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi
