"""Euro NCAP rear-end and pedestrian scenarios and their ground-truth kinematics.

World frame: x points along the ego's direction of travel, y to the left.
Actor positions are footprint centres. Vehicles drive on the right, so the
near side for a crossing pedestrian is negative y.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

KMH = 1.0 / 3.6

VEHICLE_WIDTH = 1.8
VEHICLE_LENGTH = 4.7
PEDESTRIAN_SIZE = 0.5
LANE_HALFWIDTH = 1.75


class ActorKind(str, Enum):
    EGO = "ego"
    VEHICLE = "vehicle"
    PEDESTRIAN = "pedestrian"


@dataclass(frozen=True)
class ActorState:
    actor_id: int
    kind: ActorKind
    x: float
    y: float
    yaw: float
    speed: float
    acceleration: float
    width: float
    length: float

    def __post_init__(self):
        if self.speed < 0:
            raise ValueError(f"actor {self.actor_id}: speed must be non-negative")
        if self.width <= 0 or self.length <= 0:
            raise ValueError(f"actor {self.actor_id}: footprint must be positive")

    @property
    def vx(self) -> float:
        return self.speed * math.cos(self.yaw)

    @property
    def vy(self) -> float:
        return self.speed * math.sin(self.yaw)

    def extents(self):
        """Axis-aligned (xmin, xmax, ymin, ymax) of the footprint."""
        c, s = abs(math.cos(self.yaw)), abs(math.sin(self.yaw))
        hx = 0.5 * (self.length * c + self.width * s)
        hy = 0.5 * (self.length * s + self.width * c)
        return self.x - hx, self.x + hx, self.y - hy, self.y + hy


@dataclass(frozen=True)
class ActorSpec:
    """One non-ego participant.

    ``gap`` is the longitudinal distance from the ego front bumper to the
    actor's near face at t = 0. A vehicle is offset laterally so that the
    ego covers ``overlap_fraction`` of its width. A pedestrian walks in from
    the near side and is timed so that, with the ego at constant speed, its
    centre sits ``crossing_fraction`` of the ego width in from the ego's
    right edge when the ego front reaches it.
    """

    kind: ActorKind
    gap: float
    speed: float
    decel: float = 0.0
    decel_start: float = 0.0
    overlap_fraction: float = 1.0
    crossing_fraction: float = 0.5
    width: Optional[float] = None
    length: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ActorKind(self.kind))
        if self.kind is ActorKind.EGO:
            raise ValueError("the ego is implicit; actors must be vehicles or pedestrians")
        if self.gap < 0:
            raise ValueError("gap must be non-negative")
        if self.speed < 0 or self.decel < 0 or self.decel_start < 0:
            raise ValueError("speed, decel and decel_start must be non-negative")
        for name in ("overlap_fraction", "crossing_fraction"):
            f = getattr(self, name)
            if not 0.0 <= f <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {f}")
        default = ((PEDESTRIAN_SIZE, PEDESTRIAN_SIZE)
                   if self.kind is ActorKind.PEDESTRIAN
                   else (VEHICLE_WIDTH, VEHICLE_LENGTH))
        if self.width is None:
            object.__setattr__(self, "width", default[0])
        if self.length is None:
            object.__setattr__(self, "length", default[1])
        if self.width <= 0 or self.length <= 0:
            raise ValueError("actor footprint must be positive")


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    duration: float
    ego_initial_speed: float
    actors: List[ActorSpec] = field(default_factory=list)
    ego_width: float = VEHICLE_WIDTH
    ego_length: float = VEHICLE_LENGTH

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.ego_initial_speed < 0:
            raise ValueError("ego_initial_speed must be non-negative")
        if self.ego_width <= 0 or self.ego_length <= 0:
            raise ValueError("ego footprint must be positive")
        if any(a.kind is ActorKind.PEDESTRIAN for a in self.actors) and self.ego_initial_speed == 0:
            raise ValueError("pedestrian crossing timing needs a moving ego")
        object.__setattr__(self, "actors", list(self.actors))


@dataclass(frozen=True)
class CollisionReport:
    collided: bool
    time: Optional[float]
    impact_speed: Optional[float]
    min_headway: float

    def __post_init__(self):
        if self.collided and (self.time is None or self.impact_speed is None):
            raise ValueError("a collision needs a time and an impact speed")


@dataclass(frozen=True)
class ContactCheck:
    """Single-instant result of check_collision."""
    collided: bool
    impact_speed: Optional[float]
    headway: float
    other_id: Optional[int] = None


def catalog() -> List[ScenarioSpec]:
    """The five built-in scenarios, 10 s each."""
    v50, v20 = 50.0 * KMH, 20.0 * KMH
    veh = ActorKind.VEHICLE
    return [
        ScenarioSpec("AEB_CCRs_50overlap", 10.0, v50,
                     [ActorSpec(veh, gap=80.0, speed=0.0, overlap_fraction=0.5)]),
        ScenarioSpec("AEB_CCRm_50overlap", 10.0, v50,
                     [ActorSpec(veh, gap=50.0, speed=v20, overlap_fraction=0.5)]),
        ScenarioSpec("AEB_CCRb_6_initialGap_12m", 10.0, v50,
                     [ActorSpec(veh, gap=12.0, speed=v50, decel=6.0, decel_start=1.0)]),
        ScenarioSpec("AEB_Pedestrian_Nearside_25width", 10.0, v50,
                     [ActorSpec(ActorKind.PEDESTRIAN, gap=4.0 * v50, speed=1.5,
                                crossing_fraction=0.25)]),
        ScenarioSpec("AEB_CCRb_2_initialGap_40m", 10.0, v50,
                     [ActorSpec(veh, gap=40.0, speed=v50, decel=2.0, decel_start=1.0)]),
    ]


def get_scenario(name: str) -> ScenarioSpec:
    for spec in catalog():
        if spec.name == name:
            return spec
    raise KeyError(f"unknown scenario {name!r}")


def lateral_offset_for_overlap(overlap_fraction: float, ego_width: float,
                               target_width: float) -> float:
    """Centre-line offset at which the ego covers overlap_fraction of the target width."""
    if not 0.0 <= overlap_fraction <= 1.0:
        raise ValueError(f"overlap_fraction must lie in [0, 1], got {overlap_fraction}")
    if ego_width <= 0 or target_width <= 0:
        raise ValueError("widths must be positive")
    return 0.5 * (ego_width + target_width) - overlap_fraction * target_width


def initial_state(spec: ScenarioSpec):
    """Ego and actor states at t = 0."""
    ego = ActorState(0, ActorKind.EGO, 0.0, 0.0, 0.0, spec.ego_initial_speed, 0.0,
                     spec.ego_width, spec.ego_length)
    front = 0.5 * spec.ego_length
    others = []
    for i, a in enumerate(spec.actors, start=1):
        if a.kind is ActorKind.PEDESTRIAN:
            t_cross = a.gap / spec.ego_initial_speed
            y_cross = -0.5 * spec.ego_width + a.crossing_fraction * spec.ego_width
            # walking along +y, so the footprint's x-extent is its width
            x = front + a.gap + 0.5 * a.width
            y = y_cross - a.speed * t_cross
            yaw = 0.5 * math.pi
        else:
            x = front + a.gap + 0.5 * a.length
            y = lateral_offset_for_overlap(a.overlap_fraction, spec.ego_width, a.width)
            yaw = 0.0
        others.append(ActorState(i, a.kind, x, y, yaw, a.speed, 0.0, a.width, a.length))
    return ego, others


def scheduled_acceleration(a: ActorSpec, t: float) -> float:
    """Acceleration the actor applies over the step that starts at time t."""
    if a.decel > 0 and t >= a.decel_start - 1e-9:
        return -a.decel
    return 0.0


def step_actor(a: ActorState, dt: float) -> ActorState:
    """Constant-acceleration step along the heading; speed is clamped at zero."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    v0, acc = a.speed, a.acceleration
    v1 = v0 + acc * dt
    if v1 < 0.0:
        dist = v0 * v0 / (-2.0 * acc)
        v1 = 0.0
    else:
        dist = 0.5 * (v0 + v1) * dt
    return replace(a, x=a.x + dist * math.cos(a.yaw), y=a.y + dist * math.sin(a.yaw),
                   speed=v1)


def check_collision(ego: ActorState, others, lane_halfwidth: float = LANE_HALFWIDTH) -> ContactCheck:
    """Rectangle overlap test plus bumper-to-bumper headway to the in-lane target.

    Touching counts as contact; the lateral spans must overlap by a positive
    amount. Headway is ``inf`` when no actor ahead occupies the lane.
    """
    ex0, ex1, ey0, ey1 = ego.extents()
    headway = math.inf
    hit = None
    for o in others:
        ox0, ox1, oy0, oy1 = o.extents()
        lateral = min(ey1, oy1) - max(ey0, oy0)
        if hit is None and lateral > 0 and ex1 >= ox0 and ox1 >= ex0:
            hit = o
        if ox1 > ex0 and oy1 > -lane_halfwidth and oy0 < lane_halfwidth:
            headway = min(headway, max(0.0, ox0 - ex1))
    if hit is None:
        return ContactCheck(False, None, headway)
    closing = max(0.0, ego.vx - hit.vx)
    return ContactCheck(True, closing, 0.0, hit.actor_id)
