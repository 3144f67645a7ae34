"""FCW/AEB controller: time-to-collision against staged stopping-time thresholds."""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional


class AebState(IntEnum):
    DEFAULT = 0
    FCW = 1
    PB1 = 2
    PB2 = 3
    FB = 4

    @property
    def label(self) -> str:
        return "Default" if self is AebState.DEFAULT else self.name

    @classmethod
    def from_label(cls, text: str) -> "AebState":
        for s in cls:
            if s.label == text:
                return s
        raise ValueError(f"unknown AEB state {text!r}")


@dataclass(frozen=True)
class ControllerParams:
    tau_react: float = 1.2
    a_driver: float = 4.0
    a_pb1: float = 3.8
    a_pb2: float = 5.3
    a_fb: float = 9.8
    release_hysteresis: float = 1.2
    release_opening_speed: float = 0.5
    sample_time: float = 0.05

    def __post_init__(self):
        if self.tau_react < 0:
            raise ValueError("tau_react must be non-negative")
        if not (0 < self.a_pb1 <= self.a_pb2 <= self.a_fb and self.a_driver > 0):
            raise ValueError("need a_driver > 0 and 0 < a_pb1 <= a_pb2 <= a_fb")
        if self.release_hysteresis < 1:
            raise ValueError("release_hysteresis must be >= 1")
        if self.release_opening_speed < 0:
            raise ValueError("release_opening_speed must be non-negative")
        if self.sample_time <= 0:
            raise ValueError("sample_time must be positive")

    def deceleration(self, state: AebState) -> float:
        return {AebState.PB1: self.a_pb1, AebState.PB2: self.a_pb2,
                AebState.FB: self.a_fb}.get(state, 0.0)


@dataclass(frozen=True)
class Thresholds:
    t_fcw: float
    t_pb1: float
    t_pb2: float
    t_fb: float

    def for_state(self, state: AebState) -> float:
        return {AebState.FCW: self.t_fcw, AebState.PB1: self.t_pb1,
                AebState.PB2: self.t_pb2, AebState.FB: self.t_fb}[state]


@dataclass(frozen=True)
class ControllerOutput:
    state: AebState
    fcw_active: bool
    commanded_deceleration: float
    ttc: Optional[float]
    thresholds: Thresholds


def stopping_time(v_ego: float, a_brake: float) -> float:
    """Time to stop from v_ego at constant deceleration a_brake."""
    if a_brake <= 0:
        raise ValueError(f"a_brake must be positive, got {a_brake}")
    if v_ego < 0:
        raise ValueError(f"v_ego must be non-negative, got {v_ego}")
    return v_ego / a_brake


def fcw_threshold(v_ego: float, p: ControllerParams) -> float:
    """Driver reaction delay plus stopping time at the driver's deceleration."""
    return p.tau_react + stopping_time(v_ego, p.a_driver)


def thresholds(v_ego: float, p: ControllerParams) -> Thresholds:
    return Thresholds(fcw_threshold(v_ego, p), stopping_time(v_ego, p.a_pb1),
                      stopping_time(v_ego, p.a_pb2), stopping_time(v_ego, p.a_fb))


def ttc(mio) -> Optional[float]:
    """Time to collision with the MIO, or None when the gap is not closing."""
    if mio is None or mio.track_id is None:
        return None
    if mio.relative_velocity < 0:
        return mio.relative_distance / -mio.relative_velocity
    return None


def target_stage(ttc_value: Optional[float], th: Thresholds) -> AebState:
    if ttc_value is None:
        return AebState.DEFAULT
    for state in (AebState.FB, AebState.PB2, AebState.PB1, AebState.FCW):
        if ttc_value < th.for_state(state):
            return state
    return AebState.DEFAULT


def step(state: AebState, mio, v_ego: float, p: ControllerParams) -> ControllerOutput:
    """One controller tick.

    Escalation to the highest stage whose threshold exceeds the TTC is
    immediate. FCW is released once the TTC exceeds ``release_hysteresis``
    times the FCW threshold. A braking stage is released only when the gap
    opens faster than ``release_opening_speed``; a TTC margin would cut the
    brakes mid-stop, because the stopping-time thresholds shrink with the
    very speed the braking removes. A stopped ego or a lost MIO resets the
    state to Default.
    """
    th = thresholds(v_ego, p)
    t = ttc(mio)
    want = target_stage(t, th)
    present = mio is not None and mio.track_id is not None
    if not present or v_ego <= 0.0:
        new = AebState.DEFAULT
    elif want >= state:
        new = want
    elif state == AebState.FCW:
        new = want if t is None or t > p.release_hysteresis * th.t_fcw else state
    elif mio.relative_velocity > p.release_opening_speed:
        new = want
    else:
        new = state
    return ControllerOutput(new, new >= AebState.FCW, p.deceleration(new), t, th)
