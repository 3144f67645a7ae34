"""Bench configuration files.

Line-oriented ``key = value`` text with one section per subsystem::

    [scenario]          name, duration, ego_initial_speed, ego_width, ego_length
    [actor.N]           kind, gap, speed, decel, decel_start, overlap_fraction,
                        crossing_fraction, width, length
    [radar.N]           sensor_id, mount_x, mount_y, mount_yaw_deg,
                        field_of_view_deg, max_range, range_noise_std,
                        azimuth_noise_std_deg, range_rate_noise_std,
                        detection_probability, update_period
    [tracker]           any TrackerParams field
    [controller]        any ControllerParams field
    [sim]               dt

Only ``[scenario]`` and at least one ``[actor.N]`` are required; missing
radar sections fall back to the default two-radar suite, missing keys to
their defaults. Unknown sections and keys are rejected. Angles are in
degrees in the file and radians in memory.
"""

import configparser
import math
from dataclasses import dataclass, field, fields
from typing import List

from .controller import ControllerParams
from .radar import RadarConfig, default_sensor_suite
from .scenario import ActorSpec, ScenarioSpec
from .simbench import DEFAULT_DT, ConfigError
from .tracking import TrackerParams

SCENARIO_KEYS = ("name", "duration", "ego_initial_speed", "ego_width", "ego_length")
ACTOR_KEYS = ("kind", "gap", "speed", "decel", "decel_start", "overlap_fraction",
              "crossing_fraction", "width", "length")
RADAR_KEYS = ("sensor_id", "mount_x", "mount_y", "mount_yaw_deg", "field_of_view_deg",
              "max_range", "range_noise_std", "azimuth_noise_std_deg",
              "range_rate_noise_std", "detection_probability", "update_period")
TRACKER_KEYS = tuple(f.name for f in fields(TrackerParams))
CONTROLLER_KEYS = tuple(f.name for f in fields(ControllerParams))
SIM_KEYS = ("dt",)

_INT_KEYS = {"sensor_id", "confirm_hits", "confirm_window", "delete_misses"}
_STR_KEYS = {"name", "kind"}


@dataclass
class BenchConfig:
    scenario: ScenarioSpec
    sensors: List[RadarConfig] = field(default_factory=default_sensor_suite)
    tracker: TrackerParams = field(default_factory=TrackerParams)
    controller: ControllerParams = field(default_factory=ControllerParams)
    dt: float = DEFAULT_DT


def _value(key, raw, where):
    if key in _STR_KEYS:
        return raw.strip()
    try:
        return int(raw) if key in _INT_KEYS else float(raw)
    except ValueError:
        raise ConfigError(f"[{where}] {key}: cannot parse {raw!r}") from None


def _section(parser, name, allowed):
    items = dict(parser.items(name))
    unknown = sorted(set(items) - set(allowed))
    if unknown:
        raise ConfigError(f"[{name}] unknown keys: {', '.join(unknown)}")
    return {k: _value(k, v, name) for k, v in items.items()}


def _indexed(parser, prefix):
    out = []
    for name in parser.sections():
        if name.startswith(prefix + "."):
            suffix = name[len(prefix) + 1:]
            if not suffix.isdigit():
                raise ConfigError(f"bad section name [{name}]")
            out.append((int(suffix), name))
    return [name for _, name in sorted(out)]


def parse_config(text: str, source: str = "<string>") -> BenchConfig:
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",),
                                       inline_comment_prefixes=None, interpolation=None,
                                       strict=True, empty_lines_in_values=False)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    known = {"scenario", "tracker", "controller", "sim"}
    for name in parser.sections():
        if name not in known and not name.startswith(("actor.", "radar.")):
            raise ConfigError(f"unknown section [{name}]")
    if not parser.has_section("scenario"):
        raise ConfigError(f"{source}: missing [scenario] section")

    try:
        actors = []
        for name in _indexed(parser, "actor"):
            actors.append(ActorSpec(**_section(parser, name, ACTOR_KEYS)))
        if not actors:
            raise ConfigError(f"{source}: at least one [actor.N] section is required")
        sc = _section(parser, "scenario", SCENARIO_KEYS)
        for key in ("name", "duration", "ego_initial_speed"):
            if key not in sc:
                raise ConfigError(f"[scenario] missing {key}")
        scenario = ScenarioSpec(actors=actors, **sc)

        sensors = []
        for name in _indexed(parser, "radar"):
            r = _section(parser, name, RADAR_KEYS)
            if "sensor_id" not in r:
                raise ConfigError(f"[{name}] missing sensor_id")
            kw = {"sensor_id": r.pop("sensor_id")}
            mount = (r.pop("mount_x", RadarConfig.mount_position[0]),
                     r.pop("mount_y", RadarConfig.mount_position[1]))
            kw["mount_position"] = mount
            for deg_key, key in (("mount_yaw_deg", "mount_yaw"),
                                 ("field_of_view_deg", "field_of_view"),
                                 ("azimuth_noise_std_deg", "azimuth_noise_std")):
                if deg_key in r:
                    kw[key] = math.radians(r.pop(deg_key))
            kw.update(r)
            sensors.append(RadarConfig(**kw))

        tracker = TrackerParams(**(_section(parser, "tracker", TRACKER_KEYS)
                                   if parser.has_section("tracker") else {}))
        controller = ControllerParams(**(_section(parser, "controller", CONTROLLER_KEYS)
                                         if parser.has_section("controller") else {}))
        sim = _section(parser, "sim", SIM_KEYS) if parser.has_section("sim") else {}
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None

    return BenchConfig(scenario, sensors or default_sensor_suite(), tracker, controller,
                       sim.get("dt", DEFAULT_DT))


def load_config(path) -> BenchConfig:
    with open(path) as fh:
        return parse_config(fh.read(), str(path))


def _deg(rad: float) -> float:
    # rounded so radians(degrees) round-trips for values authored in degrees
    return round(math.degrees(rad), 9)


def _num(v) -> str:
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return repr(float(v))


def dump_config(cfg: BenchConfig) -> str:
    """Canonical text form; parse_config(dump_config(c)) reproduces c."""
    lines = []

    def section(name, pairs):
        if lines:
            lines.append("")
        lines.append(f"[{name}]")
        for k, v in pairs:
            lines.append(f"{k} = {v if isinstance(v, str) else _num(v)}")

    s = cfg.scenario
    section("scenario", [(k, getattr(s, k)) for k in SCENARIO_KEYS])
    for i, a in enumerate(s.actors, start=1):
        section(f"actor.{i}", [("kind", a.kind.value)]
                + [(k, getattr(a, k)) for k in ACTOR_KEYS[1:]])
    for i, r in enumerate(cfg.sensors, start=1):
        section(f"radar.{i}", [
            ("sensor_id", r.sensor_id),
            ("mount_x", r.mount_position[0]), ("mount_y", r.mount_position[1]),
            ("mount_yaw_deg", _deg(r.mount_yaw)),
            ("field_of_view_deg", _deg(r.field_of_view)),
            ("max_range", r.max_range), ("range_noise_std", r.range_noise_std),
            ("azimuth_noise_std_deg", _deg(r.azimuth_noise_std)),
            ("range_rate_noise_std", r.range_rate_noise_std),
            ("detection_probability", r.detection_probability),
            ("update_period", r.update_period),
        ])
    section("tracker", [(k, getattr(cfg.tracker, k)) for k in TRACKER_KEYS])
    section("controller", [(k, getattr(cfg.controller, k)) for k in CONTROLLER_KEYS])
    section("sim", [("dt", cfg.dt)])
    return "\n".join(lines) + "\n"
