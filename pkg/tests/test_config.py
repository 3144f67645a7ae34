import math
from dataclasses import replace
from importlib import resources

import pytest

from aebbench.config import BenchConfig, dump_config, load_config, parse_config
from aebbench.controller import ControllerParams
from aebbench.radar import default_sensor_suite
from aebbench.scenario import catalog
from aebbench.simbench import ConfigError
from aebbench.tracking import TrackerParams

MINIMAL = """\
[scenario]
name = custom
duration = 5.0
ego_initial_speed = 10.0

[actor.1]
kind = vehicle
gap = 30.0
speed = 2.0
"""


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.name)
def test_dump_parse_round_trip(spec):
    cfg = BenchConfig(spec)
    text = dump_config(cfg)
    back = parse_config(text)
    assert back == cfg
    assert dump_config(back) == text


def test_round_trip_with_non_default_parameters():
    sensors = [replace(s, azimuth_noise_std=math.radians(1.3), mount_yaw=math.radians(-2.0))
               for s in default_sensor_suite()]
    cfg = BenchConfig(catalog()[1], sensors, TrackerParams(process_noise_intensity=4.0,
                                                           confirm_hits=2),
                      ControllerParams(a_fb=9.0, sample_time=0.1), dt=0.1)
    assert parse_config(dump_config(cfg)) == cfg


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.name)
def test_shipped_files_match_builtins(spec):
    shipped = resources.files("aebbench") / "scenarios" / f"{spec.name}.cfg"
    assert shipped.read_text() == dump_config(BenchConfig(spec))
    assert load_config(str(shipped)).scenario == spec


def test_minimal_file_uses_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.scenario.name == "custom"
    assert cfg.scenario.actors[0].gap == 30.0
    assert cfg.sensors == default_sensor_suite()
    assert cfg.tracker == TrackerParams() and cfg.controller == ControllerParams()
    assert cfg.dt == 0.05


def test_angles_are_degrees_in_file():
    text = MINIMAL + "\n[radar.1]\nsensor_id = 4\nfield_of_view_deg = 30\n"
    (s,) = parse_config(text).sensors
    assert s.sensor_id == 4
    assert s.field_of_view == pytest.approx(math.radians(30.0))


@pytest.mark.parametrize("extra", [
    "\n[mystery]\nx = 1\n",
    "\n[tracker]\nbogus = 1\n",
    "\n[controller]\na_fb = fast\n",
    "\n[actor.x]\nkind = vehicle\ngap = 1\nspeed = 0\n",
    "\n[radar.1]\nmax_range = 50\n",
    "\n[controller]\na_pb1 = 20\n",
])
def test_bad_input_rejected(extra):
    with pytest.raises(ConfigError):
        parse_config(MINIMAL + extra)


def test_missing_sections_rejected():
    with pytest.raises(ConfigError):
        parse_config("[actor.1]\nkind = vehicle\ngap = 1\nspeed = 0\n")
    with pytest.raises(ConfigError):
        parse_config("[scenario]\nname = x\nduration = 1\nego_initial_speed = 1\n")
    with pytest.raises(ConfigError):
        parse_config("[scenario]\nname = x\nduration = 1\n[actor.1]\nkind = vehicle\n"
                     "gap = 1\nspeed = 0\n")
    with pytest.raises(ConfigError):
        parse_config("not a config")


def test_keys_are_case_sensitive():
    with pytest.raises(ConfigError):
        parse_config(MINIMAL.replace("duration", "Duration"))
