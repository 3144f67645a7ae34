"""Closed-loop autonomous emergency braking test bench with dual-radar fusion."""

from .controller import AebState, ControllerParams
from .radar import RadarConfig, default_sensor_suite
from .scenario import catalog, get_scenario
from .simbench import RunResult, compare_runs, emit_csv, run
from .tracking import TrackerParams

__version__ = "0.1.0"

__all__ = [
    "AebState", "ControllerParams", "RadarConfig", "RunResult", "TrackerParams",
    "catalog", "compare_runs", "default_sensor_suite", "emit_csv", "get_scenario", "run",
]
