"""Python bindings for the usblnav simulator core."""

from ._usblnav import (
    AuvReport,
    ConfigError,
    MissionReport,
    SimConfig,
    asv_positions,
    corner_distance,
    coverage_fraction_grid,
    downlink_slot_duration,
    error_envelope,
    greedy_coloring,
    load_config,
    min_formation_radius,
    next_group_start,
    parse_config,
    run,
    sweep_csv,
    tx_duration,
    uplink_slot_duration,
)

__all__ = [
    "AuvReport",
    "ConfigError",
    "MissionReport",
    "SimConfig",
    "asv_positions",
    "corner_distance",
    "coverage_fraction_grid",
    "downlink_slot_duration",
    "error_envelope",
    "greedy_coloring",
    "load_config",
    "min_formation_radius",
    "next_group_start",
    "parse_config",
    "run",
    "sweep_csv",
    "tx_duration",
    "uplink_slot_duration",
]
