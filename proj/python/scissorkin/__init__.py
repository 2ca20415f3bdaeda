"""Screw-theory kinematics for a scissor-ring deployable antenna.

Thin wrapper over the compiled core; see the C++ headers for the full API.
"""

from ._core import (  # noqa: F401
    DesignParams,
    MechanismModel,
    MobilityError,
    __version__,
    build_unit,
    chord_width,
    default_height,
    deployment_stats,
    dof,
    dof_report,
    kinematic_state,
    link_lengths,
    make_design,
    make_four_bar,
    model_from_json,
    model_json,
    node_positions,
    numeric_dof_oracle,
    solve_angle_from_width,
    solve_rates,
    stretched_length,
    validate,
)

__all__ = [
    "DesignParams",
    "MechanismModel",
    "MobilityError",
    "build_unit",
    "chord_width",
    "default_height",
    "deployment_stats",
    "dof",
    "dof_report",
    "kinematic_state",
    "link_lengths",
    "make_design",
    "make_four_bar",
    "model_from_json",
    "model_json",
    "node_positions",
    "numeric_dof_oracle",
    "solve_angle_from_width",
    "solve_rates",
    "stretched_length",
    "validate",
]
