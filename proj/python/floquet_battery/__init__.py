"""Exact stroboscopic simulator for Floquet-charged spin-1/2 quantum batteries."""

from ._core import (
    Boundary,
    ChargerParams,
    FixedInterval,
    Range,
    SweepPoint,
    bond_table,
    charging_power,
    cross_validate,
    detect_period,
    entanglement_entropy,
    evolve,
    evolve_state,
    fwht,
    ground_state,
    landscape_table,
    max_stored_energy,
    parse_angle,
    stored_energy,
    sweep_asymmetric,
    sweep_coupling,
    sweep_size,
    sweep_tau,
)

__all__ = [
    "Boundary",
    "ChargerParams",
    "FixedInterval",
    "Range",
    "SweepPoint",
    "bond_table",
    "charging_power",
    "cross_validate",
    "detect_period",
    "entanglement_entropy",
    "evolve",
    "evolve_state",
    "fwht",
    "ground_state",
    "landscape_table",
    "max_stored_energy",
    "parse_angle",
    "stored_energy",
    "sweep_asymmetric",
    "sweep_coupling",
    "sweep_size",
    "sweep_tau",
]
