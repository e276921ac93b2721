"""Exact eta-Nash regions for the two-user linear deterministic interference
channel with noisy channel-output feedback."""
from .channel import ChannelParams, forward_output, feedback_output, simulate
from .equilibrium import (
    ClassBounds, RateSplit, deviation_ceiling, is_ne_rate_pair, ne_split_search,
    restricted_deviation_oracle, utility,
)
from .gf2 import BitMatrix, BitVector
from .polytope import LinearSystem, Region2
from .regions import (
    RatePair, box_region, capacity_region, hk_system, inclusion_chain_check, nash_bounds, ne_region,
    ne_region_constructive, theta,
)
from .schemes import Scheme, achieved_rate, floor_scheme, run_and_verify, validate_scheme

__all__ = [
    "BitMatrix", "BitVector", "ChannelParams", "ClassBounds", "LinearSystem", "RatePair", "RateSplit",
    "Region2", "Scheme", "achieved_rate", "box_region", "capacity_region", "deviation_ceiling",
    "feedback_output", "floor_scheme", "forward_output", "hk_system", "inclusion_chain_check",
    "is_ne_rate_pair", "nash_bounds", "ne_region", "ne_region_constructive", "ne_split_search",
    "restricted_deviation_oracle", "run_and_verify", "simulate", "theta", "utility", "validate_scheme",
]
