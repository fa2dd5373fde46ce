from enum import Enum, unique


@unique
class RunCommand(str, Enum):
    DIVERGENCE = "divergence"
    STRATEGY = "strategy"
    CE_SWEEP = "ce-sweep"
    FRONTIER = "frontier"
    SIMULATE = "simulate"
    KELLY_COMPARE = "kelly-compare"
