from enum import Enum, unique


@unique
class SpecialOrder(str, Enum):
    """Orders of the Rényi divergence evaluated by their limiting formulas"""
    ZERO = "ZERO"
    ONE = "ONE"
    INFINITY = "INFINITY"
