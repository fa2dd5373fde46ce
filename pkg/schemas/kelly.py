from typing import List, Optional

from schemas.base import BaseSchema


class KellyRow(BaseSchema):
    """Growth rate of a fair-odds bet next to the engine work of the same strategy"""
    strategy: str
    r: Optional[float] = None
    weights: List[float]
    log_growth_rate: float
    work_over_kT: float
    difference: float

    @staticmethod
    def header(alphabet_size: int) -> List[str]:
        return ["strategy", "r"] + [f"q_{x}" for x in range(alphabet_size)] + [
            "log_growth_rate", "work_over_kT", "difference"]
